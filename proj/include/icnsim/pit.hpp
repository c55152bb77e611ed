#pragma once

#include <cstdint>
#include <optional>
#include <queue>
#include <vector>

#include "icnsim/name.hpp"
#include "icnsim/packet.hpp"
#include "icnsim/time.hpp"

namespace icnsim {

// One pending-interest record: reverse-path soft state for a single name.
struct PitEntry {
  ContentName name;
  std::vector<FaceId> downstream_faces;  // kept sorted, unique
  SimTime expiry = 0;
  SimTime insert_time = 0;
  std::uint32_t refresh_count = 0;
};

enum class PitKind {
  CollisionOverwrite,  // single-slot buckets, colliding names overwrite
  Chaining,            // per-bucket chains, fixed public hash
  Universal,           // per-bucket chains, multiplier randomized at start-up
};

struct PitConfig {
  PitKind kind = PitKind::Chaining;
  std::size_t bucket_count = 1024;
  std::size_t capacity = 120000;     // max live entries (tail drop beyond)
  std::uint64_t base_cost = 500;     // cycles per dictionary operation
  std::uint64_t universal_seed = 1;  // multiplier draw for PitKind::Universal
};

struct OpCost {
  std::uint64_t cycles = 0;
};

enum class PitInsertOutcome { Inserted, Aggregated, Overwrote, RejectedFull };

struct PitInsertResult {
  PitInsertOutcome outcome;
  OpCost cost;
};

struct PitLookupResult {
  std::optional<PitEntry> entry;
  OpCost cost;
};

struct PitRemoveResult {
  bool removed = false;
  OpCost cost;
};

struct PitExpireResult {
  std::vector<PitEntry> expired;
  OpCost cost;
};

// Public fixed multiplier used by CollisionOverwrite and Chaining stores; an
// adversary generating colliding names targets exactly this function.
constexpr std::uint64_t kPitHashMultiplier = 0x9E3779B97F4A7C15ull;

// 64-bit multiplicative hash over the canonical name bytes: h = h*m + byte.
std::uint64_t name_hash(const ContentName& name, std::uint64_t multiplier);

// Bucket index: avalanche finalizer over name_hash, then modulo bucket_count.
std::size_t pit_bucket(const ContentName& name, std::uint64_t multiplier,
                       std::size_t bucket_count);

// Pending Interest Table with per-operation CPU-cycle accounting. The three
// kinds share one interface; only collision handling and cost scaling differ.
class PitStore {
 public:
  explicit PitStore(PitConfig cfg);

  // Inserted: name absent and capacity available. Aggregated: name present
  // (face added, expiry extended to the max of old and new). Overwrote: only
  // for CollisionOverwrite when a different name occupied the bucket.
  // RejectedFull: at capacity; the caller applies tail drop.
  // Throws std::invalid_argument if the entry is already expired at `now`.
  PitInsertResult insert(PitEntry entry, SimTime now);

  // Exact-name match among live (non-expired) entries.
  PitLookupResult lookup(const ContentName& name, SimTime now);

  PitRemoveResult remove(const ContentName& name);

  // Removes and returns every entry with expiry <= now, in expiry order.
  PitExpireResult expire(SimTime now);

  std::size_t size() const { return live_; }
  std::size_t capacity() const { return cfg_.capacity; }
  const PitConfig& config() const { return cfg_; }
  std::uint64_t multiplier() const { return multiplier_; }
  std::uint64_t cumulative_cycles() const { return cumulative_cycles_; }

  // Earliest expiry among live entries, if any (for timer scheduling).
  std::optional<SimTime> next_expiry() const;

 private:
  struct HeapItem {
    SimTime expiry;
    std::uint64_t seq;
    ContentName name;
    bool operator>(const HeapItem& o) const {
      if (expiry != o.expiry) return expiry > o.expiry;
      return seq > o.seq;
    }
  };

  std::size_t bucket_of(const ContentName& name) const;
  OpCost charge(std::uint64_t examined);
  PitEntry* find(const ContentName& name, std::size_t bucket,
                 std::size_t* position);
  void heap_push(const PitEntry& e);
  void prune_heap();

  PitConfig cfg_;
  std::uint64_t multiplier_;
  bool chained_;
  std::vector<std::vector<PitEntry>> buckets_;
  std::priority_queue<HeapItem, std::vector<HeapItem>, std::greater<HeapItem>>
      expiry_heap_;
  std::size_t live_ = 0;
  std::uint64_t seq_ = 0;
  std::uint64_t cumulative_cycles_ = 0;
};

// Generates k distinct names that all map to one bucket of the store's public
// hash function, by brute-force enumeration of suffix counters. Throws
// std::invalid_argument("hash function not predictable") for the Universal
// kind: its multiplier is drawn at start-up and is not observable.
std::vector<ContentName> adversarial_names(const PitConfig& cfg, std::size_t k,
                                           std::uint64_t seed);

}  // namespace icnsim
