#include "icnsim/pit.hpp"

#include <algorithm>
#include <stdexcept>

namespace icnsim {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

std::uint64_t fmix64(std::uint64_t h) {
  h ^= h >> 33;
  h *= 0xFF51AFD7ED558CCDull;
  h ^= h >> 33;
  h *= 0xC4CEB9FE1A85EC53ull;
  h ^= h >> 33;
  return h;
}

std::uint64_t draw_odd_multiplier(std::uint64_t seed) {
  return splitmix64(seed) | 1ull;
}

void add_face(std::vector<FaceId>& faces, FaceId f) {
  auto it = std::lower_bound(faces.begin(), faces.end(), f);
  if (it == faces.end() || *it != f) faces.insert(it, f);
}

}  // namespace

std::uint64_t name_hash(const ContentName& name, std::uint64_t multiplier) {
  std::uint64_t h = 0;
  for (unsigned char b : name.hash_bytes()) {
    h = h * multiplier + b;
  }
  return h;
}

std::size_t pit_bucket(const ContentName& name, std::uint64_t multiplier,
                       std::size_t bucket_count) {
  return static_cast<std::size_t>(fmix64(name_hash(name, multiplier)) %
                                  bucket_count);
}

PitStore::PitStore(PitConfig cfg) : cfg_(cfg) {
  if (cfg_.bucket_count == 0 || cfg_.capacity == 0) {
    throw std::invalid_argument("PitStore: bucket_count and capacity must be >= 1");
  }
  multiplier_ = cfg_.kind == PitKind::Universal
                    ? draw_odd_multiplier(cfg_.universal_seed)
                    : kPitHashMultiplier;
  chained_ = cfg_.kind != PitKind::CollisionOverwrite;
  buckets_.resize(cfg_.bucket_count);
}

std::size_t PitStore::bucket_of(const ContentName& name) const {
  return pit_bucket(name, multiplier_, cfg_.bucket_count);
}

OpCost PitStore::charge(std::uint64_t examined) {
  std::uint64_t cycles = cfg_.base_cost * std::max<std::uint64_t>(1, examined);
  cumulative_cycles_ += cycles;
  return OpCost{cycles};
}

PitEntry* PitStore::find(const ContentName& name, std::size_t bucket,
                         std::size_t* position) {
  auto& chain = buckets_[bucket];
  for (std::size_t i = 0; i < chain.size(); ++i) {
    if (chain[i].name == name) {
      if (position) *position = i + 1;
      return &chain[i];
    }
  }
  if (position) *position = chain.size();
  return nullptr;
}

void PitStore::heap_push(const PitEntry& e) {
  expiry_heap_.push(HeapItem{e.expiry, seq_++, e.name});
}

void PitStore::prune_heap() {
  // Drop heap items whose entry is gone or later refreshed to another expiry.
  while (!expiry_heap_.empty()) {
    const HeapItem& top = expiry_heap_.top();
    std::size_t pos = 0;
    PitEntry* e = find(top.name, bucket_of(top.name), &pos);
    if (e && e->expiry == top.expiry) break;
    expiry_heap_.pop();
  }
}

PitInsertResult PitStore::insert(PitEntry entry, SimTime now) {
  if (entry.expiry <= now) {
    throw std::invalid_argument("PitStore::insert: entry already expired");
  }
  std::sort(entry.downstream_faces.begin(), entry.downstream_faces.end());
  std::size_t bucket = bucket_of(entry.name);
  auto& chain = buckets_[bucket];

  std::size_t scanned = 0;
  PitEntry* existing = find(entry.name, bucket, &scanned);
  if (existing) {
    for (FaceId f : entry.downstream_faces) add_face(existing->downstream_faces, f);
    existing->expiry = std::max(existing->expiry, entry.expiry);
    existing->refresh_count++;
    heap_push(*existing);
    std::uint64_t examined = chained_ ? 1 + scanned : 1;
    return {PitInsertOutcome::Aggregated, charge(examined)};
  }

  if (!chained_ && !chain.empty()) {
    // Single-slot bucket held by a different name: overwrite, state lost.
    chain.clear();
    --live_;
    chain.push_back(std::move(entry));
    heap_push(chain.back());
    ++live_;
    return {PitInsertOutcome::Overwrote, charge(1)};
  }

  if (live_ >= cfg_.capacity) {
    std::uint64_t examined = chained_ ? 1 + scanned : 1;
    return {PitInsertOutcome::RejectedFull, charge(examined)};
  }

  chain.push_back(std::move(entry));
  heap_push(chain.back());
  ++live_;
  std::uint64_t examined = chained_ ? 1 + scanned : 1;
  return {PitInsertOutcome::Inserted, charge(examined)};
}

PitLookupResult PitStore::lookup(const ContentName& name, SimTime now) {
  std::size_t bucket = bucket_of(name);
  std::size_t examined = 0;
  PitEntry* e = find(name, bucket, &examined);
  if (!chained_) examined = 1;
  if (!e || e->expiry <= now) {
    return {std::nullopt, charge(examined)};
  }
  return {*e, charge(examined)};
}

PitRemoveResult PitStore::remove(const ContentName& name) {
  std::size_t bucket = bucket_of(name);
  auto& chain = buckets_[bucket];
  for (std::size_t i = 0; i < chain.size(); ++i) {
    if (chain[i].name == name) {
      chain.erase(chain.begin() + static_cast<std::ptrdiff_t>(i));
      --live_;
      return {true, charge(chained_ ? i + 1 : 1)};
    }
  }
  return {false, charge(chained_ ? std::max<std::size_t>(1, chain.size()) : 1)};
}

PitExpireResult PitStore::expire(SimTime now) {
  PitExpireResult result;
  while (true) {
    prune_heap();
    if (expiry_heap_.empty() || expiry_heap_.top().expiry > now) break;
    HeapItem item = expiry_heap_.top();
    expiry_heap_.pop();
    std::size_t bucket = bucket_of(item.name);
    auto& chain = buckets_[bucket];
    for (std::size_t i = 0; i < chain.size(); ++i) {
      if (chain[i].name == item.name) {
        result.expired.push_back(std::move(chain[i]));
        chain.erase(chain.begin() + static_cast<std::ptrdiff_t>(i));
        --live_;
        break;
      }
    }
  }
  result.cost = charge(1 + result.expired.size());
  return result;
}

std::optional<SimTime> PitStore::next_expiry() const {
  auto* self = const_cast<PitStore*>(this);
  self->prune_heap();
  if (expiry_heap_.empty()) return std::nullopt;
  return expiry_heap_.top().expiry;
}

std::vector<ContentName> adversarial_names(const PitConfig& cfg, std::size_t k,
                                           std::uint64_t seed) {
  if (cfg.kind == PitKind::Universal) {
    throw std::invalid_argument("hash function not predictable");
  }
  std::vector<ContentName> out;
  out.reserve(k);
  ContentName base({"atk", std::to_string(seed)});
  std::size_t target = 0;
  for (std::uint64_t counter = 0; out.size() < k; ++counter) {
    ContentName candidate = base.child(std::to_string(counter));
    std::size_t b = pit_bucket(candidate, kPitHashMultiplier, cfg.bucket_count);
    if (out.empty()) {
      target = b;
      out.push_back(std::move(candidate));
    } else if (b == target) {
      out.push_back(std::move(candidate));
    }
  }
  return out;
}

}  // namespace icnsim
