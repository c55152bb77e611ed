#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "icnsim/fib.hpp"
#include "icnsim/packet.hpp"
#include "icnsim/pit.hpp"
#include "icnsim/time.hpp"

namespace icnsim {

// Piecewise-constant fraction of nominal CPU capacity available over time.
// Segments are (start, fraction) sorted by start; the last extends forever.
class CpuProfile {
 public:
  CpuProfile() : segments_{{0, 1.0}} {}
  explicit CpuProfile(std::vector<std::pair<SimTime, double>> segments);

  static CpuProfile constant(double fraction);
  // fraction = `low` for t in [phase + k*period, phase + k*period + low_span),
  // else 1.0.
  static CpuProfile square_wave(double low, SimTime period, SimTime low_span,
                                SimTime phase, SimTime horizon);

  double fraction_at(SimTime t) const;
  // Completion instant (exact ns) of `cycles` of work started at start_ns,
  // integrating cpu_hz * fraction across segments.
  double advance(double start_ns, double cycles, double cpu_hz) const;
  const std::vector<std::pair<SimTime, double>>& segments() const {
    return segments_;
  }

 private:
  std::vector<std::pair<SimTime, double>> segments_;
};

struct RateLimit {
  enum class Scope { PerFace, PerFacePrefix };
  Scope scope = Scope::PerFace;
  double max_rate = 100;  // accepted interests per second per scope key
};

struct RouterConfig {
  double cpu_hz = 2.4e9;
  std::uint64_t mem_limit = 3ull << 30;
  PitConfig pit;
  std::uint32_t pit_entry_bytes = 120;
  SimTime interest_timeout = secs(4);  // T_i: cap on granted PIT lifetime
  std::optional<RateLimit> rate_limit;
  std::size_t cs_capacity = 0;
  bool forward_refreshes = false;  // re-forward interests that aggregated
  std::optional<std::size_t> input_queue_limit;  // packets; empty = unbounded
  std::uint64_t pipeline_cycles = 1000;  // fixed per-packet overhead
  SimTime fib_apply_delay = 0;           // announcement convergence time
  SimTime announce_ttl = 0;              // soft-state route lifetime (0 = none)

  void validate() const;
};

enum class DropReason : std::uint8_t {
  RateLimited,
  PitFull,
  NoRoute,
  Unsolicited,
  MemoryExhausted,
};
constexpr int kDropReasonCount = 5;
const char* drop_reason_name(DropReason r);

struct ForwardInterest {
  FaceId face;
  Interest interest;
};
struct SendData {
  FaceId face;
  DataPacket data;
};
struct Drop {
  DropReason reason;
};
using Emission = std::variant<ForwardInterest, SendData, Drop>;

struct PipelineResult {
  std::vector<Emission> emissions;
  std::uint64_t cycles = 0;
};

struct ServiceInterval {
  SimTime completion = 0;  // event timestamp (ceil of exact end)
  double start_ns = 0;     // exact busy interval for utilization metering
  double end_ns = 0;
};

// Per-node forwarding state machine: Interest pipeline (rate limit -> CS ->
// PIT -> FIB), Data pipeline (PIT match -> reverse-path fan-out), soft-state
// timers and route announcements, all metered in CPU cycles.
class Router {
 public:
  explicit Router(RouterConfig cfg);

  PipelineResult on_interest(FaceId face, const Interest& interest,
                             SimTime now);
  PipelineResult on_data(FaceId face, const DataPacket& data, SimTime now);

  // Expires due PIT entries; the returned entries are the timeouts.
  struct TimerResult {
    std::vector<PitEntry> expired;
    std::uint64_t cycles = 0;
  };
  TimerResult on_timer(SimTime now);

  // Route registration toward `face` (used by announce packets and static
  // scenario wiring). Takes effect immediately; the engine applies the
  // config's fib_apply_delay by scheduling the call. ttl == 0 is permanent.
  void fib_announce(const ContentName& prefix, FaceId face, SimTime now,
                    SimTime ttl = 0);

  // Serial-CPU service model: work starts when the CPU frees and runs at
  // cpu_hz scaled by the profile.
  ServiceInterval schedule_processing(SimTime arrival, std::uint64_t op_cycles);

  bool rate_limiter_check(FaceId face, const ContentName& name, SimTime now);

  const RouterConfig& config() const { return cfg_; }
  PitStore& pit() { return pit_; }
  Fib& fib() { return fib_; }
  ContentStore& cs() { return cs_; }
  void set_profile(CpuProfile p) { profile_ = std::move(p); }
  const CpuProfile& profile() const { return profile_; }

  double busy_until_ns() const { return busy_until_; }
  std::uint64_t retransmits_seen() const { return retransmits_seen_; }
  std::uint64_t pit_expiries() const { return pit_expiries_; }
  std::uint64_t overwrites() const { return overwrites_; }
  std::uint64_t drops(DropReason r) const {
    return drop_counts_[static_cast<int>(r)];
  }
  std::uint64_t pit_memory_bytes() const {
    return pit_.size() * cfg_.pit_entry_bytes;
  }

 private:
  struct TokenBucket {
    double tokens;
    SimTime last;
  };
  using LimiterKey = std::pair<FaceId, std::string>;

  RouterConfig cfg_;
  PitStore pit_;
  Fib fib_;
  ContentStore cs_;
  CpuProfile profile_;
  double busy_until_ = 0;
  std::map<LimiterKey, TokenBucket> buckets_;
  std::uint64_t retransmits_seen_ = 0;
  std::uint64_t pit_expiries_ = 0;
  std::uint64_t overwrites_ = 0;
  std::uint64_t drop_counts_[kDropReasonCount] = {};
};

}  // namespace icnsim
