#include "icnsim/router.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace icnsim {

CpuProfile::CpuProfile(std::vector<std::pair<SimTime, double>> segments)
    : segments_(std::move(segments)) {
  if (segments_.empty() || segments_.front().first != 0) {
    throw std::invalid_argument("CpuProfile: first segment must start at 0");
  }
  for (std::size_t i = 0; i < segments_.size(); ++i) {
    if (segments_[i].second <= 0 || segments_[i].second > 1.0) {
      throw std::invalid_argument("CpuProfile: fractions must be in (0, 1]");
    }
    if (i > 0 && segments_[i].first <= segments_[i - 1].first) {
      throw std::invalid_argument("CpuProfile: segments must be increasing");
    }
  }
}

CpuProfile CpuProfile::constant(double fraction) {
  return CpuProfile({{0, fraction}});
}

CpuProfile CpuProfile::square_wave(double low, SimTime period,
                                   SimTime low_span, SimTime phase,
                                   SimTime horizon) {
  if (low_span == 0 || low_span >= period) {
    throw std::invalid_argument("CpuProfile: low_span must be in (0, period)");
  }
  phase %= period;
  std::vector<std::pair<SimTime, double>> segs;
  segs.emplace_back(0, 1.0);
  for (SimTime start = phase; start < horizon + period; start += period) {
    if (start == 0) {
      segs.clear();
    }
    segs.emplace_back(start, low);
    segs.emplace_back(start + low_span, 1.0);
  }
  return CpuProfile(std::move(segs));
}

double CpuProfile::fraction_at(SimTime t) const {
  double f = segments_.front().second;
  for (const auto& [start, frac] : segments_) {
    if (start > t) break;
    f = frac;
  }
  return f;
}

double CpuProfile::advance(double start_ns, double cycles,
                           double cpu_hz) const {
  double t = start_ns;
  double remaining = cycles;
  std::size_t i = segments_.size();
  while (i > 1 && static_cast<double>(segments_[i - 1].first) > t) --i;
  for (;; ++i) {
    double frac = segments_[i - 1].second;
    double rate = cpu_hz * frac / 1e9;  // cycles per ns
    double seg_end = i < segments_.size()
                         ? static_cast<double>(segments_[i].first)
                         : std::numeric_limits<double>::infinity();
    double available = (seg_end - t) * rate;
    if (remaining <= available || !std::isfinite(seg_end)) {
      return t + remaining / rate;
    }
    remaining -= available;
    t = seg_end;
  }
}

void RouterConfig::validate() const {
  if (cpu_hz <= 0) throw std::invalid_argument("RouterConfig: cpu_hz must be > 0");
  if (interest_timeout == 0) {
    throw std::invalid_argument("RouterConfig: interest_timeout must be > 0");
  }
  if (static_cast<std::uint64_t>(pit.capacity) * pit_entry_bytes > mem_limit) {
    throw std::invalid_argument(
        "RouterConfig: pit capacity * pit_entry_bytes exceeds mem_limit");
  }
}

const char* drop_reason_name(DropReason r) {
  switch (r) {
    case DropReason::RateLimited: return "rate_limited";
    case DropReason::PitFull: return "pit_full";
    case DropReason::NoRoute: return "no_route";
    case DropReason::Unsolicited: return "unsolicited";
    case DropReason::MemoryExhausted: return "memory_exhausted";
  }
  return "unknown";
}

Router::Router(RouterConfig cfg)
    : cfg_(std::move(cfg)), pit_(cfg_.pit), cs_(cfg_.cs_capacity) {
  cfg_.validate();
}

bool Router::rate_limiter_check(FaceId face, const ContentName& name,
                                SimTime now) {
  if (!cfg_.rate_limit) {
    throw std::logic_error("rate_limiter_check: no rate limit configured");
  }
  const RateLimit& rl = *cfg_.rate_limit;
  LimiterKey key{face, rl.scope == RateLimit::Scope::PerFacePrefix
                           ? name.components().front()
                           : std::string()};
  auto [it, fresh] = buckets_.try_emplace(key, TokenBucket{rl.max_rate, now});
  TokenBucket& b = it->second;
  if (!fresh) {
    double dt = to_seconds(now - b.last);
    b.tokens = std::min(rl.max_rate, b.tokens + rl.max_rate * dt);
    b.last = now;
  }
  if (b.tokens >= 1.0) {
    b.tokens -= 1.0;
    return true;
  }
  return false;
}

PipelineResult Router::on_interest(FaceId face, const Interest& interest,
                                   SimTime now) {
  PipelineResult r;
  r.cycles = cfg_.pipeline_cycles;

  if (cfg_.rate_limit && !rate_limiter_check(face, interest.name, now)) {
    drop_counts_[static_cast<int>(DropReason::RateLimited)]++;
    r.emissions.push_back(Drop{DropReason::RateLimited});
    return r;
  }

  if (cfg_.cs_capacity > 0) {
    if (auto size = cs_.lookup(interest.name)) {
      r.emissions.push_back(SendData{face, DataPacket{interest.name, *size}});
      return r;
    }
  }

  PitEntry entry;
  entry.name = interest.name;
  entry.downstream_faces = {face};
  entry.insert_time = now;
  entry.expiry = now + std::min(interest.lifetime, cfg_.interest_timeout);
  auto ins = pit_.insert(std::move(entry), now);
  r.cycles += ins.cost.cycles;

  switch (ins.outcome) {
    case PitInsertOutcome::Aggregated: {
      retransmits_seen_++;
      if (cfg_.forward_refreshes) {
        if (auto hop = fib_.longest_prefix_match(interest.name, now)) {
          r.emissions.push_back(ForwardInterest{*hop, interest});
        }
      }
      break;
    }
    case PitInsertOutcome::Overwrote:
      overwrites_++;
      [[fallthrough]];
    case PitInsertOutcome::Inserted: {
      if (auto hop = fib_.longest_prefix_match(interest.name, now)) {
        r.emissions.push_back(ForwardInterest{*hop, interest});
      } else {
        drop_counts_[static_cast<int>(DropReason::NoRoute)]++;
        r.emissions.push_back(Drop{DropReason::NoRoute});
      }
      break;
    }
    case PitInsertOutcome::RejectedFull: {
      drop_counts_[static_cast<int>(DropReason::PitFull)]++;
      r.emissions.push_back(Drop{DropReason::PitFull});
      break;
    }
  }
  return r;
}

PipelineResult Router::on_data(FaceId /*face*/, const DataPacket& data,
                               SimTime now) {
  PipelineResult r;
  r.cycles = cfg_.pipeline_cycles;

  auto found = pit_.lookup(data.name, now);
  r.cycles += found.cost.cycles;
  if (!found.entry) {
    drop_counts_[static_cast<int>(DropReason::Unsolicited)]++;
    r.emissions.push_back(Drop{DropReason::Unsolicited});
    return r;
  }
  auto rem = pit_.remove(data.name);
  r.cycles += rem.cost.cycles;
  for (FaceId f : found.entry->downstream_faces) {
    r.emissions.push_back(SendData{f, data});
  }
  if (cfg_.cs_capacity > 0) {
    cs_.insert(data.name, data.payload_size);
  }
  return r;
}

Router::TimerResult Router::on_timer(SimTime now) {
  auto res = pit_.expire(now);
  pit_expiries_ += res.expired.size();
  return {std::move(res.expired), res.cost.cycles};
}

void Router::fib_announce(const ContentName& prefix, FaceId face, SimTime now,
                          SimTime ttl) {
  fib_.announce(prefix, face, now, ttl == 0 ? cfg_.announce_ttl : ttl);
}

ServiceInterval Router::schedule_processing(SimTime arrival,
                                            std::uint64_t op_cycles) {
  double start = std::max(static_cast<double>(arrival), busy_until_);
  double end = op_cycles == 0
                   ? start
                   : profile_.advance(start, static_cast<double>(op_cycles),
                                      cfg_.cpu_hz);
  busy_until_ = end;
  ServiceInterval s;
  s.start_ns = start;
  s.end_ns = end;
  s.completion = static_cast<SimTime>(std::ceil(end));
  return s;
}

}  // namespace icnsim
