#pragma once

#include <cstdint>
#include <optional>
#include <random>

namespace icnsim {

// Round-trip-time model: either a fixed value or a Gamma distribution
// parameterized by mean and standard deviation (shape = (mean/std)^2,
// scale = std^2/mean), optionally truncated at `cap_s`.
struct RttModel {
  enum class Kind { Deterministic, Gamma };
  Kind kind = Kind::Deterministic;
  double mean_s = 0.25;
  double std_s = 0.0;
  std::optional<double> cap_s;

  static RttModel deterministic(double rtt_s);
  static RttModel gamma(double mean_s, double std_s,
                        std::optional<double> cap_s = std::nullopt);

  double shape() const { return (mean_s / std_s) * (mean_s / std_s); }
  double scale() const { return std_s * std_s / mean_s; }
};

struct Moments {
  double mean = 0;
  double stddev = 0;
};

// Mean and standard deviation of min(RTT, truncate_at_s), the RTT cap applied
// first. Computed by adaptive numerical integration of the Gamma density;
// pass infinity for no timeout truncation.
Moments truncated_rtt_moments(const RttModel& rtt, double truncate_at_s);

// Mean pending-state count sustained by request rate `alpha` (1/s):
//   alpha * ( E[min(RTT,T)] + kappa * sigma(min(RTT,T)) ).
// For deterministic RTT below T this reduces to alpha * RTT.
double state_from_rate(double alpha, const RttModel& rtt, double kappa,
                       double timeout_s);

// Mean pending-state count sustained by carried link load `util_bps`:
//   (U / l) * ( E[RTT] + kappa * sigma(RTT) ).
double state_from_utilization(double util_bps, double packet_len_bits,
                              const RttModel& rtt, double kappa);

// PIT entries needed per interface to sustain line rate C (bits/s):
// 1.25 s / 8000 bit * C, i.e. 1.5625e-4 entries per bit/s.
double memory_requirement(double capacity_bps);

struct UtilizationGap {
  double mean_util = 0;
  double p5 = 0;
  double p95 = 0;
};

// Monte-Carlo study of a fixed outstanding-interest budget (`limit` pending
// states, e.g. the on-average-optimal C*<RTT>/<l>) under varying per-epoch
// RTTs: each epoch the induced data-return demand is limit*l/RTT bits/s, and
// the summary reports its distribution relative to capacity C.
UtilizationGap rate_limit_utilization_gap(double limit, const RttModel& rtt,
                                          double capacity_bps,
                                          double packet_len_bits, int trials,
                                          std::uint64_t seed);

// On-average-optimal outstanding budget for a link: C * E[RTT] / l.
double optimal_state_limit(double capacity_bps, const RttModel& rtt,
                           double packet_len_bits);

// One RTT draw (seconds); deterministic models return the fixed value.
double sample_rtt(const RttModel& rtt, std::mt19937_64& rng);

struct PredictionComparison {
  double predicted = 0;
  double simulated = 0;
  double relative_error = 0;
};

}  // namespace icnsim
