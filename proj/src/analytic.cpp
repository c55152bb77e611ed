#include "icnsim/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>
#include <vector>

namespace icnsim {

RttModel RttModel::deterministic(double rtt_s) {
  if (rtt_s <= 0) throw std::invalid_argument("RttModel: rtt must be > 0");
  RttModel m;
  m.kind = Kind::Deterministic;
  m.mean_s = rtt_s;
  m.std_s = 0;
  return m;
}

RttModel RttModel::gamma(double mean_s, double std_s,
                         std::optional<double> cap_s) {
  if (mean_s <= 0 || std_s < 0) {
    throw std::invalid_argument("RttModel: mean must be > 0, std >= 0");
  }
  RttModel m;
  m.kind = std_s == 0 ? Kind::Deterministic : Kind::Gamma;
  m.mean_s = mean_s;
  m.std_s = std_s;
  m.cap_s = cap_s;
  return m;
}

namespace {

double adaptive_simpson(const std::function<double(double)>& f, double a,
                        double b, double fa, double fm, double fb, double whole,
                        double tol, int depth) {
  double m = 0.5 * (a + b);
  double lm = 0.5 * (a + m);
  double rm = 0.5 * (m + b);
  double flm = f(lm);
  double frm = f(rm);
  double left = (m - a) / 6.0 * (fa + 4 * flm + fm);
  double right = (b - m) / 6.0 * (fm + 4 * frm + fb);
  double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol) {
    return left + right + delta / 15.0;
  }
  return adaptive_simpson(f, a, m, fa, flm, fm, left, tol / 2, depth - 1) +
         adaptive_simpson(f, m, b, fm, frm, fb, right, tol / 2, depth - 1);
}

double integrate(const std::function<double(double)>& f, double a, double b,
                 double tol) {
  if (b <= a) return 0;
  double fa = f(a);
  double fb = f(b);
  double m = 0.5 * (a + b);
  double fm = f(m);
  double whole = (b - a) / 6.0 * (fa + 4 * fm + fb);
  return adaptive_simpson(f, a, b, fa, fm, fb, whole, tol, 48);
}

// Moments of min(X, M) for X ~ Gamma(k, theta). Partial moments
// integral_0^M x^(p+k-1) e^(-x/theta) dx are evaluated directly when the
// density is bounded (k >= 1); for k < 1 the substitution x = u^(1/k)
// removes the x^(k-1) singularity at zero:
//   integral = (1/k) integral_0^(M^k) u^(p/k) e^(-u^(1/k)/theta) du.
struct GammaTruncation {
  double below_mass;   // P(X < M)
  double m1_below;     // E[X  ; X < M]
  double m2_below;     // E[X^2; X < M]
};

GammaTruncation gamma_truncated(double k, double theta, double M) {
  double log_norm = -std::lgamma(k) - k * std::log(theta);
  auto piece = [&](double p) {
    double raw;
    if (k >= 1) {
      auto g = [&](double x) {
        if (x <= 0) return 0.0;
        return std::exp((p + k - 1) * std::log(x) - x / theta);
      };
      raw = integrate(g, 0, M, 1e-13 * std::max(1.0, M));
    } else {
      double upper = std::pow(M, k);
      auto g = [&](double u) {
        if (u <= 0) return p == 0 ? 1.0 : 0.0;
        double x = std::pow(u, 1.0 / k);
        return std::pow(u, p / k) * std::exp(-x / theta);
      };
      raw = integrate(g, 0, upper, 1e-13 * std::max(1.0, upper)) / k;
    }
    return raw * std::exp(log_norm);
  };
  GammaTruncation t;
  t.below_mass = piece(0);
  t.m1_below = piece(1);
  t.m2_below = piece(2);
  return t;
}

Moments gamma_min_moments(double k, double theta, double M) {
  double mean = k * theta;
  double sd = std::sqrt(k) * theta;
  // Beyond the far tail the truncation is invisible; this also keeps the
  // integration interval commensurate with the distribution scale.
  if (!std::isfinite(M) || M >= mean + 40 * sd) {
    return {mean, sd};
  }
  GammaTruncation t = gamma_truncated(k, theta, M);
  double tail = std::max(0.0, 1.0 - t.below_mass);
  double m1 = t.m1_below + M * tail;
  double m2 = t.m2_below + M * M * tail;
  return {m1, std::sqrt(std::max(0.0, m2 - m1 * m1))};
}

}  // namespace

Moments truncated_rtt_moments(const RttModel& rtt, double truncate_at_s) {
  double cutoff = truncate_at_s;
  if (rtt.cap_s) cutoff = std::min(cutoff, *rtt.cap_s);
  if (rtt.kind == RttModel::Kind::Deterministic || rtt.std_s == 0) {
    return {std::min(rtt.mean_s, cutoff), 0.0};
  }
  return gamma_min_moments(rtt.shape(), rtt.scale(), cutoff);
}

double state_from_rate(double alpha, const RttModel& rtt, double kappa,
                       double timeout_s) {
  if (alpha < 0 || kappa < 0 || timeout_s <= 0) {
    throw std::invalid_argument("state_from_rate: negative input");
  }
  Moments m = truncated_rtt_moments(rtt, timeout_s);
  return alpha * (m.mean + kappa * m.stddev);
}

double state_from_utilization(double util_bps, double packet_len_bits,
                              const RttModel& rtt, double kappa) {
  if (util_bps < 0 || kappa < 0) {
    throw std::invalid_argument("state_from_utilization: negative input");
  }
  if (packet_len_bits <= 0) {
    throw std::invalid_argument("state_from_utilization: packet length must be > 0");
  }
  Moments m =
      truncated_rtt_moments(rtt, std::numeric_limits<double>::infinity());
  return util_bps / packet_len_bits * (m.mean + kappa * m.stddev);
}

double memory_requirement(double capacity_bps) {
  if (capacity_bps < 0) {
    throw std::invalid_argument("memory_requirement: capacity must be >= 0");
  }
  return 1.25 / 8000.0 * capacity_bps;
}

double optimal_state_limit(double capacity_bps, const RttModel& rtt,
                           double packet_len_bits) {
  Moments m =
      truncated_rtt_moments(rtt, std::numeric_limits<double>::infinity());
  return capacity_bps * m.mean / packet_len_bits;
}

double sample_rtt(const RttModel& rtt, std::mt19937_64& rng) {
  double v;
  if (rtt.kind == RttModel::Kind::Deterministic || rtt.std_s == 0) {
    v = rtt.mean_s;
  } else {
    std::gamma_distribution<double> dist(rtt.shape(), rtt.scale());
    v = dist(rng);
  }
  if (rtt.cap_s) v = std::min(v, *rtt.cap_s);
  return v;
}

UtilizationGap rate_limit_utilization_gap(double limit, const RttModel& rtt,
                                          double capacity_bps,
                                          double packet_len_bits, int trials,
                                          std::uint64_t seed) {
  if (trials < 1) {
    throw std::invalid_argument("rate_limit_utilization_gap: trials must be >= 1");
  }
  if (limit < 0 || capacity_bps <= 0 || packet_len_bits <= 0) {
    throw std::invalid_argument("rate_limit_utilization_gap: invalid parameters");
  }
  std::mt19937_64 rng(seed);
  std::vector<double> utils;
  utils.reserve(static_cast<std::size_t>(trials));
  double sum = 0;
  for (int i = 0; i < trials; ++i) {
    double r = sample_rtt(rtt, rng);
    double demand_bps = limit * packet_len_bits / r;
    double u = demand_bps / capacity_bps;
    utils.push_back(u);
    sum += u;
  }
  std::sort(utils.begin(), utils.end());
  auto pct = [&](double q) {
    std::size_t idx = static_cast<std::size_t>(q * (utils.size() - 1) + 0.5);
    return utils[idx];
  };
  return {sum / trials, pct(0.05), pct(0.95)};
}

}  // namespace icnsim
