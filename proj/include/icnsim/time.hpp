#pragma once

#include <cstdint>

namespace icnsim {

// Simulation clock: integer nanoseconds since run start. Event timestamps are
// integral so equal-time ties resolve through the event priority classes; CPU
// busy intervals are tracked in double ns internally for sub-ns cycle
// fractions.
using SimTime = std::uint64_t;

constexpr SimTime kNsPerUs = 1000;
constexpr SimTime kNsPerMs = 1000ull * 1000;
constexpr SimTime kNsPerSec = 1000ull * 1000 * 1000;

constexpr SimTime us(std::uint64_t v) { return v * kNsPerUs; }
constexpr SimTime ms(std::uint64_t v) { return v * kNsPerMs; }
constexpr SimTime secs(std::uint64_t v) { return v * kNsPerSec; }

inline SimTime from_seconds(double s) {
  return static_cast<SimTime>(s * 1e9 + 0.5);
}

inline double to_seconds(SimTime t) { return static_cast<double>(t) / 1e9; }

}  // namespace icnsim
