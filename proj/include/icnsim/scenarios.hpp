#pragma once

#include <memory>
#include <string>
#include <vector>

#include "icnsim/analytic.hpp"
#include "icnsim/config.hpp"
#include "icnsim/engine.hpp"

namespace icnsim {

// Complete knob surface of the experiment catalog. Scenario builders pick the
// subset they need; config files override any field by name.
struct ScenarioParams {
  // run control
  double duration_s = 60;
  std::uint64_t seed = 1;
  double sample_interval_s = 0.1;

  // router hardware
  double cpu_hz = 2.4e9;
  double mem_limit_bytes = 3.0 * (1ull << 30);
  double pit_capacity = 120000;
  double pit_bucket_count = 1024;
  std::string pit_kind = "chaining";  // chaining | overwrite | universal
  double base_cost_cycles = 500;
  double pipeline_cycles = 10000;
  double pit_entry_bytes = 120;
  double interest_timeout_s = 4.0;
  bool forward_refreshes = true;
  double input_queue_limit = 0;  // packets; 0 = unbounded
  double cs_capacity = 0;
  double fib_apply_delay_s = 0;
  std::string rate_limit_scope = "none";  // none | face | face_prefix
  double rate_limit_per_s = 100;

  // links
  double link_capacity_bps = 100e6;
  double propagation_ms = 1.0;
  double access_capacity_bps = 20e6;  // shared medium in jam/rate scenarios

  // consumer behavior
  double retransmit_interval_s = 1.0;
  double chunk_bytes = 4096;
  double window = 64;
  double payload_bytes = 1000;  // poisson content size

  // flood workload
  double flood_burst = 2000;
  double flood_pause_s = 6.0;
  double flood_total = 150000;

  // bulk workload
  double files = 500;
  double file_rate = 100;
  double file_mbit = 10;

  // poisson workload
  double poisson_alpha = 500;

  // heterogeneity
  double chain_hops = 5;
  double weak_fraction = 1.0;
  std::string workload = "bulk";  // chain-weak-*: bulk | flood
  double alt_low = 0.1;
  double alt_period_s = 30;
  double alt_low_span_s = 15;

  // adversaries
  double attackers = 3;
  double attack_start_s = 10;
  double attack_rate = 500;
  double blockade_count = 0;  // 0 = pit_capacity
  double churn_interval_s = 1.2;
  double announce_ttl_s = 0.8;
  double service_time_s = 10e-6;
  double slow_service_s = 8e-3;
  double jam_rate = 450;
};

// Rejects unknown keys and invalid values, naming the offending key.
void apply_overrides(ScenarioParams& params, const ConfigMap& overrides);

// Machine-checkable expectation over one run's metrics (pure data).
struct Property {
  enum class Kind {
    PitPeakBetween,           // node; a <= peak <= b
    PitMeanNear,              // node; |mean - a| / a <= b
    PitMeanAtMost,            // node; mean <= a
    RetransSustainedAfter,    // node; >= c per second over [a, a+b]
    RetransNonIncreasingHops, // hop1..hop<n=a> non-increasing, tol b
    HopsRetransDominateHop,   // hop1..hop<a> each >= b * hop<c> retransmits
    UtilizationBelow,         // receiver goodput / (a bps) < b over active span
    SpreadRatioBelow,         // completion std / mean < a; requires b files done
    AllFilesComplete,
    ArgmaxMemHop,             // node label; peak >= b * median of other hops
    GoodputWindowRatioAtMost, // goodput[c,d] <= ratio_a * goodput[a,b] ...
    ZeroGoodputWindow,        // no goodput in [a, b]
    GoodputPositiveWindow,    // some goodput in [a, b]
    ExpiryRateRatioAtLeast,   // node; rate[c,d] >= ratio * rate[a,b] (+abs floor)
    PitRiseAllHopsAtLeast,    // all a hops: mean[c,d] >= b * mean[pre window]
    DeliveryRatioAtLeast,     // consumer deliveries / requests >= a
    LogsEqual,                // name sets of node and node2 match
    LogCountAtLeast,          // node log size >= a
    DropsAtLeast,             // node, reason; total >= a
    NoDropsReason,            // node, reason; total == 0
  };
  Kind kind;
  std::string name;
  std::string node;
  std::string node2;   // second label / drop reason
  double a = 0, b = 0, c = 0, d = 0, ratio = 0;
};

struct PropertyResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct Scenario {
  std::string id;
  std::string description;
  ScenarioParams params;
  bool desk_scale = false;
  std::vector<Property> properties;
};

struct BuiltScenario {
  Topology topo;
  std::vector<std::pair<int, std::unique_ptr<Agent>>> agents;
  EngineParams engine;
};

std::vector<std::string> scenario_ids();

// Builds the named scenario; desk_scale applies the fast-CI parameter set
// before `overrides` are merged.
Scenario make_scenario(const std::string& id, bool desk_scale = false,
                       const ConfigMap& overrides = {});

BuiltScenario instantiate(const Scenario& scenario);

RunResult run_scenario(const Scenario& scenario);

std::vector<PropertyResult> evaluate_properties(const Scenario& scenario,
                                                const RunResult& result);

// Round-trippable textual form (a config file with the scenario id inside).
std::string serialize_scenario(const Scenario& scenario);
Scenario load_scenario_text(const std::string& text);

// Closed-form Eq.-style prediction against the simulated hop-1 PIT average
// over [t0, t1] of a satisfied Poisson workload.
PredictionComparison predict_vs_simulate(const Scenario& scenario, double t0_s,
                                         double t1_s, const RttModel& rtt,
                                         double kappa);

}  // namespace icnsim
