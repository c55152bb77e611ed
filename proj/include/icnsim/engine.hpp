#pragma once

#include <cstdint>
#include <deque>
#include <map>
#include <memory>
#include <optional>
#include <queue>
#include <string>
#include <vector>

#include "icnsim/agent.hpp"
#include "icnsim/metrics.hpp"
#include "icnsim/topology.hpp"

namespace icnsim {

struct EngineParams {
  SimTime duration = secs(60);
  std::uint64_t seed = 1;
  SimTime sample_interval = ms(100);
};

struct RunResult {
  MetricsSeries series;
  // Per-node name logs ("consumer" requests, attacker observations, ...).
  std::map<std::string, std::vector<std::string>> name_logs;
  std::uint64_t trace_hash = 0;
};

// Derives independent generator seeds from the master seed; adding an agent
// never perturbs another component's stream.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t tag);

// Deterministic single-threaded event engine. Events are totally ordered by
// (time, priority class, insertion sequence); at equal times Data is
// processed before timers, timers before Interests.
class Engine {
 public:
  Engine(Topology topo,
         std::vector<std::pair<int, std::unique_ptr<Agent>>> agents,
         EngineParams params);
  ~Engine();

  RunResult run();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

// Convenience wrapper: build, run, collect.
RunResult run_simulation(Topology topo,
                         std::vector<std::pair<int, std::unique_ptr<Agent>>> agents,
                         EngineParams params);

}  // namespace icnsim
