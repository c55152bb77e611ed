#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "icnsim/agents.hpp"
#include "icnsim/config.hpp"
#include "icnsim/engine.hpp"
#include "icnsim/metrics.hpp"
#include "icnsim/scenarios.hpp"

using namespace icnsim;

namespace {

std::string temp_dir(const std::string& tag) {
  auto dir = std::filesystem::temp_directory_path() / ("icnsim_test_" + tag);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir.string();
}

RunResult small_run(std::uint64_t seed) {
  RouterConfig cfg;
  cfg.pit.capacity = 10000;
  cfg.mem_limit = 64 << 20;
  std::vector<RouterConfig> cfgs(2, cfg);
  Chain chain = build_chain(2, {100e6, 100e6, 100e6}, cfgs,
                            {ContentName::parse("/content")});
  PoissonParams pp;
  pp.alpha = 300;
  pp.prefix = ContentName::parse("/content");
  RepositoryParams rp;
  rp.served = {{ContentName::parse("/content"), 0, 1000}};
  std::vector<std::pair<int, std::unique_ptr<Agent>>> agents;
  agents.emplace_back(chain.consumer, make_poisson_consumer(pp));
  agents.emplace_back(chain.repo, make_repository(rp));
  EngineParams params;
  params.duration = secs(3);
  params.seed = seed;
  return run_simulation(std::move(chain.topo), std::move(agents), params);
}

}  // namespace

TEST_CASE("csv export round-trips through parse and summarize") {
  RunResult r = small_run(17);
  std::string dir = temp_dir("roundtrip");
  export_csv(r.series, dir);
  MetricsSeries back = parse_csv(dir);
  CHECK(summarize(back) == summarize(r.series));
}

TEST_CASE("re-export of the same run is byte-identical") {
  RunResult r1 = small_run(23);
  RunResult r2 = small_run(23);
  std::string d1 = temp_dir("bytes1");
  std::string d2 = temp_dir("bytes2");
  export_csv(r1.series, d1);
  export_csv(r2.series, d2);
  for (const auto& name :
       {"pit.csv", "retransmits.csv", "expiries.csv", "cpu.csv", "memory.csv",
        "goodput.csv", "link.csv", "drops.csv", "files.csv", "meta.csv"}) {
    std::ifstream a(d1 + "/" + name, std::ios::binary);
    std::ifstream b(d2 + "/" + name, std::ios::binary);
    std::string as((std::istreambuf_iterator<char>(a)),
                   std::istreambuf_iterator<char>());
    std::string bs((std::istreambuf_iterator<char>(b)),
                   std::istreambuf_iterator<char>());
    REQUIRE(!as.empty());
    CHECK(as == bs);
  }
}

TEST_CASE("row counts follow duration / sample interval") {
  RunResult r = small_run(5);
  CHECK(r.series.n_samples == 30);  // 3 s at 100 ms
  std::string dir = temp_dir("rows");
  export_csv(r.series, dir);
  std::ifstream in(dir + "/pit.csv");
  std::string line;
  std::getline(in, line);
  CHECK(line == "time_s,node,metric,value");
  std::size_t rows = 0;
  while (std::getline(in, line)) {
    if (!line.empty()) ++rows;
  }
  CHECK(rows == 30 * r.series.node_labels.size());
}

TEST_CASE("cumulative counters never decrease") {
  RunResult r = small_run(31);
  auto non_decreasing = [](const std::vector<double>& row) {
    for (std::size_t i = 1; i < row.size(); ++i) {
      if (row[i] < row[i - 1]) return false;
    }
    return true;
  };
  for (const auto& row : r.series.retransmits) CHECK(non_decreasing(row));
  for (const auto& row : r.series.pit_expiries) CHECK(non_decreasing(row));
  for (const auto& [reason, rows] : r.series.drops) {
    for (const auto& row : rows) CHECK(non_decreasing(row));
  }
}

TEST_CASE("goodput stays within link throughput") {
  RunResult r = small_run(41);
  auto consumer = *r.series.node_index("consumer");
  // Goodput at the consumer is bounded by what its access link carried.
  double goodput = 0, carried = 0;
  for (double v : r.series.goodput_bits[consumer]) goodput += v;
  for (double v : r.series.link_bits[1]) carried += v;  // consumer<-hop1
  CHECK(goodput <= carried);
  CHECK(goodput > 0);
}

TEST_CASE("config parser: defaults, overrides, rejects") {
  ScenarioParams p;
  apply_overrides(p, parse_config_text(""));  // empty file: pure defaults
  CHECK(p.pit_capacity == 120000);

  apply_overrides(p, parse_config_text("pit_capacity = 1000\n# comment\n"));
  CHECK(p.pit_capacity == 1000);

  CHECK_THROWS_WITH_AS(apply_overrides(p, parse_config_text("bogus_key = 1")),
                       "config: unknown key: bogus_key", ConfigError);
  CHECK_THROWS_WITH_AS(
      apply_overrides(p, parse_config_text("pit_capacity = -5")),
      "config: pit_capacity must be positive", ConfigError);
  CHECK_THROWS_AS(apply_overrides(p, parse_config_text("pit_capacity = x")),
                  ConfigError);
  CHECK_THROWS_AS(parse_config_text("pit_capacity = 1\npit_capacity = 2"),
                  ConfigError);
  CHECK_THROWS_AS(parse_config_text("not a key value line"), ConfigError);
}

TEST_CASE("scenario serialization reloads to an identical run") {
  Scenario sc = make_scenario("attack-intercept", true);
  std::string text = serialize_scenario(sc);
  Scenario reloaded = load_scenario_text(text);
  CHECK(reloaded.id == sc.id);
  RunResult a = run_scenario(sc);
  RunResult b = run_scenario(reloaded);
  CHECK(a.trace_hash == b.trace_hash);
}
