#include <memory>

#include "doctest.h"
#include "icnsim/agents.hpp"
#include "icnsim/engine.hpp"
#include "icnsim/topology.hpp"

using namespace icnsim;

namespace {

RouterConfig fast_router() {
  RouterConfig cfg;
  cfg.cpu_hz = 2.4e9;
  cfg.mem_limit = 256 << 20;
  cfg.pit.capacity = 100000;
  cfg.pipeline_cycles = 1000;
  return cfg;
}

// Single-shot consumer used to measure one request/response round trip.
class OneShot final : public Agent {
 public:
  void start(AgentCtx& ctx) override { ctx.schedule_at(0, 0); }
  void on_timer(AgentCtx& ctx, std::uint64_t) override {
    Interest i;
    i.name = ContentName::parse("/c/x#0");
    i.nonce = ctx.fresh_nonce();
    i.lifetime = secs(4);
    i.issued_at = ctx.now();
    ctx.send(0, i);
    ctx.log_name(i.name);
  }
  void on_packet(AgentCtx& ctx, FaceId, const Packet& p) override {
    if (std::holds_alternative<DataPacket>(p)) {
      delivered_at = ctx.now();
      ctx.add_goodput(
          static_cast<std::uint64_t>(std::get<DataPacket>(p).payload_size) * 8);
    }
  }
  SimTime delivered_at = 0;
};

}  // namespace

TEST_CASE("empty agent set produces an empty run") {
  Topology topo;
  topo.add_agent("lonely");
  EngineParams params;
  params.duration = secs(1);
  RunResult r = run_simulation(std::move(topo), {}, params);
  CHECK(r.series.n_samples == 10);
  CHECK(r.series.goodput_bits[0] == std::vector<double>(10, 0.0));
  CHECK(r.name_logs.empty());
}

TEST_CASE("one interest over a 2-hop chain: hand-summed end-to-end time") {
  // Links: 100 Mbit/s, 1 ms propagation. Interest wire = 100 B -> 8 us
  // serialization; Data payload 1000 B -> 80 us. Router work per packet:
  // pipeline 1000 + pit op 500 cycles at 2.4 GHz = 625 ns, ceil -> 1 event
  // tick carries the sub-us remainder.
  std::vector<RouterConfig> cfgs(2, fast_router());
  Chain chain = build_chain(2, {100e6, 100e6, 100e6}, cfgs,
                            {ContentName::parse("/c")}, ms(1));
  auto consumer = std::make_unique<OneShot>();
  OneShot* consumer_ptr = consumer.get();
  RepositoryParams rp;
  rp.served = {{ContentName::parse("/c"), 0, 1000}};
  rp.service_delay = RttModel::deterministic(10e-6);

  std::vector<std::pair<int, std::unique_ptr<Agent>>> agents;
  agents.emplace_back(chain.consumer, std::move(consumer));
  agents.emplace_back(chain.repo, make_repository(rp));
  EngineParams params;
  params.duration = secs(1);
  Engine engine(std::move(chain.topo), std::move(agents), params);
  RunResult r = engine.run();

  // Up: 3 links x (8 us + 1 ms), 2 router passes (1500 cycles = 625 ns each),
  // repo service 10 us. Down: 3 links x (80 us + 1 ms), 2 router passes
  // (pipeline + lookup + remove = 2000 cycles = 833.3 ns each).
  double expect_up = 3 * (8e-6 + 1e-3) + 2 * 625e-9 + 10e-6;
  double expect_down = 3 * (80e-6 + 1e-3) + 2 * 833.4e-9;
  double expect = expect_up + expect_down;
  REQUIRE(consumer_ptr->delivered_at > 0);
  CHECK(to_seconds(consumer_ptr->delivered_at) ==
        doctest::Approx(expect).epsilon(1e-4));

  // Exactly one delivery, and goodput accounted once.
  double goodput = 0;
  for (double g : r.series.goodput_bits[chain.consumer]) goodput += g;
  CHECK(goodput == 8000);
}

TEST_CASE("same seed twice gives identical traces; different seed diverges") {
  auto build = [] {
    std::vector<RouterConfig> cfgs(2, fast_router());
    Chain chain = build_chain(2, {100e6, 100e6, 100e6}, cfgs,
                              {ContentName::parse("/content")}, ms(1));
    PoissonParams pp;
    pp.alpha = 200;
    pp.prefix = ContentName::parse("/content");
    RepositoryParams rp;
    rp.served = {{ContentName::parse("/content"), 0, 1000}};
    std::vector<std::pair<int, std::unique_ptr<Agent>>> agents;
    agents.emplace_back(chain.consumer, make_poisson_consumer(pp));
    agents.emplace_back(chain.repo, make_repository(rp));
    return std::pair{std::move(chain.topo), std::move(agents)};
  };

  EngineParams params;
  params.duration = secs(5);
  params.seed = 99;
  auto [t1, a1] = build();
  auto [t2, a2] = build();
  RunResult r1 = run_simulation(std::move(t1), std::move(a1), params);
  RunResult r2 = run_simulation(std::move(t2), std::move(a2), params);
  CHECK(r1.trace_hash == r2.trace_hash);
  CHECK(r1.series.pit_size == r2.series.pit_size);
  CHECK(r1.series.goodput_bits == r2.series.goodput_bits);

  params.seed = 100;
  auto [t3, a3] = build();
  RunResult r3 = run_simulation(std::move(t3), std::move(a3), params);
  CHECK(r1.trace_hash != r3.trace_hash);
}

TEST_CASE("link FIFO: back-to-back packets queue one serialization apart") {
  Topology topo;
  int a = topo.add_agent("a");
  int b = topo.add_agent("b");
  topo.connect(a, b, 100e6, ms(1));

  class Burst final : public Agent {
   public:
    void start(AgentCtx& ctx) override { ctx.schedule_at(0, 0); }
    void on_timer(AgentCtx& ctx, std::uint64_t) override {
      for (int i = 0; i < 2; ++i) {
        DataPacket d{ContentName::parse("/x#0"), 1000};  // 80 us each
        ctx.send(0, d);
      }
    }
  };
  class Sink final : public Agent {
   public:
    void on_packet(AgentCtx& ctx, FaceId, const Packet&) override {
      arrivals.push_back(ctx.now());
    }
    std::vector<SimTime> arrivals;
  };
  auto burst = std::make_unique<Burst>();
  auto sink = std::make_unique<Sink>();
  Sink* sink_ptr = sink.get();
  std::vector<std::pair<int, std::unique_ptr<Agent>>> agents;
  agents.emplace_back(a, std::move(burst));
  agents.emplace_back(b, std::move(sink));
  EngineParams params;
  params.duration = secs(1);
  Engine engine(std::move(topo), std::move(agents), params);
  engine.run();

  REQUIRE(sink_ptr->arrivals.size() == 2);
  CHECK(sink_ptr->arrivals[0] == us(80) + ms(1));
  CHECK(sink_ptr->arrivals[1] == us(160) + ms(1));
}

TEST_CASE("broadcast link delivers copies to all other members") {
  Topology topo;
  int a = topo.add_agent("a");
  int b = topo.add_agent("b");
  int c = topo.add_agent("c");
  topo.add_broadcast({a, b, c}, 100e6, ms(1));

  class Shout final : public Agent {
   public:
    void start(AgentCtx& ctx) override { ctx.schedule_at(0, 0); }
    void on_timer(AgentCtx& ctx, std::uint64_t) override {
      ctx.send(0, DataPacket{ContentName::parse("/x#0"), 1000});
    }
  };
  class Ear final : public Agent {
   public:
    void on_packet(AgentCtx& ctx, FaceId, const Packet&) override {
      heard = ctx.now();
    }
    SimTime heard = 0;
  };
  auto ear_b = std::make_unique<Ear>();
  auto ear_c = std::make_unique<Ear>();
  Ear* eb = ear_b.get();
  Ear* ec = ear_c.get();
  std::vector<std::pair<int, std::unique_ptr<Agent>>> agents;
  agents.emplace_back(a, std::make_unique<Shout>());
  agents.emplace_back(b, std::move(ear_b));
  agents.emplace_back(c, std::move(ear_c));
  EngineParams params;
  params.duration = secs(1);
  Engine engine(std::move(topo), std::move(agents), params);
  engine.run();
  CHECK(eb->heard == us(80) + ms(1));
  CHECK(eb->heard == ec->heard);
}

TEST_CASE("build_chain validates shapes and numbers hops from the receiver") {
  std::vector<RouterConfig> cfgs(2, fast_router());
  CHECK_THROWS_AS(build_chain(2, {100e6, 100e6}, cfgs, {}),
                  std::invalid_argument);
  Chain c = build_chain(2, {100e6, 100e6, 100e6}, cfgs,
                        {ContentName::parse("/c")});
  CHECK(c.topo.nodes[c.hops[0]].label == "hop1");
  CHECK(c.topo.nodes[c.hops[1]].label == "hop2");
  CHECK(c.topo.nodes[c.consumer].label == "consumer");
  CHECK(c.topo.nodes[c.repo].label == "repo");
  CHECK(c.topo.links.size() == 3);

  std::vector<RouterConfig> one(1, fast_router());
  Chain degenerate = build_chain(1, {100e6, 100e6}, one,
                                 {ContentName::parse("/c")});
  CHECK(degenerate.hops.size() == 1);
}

TEST_CASE("reverse-path check: data retraces the interest path") {
  std::vector<RouterConfig> cfgs(3, fast_router());
  Chain chain = build_chain(3, std::vector<double>(4, 100e6), cfgs,
                            {ContentName::parse("/c")}, ms(1));
  auto consumer = std::make_unique<OneShot>();
  OneShot* cp = consumer.get();
  RepositoryParams rp;
  rp.served = {{ContentName::parse("/c"), 0, 1000}};
  std::vector<std::pair<int, std::unique_ptr<Agent>>> agents;
  agents.emplace_back(chain.consumer, std::move(consumer));
  agents.emplace_back(chain.repo, make_repository(rp));
  EngineParams params;
  params.duration = secs(1);
  Engine engine(std::move(chain.topo), std::move(agents), params);
  RunResult r = engine.run();
  REQUIRE(cp->delivered_at > 0);
  // Every link saw exactly one interest (forward) and one data (reverse).
  for (std::size_t l = 0; l < r.series.link_bits.size(); l += 2) {
    double fwd = 0, rev = 0;
    for (double v : r.series.link_bits[l]) fwd += v;
    for (double v : r.series.link_bits[l + 1]) rev += v;
    CHECK(fwd == 800);   // one interest
    CHECK(rev == 8000);  // one data packet
  }
}

TEST_CASE("poisson consumer with zero rate stays silent") {
  std::vector<RouterConfig> cfgs(1, fast_router());
  Chain chain = build_chain(1, {100e6, 100e6}, cfgs,
                            {ContentName::parse("/content")});
  PoissonParams pp;
  pp.alpha = 0;
  std::vector<std::pair<int, std::unique_ptr<Agent>>> agents;
  agents.emplace_back(chain.consumer, make_poisson_consumer(pp));
  EngineParams params;
  params.duration = secs(2);
  RunResult r = run_simulation(std::move(chain.topo), std::move(agents),
                               params);
  for (const auto& row : r.series.link_bits) {
    for (double v : row) CHECK(v == 0);
  }
}

TEST_CASE("flood consumer issues bursts on the configured cadence") {
  std::vector<RouterConfig> cfgs(1, fast_router());
  cfgs[0].pit.capacity = 100000;
  Chain chain = build_chain(1, {1e9, 1e9}, cfgs, {ContentName::parse("/flood")});
  FloodParams fp;
  fp.burst = 50;
  fp.pause = secs(1);
  fp.total = 150;
  std::vector<std::pair<int, std::unique_ptr<Agent>>> agents;
  agents.emplace_back(chain.consumer, make_flood_consumer(fp));
  EngineParams params;
  params.duration = secs(5);
  RunResult r = run_simulation(std::move(chain.topo), std::move(agents),
                               params);
  // 3 bursts of 50 distinct names; all stay pending (nothing answers).
  auto hop1 = *r.series.node_index("hop1");
  CHECK(r.series.pit_size[hop1].back() == 150);
  // Consumer retransmits every pending name once per second.
  auto consumer = *r.series.node_index("consumer");
  CHECK(r.series.retransmits[consumer].back() > 100);
}

TEST_CASE("causality: arrivals never precede send + serialization + prop") {
  // The engine throws on any time regression; a healthy mixed run is enough
  // to exercise the guard.
  std::vector<RouterConfig> cfgs(2, fast_router());
  Chain chain = build_chain(2, {10e6, 10e6, 10e6}, cfgs,
                            {ContentName::parse("/content")});
  PoissonParams pp;
  pp.alpha = 500;
  pp.prefix = ContentName::parse("/content");
  RepositoryParams rp;
  rp.served = {{ContentName::parse("/content"), 0, 1000}};
  std::vector<std::pair<int, std::unique_ptr<Agent>>> agents;
  agents.emplace_back(chain.consumer, make_poisson_consumer(pp));
  agents.emplace_back(chain.repo, make_repository(rp));
  EngineParams params;
  params.duration = secs(3);
  params.seed = 5;
  RunResult r = run_simulation(std::move(chain.topo), std::move(agents),
                               params);

  // Link conservation: bits per 100 ms bucket never exceed capacity.
  for (const auto& row : r.series.link_bits) {
    for (double v : row) CHECK(v <= 10e6 * 0.1 * 1.05);
  }
}
