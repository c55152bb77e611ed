#include "icnsim/scenarios.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <functional>
#include <set>
#include <sstream>
#include <stdexcept>

#include "icnsim/agents.hpp"

namespace icnsim {

namespace {

// ---- parameter override plumbing -------------------------------------------

struct Field {
  enum class Type { Number, Bool, Text, Seed } type;
  std::function<void(ScenarioParams&, double)> set_num;
  std::function<void(ScenarioParams&, bool)> set_bool;
  std::function<void(ScenarioParams&, std::string)> set_text;
  std::function<std::string(const ScenarioParams&)> get;
  bool must_be_positive = false;
  bool non_negative = false;
};

std::string num_to_string(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  (void)ec;
  return std::string(buf, end);
}

const std::map<std::string, Field>& field_registry() {
  static const std::map<std::string, Field> reg = [] {
    std::map<std::string, Field> m;
    auto num = [&m](const std::string& key, double ScenarioParams::*ptr,
                    bool positive, bool non_negative) {
      Field f;
      f.type = Field::Type::Number;
      f.set_num = [ptr](ScenarioParams& p, double v) { p.*ptr = v; };
      f.get = [ptr](const ScenarioParams& p) { return num_to_string(p.*ptr); };
      f.must_be_positive = positive;
      f.non_negative = non_negative;
      m[key] = std::move(f);
    };
    auto flag = [&m](const std::string& key, bool ScenarioParams::*ptr) {
      Field f;
      f.type = Field::Type::Bool;
      f.set_bool = [ptr](ScenarioParams& p, bool v) { p.*ptr = v; };
      f.get = [ptr](const ScenarioParams& p) {
        return p.*ptr ? std::string("true") : std::string("false");
      };
      m[key] = std::move(f);
    };
    auto text = [&m](const std::string& key, std::string ScenarioParams::*ptr) {
      Field f;
      f.type = Field::Type::Text;
      f.set_text = [ptr](ScenarioParams& p, std::string v) {
        p.*ptr = std::move(v);
      };
      f.get = [ptr](const ScenarioParams& p) { return p.*ptr; };
      m[key] = std::move(f);
    };

    {
      Field f;
      f.type = Field::Type::Seed;
      f.get = [](const ScenarioParams& p) { return std::to_string(p.seed); };
      m["seed"] = std::move(f);
    }
    num("duration_s", &ScenarioParams::duration_s, true, false);
    num("sample_interval_s", &ScenarioParams::sample_interval_s, true, false);
    num("cpu_hz", &ScenarioParams::cpu_hz, true, false);
    num("mem_limit_bytes", &ScenarioParams::mem_limit_bytes, true, false);
    num("pit_capacity", &ScenarioParams::pit_capacity, true, false);
    num("pit_bucket_count", &ScenarioParams::pit_bucket_count, true, false);
    text("pit_kind", &ScenarioParams::pit_kind);
    num("base_cost_cycles", &ScenarioParams::base_cost_cycles, true, false);
    num("pipeline_cycles", &ScenarioParams::pipeline_cycles, false, true);
    num("pit_entry_bytes", &ScenarioParams::pit_entry_bytes, true, false);
    num("interest_timeout_s", &ScenarioParams::interest_timeout_s, true,
        false);
    flag("forward_refreshes", &ScenarioParams::forward_refreshes);
    num("input_queue_limit", &ScenarioParams::input_queue_limit, false, true);
    num("cs_capacity", &ScenarioParams::cs_capacity, false, true);
    num("fib_apply_delay_s", &ScenarioParams::fib_apply_delay_s, false, true);
    text("rate_limit_scope", &ScenarioParams::rate_limit_scope);
    num("rate_limit_per_s", &ScenarioParams::rate_limit_per_s, true, false);
    num("link_capacity_bps", &ScenarioParams::link_capacity_bps, true, false);
    num("propagation_ms", &ScenarioParams::propagation_ms, false, true);
    num("access_capacity_bps", &ScenarioParams::access_capacity_bps, true,
        false);
    num("retransmit_interval_s", &ScenarioParams::retransmit_interval_s, true,
        false);
    num("chunk_bytes", &ScenarioParams::chunk_bytes, true, false);
    num("window", &ScenarioParams::window, true, false);
    num("payload_bytes", &ScenarioParams::payload_bytes, true, false);
    num("flood_burst", &ScenarioParams::flood_burst, true, false);
    num("flood_pause_s", &ScenarioParams::flood_pause_s, true, false);
    num("flood_total", &ScenarioParams::flood_total, true, false);
    num("files", &ScenarioParams::files, true, false);
    num("file_rate", &ScenarioParams::file_rate, true, false);
    num("file_mbit", &ScenarioParams::file_mbit, true, false);
    num("poisson_alpha", &ScenarioParams::poisson_alpha, false, true);
    num("chain_hops", &ScenarioParams::chain_hops, true, false);
    num("weak_fraction", &ScenarioParams::weak_fraction, true, false);
    text("workload", &ScenarioParams::workload);
    num("alt_low", &ScenarioParams::alt_low, true, false);
    num("alt_period_s", &ScenarioParams::alt_period_s, true, false);
    num("alt_low_span_s", &ScenarioParams::alt_low_span_s, true, false);
    num("attackers", &ScenarioParams::attackers, false, true);
    num("attack_start_s", &ScenarioParams::attack_start_s, false, true);
    num("attack_rate", &ScenarioParams::attack_rate, true, false);
    num("blockade_count", &ScenarioParams::blockade_count, false, true);
    num("churn_interval_s", &ScenarioParams::churn_interval_s, true, false);
    num("announce_ttl_s", &ScenarioParams::announce_ttl_s, false, true);
    num("service_time_s", &ScenarioParams::service_time_s, false, true);
    num("slow_service_s", &ScenarioParams::slow_service_s, true, false);
    num("jam_rate", &ScenarioParams::jam_rate, true, false);
    return m;
  }();
  return reg;
}

PitKind parse_pit_kind(const std::string& s) {
  if (s == "chaining") return PitKind::Chaining;
  if (s == "overwrite") return PitKind::CollisionOverwrite;
  return PitKind::Universal;
}

RouterConfig router_from(const ScenarioParams& p) {
  RouterConfig cfg;
  cfg.cpu_hz = p.cpu_hz;
  cfg.mem_limit = static_cast<std::uint64_t>(p.mem_limit_bytes);
  cfg.pit.kind = parse_pit_kind(p.pit_kind);
  cfg.pit.bucket_count = static_cast<std::size_t>(p.pit_bucket_count);
  cfg.pit.capacity = static_cast<std::size_t>(p.pit_capacity);
  cfg.pit.base_cost = static_cast<std::uint64_t>(p.base_cost_cycles);
  cfg.pit.universal_seed = derive_seed(p.seed, 0x51A7);
  cfg.pit_entry_bytes = static_cast<std::uint32_t>(p.pit_entry_bytes);
  cfg.interest_timeout = from_seconds(p.interest_timeout_s);
  cfg.forward_refreshes = p.forward_refreshes;
  cfg.pipeline_cycles = static_cast<std::uint64_t>(p.pipeline_cycles);
  if (p.input_queue_limit > 0) {
    cfg.input_queue_limit = static_cast<std::size_t>(p.input_queue_limit);
  }
  cfg.cs_capacity = static_cast<std::size_t>(p.cs_capacity);
  cfg.fib_apply_delay = from_seconds(p.fib_apply_delay_s);
  if (p.rate_limit_scope != "none") {
    RateLimit rl;
    rl.scope = p.rate_limit_scope == "face" ? RateLimit::Scope::PerFace
                                            : RateLimit::Scope::PerFacePrefix;
    rl.max_rate = p.rate_limit_per_s;
    cfg.rate_limit = rl;
  }
  return cfg;
}

ConsumerTiming timing_from(const ScenarioParams& p) {
  ConsumerTiming t;
  t.lifetime = from_seconds(p.interest_timeout_s);
  t.retransmit_interval = from_seconds(p.retransmit_interval_s);
  return t;
}

EngineParams engine_from(const ScenarioParams& p) {
  EngineParams e;
  e.duration = from_seconds(p.duration_s);
  e.seed = p.seed;
  e.sample_interval = from_seconds(p.sample_interval_s);
  return e;
}

BulkParams bulk_from(const ScenarioParams& p) {
  BulkParams b;
  b.files = static_cast<std::size_t>(p.files);
  b.file_rate = p.file_rate;
  b.file_bits = static_cast<std::uint64_t>(p.file_mbit * 1e6);
  b.chunk_bytes = static_cast<std::uint32_t>(p.chunk_bytes);
  b.window = static_cast<std::size_t>(p.window);
  b.prefix = ContentName({"files"});
  b.timing = timing_from(p);
  return b;
}

FloodParams flood_from(const ScenarioParams& p) {
  FloodParams f;
  f.burst = static_cast<std::size_t>(p.flood_burst);
  f.pause = from_seconds(p.flood_pause_s);
  f.total = static_cast<std::size_t>(p.flood_total);
  f.prefix = ContentName({"flood"});
  f.timing = timing_from(p);
  return f;
}

RepositoryParams::Served served_bulk(const ScenarioParams& p) {
  RepositoryParams::Served s;
  s.prefix = ContentName({"files"});
  s.file_bytes = static_cast<std::uint64_t>(p.file_mbit * 1e6 / 8);
  s.chunk_bytes = static_cast<std::uint32_t>(p.chunk_bytes);
  return s;
}

RepositoryParams::Served served_poisson(const ScenarioParams& p) {
  RepositoryParams::Served s;
  s.prefix = ContentName({"content"});
  s.file_bytes = 0;
  s.chunk_bytes = static_cast<std::uint32_t>(p.payload_bytes);
  return s;
}

double flood_ramp_s(const ScenarioParams& p) {
  double bursts = std::ceil(p.flood_total / p.flood_burst);
  return (bursts - 1) * p.flood_pause_s;
}

// ---- scenario definitions ---------------------------------------------------

struct Definition {
  std::string description;
  std::function<void(ScenarioParams&)> defaults;        // full-scale defaults
  std::function<void(ScenarioParams&)> desk;            // desk-scale tweaks
  std::function<void(Scenario&)> properties;            // after overrides
  std::function<BuiltScenario(const Scenario&)> build;
};

void desk_hardware(ScenarioParams& p) {
  p.cpu_hz = 2.4e8;
  p.mem_limit_bytes = 300e6;
  p.pit_capacity = 12000;
}

Property prop(Property::Kind kind, std::string name) {
  Property pr;
  pr.kind = kind;
  pr.name = std::move(name);
  return pr;
}

// Chain scenario skeleton: consumer - hops - repo, all prefixes routed toward
// the repository.
BuiltScenario chain_skeleton(const Scenario& sc, std::size_t hops,
                             const std::vector<ContentName>& prefixes,
                             const std::vector<CpuProfile>& profiles = {}) {
  const ScenarioParams& p = sc.params;
  std::vector<double> caps(hops + 1, p.link_capacity_bps);
  std::vector<RouterConfig> cfgs(hops, router_from(p));
  Chain chain = build_chain(hops, caps, cfgs, prefixes,
                            from_seconds(p.propagation_ms / 1000.0));
  for (std::size_t i = 0; i < profiles.size() && i < hops; ++i) {
    chain.topo.nodes[chain.hops[i]].profile = profiles[i];
  }
  BuiltScenario out;
  out.topo = std::move(chain.topo);
  out.engine = engine_from(p);
  return out;
}

int consumer_node(const BuiltScenario& b) { return b.topo.node_index("consumer"); }
int repo_node(const BuiltScenario& b) { return b.topo.node_index("repo"); }

const std::map<std::string, Definition>& definitions();

}  // namespace

void apply_overrides(ScenarioParams& params, const ConfigMap& overrides) {
  const auto& reg = field_registry();
  for (const auto& [key, value] : overrides) {
    auto it = reg.find(key);
    if (it == reg.end()) {
      throw ConfigError("config: unknown key: " + key);
    }
    const Field& f = it->second;
    switch (f.type) {
      case Field::Type::Seed: {
        try {
          std::size_t used = 0;
          params.seed = std::stoull(value, &used);
          if (used != value.size()) throw std::invalid_argument(value);
        } catch (const std::exception&) {
          throw ConfigError("config: seed: not an integer: " + value);
        }
        break;
      }
      case Field::Type::Number: {
        double v = 0;
        try {
          std::size_t used = 0;
          v = std::stod(value, &used);
          if (used != value.size()) throw std::invalid_argument(value);
        } catch (const std::exception&) {
          throw ConfigError("config: " + key + ": not a number: " + value);
        }
        if (f.must_be_positive && v <= 0) {
          throw ConfigError("config: " + key + " must be positive");
        }
        if (f.non_negative && v < 0) {
          throw ConfigError("config: " + key + " must be non-negative");
        }
        f.set_num(params, v);
        break;
      }
      case Field::Type::Bool: {
        if (value == "true" || value == "1") {
          f.set_bool(params, true);
        } else if (value == "false" || value == "0") {
          f.set_bool(params, false);
        } else {
          throw ConfigError("config: " + key + ": expected true/false");
        }
        break;
      }
      case Field::Type::Text:
        f.set_text(params, value);
        break;
    }
  }
  if (params.pit_kind != "chaining" && params.pit_kind != "overwrite" &&
      params.pit_kind != "universal") {
    throw ConfigError("config: pit_kind must be chaining|overwrite|universal");
  }
  if (params.rate_limit_scope != "none" && params.rate_limit_scope != "face" &&
      params.rate_limit_scope != "face_prefix") {
    throw ConfigError(
        "config: rate_limit_scope must be none|face|face_prefix");
  }
  if (params.workload != "bulk" && params.workload != "flood") {
    throw ConfigError("config: workload must be bulk|flood");
  }
}

namespace {

// ---- individual builders ----------------------------------------------------

BuiltScenario build_flood(const Scenario& sc) {
  BuiltScenario b = chain_skeleton(sc, 2, {ContentName({"flood"})});
  b.agents.emplace_back(consumer_node(b),
                        make_flood_consumer(flood_from(sc.params)));
  return b;
}

BuiltScenario build_download(const Scenario& sc) {
  BuiltScenario b = chain_skeleton(sc, 2, {ContentName({"files"})});
  b.agents.emplace_back(consumer_node(b), make_bulk_consumer(bulk_from(sc.params)));
  RepositoryParams rp;
  rp.served = {served_bulk(sc.params)};
  rp.service_delay = RttModel::deterministic(sc.params.service_time_s);
  b.agents.emplace_back(repo_node(b), make_repository(std::move(rp)));
  return b;
}

BuiltScenario build_chain_bulk(const Scenario& sc,
                               const std::vector<CpuProfile>& profiles) {
  BuiltScenario b = chain_skeleton(
      sc, static_cast<std::size_t>(sc.params.chain_hops),
      {ContentName({"files"}), ContentName({"flood"})}, profiles);
  const ScenarioParams& p = sc.params;
  if (p.workload == "bulk") {
    b.agents.emplace_back(consumer_node(b), make_bulk_consumer(bulk_from(p)));
    RepositoryParams rp;
    rp.served = {served_bulk(p)};
    rp.service_delay = RttModel::deterministic(p.service_time_s);
    b.agents.emplace_back(repo_node(b), make_repository(std::move(rp)));
  } else {
    b.agents.emplace_back(consumer_node(b),
                          make_flood_consumer(flood_from(p)));
  }
  return b;
}

std::vector<CpuProfile> weak_profiles(const ScenarioParams& p) {
  std::vector<CpuProfile> profiles(5, CpuProfile::constant(1.0));
  profiles[3] = CpuProfile::constant(p.weak_fraction);  // 4th hop
  return profiles;
}

std::vector<CpuProfile> alternating_profiles(const ScenarioParams& p) {
  std::vector<CpuProfile> profiles(5, CpuProfile::constant(1.0));
  SimTime period = from_seconds(p.alt_period_s);
  SimTime span = from_seconds(p.alt_low_span_s);
  SimTime horizon = from_seconds(p.duration_s);
  for (int i = 1; i <= 3; ++i) {  // hops 2..4
    SimTime phase = static_cast<SimTime>(i - 1) * from_seconds(15);
    profiles[i] = CpuProfile::square_wave(p.alt_low, period, span, phase,
                                          horizon);
  }
  return profiles;
}

BuiltScenario build_littles_law(const Scenario& sc) {
  const ScenarioParams& p = sc.params;
  std::vector<double> caps(3, p.link_capacity_bps);
  std::vector<RouterConfig> cfgs(2, router_from(p));
  // 50 us access leg; the upstream legs make the hop-1 round trip 20 ms.
  Chain chain = build_chain(2, caps, cfgs, {ContentName({"content"})}, us(50));
  chain.topo.links[1].propagation = ms(5);
  chain.topo.links[2].propagation = ms(5);
  BuiltScenario b;
  b.topo = std::move(chain.topo);
  b.engine = engine_from(p);
  PoissonParams pp;
  pp.alpha = p.poisson_alpha;
  pp.prefix = ContentName({"content"});
  pp.timing = timing_from(p);
  b.agents.emplace_back(b.topo.node_index("consumer"),
                        make_poisson_consumer(pp));
  RepositoryParams rp;
  rp.served = {served_poisson(p)};
  rp.service_delay = RttModel::deterministic(p.service_time_s);
  b.agents.emplace_back(b.topo.node_index("repo"),
                        make_repository(std::move(rp)));
  return b;
}

BuiltScenario build_kappa(const Scenario& sc) {
  const ScenarioParams& p = sc.params;
  std::vector<double> caps(3, p.link_capacity_bps);
  std::vector<RouterConfig> cfgs(2, router_from(p));
  Chain chain = build_chain(2, caps, cfgs, {ContentName({"content"})}, us(50));
  BuiltScenario b;
  b.topo = std::move(chain.topo);
  b.engine = engine_from(p);
  PoissonParams pp;
  pp.alpha = p.poisson_alpha;
  pp.prefix = ContentName({"content"});
  pp.timing = timing_from(p);
  b.agents.emplace_back(b.topo.node_index("consumer"),
                        make_poisson_consumer(pp));
  RepositoryParams rp;
  rp.served = {served_poisson(p)};
  rp.service_delay = RttModel::gamma(0.1, 0.1);  // heavy-tailed path delay
  b.agents.emplace_back(b.topo.node_index("repo"),
                        make_repository(std::move(rp)));
  return b;
}

BuiltScenario build_overload(const Scenario& sc) {
  const ScenarioParams& p = sc.params;
  BuiltScenario b = chain_skeleton(
      sc, 2, {ContentName({"content"}), ContentName({"flood"})});
  PoissonParams pp;
  pp.alpha = p.poisson_alpha;
  pp.prefix = ContentName({"content"});
  pp.timing = timing_from(p);
  b.agents.emplace_back(consumer_node(b), make_poisson_consumer(pp));
  RepositoryParams rp;
  rp.served = {served_poisson(p)};
  rp.service_delay = RttModel::deterministic(p.service_time_s);
  b.agents.emplace_back(repo_node(b), make_repository(std::move(rp)));

  int hop1 = b.topo.node_index("hop1");
  auto n_attackers = static_cast<std::size_t>(p.attackers);
  for (std::size_t i = 0; i < n_attackers; ++i) {
    int atk = b.topo.add_agent("attacker" + std::to_string(i + 1));
    b.topo.connect(atk, hop1, p.link_capacity_bps,
                   from_seconds(p.propagation_ms / 1000.0));
    FloodParams fp;
    fp.burst = static_cast<std::size_t>(p.attack_rate);
    fp.pause = secs(1);
    fp.total = static_cast<std::size_t>(
        p.attack_rate * std::max(1.0, p.duration_s - p.attack_start_s));
    fp.prefix = ContentName({"flood", "a" + std::to_string(i + 1)});
    fp.timing = timing_from(p);
    fp.start_at = from_seconds(p.attack_start_s);
    b.agents.emplace_back(atk, make_flood_consumer(std::move(fp)));
  }
  return b;
}

BuiltScenario build_slow_source(const Scenario& sc) {
  const ScenarioParams& p = sc.params;
  BuiltScenario b = chain_skeleton(sc, 3, {ContentName({"content"})});
  PoissonParams pp;
  pp.alpha = p.poisson_alpha;
  pp.prefix = ContentName({"content"});
  pp.timing = timing_from(p);
  b.agents.emplace_back(consumer_node(b), make_poisson_consumer(pp));
  RepositoryParams rp;
  rp.served = {served_poisson(p)};
  rp.service_delay = RttModel::deterministic(p.service_time_s);
  rp.fifo = true;
  rp.inflate = {from_seconds(p.attack_start_s), p.slow_service_s};
  b.agents.emplace_back(repo_node(b), make_repository(std::move(rp)));
  return b;
}

BuiltScenario build_blockade(const Scenario& sc) {
  const ScenarioParams& p = sc.params;
  BuiltScenario b = chain_skeleton(
      sc, 2, {ContentName({"content"}), ContentName({"blockade"})});
  // Short access legs keep legitimate occupancy near zero at attack time.
  for (auto& link : b.topo.links) link.propagation = us(50);
  PoissonParams pp;
  pp.alpha = p.poisson_alpha;
  pp.prefix = ContentName({"content"});
  pp.timing = timing_from(p);
  b.agents.emplace_back(consumer_node(b), make_poisson_consumer(pp));
  RepositoryParams rp;
  rp.served = {served_poisson(p)};
  rp.service_delay = RttModel::deterministic(p.service_time_s);
  b.agents.emplace_back(repo_node(b), make_repository(std::move(rp)));

  int hop1 = b.topo.node_index("hop1");
  int atk = b.topo.add_agent("attacker");
  b.topo.connect(atk, hop1, p.link_capacity_bps, us(50));
  BlockadeParams bp;
  bp.count = p.blockade_count > 0 ? static_cast<std::size_t>(p.blockade_count)
                                  : static_cast<std::size_t>(p.pit_capacity);
  bp.at = from_seconds(p.attack_start_s);
  bp.lifetime = from_seconds(p.interest_timeout_s);
  b.agents.emplace_back(atk, make_blockade_attacker(std::move(bp)));
  return b;
}

BuiltScenario build_rate_limit(const Scenario& sc) {
  const ScenarioParams& p = sc.params;
  BuiltScenario b;
  int consumer = b.topo.add_agent("consumer");
  int attacker = b.topo.add_agent("attacker");
  int hop1 = b.topo.add_router("hop1", router_from(p));
  int repo = b.topo.add_agent("repo");
  b.topo.add_broadcast({consumer, attacker, hop1}, p.access_capacity_bps,
                       from_seconds(p.propagation_ms / 1000.0), "access");
  int up = b.topo.connect(hop1, repo, p.link_capacity_bps,
                          from_seconds(p.propagation_ms / 1000.0));
  b.topo.add_route(hop1, ContentName({"pop"}), b.topo.face_of(hop1, up));
  b.engine = engine_from(p);

  PoissonParams pp;
  pp.alpha = p.poisson_alpha;
  pp.prefix = ContentName({"pop", "legit"});
  pp.timing = timing_from(p);
  b.agents.emplace_back(consumer, make_poisson_consumer(pp));
  RepositoryParams rp;
  RepositoryParams::Served served;
  served.prefix = ContentName({"pop", "legit"});
  served.chunk_bytes = static_cast<std::uint32_t>(p.payload_bytes);
  rp.served = {served};
  rp.service_delay = RttModel::deterministic(p.service_time_s);
  b.agents.emplace_back(repo, make_repository(std::move(rp)));
  JamParams jp;
  jp.rate = p.attack_rate;
  jp.prefix = ContentName({"pop", "atk"});
  jp.lifetime = from_seconds(p.interest_timeout_s);
  jp.start_at = from_seconds(p.attack_start_s);
  b.agents.emplace_back(attacker, make_jammer(std::move(jp)));
  return b;
}

BuiltScenario build_infringe(const Scenario& sc) {
  const ScenarioParams& p = sc.params;
  BuiltScenario b = chain_skeleton(sc, 2, {ContentName({"content"})});
  PoissonParams pp;
  pp.alpha = p.poisson_alpha;
  pp.prefix = ContentName({"content"});
  pp.timing = timing_from(p);
  b.agents.emplace_back(consumer_node(b), make_poisson_consumer(pp));
  RepositoryParams rp;
  rp.served = {served_poisson(p)};
  rp.service_delay = RttModel::deterministic(p.service_time_s);
  b.agents.emplace_back(repo_node(b), make_repository(std::move(rp)));

  int hop1 = b.topo.node_index("hop1");
  int atk = b.topo.add_agent("attacker");
  b.topo.connect(atk, hop1, p.link_capacity_bps,
                 from_seconds(p.propagation_ms / 1000.0));
  AnnounceParams ap;
  ap.prefix = ContentName({"content"});
  ap.first_at = from_seconds(p.attack_start_s);
  ap.interval = from_seconds(p.churn_interval_s);
  double churn_span = p.duration_s - p.attack_start_s - 7;
  ap.count = static_cast<std::size_t>(
      std::max(1.0, churn_span / p.churn_interval_s));
  ap.ttl = from_seconds(p.announce_ttl_s);
  b.agents.emplace_back(atk, make_announce_attacker(std::move(ap)));
  return b;
}

BuiltScenario build_timeout_attack(const Scenario& sc) {
  const ScenarioParams& p = sc.params;
  SimTime period = from_seconds(p.alt_period_s);
  SimTime span = from_seconds(p.alt_low_span_s);
  SimTime start = from_seconds(p.attack_start_s);
  SimTime horizon = from_seconds(p.duration_s);
  // Full speed until the attack starts, then phase-shifted reduction cycles.
  auto delayed_wave = [&](SimTime phase) {
    std::vector<std::pair<SimTime, double>> segs{{0, 1.0}};
    for (SimTime t = start + phase; t < horizon + period; t += period) {
      segs.emplace_back(t, p.alt_low);
      segs.emplace_back(t + span, 1.0);
    }
    return CpuProfile(std::move(segs));
  };
  std::vector<CpuProfile> profiles(3, CpuProfile::constant(1.0));
  profiles[1] = delayed_wave(0);
  profiles[2] = delayed_wave(span);
  BuiltScenario b =
      chain_skeleton(sc, 3, {ContentName({"content"})}, profiles);
  PoissonParams pp;
  pp.alpha = p.poisson_alpha;
  pp.prefix = ContentName({"content"});
  pp.timing = timing_from(p);
  b.agents.emplace_back(consumer_node(b), make_poisson_consumer(pp));
  RepositoryParams rp;
  rp.served = {served_poisson(p)};
  rp.service_delay = RttModel::deterministic(p.service_time_s);
  b.agents.emplace_back(repo_node(b), make_repository(std::move(rp)));
  return b;
}

BuiltScenario build_jamming(const Scenario& sc) {
  const ScenarioParams& p = sc.params;
  BuiltScenario b;
  int consumer = b.topo.add_agent("consumer");
  int jammer = b.topo.add_agent("attacker");
  int hop1 = b.topo.add_router("hop1", router_from(p));
  int repo = b.topo.add_agent("repo");
  b.topo.add_broadcast({consumer, jammer, hop1}, p.access_capacity_bps,
                       from_seconds(p.propagation_ms / 1000.0), "access");
  int up = b.topo.connect(hop1, repo, p.link_capacity_bps,
                          from_seconds(p.propagation_ms / 1000.0));
  b.topo.add_route(hop1, ContentName({"content"}), b.topo.face_of(hop1, up));
  b.topo.add_route(hop1, ContentName({"jam"}), b.topo.face_of(hop1, up));
  b.engine = engine_from(p);

  PoissonParams pp;
  pp.alpha = p.poisson_alpha;
  pp.prefix = ContentName({"content"});
  pp.timing = timing_from(p);
  b.agents.emplace_back(consumer, make_poisson_consumer(pp));
  RepositoryParams rp;
  RepositoryParams::Served legit = served_poisson(p);
  legit.chunk_bytes = static_cast<std::uint32_t>(p.chunk_bytes);
  RepositoryParams::Served jam;
  jam.prefix = ContentName({"jam"});
  jam.chunk_bytes = static_cast<std::uint32_t>(p.chunk_bytes);
  rp.served = {legit, jam};
  rp.service_delay = RttModel::deterministic(p.service_time_s);
  b.agents.emplace_back(repo, make_repository(std::move(rp)));
  JamParams jp;
  jp.rate = p.jam_rate;
  jp.prefix = ContentName({"jam"});
  jp.lifetime = from_seconds(p.interest_timeout_s);
  jp.start_at = from_seconds(p.attack_start_s);
  b.agents.emplace_back(jammer, make_jammer(std::move(jp)));
  return b;
}

BuiltScenario build_hijack(const Scenario& sc) {
  const ScenarioParams& p = sc.params;
  BuiltScenario b = chain_skeleton(sc, 2, {ContentName({"content"})});
  PoissonParams pp;
  pp.alpha = p.poisson_alpha;
  pp.prefix = ContentName({"content"});
  pp.timing = timing_from(p);
  b.agents.emplace_back(consumer_node(b), make_poisson_consumer(pp));
  RepositoryParams rp;
  rp.served = {served_poisson(p)};
  rp.service_delay = RttModel::deterministic(p.service_time_s);
  b.agents.emplace_back(repo_node(b), make_repository(std::move(rp)));

  int hop1 = b.topo.node_index("hop1");
  int atk = b.topo.add_agent("attacker");
  b.topo.connect(atk, hop1, p.link_capacity_bps,
                 from_seconds(p.propagation_ms / 1000.0));
  AnnounceParams ap;
  ap.prefix = ContentName({"content"});
  ap.first_at = from_seconds(p.attack_start_s);
  ap.ttl = 0;  // permanent capture
  b.agents.emplace_back(atk, make_announce_attacker(std::move(ap)));
  return b;
}

BuiltScenario build_intercept(const Scenario& sc) {
  const ScenarioParams& p = sc.params;
  BuiltScenario b = chain_skeleton(sc, 2, {ContentName({"content"})});
  int hop1 = b.topo.node_index("hop1");
  int hop2 = b.topo.node_index("hop2");
  int atk = b.topo.add_agent("attacker");
  b.topo.connect(atk, hop1, p.link_capacity_bps,
                 from_seconds(p.propagation_ms / 1000.0));
  b.topo.connect(atk, hop2, p.link_capacity_bps,
                 from_seconds(p.propagation_ms / 1000.0));

  PoissonParams pp;
  pp.alpha = p.poisson_alpha;
  pp.prefix = ContentName({"content"});
  pp.timing = timing_from(p);
  pp.start_at = secs(1);
  pp.stop_at = from_seconds(std::max(2.0, p.duration_s - 3));
  b.agents.emplace_back(consumer_node(b), make_poisson_consumer(pp));
  RepositoryParams rp;
  rp.served = {served_poisson(p)};
  rp.service_delay = RttModel::deterministic(p.service_time_s);
  b.agents.emplace_back(repo_node(b), make_repository(std::move(rp)));
  InterceptParams ip;
  ip.prefix = ContentName({"content"});
  ip.announce_at = ms(200);
  b.agents.emplace_back(atk, make_interceptor(std::move(ip)));
  return b;
}

// ---- catalog ----------------------------------------------------------------

const std::map<std::string, Definition>& definitions() {
  static const std::map<std::string, Definition> defs = [] {
    std::map<std::string, Definition> d;

    d["flood-nonexistent"] = Definition{
        "non-existing-content interest flood against a 2-hop chain",
        [](ScenarioParams& p) {
          p.flood_burst = 2000;
          p.flood_pause_s = 6;
          p.flood_total = 150000;
          p.pit_capacity = 120000;
          p.duration_s = flood_ramp_s(p) + 60;
        },
        [](ScenarioParams& p) {
          desk_hardware(p);
          p.flood_burst = 200;
          p.flood_total = 15000;
          p.duration_s = flood_ramp_s(p) + 45;
        },
        [](Scenario& sc) {
          const auto& p = sc.params;
          Property peak = prop(Property::Kind::PitPeakBetween, "pit_saturation");
          peak.node = "hop1";
          peak.a = 0.9 * p.pit_capacity;
          peak.b = p.pit_capacity;
          sc.properties.push_back(peak);
          Property re = prop(Property::Kind::RetransSustainedAfter,
                             "retransmit_stream_after_last_burst");
          re.node = "hop1";
          re.a = flood_ramp_s(p) + 5;
          re.b = 30;
          re.c = 1;
          sc.properties.push_back(re);
        },
        build_flood};

    auto download_def = [](double rate) {
      Definition def;
      def.description = "parallel chunked downloads over a 2-hop chain";
      def.defaults = [rate](ScenarioParams& p) {
        p.files = 500;
        p.file_rate = rate;
        p.duration_s = rate <= 5 ? p.files / rate + 20 : 120;
      };
      def.desk = [rate](ScenarioParams& p) {
        desk_hardware(p);
        p.files = 100;
        p.duration_s = rate <= 5 ? p.files / rate + 15 : 60;
      };
      def.properties = [](Scenario& sc) {
        const auto& p = sc.params;
        if (p.file_rate >= 50) {
          Property u = prop(Property::Kind::UtilizationBelow,
                            "utilization_collapse");
          u.a = p.link_capacity_bps;
          u.b = 0.5;
          sc.properties.push_back(u);
        } else if (p.file_rate <= 5) {
          Property s = prop(Property::Kind::SpreadRatioBelow,
                            "constant_completion_time");
          s.a = 0.25;
          s.b = p.files * 0.95;
          sc.properties.push_back(s);
          sc.properties.push_back(
              prop(Property::Kind::AllFilesComplete, "all_files_complete"));
        }
      };
      def.build = build_download;
      return def;
    };
    d["parallel-download-2"] = download_def(2);
    d["parallel-download-10"] = download_def(10);
    d["parallel-download-100"] = download_def(100);

    d["chain-homogeneous"] = Definition{
        "bulk transfer over five identical hops",
        [](ScenarioParams& p) {
          p.files = 500;
          p.duration_s = 120;
          p.pipeline_cycles = 30000;
          p.window = 20;
        },
        [](ScenarioParams& p) {
          desk_hardware(p);
          p.files = 100;
          p.duration_s = 60;
        },
        [](Scenario& sc) {
          Property r = prop(Property::Kind::RetransNonIncreasingHops,
                            "retransmits_flatten_toward_source");
          r.a = sc.params.chain_hops;
          r.b = 0.05;
          sc.properties.push_back(r);
        },
        [](const Scenario& sc) { return build_chain_bulk(sc, {}); }};

    auto weak_def = [](double fraction) {
      Definition def;
      def.description = "five-hop chain with a weakened 4th hop";
      def.defaults = [fraction](ScenarioParams& p) {
        p.files = 500;
        p.duration_s = 120;
        p.weak_fraction = fraction;
        p.pipeline_cycles = 30000;
        p.window = 20;
      };
      def.desk = [](ScenarioParams& p) {
        desk_hardware(p);
        p.files = 100;
        p.duration_s = 60;
      };
      def.properties = [fraction](Scenario& sc) {
        if (fraction < 1.0 && sc.params.workload == "bulk") {
          Property r = prop(Property::Kind::HopsRetransDominateHop,
                            "upstream_retransmits_dominate_bottleneck");
          r.a = 3;
          r.b = 1.0;
          r.c = 4;
          sc.properties.push_back(r);
        }
      };
      def.build = [](const Scenario& sc) {
        return build_chain_bulk(sc, weak_profiles(sc.params));
      };
      return def;
    };
    d["chain-weak-100"] = weak_def(1.0);
    d["chain-weak-50"] = weak_def(0.5);
    d["chain-weak-25"] = weak_def(0.25);

    d["chain-weak-flood-25"] = Definition{
        "interest flood through a five-hop chain, 4th hop at 25% CPU",
        [](ScenarioParams& p) {
          p.workload = "flood";
          p.weak_fraction = 0.25;
          p.flood_burst = 5000;
          p.flood_pause_s = 2;
          p.flood_total = 150000;
          p.pit_capacity = 400000;
          p.input_queue_limit = 512;
          p.pipeline_cycles = 10000;
          p.duration_s = flood_ramp_s(p) + 60;
        },
        [](ScenarioParams& p) {
          desk_hardware(p);
          p.pit_capacity = 40000;
          p.flood_burst = 500;
          p.flood_total = 15000;
          p.duration_s = flood_ramp_s(p) + 60;
        },
        [](Scenario& sc) {
          Property m = prop(Property::Kind::ArgmaxMemHop,
                            "predecessor_memory_spike");
          m.node = "hop3";
          m.a = 5;    // hops in the chain
          m.b = 1.5;  // vs median of the others
          sc.properties.push_back(m);
        },
        [](const Scenario& sc) {
          return build_chain_bulk(sc, weak_profiles(sc.params));
        }};

    d["chain-alternating"] = Definition{
        "five-hop chain, hops 2-4 under phase-shifted 90% CPU reductions",
        [](ScenarioParams& p) {
          p.files = 500;
          p.duration_s = 120;
          p.pipeline_cycles = 30000;
          p.window = 20;
        },
        [](ScenarioParams& p) {
          desk_hardware(p);
          p.files = 100;
          p.duration_s = 90;
        },
        [](Scenario& sc) {
          Property u = prop(Property::Kind::UtilizationBelow,
                            "throughput_under_alternation");
          u.a = sc.params.link_capacity_bps;
          u.b = 0.5;
          sc.properties.push_back(u);
        },
        [](const Scenario& sc) {
          return build_chain_bulk(sc, alternating_profiles(sc.params));
        }};

    d["littles-law"] = Definition{
        "Poisson workload on a 20 ms deterministic round trip",
        [](ScenarioParams& p) {
          p.poisson_alpha = 500;
          p.duration_s = 60;
          p.pipeline_cycles = 1000;
          p.pit_capacity = 100000;
          p.payload_bytes = 1000;
        },
        [](ScenarioParams& p) { (void)p; },
        [](Scenario& sc) {
          Property m = prop(Property::Kind::PitMeanNear, "littles_law");
          m.node = "hop1";
          m.a = sc.params.poisson_alpha * 0.020;
          m.b = 0.10;
          m.c = 5;  // skip the ramp-up
          sc.properties.push_back(m);
        },
        build_littles_law};

    d["kappa-validation"] = Definition{
        "kappa-weighted estimate bounds the simulated mean from above",
        [](ScenarioParams& p) {
          p.poisson_alpha = 200;
          p.duration_s = 30;
          p.pipeline_cycles = 1000;
          p.pit_capacity = 100000;
          p.payload_bytes = 1000;
        },
        [](ScenarioParams& p) { (void)p; },
        [](Scenario& sc) {
          Property m = prop(Property::Kind::PitMeanAtMost, "kappa_bound");
          m.node = "hop1";
          m.a = state_from_rate(sc.params.poisson_alpha,
                                RttModel::gamma(0.1, 0.1), 4,
                                sc.params.interest_timeout_s);
          m.c = 3;
          sc.properties.push_back(m);
        },
        build_kappa};

    d["attack-overload"] = Definition{
        "remote attackers flood unavailable names through the victim",
        [](ScenarioParams& p) {
          p.poisson_alpha = 100;
          p.pit_capacity = 20000;
          p.attackers = 3;
          p.attack_rate = 8000;
          p.attack_start_s = 10;
          p.duration_s = 40;
        },
        [](ScenarioParams& p) {
          desk_hardware(p);
          p.pit_capacity = 2000;
          p.attack_rate = 800;
        },
        [](Scenario& sc) {
          const auto& p = sc.params;
          Property peak = prop(Property::Kind::PitPeakBetween,
                               "victim_pit_saturated");
          peak.node = "hop1";
          peak.a = 0.9 * p.pit_capacity;
          peak.b = p.pit_capacity;
          sc.properties.push_back(peak);
          Property g = prop(Property::Kind::GoodputWindowRatioAtMost,
                            "legit_service_impaired");
          g.a = 2;
          g.b = p.attack_start_s;
          g.c = p.attack_start_s + 5;
          g.d = p.duration_s;
          g.ratio = 0.7;
          sc.properties.push_back(g);
          Property dr = prop(Property::Kind::DropsAtLeast, "tail_drops");
          dr.node = "hop1";
          dr.node2 = "pit_full";
          dr.a = 100;
          sc.properties.push_back(dr);
          Property re = prop(Property::Kind::RetransSustainedAfter,
                             "legit_retransmission_storm");
          re.node = "consumer";
          re.a = p.attack_start_s + 3;
          re.b = 10;
          re.c = 5;
          sc.properties.push_back(re);
        },
        build_overload};

    d["attack-slow-source"] = Definition{
        "source service time inflated; states pile up across the path",
        [](ScenarioParams& p) {
          p.poisson_alpha = 200;
          p.service_time_s = 50e-6;
          p.slow_service_s = 8e-3;
          p.attack_start_s = 10;
          p.duration_s = 40;
          p.pit_capacity = 100000;
        },
        [](ScenarioParams& p) { desk_hardware(p); },
        [](Scenario& sc) {
          const auto& p = sc.params;
          Property r = prop(Property::Kind::PitRiseAllHopsAtLeast,
                            "states_rise_on_all_hops");
          r.a = 3;
          r.b = p.attack_start_s;
          r.c = p.attack_start_s + 5;
          r.d = p.duration_s;
          r.ratio = 3;
          sc.properties.push_back(r);
        },
        build_slow_source};

    d["attack-mobile-blockade"] = Definition{
        "one interest dump blocks the access router for the timeout period",
        [](ScenarioParams& p) {
          p.poisson_alpha = 10;
          p.pit_capacity = 10000;
          p.attack_start_s = 10;
          p.duration_s = 25;
          p.propagation_ms = 0.05;
        },
        [](ScenarioParams& p) {
          desk_hardware(p);
          p.pit_capacity = 1000;
        },
        [](Scenario& sc) {
          const auto& p = sc.params;
          double t_fill = p.attack_start_s + 0.5;
          double t_expire = p.attack_start_s + p.interest_timeout_s;
          Property z = prop(Property::Kind::ZeroGoodputWindow,
                            "legit_blocked_during_timeout");
          z.a = t_fill;
          z.b = t_expire - 0.5;
          sc.properties.push_back(z);
          Property rec = prop(Property::Kind::GoodputPositiveWindow,
                              "service_recovers_after_expiry");
          rec.a = t_expire + 1;
          rec.b = p.duration_s;
          sc.properties.push_back(rec);
          Property peak = prop(Property::Kind::PitPeakBetween, "pit_filled");
          peak.node = "hop1";
          peak.a = p.pit_capacity * 0.99;
          peak.b = p.pit_capacity;
          sc.properties.push_back(peak);
        },
        build_blockade};

    d["attack-rate-limit"] = Definition{
        "attacker exhausts the shared face+prefix token bucket",
        [](ScenarioParams& p) {
          p.poisson_alpha = 20;
          p.rate_limit_scope = "face_prefix";
          p.rate_limit_per_s = 100;
          p.attack_rate = 500;
          p.attack_start_s = 10;
          p.duration_s = 30;
          p.pit_capacity = 100000;
        },
        [](ScenarioParams& p) { desk_hardware(p); },
        [](Scenario& sc) {
          const auto& p = sc.params;
          Property g = prop(Property::Kind::GoodputWindowRatioAtMost,
                            "prefix_blocked_for_legit_user");
          g.a = 2;
          g.b = p.attack_start_s;
          g.c = p.attack_start_s + 2;
          g.d = p.duration_s;
          g.ratio = 0.4;
          sc.properties.push_back(g);
          Property dr = prop(Property::Kind::DropsAtLeast, "throttled");
          dr.node = "hop1";
          dr.node2 = "rate_limited";
          dr.a = 100;
          sc.properties.push_back(dr);
        },
        build_rate_limit};

    d["attack-state-infringe"] = Definition{
        "route announcement churn above the convergence rate",
        [](ScenarioParams& p) {
          p.poisson_alpha = 100;
          p.attack_start_s = 10;
          p.churn_interval_s = 0.5;  // faster than convergence + route ttl
          p.announce_ttl_s = 0.8;
          p.fib_apply_delay_s = 0.1;
          p.duration_s = 36;
          p.pit_capacity = 100000;
        },
        [](ScenarioParams& p) { desk_hardware(p); },
        [](Scenario& sc) {
          const auto& p = sc.params;
          Property g = prop(Property::Kind::GoodputWindowRatioAtMost,
                            "churn_causes_access_failures");
          g.a = 2;
          g.b = p.attack_start_s;
          g.c = p.attack_start_s + 1;
          g.d = p.duration_s - 7;
          g.ratio = 0.7;
          sc.properties.push_back(g);
          Property mis = prop(Property::Kind::LogCountAtLeast,
                              "interests_misrouted_to_attacker");
          mis.node = "attacker";
          mis.a = 0.2 * p.poisson_alpha * (p.duration_s - 7 - p.attack_start_s);
          sc.properties.push_back(mis);
          Property rec = prop(Property::Kind::GoodputPositiveWindow,
                              "soft_state_recovers");
          rec.a = p.duration_s - 3;
          rec.b = p.duration_s;
          sc.properties.push_back(rec);
        },
        build_infringe};

    d["attack-timeout"] = Definition{
        "two on-path routers degraded so delays straddle the state timeout",
        [](ScenarioParams& p) {
          p.poisson_alpha = 400;
          p.interest_timeout_s = 2;
          p.alt_low = 0.005;
          p.alt_period_s = 5;
          p.alt_low_span_s = 2.5;
          p.attack_start_s = 10;
          p.duration_s = 40;
          p.pit_capacity = 100000;
        },
        [](ScenarioParams& p) {
          desk_hardware(p);
          p.pit_capacity = 100000;
          p.mem_limit_bytes = 300e6;
        },
        [](Scenario& sc) {
          const auto& p = sc.params;
          // Hop 1 keeps its entries alive off consumer refreshes; the erasures
          // happen at the degraded intermediate hops.
          Property e = prop(Property::Kind::ExpiryRateRatioAtLeast,
                            "states_erased_before_data");
          e.node = "hop2";
          e.a = 2;
          e.b = p.attack_start_s;
          e.c = p.attack_start_s + 2;
          e.d = p.duration_s;
          e.ratio = 10;
          sc.properties.push_back(e);
          Property re = prop(Property::Kind::RetransSustainedAfter,
                             "receivers_retransmit");
          re.node = "consumer";
          re.a = p.attack_start_s + 2;
          re.b = 15;
          re.c = 5;
          sc.properties.push_back(re);
        },
        build_timeout_attack};

    d["attack-jamming"] = Definition{
        "shared-medium jammer requests bulk data and abandons it",
        [](ScenarioParams& p) {
          p.poisson_alpha = 300;
          p.jam_rate = 450;
          p.chunk_bytes = 4096;
          p.payload_bytes = 4096;
          p.access_capacity_bps = 20e6;
          p.attack_start_s = 10;
          p.duration_s = 30;
          p.pit_capacity = 100000;
        },
        [](ScenarioParams& p) { desk_hardware(p); },
        [](Scenario& sc) {
          const auto& p = sc.params;
          Property g = prop(Property::Kind::GoodputWindowRatioAtMost,
                            "jam_share_steals_goodput");
          g.a = 2;
          g.b = p.attack_start_s;
          g.c = p.attack_start_s + 2;
          g.d = p.duration_s;
          g.ratio = 0.7;
          sc.properties.push_back(g);
        },
        build_jamming};

    d["attack-hijack"] = Definition{
        "attacker announces the victim prefix and answers nothing",
        [](ScenarioParams& p) {
          p.poisson_alpha = 100;
          p.attack_start_s = 10;
          p.fib_apply_delay_s = 0.1;
          p.duration_s = 30;
          p.pit_capacity = 100000;
          p.cs_capacity = 1000;
        },
        [](ScenarioParams& p) { desk_hardware(p); },
        [](Scenario& sc) {
          const auto& p = sc.params;
          Property pre = prop(Property::Kind::GoodputPositiveWindow,
                              "clean_phase_delivers");
          pre.a = 2;
          pre.b = p.attack_start_s;
          sc.properties.push_back(pre);
          Property z = prop(Property::Kind::ZeroGoodputWindow, "consumer_dos");
          z.a = p.attack_start_s + 1;
          z.b = p.duration_s;
          sc.properties.push_back(z);
          // Every unanswered name stays pending (refreshed until its timeout),
          // so the captured router accumulates long-lasting state.
          Property e = prop(Property::Kind::PitRiseAllHopsAtLeast,
                            "states_persist");
          e.a = 1;
          e.b = p.attack_start_s;
          e.c = p.attack_start_s + 5;
          e.d = p.duration_s;
          e.ratio = 5;
          sc.properties.push_back(e);
        },
        build_hijack};

    d["attack-intercept"] = Definition{
        "attacker interposes on the route and records every name",
        [](ScenarioParams& p) {
          p.poisson_alpha = 200;
          p.duration_s = 30;
          p.pit_capacity = 100000;
          p.cs_capacity = 1000;
          p.fib_apply_delay_s = 0;
        },
        [](ScenarioParams& p) { desk_hardware(p); },
        [](Scenario& sc) {
          Property logs = prop(Property::Kind::LogsEqual,
                               "attacker_sees_full_request_log");
          logs.node = "attacker";
          logs.node2 = "consumer";
          sc.properties.push_back(logs);
          Property del = prop(Property::Kind::DeliveryRatioAtLeast,
                              "consumers_unaware");
          del.a = 0.98;
          del.b = sc.params.payload_bytes;
          sc.properties.push_back(del);
        },
        build_intercept};

    return d;
  }();
  return defs;
}

}  // namespace

std::vector<std::string> scenario_ids() {
  std::vector<std::string> out;
  for (const auto& [id, def] : definitions()) out.push_back(id);
  return out;
}

Scenario make_scenario(const std::string& id, bool desk_scale,
                       const ConfigMap& overrides) {
  const auto& defs = definitions();
  auto it = defs.find(id);
  if (it == defs.end()) {
    throw ConfigError("unknown scenario id: " + id);
  }
  Scenario sc;
  sc.id = id;
  sc.description = it->second.description;
  sc.desk_scale = desk_scale;
  it->second.defaults(sc.params);
  if (desk_scale) it->second.desk(sc.params);
  apply_overrides(sc.params, overrides);
  it->second.properties(sc);
  return sc;
}

BuiltScenario instantiate(const Scenario& scenario) {
  const auto& defs = definitions();
  return defs.at(scenario.id).build(scenario);
}

RunResult run_scenario(const Scenario& scenario) {
  BuiltScenario b = instantiate(scenario);
  return run_simulation(std::move(b.topo), std::move(b.agents), b.engine);
}

std::string serialize_scenario(const Scenario& scenario) {
  std::ostringstream out;
  out << "scenario = " << scenario.id << "\n";
  out << "desk_scale = " << (scenario.desk_scale ? "true" : "false") << "\n";
  for (const auto& [key, field] : field_registry()) {
    out << key << " = " << field.get(scenario.params) << "\n";
  }
  return out.str();
}

Scenario load_scenario_text(const std::string& text) {
  ConfigMap kv = parse_config_text(text);
  auto id_it = kv.find("scenario");
  if (id_it == kv.end()) {
    throw ConfigError("config: missing key: scenario");
  }
  std::string id = id_it->second;
  bool desk = false;
  if (auto d = kv.find("desk_scale"); d != kv.end()) {
    desk = d->second == "true" || d->second == "1";
    kv.erase(d);
  }
  kv.erase("scenario");
  return make_scenario(id, desk, kv);
}

// ---- property evaluation ----------------------------------------------------

namespace {

struct SeriesView {
  const MetricsSeries& s;

  std::size_t node(const std::string& label) const {
    auto idx = s.node_index(label);
    if (!idx) throw std::runtime_error("no node labeled " + label);
    return *idx;
  }

  double at(const std::vector<double>& row, double t_s) const {
    if (row.empty()) return 0;
    return row[s.sample_of(t_s)];
  }

  double window_delta(const std::vector<double>& row, double a,
                      double b) const {
    return at(row, b) - at(row, a);
  }

  // Mean of samples falling in (a, b].
  double window_mean(const std::vector<double>& row, double a,
                     double b) const {
    double sum = 0;
    std::size_t n = 0;
    for (std::size_t k = 0; k < row.size(); ++k) {
      double t = static_cast<double>(k + 1) * s.bucket_s;
      if (t > a && t <= b) {
        sum += row[k];
        ++n;
      }
    }
    return n == 0 ? 0 : sum / static_cast<double>(n);
  }

  double window_sum(const std::vector<double>& row, double a, double b) const {
    double sum = 0;
    for (std::size_t k = 0; k < row.size(); ++k) {
      double t = static_cast<double>(k + 1) * s.bucket_s;
      if (t > a && t <= b) sum += row[k];
    }
    return sum;
  }

  double peak(const std::vector<double>& row) const {
    return row.empty() ? 0 : *std::max_element(row.begin(), row.end());
  }

  std::vector<std::size_t> hop_nodes(std::size_t count) const {
    std::vector<std::size_t> out;
    for (std::size_t i = 1; i <= count; ++i) {
      out.push_back(node("hop" + std::to_string(i)));
    }
    return out;
  }
};

std::string fmt(double v) {
  std::ostringstream ss;
  ss << v;
  return ss.str();
}

std::set<std::string> log_set(const RunResult& r, const std::string& label) {
  std::set<std::string> out;
  auto it = r.name_logs.find(label);
  if (it != r.name_logs.end()) out.insert(it->second.begin(), it->second.end());
  return out;
}

PropertyResult eval_one(const Property& p, const Scenario& sc,
                        const RunResult& r) {
  const SeriesView v{r.series};
  PropertyResult out;
  out.name = p.name;
  switch (p.kind) {
    case Property::Kind::PitPeakBetween: {
      double peak = v.peak(r.series.pit_size[v.node(p.node)]);
      out.pass = peak >= p.a && peak <= p.b;
      out.detail = p.node + " peak pit " + fmt(peak) + " in [" + fmt(p.a) +
                   ", " + fmt(p.b) + "]";
      break;
    }
    case Property::Kind::PitMeanNear: {
      double mean = v.window_mean(r.series.pit_size[v.node(p.node)], p.c,
                                  sc.params.duration_s);
      double err = std::abs(mean - p.a) / p.a;
      out.pass = err <= p.b;
      out.detail = p.node + " mean pit " + fmt(mean) + " vs " + fmt(p.a) +
                   " (err " + fmt(err) + ")";
      break;
    }
    case Property::Kind::PitMeanAtMost: {
      double mean = v.window_mean(r.series.pit_size[v.node(p.node)], p.c,
                                  sc.params.duration_s);
      out.pass = mean <= p.a;
      out.detail = p.node + " mean pit " + fmt(mean) + " <= " + fmt(p.a);
      break;
    }
    case Property::Kind::RetransSustainedAfter: {
      const auto& row = r.series.retransmits[v.node(p.node)];
      double total = v.window_delta(row, p.a, p.a + p.b);
      bool sustained = true;
      for (int third = 0; third < 3; ++third) {
        double t0 = p.a + third * p.b / 3;
        double t1 = p.a + (third + 1) * p.b / 3;
        if (v.window_delta(row, t0, t1) < 1) sustained = false;
      }
      out.pass = total >= p.b * p.c && sustained;
      out.detail = p.node + " retransmits over [" + fmt(p.a) + ", " +
                   fmt(p.a + p.b) + "]: " + fmt(total);
      break;
    }
    case Property::Kind::RetransNonIncreasingHops: {
      auto hops = v.hop_nodes(static_cast<std::size_t>(p.a));
      out.pass = true;
      std::string counts;
      double prev = -1;
      for (std::size_t i = 0; i < hops.size(); ++i) {
        const auto& row = r.series.retransmits[hops[i]];
        double total = row.empty() ? 0 : row.back();
        counts += (i ? " " : "") + fmt(total);
        if (i > 0 && total > prev * (1 + p.b) + 1) out.pass = false;
        prev = total;
      }
      out.detail = "per-hop retransmits: " + counts;
      break;
    }
    case Property::Kind::HopsRetransDominateHop: {
      auto hops = v.hop_nodes(static_cast<std::size_t>(p.a));
      const auto& bottleneck =
          r.series.retransmits[v.node("hop" + fmt(p.c))];
      double bn = bottleneck.empty() ? 0 : bottleneck.back();
      out.pass = true;
      std::string counts;
      for (std::size_t i = 0; i < hops.size(); ++i) {
        const auto& row = r.series.retransmits[hops[i]];
        double total = row.empty() ? 0 : row.back();
        counts += (i ? " " : "") + fmt(total);
        if (total < p.b * bn) out.pass = false;
      }
      out.detail = "hops1-" + fmt(p.a) + " retransmits " + counts +
                   " vs bottleneck " + fmt(bn);
      break;
    }
    case Property::Kind::UtilizationBelow: {
      double delivered = 0;
      for (double g : r.series.goodput_bits[v.node("consumer")]) delivered += g;
      double span_end = sc.params.duration_s;
      bool all_done = !r.series.files.empty();
      double last_stop = 0;
      for (const auto& f : r.series.files) {
        if (f.stop_s < 0) all_done = false;
        last_stop = std::max(last_stop, f.stop_s);
      }
      if (all_done) span_end = std::max(1e-9, last_stop);
      double util = delivered / (span_end * p.a);
      out.pass = util < p.b;
      out.detail = "mean receiver utilization " + fmt(util) + " < " + fmt(p.b);
      break;
    }
    case Property::Kind::SpreadRatioBelow: {
      std::vector<double> done;
      for (const auto& f : r.series.files) {
        if (f.stop_s >= 0) done.push_back(f.stop_s - f.start_s);
      }
      if (done.size() < p.b) {
        out.pass = false;
        out.detail = "only " + fmt(done.size()) + " files completed";
        break;
      }
      double mean = 0;
      for (double x : done) mean += x;
      mean /= static_cast<double>(done.size());
      double var = 0;
      for (double x : done) var += (x - mean) * (x - mean);
      double sd = std::sqrt(var / static_cast<double>(done.size()));
      out.pass = sd / mean < p.a;
      out.detail = "completion spread/mean " + fmt(sd / mean) + " < " + fmt(p.a);
      break;
    }
    case Property::Kind::AllFilesComplete: {
      std::size_t done = 0;
      for (const auto& f : r.series.files) {
        if (f.stop_s >= 0) ++done;
      }
      out.pass = !r.series.files.empty() && done == r.series.files.size();
      out.detail = fmt(done) + "/" + fmt(r.series.files.size()) +
                   " files completed";
      break;
    }
    case Property::Kind::ArgmaxMemHop: {
      auto hops = v.hop_nodes(static_cast<std::size_t>(p.a));
      std::vector<double> peaks;
      for (auto h : hops) peaks.push_back(v.peak(r.series.memory_bytes[h]));
      std::size_t argmax = 0;
      for (std::size_t i = 1; i < peaks.size(); ++i) {
        if (peaks[i] > peaks[argmax]) argmax = i;
      }
      std::vector<double> others;
      for (std::size_t i = 0; i < peaks.size(); ++i) {
        if (i != argmax) others.push_back(peaks[i]);
      }
      std::sort(others.begin(), others.end());
      double median = others[others.size() / 2];
      std::string expect_label = p.node;
      std::string got_label = "hop" + std::to_string(argmax + 1);
      out.pass = got_label == expect_label && peaks[argmax] >= p.b * median;
      std::string all;
      for (double x : peaks) all += fmt(x) + " ";
      out.detail = "peak memory per hop: " + all + "(argmax " + got_label +
                   ", median others " + fmt(median) + ")";
      break;
    }
    case Property::Kind::GoodputWindowRatioAtMost: {
      const auto& row = r.series.goodput_bits[v.node("consumer")];
      double pre = v.window_sum(row, p.a, p.b) / std::max(1e-9, p.b - p.a);
      double post = v.window_sum(row, p.c, p.d) / std::max(1e-9, p.d - p.c);
      out.pass = pre > 0 && post <= p.ratio * pre;
      out.detail = "goodput " + fmt(post) + " vs baseline " + fmt(pre) +
                   " (ratio " + fmt(pre > 0 ? post / pre : 0) + " <= " +
                   fmt(p.ratio) + ")";
      break;
    }
    case Property::Kind::ZeroGoodputWindow: {
      double g = v.window_sum(r.series.goodput_bits[v.node("consumer")], p.a,
                              p.b);
      out.pass = g == 0;
      out.detail = "goodput in [" + fmt(p.a) + ", " + fmt(p.b) + "]: " + fmt(g);
      break;
    }
    case Property::Kind::GoodputPositiveWindow: {
      double g = v.window_sum(r.series.goodput_bits[v.node("consumer")], p.a,
                              p.b);
      out.pass = g > 0;
      out.detail = "goodput in [" + fmt(p.a) + ", " + fmt(p.b) + "]: " + fmt(g);
      break;
    }
    case Property::Kind::ExpiryRateRatioAtLeast: {
      const auto& row = r.series.pit_expiries[v.node(p.node)];
      double pre =
          v.window_delta(row, p.a, p.b) / std::max(1e-9, p.b - p.a);
      double post =
          v.window_delta(row, p.c, p.d) / std::max(1e-9, p.d - p.c);
      double floor = 10.0 / std::max(1.0, p.d - p.c);
      out.pass = post >= std::max(p.ratio * pre, floor);
      out.detail = p.node + " expiry rate " + fmt(post) + "/s vs baseline " +
                   fmt(pre) + "/s";
      break;
    }
    case Property::Kind::PitRiseAllHopsAtLeast: {
      auto hops = v.hop_nodes(static_cast<std::size_t>(p.a));
      out.pass = true;
      std::string detail;
      for (std::size_t i = 0; i < hops.size(); ++i) {
        const auto& row = r.series.pit_size[hops[i]];
        double pre = v.window_mean(row, 1, p.b);
        double post = v.window_mean(row, p.c, p.d);
        detail += "hop" + std::to_string(i + 1) + ": " + fmt(pre) + "->" +
                  fmt(post) + " ";
        if (post < p.ratio * std::max(pre, 0.1)) out.pass = false;
      }
      out.detail = detail;
      break;
    }
    case Property::Kind::DeliveryRatioAtLeast: {
      double delivered_bits = 0;
      for (double g : r.series.goodput_bits[v.node("consumer")]) {
        delivered_bits += g;
      }
      double deliveries = delivered_bits / (8 * p.b);
      double requests = static_cast<double>(log_set(r, "consumer").size());
      out.pass = requests > 0 && deliveries >= p.a * requests;
      out.detail = fmt(deliveries) + " deliveries for " + fmt(requests) +
                   " requests";
      break;
    }
    case Property::Kind::LogsEqual: {
      auto a = log_set(r, p.node);
      auto b = log_set(r, p.node2);
      out.pass = !a.empty() && a == b;
      out.detail = p.node + " log (" + fmt(a.size()) + " names) vs " + p.node2 +
                   " log (" + fmt(b.size()) + " names)";
      break;
    }
    case Property::Kind::LogCountAtLeast: {
      auto a = log_set(r, p.node);
      out.pass = static_cast<double>(a.size()) >= p.a;
      out.detail = p.node + " observed " + fmt(a.size()) +
                   " names (need >= " + fmt(p.a) + ")";
      break;
    }
    case Property::Kind::DropsAtLeast: {
      const auto& rows = r.series.drops.at(p.node2);
      const auto& row = rows[v.node(p.node)];
      double total = row.empty() ? 0 : row.back();
      out.pass = total >= p.a;
      out.detail = p.node + " " + p.node2 + " drops: " + fmt(total);
      break;
    }
    case Property::Kind::NoDropsReason: {
      const auto& rows = r.series.drops.at(p.node2);
      const auto& row = rows[v.node(p.node)];
      double total = row.empty() ? 0 : row.back();
      out.pass = total == 0;
      out.detail = p.node + " " + p.node2 + " drops: " + fmt(total);
      break;
    }
  }
  return out;
}

}  // namespace

std::vector<PropertyResult> evaluate_properties(const Scenario& scenario,
                                                const RunResult& result) {
  std::vector<PropertyResult> out;
  for (const auto& p : scenario.properties) {
    out.push_back(eval_one(p, scenario, result));
  }
  return out;
}

PredictionComparison predict_vs_simulate(const Scenario& scenario, double t0_s,
                                         double t1_s, const RttModel& rtt,
                                         double kappa) {
  if (t0_s < 0 || t1_s <= t0_s || t1_s > scenario.params.duration_s) {
    throw std::invalid_argument("predict_vs_simulate: window outside run");
  }
  RunResult r = run_scenario(scenario);
  SeriesView v{r.series};
  double simulated = v.window_mean(r.series.pit_size[v.node("hop1")], t0_s,
                                   t1_s);
  double predicted = state_from_rate(scenario.params.poisson_alpha, rtt, kappa,
                                     scenario.params.interest_timeout_s);
  PredictionComparison out;
  out.predicted = predicted;
  out.simulated = simulated;
  out.relative_error =
      predicted > 0 ? std::abs(simulated - predicted) / predicted : 0;
  return out;
}

}  // namespace icnsim
