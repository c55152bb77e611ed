#include "icnsim/engine.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

namespace icnsim {

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t tag) {
  auto mix = [](std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
  };
  return mix(master ^ mix(tag));
}

namespace {

enum class EvKind : std::uint8_t {
  Profile,
  LinkDeliver,
  TimerFire,
  FibApply,
  AgentStart,
  AgentTimer,
  Service,
  Emit,
  Sample,
};

// Order at equal timestamps: profile changes, then Data, PIT timers,
// Interests, route applications, agent actions, backlog service, sampling.
constexpr std::uint8_t kClsProfile = 0;
constexpr std::uint8_t kClsData = 1;
constexpr std::uint8_t kClsTimer = 2;
constexpr std::uint8_t kClsInterest = 3;
constexpr std::uint8_t kClsFibApply = 4;
constexpr std::uint8_t kClsAgent = 5;
constexpr std::uint8_t kClsService = 6;
constexpr std::uint8_t kClsSample = 7;

std::uint8_t packet_class(const Packet& p) {
  return std::holds_alternative<DataPacket>(p) ? kClsData : kClsInterest;
}

struct Event {
  SimTime at = 0;
  std::uint8_t cls = 0;
  std::uint64_t seq = 0;
  EvKind kind = EvKind::Sample;
  std::int32_t a = -1;  // node or link id
  std::int32_t b = -1;  // face or receiver
  std::uint64_t tag = 0;
  Packet packet{};
  std::vector<Emission> emissions;
};

struct EventAfter {
  bool operator()(const Event& x, const Event& y) const {
    if (x.at != y.at) return x.at > y.at;
    if (x.cls != y.cls) return x.cls > y.cls;
    return x.seq > y.seq;
  }
};

struct Queued {
  FaceId face;
  Packet packet;
};

struct Retained {
  Packet packet;
  SimTime ready;
};

}  // namespace

struct Engine::Impl {
  Topology topo;
  EngineParams params;

  struct NodeRt {
    NodeSpec::Kind kind;
    std::string label;
    std::unique_ptr<Router> router;
    Agent* agent = nullptr;
    std::deque<Queued> input;
    std::uint64_t input_bytes = 0;
    bool service_scheduled = false;
    std::optional<SimTime> timer_armed;
    std::vector<int> links;  // face -> link id
    std::uint64_t retained_out_bytes = 0;
    std::uint64_t mem_drops = 0;
    std::uint64_t agent_retransmits = 0;
    std::mt19937_64 rng;
    std::vector<std::string> log;
  };

  struct LinkRt {
    double serializer_free[2] = {0, 0};
    std::deque<Retained> retained[2];
    std::uint64_t retained_bytes[2] = {0, 0};
    int series[2] = {-1, -1};  // per-direction metrics row
  };

  class Ctx final : public AgentCtx {
   public:
    Ctx(Impl* impl, int node) : impl_(impl), node_(node) {}
    SimTime now() const override { return impl_->now; }
    void send(FaceId face, Packet packet) override {
      impl_->transmit(node_, face, std::move(packet));
    }
    void schedule_at(SimTime at, std::uint64_t tag) override {
      Event ev;
      ev.at = std::max(at, impl_->now);
      ev.cls = kClsAgent;
      ev.kind = EvKind::AgentTimer;
      ev.a = node_;
      ev.tag = tag;
      impl_->push(std::move(ev));
    }
    std::mt19937_64& rng() override { return impl_->nodes[node_].rng; }
    std::uint64_t fresh_nonce() override { return ++impl_->nonce; }
    void add_goodput(std::uint64_t bits) override {
      impl_->goodput_bits[node_][impl_->bucket(impl_->now)] +=
          static_cast<double>(bits);
    }
    void count_retransmit() override {
      impl_->nodes[node_].agent_retransmits++;
    }
    void file_started(int id) override {
      impl_->file_start[id] = impl_->now;
    }
    void file_completed(int id) override {
      impl_->file_stop[id] = impl_->now;
    }
    void log_name(const ContentName& name) override {
      impl_->nodes[node_].log.push_back(name.to_string());
    }

   private:
    Impl* impl_;
    int node_;
  };

  std::vector<NodeRt> nodes;
  std::vector<LinkRt> links;
  std::vector<std::unique_ptr<Agent>> owned_agents;
  std::vector<std::unique_ptr<Ctx>> ctxs;  // per node (agents only)

  std::priority_queue<Event, std::vector<Event>, EventAfter> queue;
  SimTime now = 0;
  std::uint64_t seq = 0;
  std::uint64_t nonce = 0;
  std::uint64_t trace_hash = 0xcbf29ce484222325ull;

  std::size_t n_buckets = 0;
  std::vector<std::vector<double>> pit_size, retrans, expiries, busy_ns,
      mem_peak, goodput_bits, link_bits;
  std::vector<std::array<std::vector<double>, kDropReasonCount>> drop_series;
  std::map<int, SimTime> file_start, file_stop;

  // -- plumbing ------------------------------------------------------------

  void push(Event ev) {
    ev.seq = seq++;
    queue.push(std::move(ev));
  }

  std::size_t bucket(SimTime t) const {
    std::size_t idx = t == 0 ? 0 : static_cast<std::size_t>(
                                       (t - 1) / params.sample_interval);
    return std::min(idx, n_buckets - 1);
  }

  void hash_event(const Event& ev) {
    auto mix = [&](std::uint64_t v) {
      trace_hash ^= v;
      trace_hash *= 0x100000001b3ull;
    };
    mix(ev.at);
    mix(ev.cls);
    mix(static_cast<std::uint64_t>(ev.kind));
    mix(static_cast<std::uint64_t>(static_cast<std::int64_t>(ev.a)));
    mix(static_cast<std::uint64_t>(static_cast<std::int64_t>(ev.b)));
    mix(ev.tag);
  }

  std::uint64_t node_memory(const NodeRt& rt) const {
    if (rt.kind != NodeSpec::Kind::Router) return 0;
    return rt.router->pit_memory_bytes() + rt.input_bytes +
           rt.retained_out_bytes;
  }

  void touch_memory(int node) {
    auto& rt = nodes[node];
    if (rt.kind != NodeSpec::Kind::Router) return;
    double cur = static_cast<double>(node_memory(rt));
    auto& cell = mem_peak[node][bucket(now)];
    cell = std::max(cell, cur);
  }

  void add_busy(int node, double s, double e) {
    double horizon = static_cast<double>(params.duration);
    s = std::min(s, horizon);
    e = std::min(e, horizon);
    if (e <= s) return;
    double b = static_cast<double>(params.sample_interval);
    std::size_t k = static_cast<std::size_t>(s / b);
    while (s < e && k < n_buckets) {
      double end_of_bucket = (k + 1) * b;
      double take = std::min(e, end_of_bucket) - s;
      busy_ns[node][k] += take;
      s += take;
      ++k;
    }
  }

  // -- links ---------------------------------------------------------------

  void transmit(int node, FaceId face, Packet packet) {
    auto& rt = nodes[node];
    int link_id = rt.links.at(static_cast<std::size_t>(face));
    const LinkSpec& spec = topo.links[link_id];
    LinkRt& L = links[link_id];
    std::uint64_t bits = static_cast<std::uint64_t>(wire_bytes(packet)) * 8;

    int dir = 0;
    if (spec.kind == LinkSpec::Kind::PointToPoint) {
      dir = spec.endpoints[0] == node ? 0 : 1;
    }
    double start = std::max(static_cast<double>(now), L.serializer_free[dir]);
    double fin = start + static_cast<double>(bits) * 1e9 / spec.capacity_bps;
    L.serializer_free[dir] = fin;
    SimTime fin_t = static_cast<SimTime>(std::ceil(fin));
    if (fin_t <= params.duration) {
      link_bits[L.series[dir]][bucket(fin_t)] += static_cast<double>(bits);
    }
    SimTime arrive = fin_t + spec.propagation;

    if (spec.kind == LinkSpec::Kind::PointToPoint) {
      Event ev;
      ev.at = arrive;
      ev.cls = packet_class(packet);
      ev.kind = EvKind::LinkDeliver;
      ev.a = link_id;
      ev.b = spec.endpoints[dir == 0 ? 1 : 0];
      ev.packet = std::move(packet);
      push(std::move(ev));
    } else {
      for (int member : spec.endpoints) {
        if (member == node) continue;
        Event ev;
        ev.at = arrive;
        ev.cls = packet_class(packet);
        ev.kind = EvKind::LinkDeliver;
        ev.a = link_id;
        ev.b = member;
        ev.packet = packet;
        push(std::move(ev));
      }
    }
  }

  void deliver(int link_id, int receiver, Packet packet) {
    const LinkSpec& spec = topo.links[link_id];
    auto& dst = nodes[receiver];
    FaceId face = topo.face_of(receiver, link_id);

    if (dst.kind == NodeSpec::Kind::Agent) {
      if (dst.agent) dst.agent->on_packet(*ctxs[receiver], face, packet);
      return;
    }

    std::uint64_t wire = wire_bytes(packet);
    if (node_memory(dst) + wire > dst.router->config().mem_limit) {
      dst.mem_drops++;
      return;
    }
    const auto& limit = dst.router->config().input_queue_limit;
    if (limit && dst.input.size() >= *limit &&
        spec.kind == LinkSpec::Kind::PointToPoint) {
      // Receiver buffer full: the lossless link holds the packet; its bytes
      // sit in the sender's forwarding queue until the receiver drains.
      int dir = spec.endpoints[1] == receiver ? 0 : 1;
      LinkRt& L = links[link_id];
      L.retained[dir].push_back(Retained{std::move(packet), now});
      L.retained_bytes[dir] += wire;
      int sender = spec.endpoints[dir];
      nodes[sender].retained_out_bytes += wire;
      touch_memory(sender);
      return;
    }
    accept_packet(receiver, face, std::move(packet));
  }

  void accept_packet(int node, FaceId face, Packet packet) {
    auto& rt = nodes[node];
    rt.input_bytes += wire_bytes(packet);
    rt.input.push_back(Queued{face, std::move(packet)});
    touch_memory(node);
    if (!rt.service_scheduled) {
      rt.service_scheduled = true;
      if (rt.router->busy_until_ns() <= static_cast<double>(now) &&
          rt.input.size() == 1) {
        service_one(node);  // idle router: process at arrival time
      } else {
        Event ev;
        ev.at = std::max(
            now, static_cast<SimTime>(std::ceil(rt.router->busy_until_ns())));
        ev.cls = kClsService;
        ev.kind = EvKind::Service;
        ev.a = node;
        push(std::move(ev));
      }
    }
  }

  void release_retained(int node) {
    auto& rt = nodes[node];
    const auto& limit = rt.router->config().input_queue_limit;
    while (!limit || rt.input.size() < *limit) {
      int best_link = -1, best_dir = 0;
      SimTime best_ready = 0;
      for (std::size_t f = 0; f < rt.links.size(); ++f) {
        int link_id = rt.links[f];
        const LinkSpec& spec = topo.links[link_id];
        if (spec.kind != LinkSpec::Kind::PointToPoint) continue;
        int dir = spec.endpoints[1] == node ? 0 : 1;
        auto& q = links[link_id].retained[dir];
        if (q.empty()) continue;
        if (best_link < 0 || q.front().ready < best_ready) {
          best_link = link_id;
          best_dir = dir;
          best_ready = q.front().ready;
        }
      }
      if (best_link < 0) return;
      LinkRt& L = links[best_link];
      Retained r = std::move(L.retained[best_dir].front());
      L.retained[best_dir].pop_front();
      std::uint64_t wire = wire_bytes(r.packet);
      L.retained_bytes[best_dir] -= wire;
      int sender = topo.links[best_link].endpoints[best_dir];
      nodes[sender].retained_out_bytes -= wire;
      touch_memory(sender);
      FaceId face = topo.face_of(node, best_link);
      if (node_memory(rt) + wire > rt.router->config().mem_limit) {
        rt.mem_drops++;
        continue;
      }
      rt.input_bytes += wire;
      rt.input.push_back(Queued{face, std::move(r.packet)});
      touch_memory(node);
    }
  }

  // -- router service ------------------------------------------------------

  void service_one(int node) {
    auto& rt = nodes[node];
    if (rt.input.empty()) {
      rt.service_scheduled = false;
      return;
    }
    Queued q = std::move(rt.input.front());
    rt.input.pop_front();
    rt.input_bytes -= wire_bytes(q.packet);
    if (rt.router->config().input_queue_limit) release_retained(node);

    PipelineResult pr;
    const RouteAnnounce* announce = nullptr;
    if (const auto* it = std::get_if<Interest>(&q.packet)) {
      pr = rt.router->on_interest(q.face, *it, now);
    } else if (const auto* d = std::get_if<DataPacket>(&q.packet)) {
      pr = rt.router->on_data(q.face, *d, now);
    } else {
      announce = &std::get<RouteAnnounce>(q.packet);
      pr.cycles = rt.router->config().pipeline_cycles;
    }

    ServiceInterval si = rt.router->schedule_processing(now, pr.cycles);
    add_busy(node, si.start_ns, si.end_ns);

    if (announce) {
      Event ev;
      ev.at = si.completion + rt.router->config().fib_apply_delay;
      ev.cls = kClsFibApply;
      ev.kind = EvKind::FibApply;
      ev.a = node;
      ev.b = q.face;
      ev.packet = q.packet;
      push(std::move(ev));
    }
    if (!pr.emissions.empty()) {
      Event ev;
      ev.at = si.completion;
      ev.cls = kClsService;
      ev.kind = EvKind::Emit;
      ev.a = node;
      ev.emissions = std::move(pr.emissions);
      push(std::move(ev));
    }
    ensure_timer(node);
    touch_memory(node);

    if (rt.input.empty()) {
      rt.service_scheduled = false;
    } else {
      Event ev;
      ev.at = si.completion;
      ev.cls = kClsService;
      ev.kind = EvKind::Service;
      ev.a = node;
      push(std::move(ev));
    }
  }

  void ensure_timer(int node) {
    auto& rt = nodes[node];
    auto ne = rt.router->pit().next_expiry();
    if (!ne) return;
    if (!rt.timer_armed || *ne < *rt.timer_armed) {
      rt.timer_armed = *ne;
      Event ev;
      ev.at = *ne;
      ev.cls = kClsTimer;
      ev.kind = EvKind::TimerFire;
      ev.a = node;
      push(std::move(ev));
    }
  }

  void fire_timer(int node) {
    auto& rt = nodes[node];
    if (!rt.timer_armed || *rt.timer_armed != now) return;  // stale
    rt.timer_armed.reset();
    auto tr = rt.router->on_timer(now);
    ServiceInterval si = rt.router->schedule_processing(now, tr.cycles);
    add_busy(node, si.start_ns, si.end_ns);
    touch_memory(node);
    ensure_timer(node);
  }

  // -- sampling ------------------------------------------------------------

  void take_sample() {
    std::size_t k = bucket(now);
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      auto& rt = nodes[i];
      if (rt.kind == NodeSpec::Kind::Router) {
        pit_size[i][k] = static_cast<double>(rt.router->pit().size());
        retrans[i][k] = static_cast<double>(rt.router->retransmits_seen());
        expiries[i][k] = static_cast<double>(rt.router->pit_expiries());
        for (int r = 0; r < kDropReasonCount; ++r) {
          double v = static_cast<double>(rt.router->drops(
              static_cast<DropReason>(r)));
          if (static_cast<DropReason>(r) == DropReason::MemoryExhausted) {
            v += static_cast<double>(rt.mem_drops);
          }
          drop_series[i][r][k] = v;
        }
        touch_memory(static_cast<int>(i));
      } else {
        retrans[i][k] = static_cast<double>(rt.agent_retransmits);
      }
    }
  }

  // -- event dispatch ------------------------------------------------------

  void dispatch(Event& ev) {
    switch (ev.kind) {
      case EvKind::Profile:
        break;  // capacity integration reads the profile directly
      case EvKind::LinkDeliver:
        deliver(ev.a, ev.b, std::move(ev.packet));
        break;
      case EvKind::TimerFire:
        fire_timer(ev.a);
        break;
      case EvKind::FibApply: {
        const auto& ann = std::get<RouteAnnounce>(ev.packet);
        nodes[ev.a].router->fib_announce(ann.prefix, ev.b, now, ann.ttl);
        break;
      }
      case EvKind::AgentStart:
        if (nodes[ev.a].agent) nodes[ev.a].agent->start(*ctxs[ev.a]);
        break;
      case EvKind::AgentTimer:
        if (nodes[ev.a].agent) nodes[ev.a].agent->on_timer(*ctxs[ev.a], ev.tag);
        break;
      case EvKind::Service:
        service_one(ev.a);
        break;
      case EvKind::Emit:
        for (auto& e : ev.emissions) {
          if (auto* f = std::get_if<ForwardInterest>(&e)) {
            transmit(ev.a, f->face, f->interest);
          } else if (auto* s = std::get_if<SendData>(&e)) {
            transmit(ev.a, s->face, s->data);
          }
        }
        break;
      case EvKind::Sample:
        take_sample();
        break;
    }
  }

  RunResult run();
};

RunResult Engine::Impl::run() {
  n_buckets = static_cast<std::size_t>(
      (params.duration + params.sample_interval - 1) / params.sample_interval);
  if (n_buckets == 0) n_buckets = 1;

  auto zeros = [&](std::size_t rows) {
    return std::vector<std::vector<double>>(rows,
                                            std::vector<double>(n_buckets, 0));
  };
  pit_size = zeros(nodes.size());
  retrans = zeros(nodes.size());
  expiries = zeros(nodes.size());
  busy_ns = zeros(nodes.size());
  mem_peak = zeros(nodes.size());
  goodput_bits = zeros(nodes.size());
  drop_series.resize(nodes.size());
  for (auto& per_node : drop_series) {
    for (auto& v : per_node) v.assign(n_buckets, 0);
  }

  std::size_t n_link_series = 0;
  for (std::size_t l = 0; l < topo.links.size(); ++l) {
    links[l].series[0] = static_cast<int>(n_link_series++);
    if (topo.links[l].kind == LinkSpec::Kind::PointToPoint) {
      links[l].series[1] = static_cast<int>(n_link_series++);
    }
  }
  link_bits = zeros(n_link_series);

  // Agent kick-off, profile boundaries, and the sampling grid.
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (nodes[i].kind == NodeSpec::Kind::Agent) {
      Event ev;
      ev.at = 0;
      ev.cls = kClsAgent;
      ev.kind = EvKind::AgentStart;
      ev.a = static_cast<int>(i);
      push(std::move(ev));
    } else {
      for (const auto& [start, frac] : nodes[i].router->profile().segments()) {
        if (start == 0 || start > params.duration) continue;
        Event ev;
        ev.at = start;
        ev.cls = kClsProfile;
        ev.kind = EvKind::Profile;
        ev.a = static_cast<int>(i);
        push(std::move(ev));
      }
    }
  }
  for (std::size_t k = 1; k <= n_buckets; ++k) {
    Event ev;
    ev.at = static_cast<SimTime>(k) * params.sample_interval;
    ev.cls = kClsSample;
    ev.kind = EvKind::Sample;
    push(std::move(ev));
  }

  while (!queue.empty()) {
    Event ev = std::move(const_cast<Event&>(queue.top()));
    queue.pop();
    if (ev.at > params.duration) break;
    if (ev.at < now) throw std::logic_error("engine: event time regression");
    now = ev.at;
    hash_event(ev);
    dispatch(ev);
  }

  // -- assemble the result -------------------------------------------------
  RunResult result;
  MetricsSeries& s = result.series;
  s.bucket_s = to_seconds(params.sample_interval);
  s.n_samples = n_buckets;
  for (const auto& rt : nodes) s.node_labels.push_back(rt.label);
  for (std::size_t l = 0; l < topo.links.size(); ++l) {
    s.link_labels.push_back(topo.links[l].label);
    if (topo.links[l].kind == LinkSpec::Kind::PointToPoint) {
      s.link_labels.push_back(topo.links[l].label + ":rev");
    }
  }
  s.pit_size = std::move(pit_size);
  s.retransmits = std::move(retrans);
  s.pit_expiries = std::move(expiries);
  s.memory_bytes = std::move(mem_peak);
  s.goodput_bits = std::move(goodput_bits);
  s.link_bits = std::move(link_bits);
  s.cpu_util = std::move(busy_ns);
  for (auto& row : s.cpu_util) {
    for (auto& v : row) v /= static_cast<double>(params.sample_interval);
  }
  for (int r = 0; r < kDropReasonCount; ++r) {
    auto& family = s.drops[drop_reason_name(static_cast<DropReason>(r))];
    family.resize(nodes.size());
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      family[i] = std::move(drop_series[i][r]);
    }
  }
  for (const auto& [id, start] : file_start) {
    MetricsSeries::FileStat f;
    f.id = id;
    f.start_s = to_seconds(start);
    auto it = file_stop.find(id);
    f.stop_s = it == file_stop.end() ? -1 : to_seconds(it->second);
    s.files.push_back(f);
  }
  for (const auto& rt : nodes) {
    if (!rt.log.empty()) result.name_logs[rt.label] = rt.log;
  }
  result.trace_hash = trace_hash;
  return result;
}

Engine::Engine(Topology topo,
               std::vector<std::pair<int, std::unique_ptr<Agent>>> agents,
               EngineParams params)
    : impl_(std::make_unique<Impl>()) {
  impl_->topo = std::move(topo);
  impl_->params = params;
  if (params.duration == 0) {
    throw std::invalid_argument("Engine: duration must be > 0");
  }

  auto& nodes = impl_->nodes;
  nodes.resize(impl_->topo.nodes.size());
  impl_->ctxs.resize(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const NodeSpec& spec = impl_->topo.nodes[i];
    nodes[i].kind = spec.kind;
    nodes[i].label = spec.label;
    nodes[i].rng.seed(derive_seed(params.seed, 0x1000 + i));
    if (spec.kind == NodeSpec::Kind::Router) {
      nodes[i].router = std::make_unique<Router>(spec.router_cfg);
      nodes[i].router->set_profile(spec.profile);
    } else {
      impl_->ctxs[i] = std::make_unique<Impl::Ctx>(impl_.get(),
                                                   static_cast<int>(i));
    }
  }
  for (std::size_t l = 0; l < impl_->topo.links.size(); ++l) {
    for (int e : impl_->topo.links[l].endpoints) {
      nodes[e].links.push_back(static_cast<int>(l));
    }
  }
  impl_->links.resize(impl_->topo.links.size());

  // Static routes need face ids, which exist only now.
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const NodeSpec& spec = impl_->topo.nodes[i];
    if (spec.kind != NodeSpec::Kind::Router) continue;
    for (const auto& r : spec.routes) {
      nodes[i].router->fib().add_static(r.prefix, {r.face});
    }
  }

  for (auto& [node, agent] : agents) {
    if (nodes[node].kind != NodeSpec::Kind::Agent) {
      throw std::invalid_argument("Engine: agent attached to a router node");
    }
    nodes[node].agent = agent.get();
    impl_->owned_agents.push_back(std::move(agent));
  }
}

Engine::~Engine() = default;

RunResult Engine::run() { return impl_->run(); }

RunResult run_simulation(
    Topology topo, std::vector<std::pair<int, std::unique_ptr<Agent>>> agents,
    EngineParams params) {
  Engine engine(std::move(topo), std::move(agents), params);
  return engine.run();
}

}  // namespace icnsim
