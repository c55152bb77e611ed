#include "icnsim/topology.hpp"

#include <stdexcept>

namespace icnsim {

int Topology::add_router(std::string label, RouterConfig cfg,
                         CpuProfile profile) {
  NodeSpec n;
  n.kind = NodeSpec::Kind::Router;
  n.label = std::move(label);
  n.router_cfg = std::move(cfg);
  n.profile = std::move(profile);
  nodes.push_back(std::move(n));
  return static_cast<int>(nodes.size()) - 1;
}

int Topology::add_agent(std::string label) {
  NodeSpec n;
  n.kind = NodeSpec::Kind::Agent;
  n.label = std::move(label);
  nodes.push_back(std::move(n));
  return static_cast<int>(nodes.size()) - 1;
}

int Topology::connect(int a, int b, double capacity_bps, SimTime propagation,
                      std::string label) {
  if (capacity_bps <= 0) {
    throw std::invalid_argument("Topology: link capacity must be > 0");
  }
  LinkSpec l;
  l.kind = LinkSpec::Kind::PointToPoint;
  l.capacity_bps = capacity_bps;
  l.propagation = propagation;
  l.endpoints = {a, b};
  l.label = label.empty()
                ? nodes[a].label + "->" + nodes[b].label
                : std::move(label);
  links.push_back(std::move(l));
  return static_cast<int>(links.size()) - 1;
}

int Topology::add_broadcast(std::vector<int> members, double capacity_bps,
                            SimTime propagation, std::string label) {
  if (members.size() < 2) {
    throw std::invalid_argument("Topology: broadcast needs >= 2 members");
  }
  LinkSpec l;
  l.kind = LinkSpec::Kind::SharedBroadcast;
  l.capacity_bps = capacity_bps;
  l.propagation = propagation;
  l.endpoints = std::move(members);
  l.label = label.empty() ? "shared" : std::move(label);
  links.push_back(std::move(l));
  return static_cast<int>(links.size()) - 1;
}

void Topology::add_route(int router, const ContentName& prefix, FaceId face) {
  nodes[router].routes.push_back(StaticRoute{prefix, face});
}

FaceId Topology::face_of(int node, int link) const {
  FaceId face = 0;
  for (int l = 0; l < static_cast<int>(links.size()); ++l) {
    bool member = false;
    for (int e : links[l].endpoints) {
      if (e == node) member = true;
    }
    if (!member) continue;
    if (l == link) return face;
    ++face;
  }
  throw std::invalid_argument("Topology::face_of: node not on link");
}

int Topology::node_index(const std::string& label) const {
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (nodes[i].label == label) return static_cast<int>(i);
  }
  throw std::invalid_argument("Topology: unknown node label " + label);
}

Chain build_chain(std::size_t hops, const std::vector<double>& link_caps_bps,
                  const std::vector<RouterConfig>& router_cfgs,
                  const std::vector<ContentName>& routed_prefixes,
                  SimTime propagation) {
  if (hops < 1) throw std::invalid_argument("build_chain: hops must be >= 1");
  if (link_caps_bps.size() != hops + 1 || router_cfgs.size() != hops) {
    throw std::invalid_argument("build_chain: mismatched list lengths");
  }
  Chain c;
  c.consumer = c.topo.add_agent("consumer");
  for (std::size_t i = 0; i < hops; ++i) {
    c.hops.push_back(
        c.topo.add_router("hop" + std::to_string(i + 1), router_cfgs[i]));
  }
  c.repo = c.topo.add_agent("repo");

  int prev = c.consumer;
  for (std::size_t i = 0; i <= hops; ++i) {
    int next = i < hops ? c.hops[i] : c.repo;
    c.topo.connect(prev, next, link_caps_bps[i], propagation);
    prev = next;
  }
  // Each router's upstream face is the later-created of its two links.
  for (std::size_t i = 0; i < hops; ++i) {
    FaceId upstream = c.topo.face_of(c.hops[i], static_cast<int>(i + 1));
    for (const auto& p : routed_prefixes) {
      c.topo.add_route(c.hops[i], p, upstream);
    }
  }
  return c;
}

}  // namespace icnsim
