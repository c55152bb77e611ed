#pragma once

#include <string>
#include <vector>

#include "icnsim/name.hpp"
#include "icnsim/packet.hpp"
#include "icnsim/router.hpp"
#include "icnsim/time.hpp"

namespace icnsim {

struct LinkSpec {
  enum class Kind { PointToPoint, SharedBroadcast };
  Kind kind = Kind::PointToPoint;
  double capacity_bps = 100e6;
  SimTime propagation = ms(1);
  std::vector<int> endpoints;  // 2 for point-to-point, >= 2 for broadcast
  std::string label;
};

struct StaticRoute {
  ContentName prefix;
  FaceId face;
};

struct NodeSpec {
  enum class Kind { Router, Agent };
  Kind kind = Kind::Agent;
  std::string label;
  RouterConfig router_cfg;  // routers only
  CpuProfile profile;       // routers only
  std::vector<StaticRoute> routes;
};

// Nodes plus links; a node's faces are numbered in link-insertion order.
struct Topology {
  std::vector<NodeSpec> nodes;
  std::vector<LinkSpec> links;

  int add_router(std::string label, RouterConfig cfg,
                 CpuProfile profile = CpuProfile());
  int add_agent(std::string label);
  // Point-to-point link; returns the link id. Face ids on both nodes follow
  // from insertion order.
  int connect(int a, int b, double capacity_bps, SimTime propagation,
              std::string label = "");
  int add_broadcast(std::vector<int> members, double capacity_bps,
                    SimTime propagation, std::string label = "");

  void add_route(int router, const ContentName& prefix, FaceId face);
  // Face index the node uses for the given link (node must be an endpoint).
  FaceId face_of(int node, int link) const;
  int node_index(const std::string& label) const;
};

// consumer - R1 - ... - Rn - repository. Hop 1 is the designated router of
// the receiver, hop n the router nearest the repository. Every router gets a
// route for each prefix pointing toward the repository.
struct Chain {
  Topology topo;
  int consumer = -1;
  int repo = -1;
  std::vector<int> hops;  // hops[0] = hop 1
};

Chain build_chain(std::size_t hops, const std::vector<double>& link_caps_bps,
                  const std::vector<RouterConfig>& router_cfgs,
                  const std::vector<ContentName>& routed_prefixes,
                  SimTime propagation = ms(1));

}  // namespace icnsim
