#pragma once

#include <cstdint>
#include <random>

#include "icnsim/packet.hpp"
#include "icnsim/time.hpp"

namespace icnsim {

// Engine-provided services for an agent. Agents interact with the network
// only through packets on their faces.
class AgentCtx {
 public:
  virtual ~AgentCtx() = default;
  virtual SimTime now() const = 0;
  virtual void send(FaceId face, Packet packet) = 0;
  virtual void schedule_at(SimTime at, std::uint64_t tag) = 0;
  virtual std::mt19937_64& rng() = 0;
  virtual std::uint64_t fresh_nonce() = 0;

  // Metrics hooks, attributed to this agent's node.
  virtual void add_goodput(std::uint64_t bits) = 0;
  virtual void count_retransmit() = 0;
  virtual void file_started(int id) = 0;
  virtual void file_completed(int id) = 0;
  virtual void log_name(const ContentName& name) = 0;
};

class Agent {
 public:
  virtual ~Agent() = default;
  virtual void start(AgentCtx& ctx) { (void)ctx; }
  virtual void on_packet(AgentCtx& ctx, FaceId face, const Packet& packet) {
    (void)ctx;
    (void)face;
    (void)packet;
  }
  virtual void on_timer(AgentCtx& ctx, std::uint64_t tag) {
    (void)ctx;
    (void)tag;
  }
};

}  // namespace icnsim
