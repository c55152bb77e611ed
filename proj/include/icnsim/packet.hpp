#pragma once

#include <cstdint>
#include <variant>

#include "icnsim/name.hpp"
#include "icnsim/time.hpp"

namespace icnsim {

// Router interface identifier, unique and stable within a node.
using FaceId = std::int32_t;
constexpr FaceId kInvalidFace = -1;

struct Interest {
  ContentName name;
  std::uint64_t nonce = 0;   // unique per (consumer, transmission)
  SimTime lifetime = 0;      // requested PIT lifetime
  SimTime issued_at = 0;
};

struct DataPacket {
  ContentName name;  // carries a concrete chunk index
  std::uint32_t payload_size = 0;  // bytes
};

// Control packet a supplier (or attacker) sends to register a route toward
// the arrival face. ttl == 0 means no expiry.
struct RouteAnnounce {
  ContentName prefix;
  SimTime ttl = 0;
};

using Packet = std::variant<Interest, DataPacket, RouteAnnounce>;

// Fixed signaling sizes; Data rides as bare payload bytes.
constexpr std::uint32_t kInterestWireBytes = 100;
constexpr std::uint32_t kAnnounceWireBytes = 100;

inline std::uint32_t wire_bytes(const Packet& p) {
  if (const auto* d = std::get_if<DataPacket>(&p)) return d->payload_size;
  if (std::holds_alternative<RouteAnnounce>(p)) return kAnnounceWireBytes;
  return kInterestWireBytes;
}

}  // namespace icnsim
