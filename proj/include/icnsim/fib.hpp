#pragma once

#include <cstdint>
#include <list>
#include <optional>
#include <unordered_map>
#include <vector>

#include "icnsim/name.hpp"
#include "icnsim/packet.hpp"
#include "icnsim/time.hpp"

namespace icnsim {

struct FibEntry {
  ContentName prefix;
  std::vector<FaceId> next_hops;  // ordered; forwarding uses the first
  enum class Origin { Static, Announced } origin = Origin::Static;
  std::optional<SimTime> expires;  // soft-state announcements time out
};

// Name-prefix forwarding table. Longest-prefix match wins; among equal-length
// prefixes the entry earliest in the list wins, and announcements are
// prepended, so the most recent announcement takes ties.
class Fib {
 public:
  void add_static(ContentName prefix, std::vector<FaceId> next_hops);
  void announce(ContentName prefix, FaceId face, SimTime now,
                SimTime ttl = 0);
  std::optional<FaceId> longest_prefix_match(const ContentName& name,
                                             SimTime now) const;
  const std::vector<FibEntry>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }

 private:
  std::vector<FibEntry> entries_;
};

// Minimal LRU cache of recently forwarded Data (name -> payload size).
class ContentStore {
 public:
  explicit ContentStore(std::size_t capacity) : capacity_(capacity) {}

  void insert(const ContentName& name, std::uint32_t payload_size);
  std::optional<std::uint32_t> lookup(const ContentName& name);
  std::size_t size() const { return order_.size(); }
  std::size_t capacity() const { return capacity_; }

 private:
  std::size_t capacity_;
  std::list<std::pair<ContentName, std::uint32_t>> order_;  // front = newest
  std::unordered_map<ContentName, decltype(order_)::iterator, NameHasher>
      index_;
};

}  // namespace icnsim
