#include "icnsim/fib.hpp"

#include <stdexcept>

namespace icnsim {

void Fib::add_static(ContentName prefix, std::vector<FaceId> next_hops) {
  if (next_hops.empty()) {
    throw std::invalid_argument("Fib: next_hops must be non-empty");
  }
  entries_.push_back(FibEntry{std::move(prefix), std::move(next_hops),
                              FibEntry::Origin::Static, std::nullopt});
}

void Fib::announce(ContentName prefix, FaceId face, SimTime now, SimTime ttl) {
  FibEntry e{std::move(prefix), {face}, FibEntry::Origin::Announced,
             ttl == 0 ? std::nullopt : std::optional<SimTime>(now + ttl)};
  entries_.insert(entries_.begin(), std::move(e));
}

std::optional<FaceId> Fib::longest_prefix_match(const ContentName& name,
                                                SimTime now) const {
  const FibEntry* best = nullptr;
  std::size_t best_len = 0;
  for (const auto& e : entries_) {
    if (e.expires && *e.expires <= now) continue;
    if (!name_prefix_match(name, e.prefix)) continue;
    std::size_t len = e.prefix.components().size();
    if (!best || len > best_len) {
      best = &e;
      best_len = len;
    }
  }
  if (!best) return std::nullopt;
  return best->next_hops.front();
}

void ContentStore::insert(const ContentName& name,
                          std::uint32_t payload_size) {
  if (capacity_ == 0) return;
  auto it = index_.find(name);
  if (it != index_.end()) {
    it->second->second = payload_size;
    order_.splice(order_.begin(), order_, it->second);
    return;
  }
  if (order_.size() >= capacity_) {
    index_.erase(order_.back().first);
    order_.pop_back();
  }
  order_.emplace_front(name, payload_size);
  index_[name] = order_.begin();
}

std::optional<std::uint32_t> ContentStore::lookup(const ContentName& name) {
  auto it = index_.find(name);
  if (it == index_.end()) return std::nullopt;
  order_.splice(order_.begin(), order_, it->second);
  return it->second->second;
}

}  // namespace icnsim
