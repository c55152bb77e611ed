#include "icnsim/agents.hpp"

#include <algorithm>
#include <string>
#include <unordered_set>

#include "icnsim/packet.hpp"

namespace icnsim {

namespace {

Interest make_interest(AgentCtx& ctx, const ContentName& name,
                       SimTime lifetime) {
  Interest i;
  i.name = name;
  i.nonce = ctx.fresh_nonce();
  i.lifetime = lifetime;
  i.issued_at = ctx.now();
  return i;
}

// Shared pending-table machinery for consumers: per-name retransmit timers on
// a fixed interval, fresh nonce per retransmission.
class ConsumerBase : public Agent {
 protected:
  explicit ConsumerBase(ConsumerTiming timing) : timing_(timing) {}

  struct Pending {
    ContentName name;
    bool live = true;
    std::uint64_t aux = 0;  // subclass payload (e.g. file index)
  };

  static constexpr std::uint64_t kRetransTagBase = 1ull << 32;

  std::size_t issue(AgentCtx& ctx, const ContentName& name, FaceId face,
                    std::uint64_t aux) {
    ctx.send(face, make_interest(ctx, name, timing_.lifetime));
    ctx.log_name(name);
    pending_.push_back(Pending{name, true, aux});
    std::size_t idx = pending_.size() - 1;
    index_[name] = idx;
    ctx.schedule_at(ctx.now() + timing_.retransmit_interval,
                    kRetransTagBase + idx);
    return idx;
  }

  Pending* settle(const ContentName& name) {
    auto it = index_.find(name);
    if (it == index_.end()) return nullptr;
    Pending& p = pending_[it->second];
    if (!p.live) return nullptr;
    p.live = false;
    index_.erase(it);
    return &p;
  }

  bool handle_retransmit(AgentCtx& ctx, std::uint64_t tag, FaceId face) {
    if (tag < kRetransTagBase) return false;
    std::size_t idx = static_cast<std::size_t>(tag - kRetransTagBase);
    Pending& p = pending_[idx];
    if (p.live) {
      ctx.send(face, make_interest(ctx, p.name, timing_.lifetime));
      ctx.count_retransmit();
      ctx.schedule_at(ctx.now() + timing_.retransmit_interval, tag);
    }
    return true;
  }

  ConsumerTiming timing_;
  std::vector<Pending> pending_;
  std::unordered_map<ContentName, std::size_t, NameHasher> index_;
};

class FloodConsumer final : public ConsumerBase {
 public:
  explicit FloodConsumer(FloodParams p)
      : ConsumerBase(p.timing), p_(std::move(p)) {}

  void start(AgentCtx& ctx) override { ctx.schedule_at(p_.start_at, 0); }

  void on_timer(AgentCtx& ctx, std::uint64_t tag) override {
    if (handle_retransmit(ctx, tag, 0)) return;
    std::size_t n = std::min(p_.burst, p_.total - sent_);
    for (std::size_t i = 0; i < n; ++i) {
      issue(ctx, p_.prefix.child(std::to_string(sent_ + i)).with_chunk(0), 0,
            0);
    }
    sent_ += n;
    if (sent_ < p_.total) ctx.schedule_at(ctx.now() + p_.pause, 0);
  }

 private:
  FloodParams p_;
  std::size_t sent_ = 0;
};

class BulkConsumer final : public ConsumerBase {
 public:
  explicit BulkConsumer(BulkParams p)
      : ConsumerBase(p.timing), p_(std::move(p)) {}

  void start(AgentCtx& ctx) override {
    if (p_.files > 0) ctx.schedule_at(p_.start_at, 0);
  }

  void on_timer(AgentCtx& ctx, std::uint64_t tag) override {
    if (handle_retransmit(ctx, tag, 0)) return;
    start_file(ctx);
    if (started_ < p_.files) {
      SimTime next = p_.start_at +
                     from_seconds(static_cast<double>(started_) / p_.file_rate);
      ctx.schedule_at(next, 0);
    }
  }

  void on_packet(AgentCtx& ctx, FaceId, const Packet& packet) override {
    const auto* data = std::get_if<DataPacket>(&packet);
    if (!data) return;
    Pending* p = settle(data->name);
    if (!p) return;  // duplicate or stale: not goodput
    ctx.add_goodput(static_cast<std::uint64_t>(data->payload_size) * 8);
    File& f = files_[p->aux];
    f.outstanding--;
    f.remaining--;
    if (f.remaining == 0) {
      ctx.file_completed(f.id);
    } else {
      pump(ctx, p->aux);
    }
  }

 private:
  struct File {
    std::vector<ContentName> chunks;
    std::size_t next = 0;
    std::size_t outstanding = 0;
    std::size_t remaining = 0;
    int id = 0;
  };

  void start_file(AgentCtx& ctx) {
    File f;
    f.id = p_.first_file_id + static_cast<int>(started_);
    ContentName base = p_.prefix.child("f" + std::to_string(f.id));
    f.chunks = chunk_names(base, (p_.file_bits + 7) / 8, p_.chunk_bytes);
    f.remaining = f.chunks.size();
    files_.push_back(std::move(f));
    ++started_;
    ctx.file_started(files_.back().id);
    pump(ctx, files_.size() - 1);
  }

  void pump(AgentCtx& ctx, std::size_t file_idx) {
    File& f = files_[file_idx];
    while (f.outstanding < p_.window && f.next < f.chunks.size()) {
      issue(ctx, f.chunks[f.next], 0, file_idx);
      f.next++;
      f.outstanding++;
    }
  }

  BulkParams p_;
  std::vector<File> files_;
  std::size_t started_ = 0;
};

class PoissonConsumer final : public ConsumerBase {
 public:
  explicit PoissonConsumer(PoissonParams p)
      : ConsumerBase(p.timing), p_(std::move(p)) {}

  void start(AgentCtx& ctx) override {
    if (p_.alpha > 0) ctx.schedule_at(p_.start_at + next_gap(ctx), 0);
  }

  void on_timer(AgentCtx& ctx, std::uint64_t tag) override {
    if (handle_retransmit(ctx, tag, 0)) return;
    if (p_.stop_at != 0 && ctx.now() >= p_.stop_at) return;
    issue(ctx, p_.prefix.child(std::to_string(seq_++)).with_chunk(0), 0, 0);
    ctx.schedule_at(ctx.now() + next_gap(ctx), 0);
  }

  void on_packet(AgentCtx& ctx, FaceId, const Packet& packet) override {
    const auto* data = std::get_if<DataPacket>(&packet);
    if (!data) return;
    if (settle(data->name)) {
      ctx.add_goodput(static_cast<std::uint64_t>(data->payload_size) * 8);
    }
  }

 private:
  SimTime next_gap(AgentCtx& ctx) {
    std::exponential_distribution<double> exp(p_.alpha);
    return from_seconds(exp(ctx.rng()));
  }

  PoissonParams p_;
  std::uint64_t seq_ = 0;
};

class Repository final : public Agent {
 public:
  explicit Repository(RepositoryParams p) : p_(std::move(p)) {}

  void on_packet(AgentCtx& ctx, FaceId face, const Packet& packet) override {
    const auto* interest = std::get_if<Interest>(&packet);
    if (!interest) return;
    const RepositoryParams::Served* served = nullptr;
    for (const auto& s : p_.served) {
      if (name_prefix_match(interest->name, s.prefix)) {
        served = &s;
        break;
      }
    }
    if (!served) return;  // unknown content: silently ignored

    std::uint64_t chunk = interest->name.chunk() ? *interest->name.chunk() : 0;
    std::uint64_t payload = served->chunk_bytes;
    if (served->file_bytes > 0) {
      std::uint64_t offset = chunk * served->chunk_bytes;
      if (offset >= served->file_bytes) return;
      payload = std::min<std::uint64_t>(served->chunk_bytes,
                                        served->file_bytes - offset);
    }
    ContentName name = interest->name.chunk()
                           ? interest->name
                           : interest->name.with_chunk(0);
    DataPacket data{name, static_cast<std::uint32_t>(payload)};

    double delay_s = p_.inflate && ctx.now() >= p_.inflate->first
                         ? p_.inflate->second
                         : sample_rtt(p_.service_delay, ctx.rng());
    SimTime ready;
    if (p_.fifo) {
      server_free_ = std::max(server_free_, ctx.now()) + from_seconds(delay_s);
      ready = server_free_;
    } else {
      ready = ctx.now() + from_seconds(delay_s);
    }
    outbox_.push_back({face, std::move(data)});
    ctx.schedule_at(ready, outbox_.size() - 1);
  }

  void on_timer(AgentCtx& ctx, std::uint64_t tag) override {
    auto& [face, data] = outbox_[tag];
    ctx.send(face, data);
  }

 private:
  RepositoryParams p_;
  SimTime server_free_ = 0;
  std::vector<std::pair<FaceId, DataPacket>> outbox_;
};

class Jammer final : public Agent {
 public:
  explicit Jammer(JamParams p) : p_(std::move(p)) {}

  void start(AgentCtx& ctx) override {
    if (p_.rate > 0) ctx.schedule_at(p_.start_at, 0);
  }

  void on_timer(AgentCtx& ctx, std::uint64_t) override {
    if (p_.stop_at != 0 && ctx.now() >= p_.stop_at) return;
    ContentName name =
        p_.prefix.child(std::to_string(seq_++)).with_chunk(0);
    ctx.send(0, make_interest(ctx, name, p_.lifetime));
    ctx.schedule_at(ctx.now() + from_seconds(1.0 / p_.rate), 0);
  }

 private:
  JamParams p_;
  std::uint64_t seq_ = 0;
};

class BlockadeAttacker final : public Agent {
 public:
  explicit BlockadeAttacker(BlockadeParams p) : p_(std::move(p)) {}

  void start(AgentCtx& ctx) override { ctx.schedule_at(p_.at, 0); }

  void on_timer(AgentCtx& ctx, std::uint64_t) override {
    for (std::size_t i = 0; i < p_.count; ++i) {
      ContentName name = p_.prefix.child(std::to_string(i)).with_chunk(0);
      ctx.send(0, make_interest(ctx, name, p_.lifetime));
    }
  }

 private:
  BlockadeParams p_;
};

class AnnounceAttacker final : public Agent {
 public:
  explicit AnnounceAttacker(AnnounceParams p) : p_(std::move(p)) {}

  void start(AgentCtx& ctx) override { ctx.schedule_at(p_.first_at, 0); }

  void on_timer(AgentCtx& ctx, std::uint64_t) override {
    ctx.send(0, RouteAnnounce{p_.prefix, p_.ttl});
    if (++sent_ < p_.count && p_.interval > 0) {
      ctx.schedule_at(ctx.now() + p_.interval, 0);
    }
  }

  // Misrouted interests land here and die; keep their names for the record.
  void on_packet(AgentCtx& ctx, FaceId, const Packet& packet) override {
    if (const auto* interest = std::get_if<Interest>(&packet)) {
      ctx.log_name(interest->name);
    }
  }

 private:
  AnnounceParams p_;
  std::size_t sent_ = 0;
};

class Interceptor final : public Agent {
 public:
  explicit Interceptor(InterceptParams p) : p_(std::move(p)) {}

  void start(AgentCtx& ctx) override { ctx.schedule_at(p_.announce_at, 0); }

  void on_timer(AgentCtx& ctx, std::uint64_t) override {
    ctx.send(0, RouteAnnounce{p_.prefix, p_.ttl});
  }

  void on_packet(AgentCtx& ctx, FaceId face, const Packet& packet) override {
    if (const auto* interest = std::get_if<Interest>(&packet)) {
      if (face != 0) return;
      if (logged_.insert(interest->name).second) {
        ctx.log_name(interest->name);
      }
      pending_.insert(interest->name);
      ctx.send(1, *interest);
    } else if (const auto* data = std::get_if<DataPacket>(&packet)) {
      if (face != 1) return;
      auto it = pending_.find(data->name);
      if (it == pending_.end()) return;
      pending_.erase(it);
      ctx.send(0, *data);
    }
  }

 private:
  InterceptParams p_;
  std::unordered_set<ContentName, NameHasher> pending_;
  std::unordered_set<ContentName, NameHasher> logged_;
};

}  // namespace

std::unique_ptr<Agent> make_flood_consumer(FloodParams p) {
  return std::make_unique<FloodConsumer>(std::move(p));
}
std::unique_ptr<Agent> make_bulk_consumer(BulkParams p) {
  return std::make_unique<BulkConsumer>(std::move(p));
}
std::unique_ptr<Agent> make_poisson_consumer(PoissonParams p) {
  return std::make_unique<PoissonConsumer>(std::move(p));
}
std::unique_ptr<Agent> make_repository(RepositoryParams p) {
  return std::make_unique<Repository>(std::move(p));
}
std::unique_ptr<Agent> make_jammer(JamParams p) {
  return std::make_unique<Jammer>(std::move(p));
}
std::unique_ptr<Agent> make_blockade_attacker(BlockadeParams p) {
  return std::make_unique<BlockadeAttacker>(std::move(p));
}
std::unique_ptr<Agent> make_announce_attacker(AnnounceParams p) {
  return std::make_unique<AnnounceAttacker>(std::move(p));
}
std::unique_ptr<Agent> make_interceptor(InterceptParams p) {
  return std::make_unique<Interceptor>(std::move(p));
}

}  // namespace icnsim
