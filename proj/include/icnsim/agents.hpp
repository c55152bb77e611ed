#pragma once

#include <cstdint>
#include <deque>
#include <memory>
#include <optional>
#include <unordered_map>
#include <vector>

#include "icnsim/agent.hpp"
#include "icnsim/analytic.hpp"
#include "icnsim/name.hpp"
#include "icnsim/time.hpp"

namespace icnsim {

struct ConsumerTiming {
  SimTime lifetime = secs(4);           // interest lifetime sent on the wire
  SimTime retransmit_interval = secs(1);  // fixed re-issue interval
};

// Issues `burst` distinct interests for content nobody serves, pauses, and
// repeats until `total` have been sent; every pending interest is refreshed
// on the retransmit interval for the rest of the run.
struct FloodParams {
  std::size_t burst = 2000;
  SimTime pause = secs(6);
  std::size_t total = 150000;
  ContentName prefix = ContentName({"flood"});
  ConsumerTiming timing;
  SimTime start_at = 0;
};
std::unique_ptr<Agent> make_flood_consumer(FloodParams p);

// Starts `files` chunked downloads at a fixed rate, pipelining up to `window`
// outstanding chunk interests per file.
struct BulkParams {
  std::size_t files = 500;
  double file_rate = 100;        // file starts per second
  std::uint64_t file_bits = 10'000'000;
  std::uint32_t chunk_bytes = 4096;
  std::size_t window = 64;
  ContentName prefix = ContentName({"files"});
  ConsumerTiming timing;
  SimTime start_at = 0;
  int first_file_id = 0;
};
std::unique_ptr<Agent> make_bulk_consumer(BulkParams p);

// Poisson request stream for distinct (satisfiable) names.
struct PoissonParams {
  double alpha = 100;  // interests per second; 0 = silent agent
  ContentName prefix = ContentName({"content"});
  ConsumerTiming timing;
  SimTime start_at = 0;
  SimTime stop_at = 0;  // 0 = run end
};
std::unique_ptr<Agent> make_poisson_consumer(PoissonParams p);

// Serves named content under a list of prefixes. Per-request response delay
// follows `service_delay`; with `fifo` the repository is a single server and
// requests queue. `inflate` switches to a fixed per-request service time at
// the given instant (slow-source behavior).
struct RepositoryParams {
  struct Served {
    ContentName prefix;
    std::uint64_t file_bytes = 0;  // 0: every chunk is full-size
    std::uint32_t chunk_bytes = 4096;
  };
  std::vector<Served> served;
  RttModel service_delay = RttModel::deterministic(10e-6);
  bool fifo = false;
  std::optional<std::pair<SimTime, double>> inflate;  // (from, delay_s)
};
std::unique_ptr<Agent> make_repository(RepositoryParams p);

// Requests bulk content at a fixed rate and ignores everything that comes
// back: returning Data jams the shared medium without a receiver.
struct JamParams {
  double rate = 200;  // interests per second
  ContentName prefix = ContentName({"jam"});
  SimTime lifetime = secs(4);
  SimTime start_at = 0;
  SimTime stop_at = 0;
};
std::unique_ptr<Agent> make_jammer(JamParams p);

// Dumps `count` distinct interests at `at` and goes silent (detaches).
struct BlockadeParams {
  std::size_t count = 1000;
  SimTime at = 0;
  ContentName prefix = ContentName({"blockade"});
  SimTime lifetime = secs(4);
};
std::unique_ptr<Agent> make_blockade_attacker(BlockadeParams p);

// Sends route announcements for a prefix and never answers the interests the
// announcements attract. interval == 0 announces once (hijack); otherwise the
// announcement churns (state infringement).
struct AnnounceParams {
  ContentName prefix;
  SimTime first_at = 0;
  SimTime interval = 0;
  std::size_t count = 1;
  SimTime ttl = 0;  // 0 = permanent
};
std::unique_ptr<Agent> make_announce_attacker(AnnounceParams p);

// Announces a prefix at its downstream face, records every interest name it
// attracts, and relays traffic through its upstream face so delivery still
// succeeds.
struct InterceptParams {
  ContentName prefix;
  SimTime announce_at = 0;
  SimTime ttl = 0;
};
std::unique_ptr<Agent> make_interceptor(InterceptParams p);

}  // namespace icnsim
