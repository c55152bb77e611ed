#include <cmath>

#include "doctest.h"
#include "icnsim/router.hpp"

using namespace icnsim;

namespace {

RouterConfig small_config() {
  RouterConfig cfg;
  cfg.cpu_hz = 2.4e9;
  cfg.mem_limit = 64 << 20;
  cfg.pit.bucket_count = 256;
  cfg.pit.capacity = 8;
  cfg.pipeline_cycles = 1000;
  return cfg;
}

Interest interest(const std::string& name, SimTime now = 0,
                  SimTime lifetime = secs(4)) {
  Interest i;
  i.name = ContentName::parse(name);
  i.nonce = 1;
  i.lifetime = lifetime;
  i.issued_at = now;
  return i;
}

template <typename T>
const T* find_emission(const PipelineResult& r) {
  for (const auto& e : r.emissions) {
    if (const T* v = std::get_if<T>(&e)) return v;
  }
  return nullptr;
}

}  // namespace

TEST_CASE("interest pipeline: forward, aggregate, tail-drop, no-route") {
  Router router(small_config());
  router.fib().add_static(ContentName::parse("/a"), {2});

  auto fwd = router.on_interest(1, interest("/a/x#0"), 0);
  const auto* f = find_emission<ForwardInterest>(fwd);
  REQUIRE(f != nullptr);
  CHECK(f->face == 2);
  CHECK(router.pit().size() == 1);
  CHECK(fwd.cycles == 1000 + 500);  // pipeline + insert

  // Same name from another face aggregates and does not forward.
  auto agg = router.on_interest(3, interest("/a/x#0", ms(1)), ms(1));
  CHECK(find_emission<ForwardInterest>(agg) == nullptr);
  CHECK(router.retransmits_seen() == 1);
  auto entry = router.pit().lookup(ContentName::parse("/a/x#0"), ms(2));
  REQUIRE(entry.entry.has_value());
  CHECK(entry.entry->downstream_faces == std::vector<FaceId>{1, 3});

  // Unrouted prefix: state is kept, packet is dropped.
  auto nr = router.on_interest(1, interest("/zzz#0"), 0);
  REQUIRE(find_emission<Drop>(nr) != nullptr);
  CHECK(find_emission<Drop>(nr)->reason == DropReason::NoRoute);

  // Fill a fresh router to capacity; the next distinct name is tail-dropped.
  Router fresh(small_config());
  fresh.fib().add_static(ContentName::parse("/a"), {2});
  for (int i = 0; i < 8; ++i) {
    fresh.on_interest(1, interest("/a/fill" + std::to_string(i) + "#0"), 0);
  }
  auto full = fresh.on_interest(1, interest("/a/over#0"), 0);
  REQUIRE(find_emission<Drop>(full) != nullptr);
  CHECK(find_emission<Drop>(full)->reason == DropReason::PitFull);
  CHECK(fresh.drops(DropReason::PitFull) == 1);
  CHECK(fresh.pit().size() == 8);
}

TEST_CASE("data pipeline: reverse-path fan-out, one-shot state") {
  Router router(small_config());
  router.fib().add_static(ContentName::parse("/a"), {9});
  router.on_interest(1, interest("/a/x#0"), 0);
  router.on_interest(3, interest("/a/x#0"), 0);

  DataPacket data{ContentName::parse("/a/x#0"), 1000};
  auto out = router.on_data(9, data, ms(5));
  int sends = 0;
  for (const auto& e : out.emissions) {
    if (const auto* s = std::get_if<SendData>(&e)) {
      ++sends;
      CHECK((s->face == 1 || s->face == 3));
    }
  }
  CHECK(sends == 2);
  CHECK(router.pit().size() == 0);

  // Data with no matching state is unsolicited, including repeats.
  auto repeat = router.on_data(9, data, ms(6));
  REQUIRE(find_emission<Drop>(repeat) != nullptr);
  CHECK(find_emission<Drop>(repeat)->reason == DropReason::Unsolicited);
}

TEST_CASE("cache hit answers from the content store without PIT state") {
  RouterConfig cfg = small_config();
  cfg.cs_capacity = 4;
  Router router(cfg);
  router.fib().add_static(ContentName::parse("/a"), {2});

  router.on_interest(1, interest("/a/x#0"), 0);
  router.on_data(2, DataPacket{ContentName::parse("/a/x#0"), 777}, ms(1));
  CHECK(router.pit().size() == 0);

  auto hit = router.on_interest(5, interest("/a/x#0"), ms(2));
  const auto* s = find_emission<SendData>(hit);
  REQUIRE(s != nullptr);
  CHECK(s->face == 5);
  CHECK(s->data.payload_size == 777);
  CHECK(router.pit().size() == 0);
}

TEST_CASE("timers: expiry at exactly insert+lifetime, refresh extends") {
  Router router(small_config());
  router.fib().add_static(ContentName::parse("/a"), {2});
  router.on_interest(1, interest("/a/x#0", 0, secs(4)), 0);

  CHECK(router.on_timer(secs(4) - us(1)).expired.empty());
  auto expired = router.on_timer(secs(4));
  REQUIRE(expired.expired.size() == 1);
  CHECK(router.pit_expiries() == 1);

  // Refreshed at t + T/2 with the same lifetime: survives past t + T.
  router.on_interest(1, interest("/a/y#0", 0, secs(4)), 0);
  router.on_interest(1, interest("/a/y#0", secs(2), secs(4)), secs(2));
  CHECK(router.on_timer(secs(4)).expired.empty());
  CHECK(router.on_timer(secs(6)).expired.size() == 1);
}

TEST_CASE("schedule_processing models a serial CPU") {
  Router router(small_config());
  // 500 cycles at 2.4 GHz: ~208 ns.
  auto s = router.schedule_processing(us(10), 500);
  CHECK(s.end_ns == doctest::Approx(10000 + 500 / 2.4).epsilon(1e-9));
  CHECK(s.completion == us(10) + 209);  // ceil to the next ns

  // Busy until then; zero-cycle op completes at max(arrival, busy).
  auto s2 = router.schedule_processing(us(10), 0);
  CHECK(s2.end_ns == s.end_ns);

  // A quarter-speed profile stretches service four-fold.
  Router slow(small_config());
  slow.set_profile(CpuProfile::constant(0.25));
  auto s3 = slow.schedule_processing(0, 500);
  CHECK(s3.end_ns == doctest::Approx(4 * 500 / 2.4).epsilon(1e-9));
}

TEST_CASE("work conservation at full profile: completion = arrival + service") {
  Router router(small_config());
  SimTime arrival = 0;
  double expected = 0;
  for (int i = 0; i < 50; ++i) {
    arrival += us(10);  // arrivals slower than service: no queueing
    auto s = router.schedule_processing(arrival, 1000);
    expected = static_cast<double>(arrival) + 1000 / 2.4;
    CHECK(s.end_ns == doctest::Approx(expected).epsilon(1e-12));
  }
}

TEST_CASE("cpu profile integrates across segment boundaries") {
  CpuProfile p({{0, 1.0}, {us(1), 0.5}});
  // 2400 cycles at 2.4 GHz: 1 us at full speed. Start at 0.5 us: half the
  // work (1200 cycles) runs at full speed for 0.5 us, the rest at half speed
  // for 1 us.
  double end = p.advance(500.0, 2400, 2.4e9);
  CHECK(end == doctest::Approx(500 + 500 + 1000).epsilon(1e-9));
  CHECK(p.fraction_at(0) == 1.0);
  CHECK(p.fraction_at(us(2)) == 0.5);
}

TEST_CASE("square wave profile keeps one hop in a low phase per offset") {
  CpuProfile w = CpuProfile::square_wave(0.1, secs(30), secs(15), secs(15),
                                         secs(120));
  CHECK(w.fraction_at(secs(10)) == 1.0);
  CHECK(w.fraction_at(secs(16)) == 0.1);
  CHECK(w.fraction_at(secs(31)) == 1.0);
  CHECK(w.fraction_at(secs(46)) == 0.1);
}

TEST_CASE("rate limiter: bucket grants max_rate per second per scope key") {
  RouterConfig cfg = small_config();
  cfg.pit.capacity = 1000;
  cfg.rate_limit = RateLimit{RateLimit::Scope::PerFacePrefix, 100};
  Router router(cfg);
  router.fib().add_static(ContentName::parse("/pop"), {2});

  int passed = 0;
  for (int i = 0; i < 100; ++i) {
    if (router.rate_limiter_check(1, ContentName::parse("/pop/a#0"), ms(1))) {
      ++passed;
    }
  }
  CHECK(passed == 100);
  // The 101st within the same instant is throttled.
  CHECK_FALSE(router.rate_limiter_check(1, ContentName::parse("/pop/b#0"),
                                        ms(1)));
  // Another face has its own bucket.
  CHECK(router.rate_limiter_check(7, ContentName::parse("/pop/c#0"), ms(1)));
  // After a second the bucket refills.
  CHECK(router.rate_limiter_check(1, ContentName::parse("/pop/d#0"),
                                  ms(1) + secs(1)));
}

TEST_CASE("attacker saturating a face+prefix bucket throttles the victim") {
  RouterConfig cfg = small_config();
  cfg.pit.capacity = 1000;
  cfg.rate_limit = RateLimit{RateLimit::Scope::PerFacePrefix, 50};
  Router router(cfg);
  router.fib().add_static(ContentName::parse("/pop"), {2});

  for (int i = 0; i < 50; ++i) {
    auto r = router.on_interest(
        1, interest("/pop/atk/" + std::to_string(i) + "#0"), ms(1));
    CHECK(find_emission<Drop>(r) == nullptr);
  }
  // The legitimate consumer shares face and first-component prefix.
  auto blocked = router.on_interest(1, interest("/pop/legit/film#0"), ms(2));
  REQUIRE(find_emission<Drop>(blocked) != nullptr);
  CHECK(find_emission<Drop>(blocked)->reason == DropReason::RateLimited);
  CHECK(router.pit().size() == 50);  // the drop left no state
}

TEST_CASE("fib announcements win by longest prefix, then recency") {
  Router router(small_config());
  router.fib().add_static(ContentName::parse("/a"), {2});

  router.fib_announce(ContentName::parse("/a/b"), 9, 0);
  CHECK(router.fib().longest_prefix_match(ContentName::parse("/a/b/c#0"), 1) ==
        9);
  CHECK(router.fib().longest_prefix_match(ContentName::parse("/a/z#0"), 1) ==
        2);

  // Duplicate prefix announced later takes the tie.
  router.fib_announce(ContentName::parse("/a/b"), 4, 0);
  CHECK(router.fib().longest_prefix_match(ContentName::parse("/a/b/c#0"), 1) ==
        4);

  // Unrelated prefixes are untouched.
  CHECK(router.fib().longest_prefix_match(ContentName::parse("/a/q#0"), 1) ==
        2);

  // Soft-state announcements expire.
  router.fib_announce(ContentName::parse("/a"), 7, 0, secs(1));
  CHECK(router.fib().longest_prefix_match(ContentName::parse("/a/z#0"),
                                          ms(500)) == 7);
  CHECK(router.fib().longest_prefix_match(ContentName::parse("/a/z#0"),
                                          secs(1)) == 2);
}

TEST_CASE("flow balance: data forwarded never exceeds interests accepted") {
  Router router(small_config());
  router.fib().add_static(ContentName::parse("/a"), {2});
  int accepted = 0;
  int data_forwarded = 0;
  for (int i = 0; i < 6; ++i) {
    auto r = router.on_interest(
        1, interest("/a/n" + std::to_string(i) + "#0"), 0);
    if (find_emission<ForwardInterest>(r)) ++accepted;
  }
  for (int i = 0; i < 12; ++i) {  // repo floods duplicates
    DataPacket d{ContentName::parse("/a/n" + std::to_string(i % 6) + "#0"),
                 100};
    auto r = router.on_data(2, d, ms(1));
    if (find_emission<SendData>(r)) ++data_forwarded;
  }
  CHECK(data_forwarded <= accepted);
  CHECK(data_forwarded == 6);  // states are one-shot
}

TEST_CASE("config invariant: pit memory must fit in the budget") {
  RouterConfig cfg = small_config();
  cfg.pit.capacity = 1 << 20;
  cfg.mem_limit = 1 << 20;  // 2^20 entries * 120 B each will not fit
  CHECK_THROWS_AS(Router{cfg}, std::invalid_argument);
}
