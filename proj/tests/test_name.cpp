#include <random>

#include "doctest.h"
#include "icnsim/name.hpp"

using namespace icnsim;

namespace {

ContentName random_name(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> n_comps(1, 4);
  std::uniform_int_distribution<int> comp_len(1, 6);
  std::uniform_int_distribution<int> letter('a', 'f');
  std::uniform_int_distribution<int> chunk(0, 3);
  std::vector<std::string> comps;
  for (int i = 0; i < n_comps(rng); ++i) {
    std::string c;
    for (int j = 0; j < comp_len(rng); ++j) {
      c += static_cast<char>(letter(rng));
    }
    comps.push_back(std::move(c));
  }
  std::optional<std::uint32_t> ch;
  if (chunk(rng) == 0) ch = static_cast<std::uint32_t>(chunk(rng));
  return ContentName(std::move(comps), ch);
}

}  // namespace

TEST_CASE("prefix matching follows the leading-sublist rule") {
  ContentName abc = ContentName::parse("/a/b/c#0");
  ContentName ab = ContentName::parse("/a/b");
  ContentName abcdeep = ContentName::parse("/a/b/c");

  CHECK(name_prefix_match(abc, ab));
  CHECK_FALSE(name_prefix_match(ab, abcdeep));
  CHECK(name_prefix_match(ContentName::parse("/a/b#7"), ab));
  // Chunk is ignored on both sides of a prefix test.
  CHECK(name_prefix_match(abc, ContentName::parse("/a/b#3")));
  CHECK_FALSE(name_prefix_match(ContentName::parse("/a/bx"), ab));
}

TEST_CASE("name equality requires identical components and chunk") {
  CHECK(ContentName::parse("/a/b#1") == ContentName::parse("/a/b#1"));
  CHECK(ContentName::parse("/a/b") != ContentName::parse("/a/b#0"));
  CHECK(ContentName::parse("/a/b") != ContentName::parse("/a/c"));
  CHECK(ContentName::parse("/a/b#2").to_string() == "/a/b#2");
  CHECK(ContentName::parse("/a/b").to_string() == "/a/b");
}

TEST_CASE("names reject empty component lists") {
  CHECK_THROWS_AS(ContentName(std::vector<std::string>{}),
                  std::invalid_argument);
  CHECK_THROWS_AS(ContentName({"a", ""}), std::invalid_argument);
}

TEST_CASE("prefix relation is reflexive and antisymmetric on random names") {
  std::mt19937_64 rng(42);
  for (int i = 0; i < 500; ++i) {
    ContentName a = random_name(rng);
    ContentName b = random_name(rng);
    CHECK(name_prefix_match(a, a));  // reflexive (chunk ignored)
    if (name_prefix_match(a, b) && name_prefix_match(b, a)) {
      CHECK(a.components() == b.components());  // antisymmetric up to chunk
    }
    CHECK((a == b) == (b == a));
  }
}

TEST_CASE("chunk_names covers the file with a ceiling split") {
  // 10 Mbit file = 1,250,000 bytes; ceil(1250000/4096) = 306.
  ContentName base = ContentName::parse("/f");
  CHECK(chunk_names(base, 1250000, 4096).size() == 306);
  CHECK(chunk_names(base, 4096, 4096).size() == 1);
  CHECK(chunk_names(base, 4096, 4096)[0].chunk() == 0);
  CHECK(chunk_names(base, 1, 4096).size() == 1);
  CHECK_THROWS_AS(chunk_names(base, 0, 4096), std::invalid_argument);
  CHECK_THROWS_AS(chunk_names(base, 10, 0), std::invalid_argument);
}

TEST_CASE("chunk_names count equals ceil(file/chunk) for random sizes") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<std::uint64_t> size(1, 1 << 20);
  std::uniform_int_distribution<std::uint64_t> chunk(1, 1 << 14);
  ContentName base({"f"});
  for (int i = 0; i < 200; ++i) {
    std::uint64_t fs = size(rng);
    std::uint64_t cs = chunk(rng);
    auto names = chunk_names(base, fs, cs);
    std::uint64_t expect = (fs + cs - 1) / cs;  // independent ceiling oracle
    REQUIRE(names.size() == expect);
    CHECK(names.front().chunk() == 0);
    CHECK(names.back().chunk() == expect - 1);
    for (const auto& n : names) CHECK(n.components() == base.components());
  }
}
