#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cstdint>
#include <random>
#include <set>

#include "cctf/rng.hpp"
#include "doctest.h"

using cctf::Rng;
using cctf::mix64;

TEST_CASE("mix64 is deterministic and spreads nearby inputs") {
  CHECK(mix64(1) == mix64(1));
  CHECK(mix64(1) != mix64(2));
  // splitmix64 reference value for x=0 (golden-gamma increment + finalizer)
  CHECK(mix64(0) == 0xE220A8397B1DCDAFULL);

  // No collisions over a window of consecutive seeds.
  std::set<std::uint64_t> seen;
  for (std::uint64_t i = 0; i < 10000; ++i) seen.insert(mix64(i));
  CHECK(seen.size() == 10000);
}

TEST_CASE("underlying engine follows the standard-mandated sequence") {
  // The C++ standard pins this value for mt19937_64 with default seed, so a
  // passing check means raw words are portable across toolchains.
  std::mt19937_64 reference;  // seed 5489
  std::uint64_t value = 0;
  for (int i = 0; i < 10000; ++i) value = reference();
  CHECK(value == 9981545732273789042ULL);
}

TEST_CASE("equal seeds give equal streams, different seeds differ") {
  Rng a(42), b(42), c(43);
  bool all_equal = true;
  bool any_diff_c = false;
  for (int i = 0; i < 1000; ++i) {
    const std::uint64_t va = a.next_u64();
    all_equal = all_equal && (va == b.next_u64());
    any_diff_c = any_diff_c || (va != c.next_u64());
  }
  CHECK(all_equal);
  CHECK(any_diff_c);
}

TEST_CASE("rng equality tracks consumed state") {
  Rng a(7), b(7);
  CHECK(a == b);
  a.next_u64();
  CHECK(a != b);
  b.next_u64();
  CHECK(a == b);
}

TEST_CASE("next_double stays in [0,1) and is roughly centered") {
  Rng rng(11);
  double sum = 0.0;
  for (int i = 0; i < 100000; ++i) {
    const double x = rng.next_double();
    REQUIRE(x >= 0.0);
    REQUIRE(x < 1.0);
    sum += x;
  }
  CHECK(sum / 100000 == doctest::Approx(0.5).epsilon(0.02));
}

TEST_CASE("next_below is bounded and covers small ranges") {
  Rng rng(3);
  int counts[7] = {0};
  for (int i = 0; i < 70000; ++i) {
    const std::uint64_t v = rng.next_below(7);
    REQUIRE(v < 7);
    ++counts[v];
  }
  for (int c : counts) {
    CHECK(c > 9000);  // ~10000 expected per bucket
    CHECK(c < 11000);
  }
  for (int i = 0; i < 100; ++i) CHECK(rng.next_below(1) == 0);
}

TEST_CASE("bernoulli honors the degenerate probabilities") {
  Rng rng(5);
  for (int i = 0; i < 10000; ++i) {
    CHECK_FALSE(rng.bernoulli(0.0));
    CHECK(rng.bernoulli(1.0));
  }
  int hits = 0;
  for (int i = 0; i < 100000; ++i) hits += rng.bernoulli(0.25);
  CHECK(hits > 23500);
  CHECK(hits < 26500);
}
