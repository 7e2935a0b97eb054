#include "evenset/invariants.hpp"

#include <random>

#include "doctest.h"
#include "evenset/polyring.hpp"

using namespace evenset;

TEST_CASE("chow ring normalization") {
  BundleData d{1, 2, 3};
  BundleClass T{1, 0, d}, L{0, 1, d};
  CHECK(chow_intersect(T, T, L) == 1);
  CHECK(chow_intersect(L, L, T) == 0);
  CHECK(chow_intersect(L, L, L) == 0);
  CHECK(chow_intersect(T, T, T) == 6);

  BundleClass sigma{4, -(d.sum() - 2), d};
  CHECK(chow_intersect(T, T, sigma) == 3 * d.sum() + 2);

  BundleClass other{1, 0, BundleData{0, 0, 1}};
  CHECK_THROWS_AS(chow_intersect(T, T, other), Error);
}

TEST_CASE("chow intersection is symmetric and trilinear") {
  std::mt19937_64 rng(3);
  for (int iter = 0; iter < 200; ++iter) {
    BundleData d{std::int64_t(rng() % 4), std::int64_t(rng() % 4), std::int64_t(rng() % 4)};
    auto rnd = [&] { return BundleClass{std::int64_t(rng() % 9) - 4, std::int64_t(rng() % 9) - 4, d}; };
    BundleClass a = rnd(), b = rnd(), c = rnd(), e = rnd();
    CHECK(chow_intersect(a, b, c) == chow_intersect(b, a, c));
    CHECK(chow_intersect(a, b, c) == chow_intersect(c, b, a));
    BundleClass sum{a.m + e.m, a.n + e.n, d};
    CHECK(chow_intersect(sum, b, c) == chow_intersect(a, b, c) + chow_intersect(e, b, c));
  }
}

TEST_CASE("castelnuovo numbers") {
  auto r011 = castelnuovo_numbers(0, 1, 1);
  CHECK(r011.pg == 5);
  CHECK(r011.k2 == 8);
  CHECK(r011.q == 0);
  CHECK(r011.consistent);

  auto r111 = castelnuovo_numbers(1, 1, 1);
  CHECK(r111.pg == 6);
  CHECK(r111.k2 == 11);

  auto r000 = castelnuovo_numbers(0, 0, 0);
  CHECK(r000.pg == 3);
  CHECK(r000.k2 == 2);

  CHECK_THROWS_AS(castelnuovo_numbers(2, 1, 3), Error);

  // exhaustive agreement with the chow calculator
  for (std::int64_t a = 0; a <= 5; ++a)
    for (std::int64_t b = a; b <= 5; ++b)
      for (std::int64_t c = b; c <= 5; ++c) {
        auto rec = castelnuovo_numbers(a, b, c);
        BundleData d{a, b, c};
        BundleClass T{1, 0, d};
        BundleClass sigma{4, -(a + b + c - 2), d};
        CHECK(rec.k2 == chow_intersect(T, T, sigma));
        CHECK(rec.k2 == 3 * (a + b + c) + 2);
        CHECK(rec.consistent);
      }
}

TEST_CASE("double cover invariants") {
  auto ex3 = double_cover_invariants(6, 0, 11, 32);
  CHECK(ex3.chi == 6);
  CHECK(ex3.k2 == 22);
  CHECK(ex3.k2 == 6 * 6 - 14);

  auto ex1 = double_cover_invariants(4, 0, 5, 20);
  CHECK(ex1.chi == 5);  // regular surface with p_g = 4

  auto etale = double_cover_invariants(7, 2, 9, 0);
  CHECK(etale.chi == 2 * (1 - 2 + 7));

  CHECK_THROWS_AS(double_cover_invariants(4, 0, 5, 21), Error);
}

TEST_CASE("node counts") {
  CHECK(node_count(4, 0) == 20);
  CHECK(node_count(5, 2) == 32);
  CHECK(node_count(6, 1) == 32);
}

TEST_CASE("type II enumeration") {
  auto recs = enumerate_type2(30);

  std::int64_t max_a = 0, max_b = 0, max_c = 0;
  std::size_t count_a = 0, count_b = 0, count_c = 0;
  for (const auto& r : recs) {
    switch (r.family) {
      case 'a':
        ++count_a;
        max_a = std::max(max_a, r.g);
        break;
      case 'b':
        ++count_b;
        max_b = std::max(max_b, r.g);
        break;
      case 'c':
        ++count_c;
        max_c = std::max(max_c, r.g);
        break;
    }
    // both node count formulas agree identically
    CHECK(node_count(r.pg, r.q) == 16 * r.g + 16);
    CHECK(r.nu == 16 * r.g + 16);
    CHECK(r.q - r.g == 3 * r.g + 3 - r.pg);
  }
  CHECK(max_a == 26);
  CHECK(max_b == 17);
  CHECK(max_c == 8);
  CHECK(count_a == 26);
  CHECK(count_b == 17);
  CHECK(count_c == 16);
  CHECK(recs.size() == 59);

  // the one degenerate listing (g=1, a=g-2) is flagged
  std::size_t flagged = 0;
  for (const auto& r : recs)
    if (!r.consistent) {
      ++flagged;
      CHECK(r.g == 1);
      CHECK(r.a == -1);
    }
  CHECK(flagged == 1);

  // family shapes
  for (const auto& r : recs) {
    if (r.family == 'a') {
      CHECK(r.pg == 3 * r.g + 3);
      CHECK(r.q == r.g);
      CHECK((r.a == r.g && r.b == r.g && r.c == r.g));
    } else if (r.family == 'b') {
      CHECK(r.pg == 3 * r.g + 2);
      CHECK(r.q == r.g + 1);
      CHECK((r.a == r.g - 1 && r.b == r.g && r.c == r.g));
    } else {
      CHECK(r.pg == 3 * r.g + 1);
      CHECK(r.q == r.g + 2);
    }
  }

  CHECK(enumerate_type2(100).size() == 59);
  CHECK_THROWS_AS(enumerate_type2(0), Error);
}

TEST_CASE("c2 budget") {
  auto b1 = c2_budget(1, 6);
  CHECK(b1.lhs == 73);
  CHECK(b1.rhs == 48);
  CHECK(b1.ok);

  auto boundary = c2_budget(26, 81);
  CHECK(boundary.lhs == 748);
  CHECK(boundary.rhs == 748);
  CHECK(boundary.ok);

  auto beyond = c2_budget(27, 84);
  CHECK(!beyond.ok);
}
