#include "evenset/invariants.hpp"

#include "evenset/polyring.hpp"  // Error

namespace evenset {

std::int64_t chow_intersect(const BundleClass& c1, const BundleClass& c2, const BundleClass& c3) {
  if (!(c1.data == c2.data) || !(c2.data == c3.data))
    throw Error("chow_intersect: mismatched bundle data");
  const std::int64_t s = c1.data.sum();
  // (m1 T + n1 L)(m2 T + n2 L)(m3 T + n3 L), L^2 = 0:
  //   m1 m2 m3 T^3 + (m1 m2 n3 + m1 n2 m3 + n1 m2 m3) T^2 L
  return c1.m * c2.m * c3.m * s + c1.m * c2.m * c3.n + c1.m * c2.n * c3.m + c1.n * c2.m * c3.m;
}

InvariantRecord castelnuovo_numbers(std::int64_t a, std::int64_t b, std::int64_t c) {
  if (!(0 <= a && a <= b && b <= c)) throw Error("castelnuovo_numbers: need 0 <= a <= b <= c");
  InvariantRecord r;
  r.a = a;
  r.b = b;
  r.c = c;
  r.pg = a + b + c + 3;
  r.q = 0;
  r.k2 = 3 * r.pg - 7;
  BundleData d{a, b, c};
  BundleClass T{1, 0, d};
  BundleClass sigma{4, -(a + b + c - 2), d};
  r.consistent = chow_intersect(T, T, sigma) == r.k2;
  return r;
}

DoubleCoverInvariants double_cover_invariants(std::int64_t pg_y, std::int64_t q_y,
                                              std::int64_t k2_y, std::int64_t nu) {
  if (nu % 4 != 0) throw Error("double_cover_invariants: node count must be divisible by 4");
  DoubleCoverInvariants r;
  r.chi = 2 * (1 - q_y + pg_y) - nu / 4;
  r.k2 = 2 * k2_y;
  return r;
}

std::int64_t node_count(std::int64_t pg, std::int64_t q) { return 4 * (1 + pg + q); }

namespace {

InvariantRecord type2_record(std::int64_t g, std::int64_t pg, std::int64_t q, std::int64_t a,
                             std::int64_t b, std::int64_t c, char family) {
  InvariantRecord r;
  r.g = g;
  r.pg = pg;
  r.q = q;
  r.a = a;
  r.b = b;
  r.c = c;
  r.family = family;
  r.k2 = 6 * pg - 14;
  r.nu = 16 * g + 16;
  bool sorted = 0 <= a && a <= b && b <= c && c <= g;
  bool sum_ok = a + b + c == pg - 3;
  bool qg_ok = q - g == 3 * g + 3 - pg;
  bool budget_ok = 9 * pg >= 28 * g + 1;
  bool nodes_ok = node_count(pg, q) == r.nu;
  r.consistent = sorted && sum_ok && qg_ok && budget_ok && nodes_ok;
  if (!sorted) r.note = "bundle data out of range";
  return r;
}

}  // namespace

std::vector<InvariantRecord> enumerate_type2(std::int64_t g_max) {
  if (g_max < 1) throw Error("enumerate_type2: g_max must be >= 1");
  std::vector<InvariantRecord> out;
  for (std::int64_t g = 1; g <= g_max; ++g) {
    if (g <= 26) out.push_back(type2_record(g, 3 * g + 3, g, g, g, g, 'a'));
    if (g <= 17) out.push_back(type2_record(g, 3 * g + 2, g + 1, g - 1, g, g, 'b'));
    if (g <= 8) {
      out.push_back(type2_record(g, 3 * g + 1, g + 2, g - 1, g - 1, g, 'c'));
      out.push_back(type2_record(g, 3 * g + 1, g + 2, g - 2, g, g, 'c'));
    }
  }
  return out;
}

C2Budget c2_budget(std::int64_t g, std::int64_t pg) {
  if (g < 1) throw Error("c2_budget: g must be >= 1");
  C2Budget r;
  r.lhs = 9 * pg + 19;
  r.rhs = -8 + 14 * (2 * g + 2);
  r.ok = r.lhs >= r.rhs;
  return r;
}

}  // namespace evenset
