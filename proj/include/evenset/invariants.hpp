#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace evenset {

/// The bundle data (a,b,c), 0 <= a <= b <= c, of the P^2-bundle over P^1.
struct BundleData {
  std::int64_t a = 0, b = 0, c = 0;
  bool operator==(const BundleData&) const = default;
  std::int64_t sum() const { return a + b + c; }
};

/// Divisor class m*T + n*L on the bundle, T the tautological hyperplane
/// section and L the fibre.
struct BundleClass {
  std::int64_t m = 0, n = 0;
  BundleData data;
};

/// Triple intersection number in the ring generated by T and L with
/// L^2 = 0, T^2*L = 1, T^3 = (a+b+c)*T^2*L.
std::int64_t chow_intersect(const BundleClass& c1, const BundleClass& c2, const BundleClass& c3);

/// Invariant bundle for a surface; unused slots hold -1.
struct InvariantRecord {
  std::int64_t pg = -1, q = -1, k2 = -1, nu = -1, g = -1;
  std::int64_t a = -1, b = -1, c = -1;
  char family = '-';        // 'a'/'b'/'c' for the type-II families
  bool consistent = true;   // all applicable constraint checks hold
  std::string note;
};

/// p_g, q, K^2 of the minimal desingularization of a degree-(3p_g-7) surface
/// of type (a,b,c); cross-validated against chow_intersect.
InvariantRecord castelnuovo_numbers(std::int64_t a, std::int64_t b, std::int64_t c);

struct DoubleCoverInvariants {
  std::int64_t chi = 0;
  std::int64_t k2 = 0;
};

/// chi(O_X) and K_X^2 for the double cover of Y branched exactly over nu nodes.
DoubleCoverInvariants double_cover_invariants(std::int64_t pg_y, std::int64_t q_y,
                                              std::int64_t k2_y, std::int64_t nu);

/// Number of nodes of the canonical image: 4*(1 + p_g + q).
std::int64_t node_count(std::int64_t pg, std::int64_t q);

/// All numerical possibilities for type-II surfaces with base genus up to
/// g_max, grouped in the three families; records that violate a constraint
/// (the g=1 instance of the second family-c option) are emitted with
/// consistent=false.
std::vector<InvariantRecord> enumerate_type2(std::int64_t g_max);

struct C2Budget {
  std::int64_t lhs = 0;  // 9*p_g + 19
  std::int64_t rhs = 0;  // -8 + 14*(2g+2)
  bool ok = false;
};

C2Budget c2_budget(std::int64_t g, std::int64_t pg);

}  // namespace evenset
