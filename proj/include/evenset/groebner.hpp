#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "evenset/polyring.hpp"

namespace evenset {

/// A reduced Groebner basis: monic, auto-reduced, sorted by ascending leading
/// monomial. degree_reached is the largest total degree of an S-pair lcm that
/// was actually reduced during the computation.
struct GroebnerBasis {
  MonomialOrder order;
  std::vector<Polynomial> elements;
  std::uint32_t degree_reached = 0;
};

struct Ideal {
  RingPtr ring;
  std::vector<Polynomial> generators;
  std::optional<GroebnerBasis> gb;

  /// Validates a common ring and drops zero generators.
  static Ideal make(RingPtr ring, std::vector<Polynomial> gens);
};

struct DivisionResult {
  Polynomial remainder;
  std::vector<Polynomial> quotients;  // one per basis element
};

/// Full normal form of f against a basis: no term of the result is divisible
/// by any basis leading term. Reducer choice is deterministic: smallest
/// leading monomial first, then lowest index.
Polynomial normal_form(const Polynomial& f, std::span<const Polynomial> basis);

/// Division with quotient tracking: f = sum(quotients[i]*basis[i]) + remainder.
DivisionResult divide(const Polynomial& f, std::span<const Polynomial> basis);

Polynomial s_polynomial(const Polynomial& f, const Polynomial& g);

/// Buchberger's algorithm with the Gebauer-Moeller pair criteria and normal
/// (minimal lcm degree) selection. The result carries the reduced basis.
Ideal buchberger(const Ideal& I);
/// Same, under a different order: generators are moved to a ring variant that
/// carries `order`, and the returned ideal lives there.
Ideal buchberger(const Ideal& I, const MonomialOrder& order);

/// Returns I itself if it already has a basis, otherwise computes one.
Ideal with_groebner(Ideal I);

/// True iff every S-polynomial of basis pairs reduces to zero.
bool is_groebner_basis(std::span<const Polynomial> basis);

bool ideal_member(const Polynomial& f, const Ideal& I);

/// True iff some power of f lies in I. Fast paths (a power of f reducing to
/// zero; a pure-power scan of a grevlex basis when f is the cheapest variable
/// of a homogeneous ideal) are tried first, then the fresh-variable test
/// 1 in I + (u*f - 1) decides the general case.
bool radical_member(const Polynomial& f, const Ideal& I);
/// The fresh-variable route on its own (used as a cross-check in tests).
bool radical_member_rabinowitsch(const Polynomial& f, const Ideal& I);

/// Generators of I intersected with the subring without the given variables,
/// via a block-order basis. Returns an ideal in the subring.
Ideal eliminate(const Ideal& I, std::span<const std::size_t> vars);

/// Ideal of algebraic relations among the images (one per target variable)
/// modulo the constraints, computed by eliminating the source variables from
/// constraints + (target_j - image_j).
Ideal map_kernel(const RingPtr& source, const RingPtr& target,
                 std::span<const Polynomial> images, const Ideal* constraints = nullptr);

struct PolyMatrix {
  RingPtr ring;
  std::size_t rows = 0, cols = 0;
  std::vector<Polynomial> entries;  // row-major

  const Polynomial& at(std::size_t r, std::size_t c) const { return entries[r * cols + c]; }
  Polynomial& at(std::size_t r, std::size_t c) { return entries[r * cols + c]; }
};

PolyMatrix jacobian_matrix(std::span<const Polynomial> fs);
PolyMatrix hessian_matrix(const Polynomial& f);

/// All k x k minor determinants, zeros filtered out.
std::vector<Polynomial> minors(const PolyMatrix& M, std::size_t k);

Polynomial determinant(const PolyMatrix& M);

struct HilbertProfile {
  std::size_t codimension = 0;
  std::int64_t degree = 0;
  bool operator==(const HilbertProfile&) const = default;
};

/// Codimension and degree of Proj(ring/I) for a homogeneous proper ideal,
/// read off the Hilbert series of the lead-term ideal of a Groebner basis.
HilbertProfile hilbert_profile(const Ideal& I);

/// Numerator of the Hilbert series of R/(monomial ideal) over (1-T)^nvars,
/// as a dense coefficient vector. Exposed for the test oracles.
std::vector<std::int64_t> hilbert_numerator(std::vector<Monomial> lead_terms);

/// Minimal homogeneous generating set extracted from a basis of I.
std::vector<Polynomial> minimal_generators(const Ideal& I);

}  // namespace evenset
