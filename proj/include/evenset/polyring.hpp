#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace evenset {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Parse failure with a byte offset into the offending source text.
class ParseError : public Error {
 public:
  ParseError(const std::string& msg, std::size_t position)
      : Error(msg + " (at position " + std::to_string(position) + ")"),
        position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

bool is_prime(std::uint64_t n);

/// Arithmetic in GF(p) for an odd prime p. Elements are least non-negative
/// residues stored in uint32_t.
class PrimeField {
 public:
  explicit PrimeField(std::uint32_t p);

  std::uint32_t characteristic() const { return p_; }

  std::uint32_t reduce(std::int64_t v) const {
    std::int64_t r = v % static_cast<std::int64_t>(p_);
    if (r < 0) r += p_;
    return static_cast<std::uint32_t>(r);
  }
  std::uint32_t add(std::uint32_t a, std::uint32_t b) const {
    std::uint64_t s = std::uint64_t(a) + b;
    if (s >= p_) s -= p_;
    return static_cast<std::uint32_t>(s);
  }
  std::uint32_t sub(std::uint32_t a, std::uint32_t b) const {
    return a >= b ? a - b : a + p_ - b;
  }
  std::uint32_t neg(std::uint32_t a) const { return a == 0 ? 0 : p_ - a; }
  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const {
    return static_cast<std::uint32_t>((std::uint64_t(a) * b) % p_);
  }
  std::uint32_t pow(std::uint32_t a, std::uint64_t e) const;
  std::uint32_t inv(std::uint32_t a) const;  // throws on 0

 private:
  std::uint32_t p_;
};

// A monomial is one exponent per ring variable.
using Exponent = std::uint32_t;
using Monomial = std::vector<Exponent>;

Exponent mono_degree(const Monomial& m);
Monomial mono_mul(const Monomial& a, const Monomial& b);
bool mono_divides(const Monomial& a, const Monomial& b);  // a | b
Monomial mono_div(const Monomial& b, const Monomial& a);  // b / a, requires a | b
Monomial mono_lcm(const Monomial& a, const Monomial& b);
bool mono_coprime(const Monomial& a, const Monomial& b);

enum class Cmp : int { LT = -1, EQ = 0, GT = 1 };

/// Total multiplicative orders on exponent vectors; the identity monomial is
/// minimal for every kind.
///   grevlex  - total degree, ties by reverse lexicographic
///   lex      - lexicographic in variable order
///   block    - grevlex on the first `split` variables, then grevlex on the rest
///   weighted - weighted degree (positive weights), ties by grevlex
struct MonomialOrder {
  enum class Kind { Grevlex, Lex, Block, Weighted };

  Kind kind = Kind::Grevlex;
  std::size_t block_split = 0;
  std::vector<std::int64_t> weights;

  static MonomialOrder grevlex() { return {}; }
  static MonomialOrder lex() { return {Kind::Lex, 0, {}}; }
  static MonomialOrder block(std::size_t split) { return {Kind::Block, split, {}}; }
  static MonomialOrder weighted(std::vector<std::int64_t> w) {
    return {Kind::Weighted, 0, std::move(w)};
  }

  Cmp compare(const Monomial& a, const Monomial& b) const;

  bool operator==(const MonomialOrder& o) const {
    return kind == o.kind && block_split == o.block_split && weights == o.weights;
  }
  std::string str() const;
  static MonomialOrder parse(std::string_view token);
};

class Ring;
using RingPtr = std::shared_ptr<const Ring>;

/// Polynomial ring descriptor: GF(p), named variables, monomial order.
/// Immutable once built; shared by the polynomials attached to it.
class Ring {
 public:
  static RingPtr make(std::uint32_t characteristic, std::vector<std::string> vars,
                      MonomialOrder order = MonomialOrder::grevlex());

  std::uint32_t characteristic() const { return field_.characteristic(); }
  const PrimeField& field() const { return field_; }
  std::span<const std::string> variables() const { return vars_; }
  std::size_t nvars() const { return vars_.size(); }
  const std::string& variable(std::size_t i) const { return vars_.at(i); }
  const MonomialOrder& order() const { return order_; }

  std::optional<std::size_t> find_var(std::string_view name) const;
  Cmp compare(const Monomial& a, const Monomial& b) const { return order_.compare(a, b); }

  /// Same characteristic and variable list (order may differ).
  bool same_vars(const Ring& o) const {
    return characteristic() == o.characteristic() && vars_ == o.vars_;
  }
  bool operator==(const Ring& o) const { return same_vars(o) && order_ == o.order_; }

  RingPtr with_order(MonomialOrder order) const;

  /// Header line: "ring p=<prime> vars=<v1>,... order=<grevlex|lex|block:k|weight:w1,...>"
  std::string header() const;
  static RingPtr parse_header(std::string_view line);

 private:
  Ring(PrimeField field, std::vector<std::string> vars, MonomialOrder order)
      : field_(field), vars_(std::move(vars)), order_(std::move(order)) {}

  PrimeField field_;
  std::vector<std::string> vars_;
  MonomialOrder order_;
};

struct Term {
  Monomial mono;
  std::uint32_t coeff = 0;
  bool operator==(const Term& o) const { return coeff == o.coeff && mono == o.mono; }
};

/// Sparse multivariate polynomial over GF(p). Terms are kept sorted in
/// strictly descending ring order with no zero coefficients.
class Polynomial {
 public:
  Polynomial() = default;  // detached zero; attach a ring before use
  explicit Polynomial(RingPtr ring) : ring_(std::move(ring)) {}

  static Polynomial zero(RingPtr ring) { return Polynomial(std::move(ring)); }
  static Polynomial constant(RingPtr ring, std::int64_t c);
  static Polynomial one(RingPtr ring) { return constant(std::move(ring), 1); }
  static Polynomial variable(RingPtr ring, std::size_t index);
  static Polynomial monomial(RingPtr ring, Monomial m, std::int64_t c = 1);
  /// Normalizes an arbitrary term list (combines duplicates, drops zeros, sorts).
  static Polynomial from_terms(RingPtr ring, std::vector<Term> terms);

  const RingPtr& ring() const { return ring_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t term_count() const { return terms_.size(); }
  std::span<const Term> terms() const { return terms_; }

  const Term& leading_term() const;
  const Monomial& leading_monomial() const { return leading_term().mono; }
  std::uint32_t leading_coeff() const { return leading_term().coeff; }

  /// Max total degree over terms (0 for the zero polynomial).
  std::uint32_t total_degree() const;
  /// Max over terms of the exponent sum restricted to the given variables.
  std::uint32_t degree_in(std::span<const std::size_t> vars) const;
  bool is_homogeneous() const;
  bool is_homogeneous(std::span<const std::int64_t> weights) const;

  Polynomial operator-() const;
  Polynomial operator+(const Polynomial& g) const;
  Polynomial operator-(const Polynomial& g) const;
  Polynomial operator*(const Polynomial& g) const;
  Polynomial scaled(std::uint32_t c) const;         // c * f
  Polynomial term_multiple(const Term& t) const;    // t * f, preserves sorting
  Polynomial pow(std::uint32_t k) const;
  Polynomial monic() const;

  bool operator==(const Polynomial& g) const;
  bool operator!=(const Polynomial& g) const { return !(*this == g); }

  Polynomial differentiate(std::size_t var) const;
  /// Ring homomorphism determined by images (one per variable, common ring).
  Polynomial substitute(std::span<const Polynomial> images) const;
  std::uint32_t evaluate(std::span<const std::uint32_t> point) const;

  std::string str() const;

  /// Grammar: poly := term (('+'|'-') term)*
  ///          term := coeff? ('*'? var ('^' nat)?)*
  /// With transcript_compat, juxtaposed exponents ("x02" for x0^2) and
  /// bracketed names ("x[0]" for a declared x0) are also accepted.
  static Polynomial parse(std::string_view src, const RingPtr& ring,
                          bool transcript_compat = false);

 private:
  RingPtr ring_;
  std::vector<Term> terms_;
};

inline Polynomial operator*(std::uint32_t c, const Polynomial& f) { return f.scaled(c); }

/// Move f into `target`, matching variables by name; variables absent from f's
/// ring get exponent zero. Throws if some variable of f is missing in target
/// or the characteristics differ.
Polynomial transport(const Polynomial& f, const RingPtr& target);

void require_same_ring(const Polynomial& a, const Polynomial& b);

}  // namespace evenset
