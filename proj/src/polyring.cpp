#include "evenset/polyring.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>
#include <unordered_map>

namespace evenset {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::uint64_t d = 3; d * d <= n; d += 2)
    if (n % d == 0) return false;
  return true;
}

PrimeField::PrimeField(std::uint32_t p) : p_(p) {
  if (p <= 2 || !is_prime(p)) throw Error("characteristic must be an odd prime, got " + std::to_string(p));
}

std::uint32_t PrimeField::pow(std::uint32_t a, std::uint64_t e) const {
  std::uint64_t base = a % p_, r = 1;
  while (e) {
    if (e & 1) r = r * base % p_;
    base = base * base % p_;
    e >>= 1;
  }
  return static_cast<std::uint32_t>(r);
}

std::uint32_t PrimeField::inv(std::uint32_t a) const {
  if (a == 0) throw Error("division by zero in GF(p)");
  // extended Euclid
  std::int64_t t = 0, newt = 1, r = p_, newr = a;
  while (newr != 0) {
    std::int64_t q = r / newr;
    t = std::exchange(newt, t - q * newt);
    r = std::exchange(newr, r - q * newr);
  }
  if (t < 0) t += p_;
  return static_cast<std::uint32_t>(t);
}

Exponent mono_degree(const Monomial& m) {
  return std::accumulate(m.begin(), m.end(), Exponent{0});
}

Monomial mono_mul(const Monomial& a, const Monomial& b) {
  Monomial r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    r[i] = a[i] + b[i];
    if (r[i] < a[i]) throw Error("exponent overflow");
  }
  return r;
}

bool mono_divides(const Monomial& a, const Monomial& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] > b[i]) return false;
  return true;
}

Monomial mono_div(const Monomial& b, const Monomial& a) {
  Monomial r(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) r[i] = b[i] - a[i];
  return r;
}

Monomial mono_lcm(const Monomial& a, const Monomial& b) {
  Monomial r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = std::max(a[i], b[i]);
  return r;
}

bool mono_coprime(const Monomial& a, const Monomial& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] && b[i]) return false;
  return true;
}

namespace {

Cmp grevlex_cmp(const Exponent* a, const Exponent* b, std::size_t n) {
  std::uint64_t da = 0, db = 0;
  for (std::size_t i = 0; i < n; ++i) {
    da += a[i];
    db += b[i];
  }
  if (da != db) return da < db ? Cmp::LT : Cmp::GT;
  for (std::size_t i = n; i-- > 0;)
    if (a[i] != b[i]) return a[i] > b[i] ? Cmp::LT : Cmp::GT;
  return Cmp::EQ;
}

Cmp lex_cmp(const Exponent* a, const Exponent* b, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i)
    if (a[i] != b[i]) return a[i] < b[i] ? Cmp::LT : Cmp::GT;
  return Cmp::EQ;
}

}  // namespace

Cmp MonomialOrder::compare(const Monomial& a, const Monomial& b) const {
  if (a.size() != b.size()) throw Error("monomial length mismatch in comparison");
  const std::size_t n = a.size();
  switch (kind) {
    case Kind::Grevlex:
      return grevlex_cmp(a.data(), b.data(), n);
    case Kind::Lex:
      return lex_cmp(a.data(), b.data(), n);
    case Kind::Block: {
      const std::size_t k = std::min(block_split, n);
      Cmp c = grevlex_cmp(a.data(), b.data(), k);
      if (c != Cmp::EQ) return c;
      return grevlex_cmp(a.data() + k, b.data() + k, n - k);
    }
    case Kind::Weighted: {
      if (weights.size() != n) throw Error("weight vector arity mismatch");
      std::int64_t wa = 0, wb = 0;
      for (std::size_t i = 0; i < n; ++i) {
        wa += weights[i] * std::int64_t(a[i]);
        wb += weights[i] * std::int64_t(b[i]);
      }
      if (wa != wb) return wa < wb ? Cmp::LT : Cmp::GT;
      return grevlex_cmp(a.data(), b.data(), n);
    }
  }
  throw Error("unreachable monomial order kind");
}

std::string MonomialOrder::str() const {
  switch (kind) {
    case Kind::Grevlex:
      return "grevlex";
    case Kind::Lex:
      return "lex";
    case Kind::Block:
      return "block:" + std::to_string(block_split);
    case Kind::Weighted: {
      std::string s = "weight:";
      for (std::size_t i = 0; i < weights.size(); ++i) {
        if (i) s += ',';
        s += std::to_string(weights[i]);
      }
      return s;
    }
  }
  return "?";
}

MonomialOrder MonomialOrder::parse(std::string_view token) {
  if (token == "grevlex") return grevlex();
  if (token == "lex") return lex();
  if (token.starts_with("block:")) {
    std::size_t split = 0;
    auto rest = token.substr(6);
    for (char ch : rest) {
      if (!std::isdigit(static_cast<unsigned char>(ch))) throw Error("bad block order: " + std::string(token));
      split = split * 10 + std::size_t(ch - '0');
    }
    if (rest.empty()) throw Error("bad block order: " + std::string(token));
    return block(split);
  }
  if (token.starts_with("weight:")) {
    std::vector<std::int64_t> w;
    std::string cur;
    for (char ch : std::string(token.substr(7)) + ",") {
      if (ch == ',') {
        if (cur.empty()) throw Error("bad weight order: " + std::string(token));
        w.push_back(std::stoll(cur));
        cur.clear();
      } else {
        cur += ch;
      }
    }
    return weighted(std::move(w));
  }
  throw Error("unknown monomial order: " + std::string(token));
}

RingPtr Ring::make(std::uint32_t characteristic, std::vector<std::string> vars,
                   MonomialOrder order) {
  PrimeField field(characteristic);
  if (vars.empty()) throw Error("ring needs at least one variable");
  for (const auto& v : vars) {
    if (v.empty()) throw Error("empty variable name");
  }
  for (std::size_t i = 0; i < vars.size(); ++i)
    for (std::size_t j = i + 1; j < vars.size(); ++j)
      if (vars[i] == vars[j]) throw Error("duplicate variable name: " + vars[i]);
  switch (order.kind) {
    case MonomialOrder::Kind::Block:
      if (order.block_split == 0 || order.block_split >= vars.size())
        throw Error("block split must lie strictly inside the variable list");
      break;
    case MonomialOrder::Kind::Weighted:
      if (order.weights.size() != vars.size()) throw Error("weight vector arity mismatch");
      for (auto w : order.weights)
        if (w <= 0) throw Error("weights must be positive");
      break;
    default:
      break;
  }
  return RingPtr(new Ring(field, std::move(vars), std::move(order)));
}

std::optional<std::size_t> Ring::find_var(std::string_view name) const {
  for (std::size_t i = 0; i < vars_.size(); ++i)
    if (vars_[i] == name) return i;
  return std::nullopt;
}

RingPtr Ring::with_order(MonomialOrder order) const {
  return make(characteristic(), vars_, std::move(order));
}

std::string Ring::header() const {
  std::string s = "ring p=" + std::to_string(characteristic()) + " vars=";
  for (std::size_t i = 0; i < vars_.size(); ++i) {
    if (i) s += ',';
    s += vars_[i];
  }
  s += " order=" + order_.str();
  return s;
}

RingPtr Ring::parse_header(std::string_view line) {
  std::istringstream in{std::string(line)};
  std::string tok;
  if (!(in >> tok) || tok != "ring") throw Error("ring header must start with 'ring'");
  std::uint32_t p = 0;
  std::vector<std::string> vars;
  MonomialOrder order = MonomialOrder::grevlex();
  bool saw_p = false, saw_vars = false;
  while (in >> tok) {
    auto eq = tok.find('=');
    if (eq == std::string::npos) throw Error("bad ring header token: " + tok);
    auto key = tok.substr(0, eq);
    auto val = tok.substr(eq + 1);
    if (key == "p") {
      if (val.empty() || val.find_first_not_of("0123456789") != std::string::npos)
        throw Error("bad characteristic: " + val);
      unsigned long v = std::stoul(val);
      if (v > 0xffffffffull) throw Error("characteristic too large: " + val);
      p = static_cast<std::uint32_t>(v);
      saw_p = true;
    } else if (key == "vars") {
      std::string cur;
      for (char ch : val + ",") {
        if (ch == ',') {
          if (cur.empty()) throw Error("empty variable in ring header");
          vars.push_back(cur);
          cur.clear();
        } else {
          cur += ch;
        }
      }
      saw_vars = true;
    } else if (key == "order") {
      order = MonomialOrder::parse(val);
    } else {
      throw Error("unknown ring header key: " + key);
    }
  }
  if (!saw_p || !saw_vars) throw Error("ring header needs p= and vars=");
  return make(p, std::move(vars), std::move(order));
}

// ---------------------------------------------------------------------------
// Polynomial
// ---------------------------------------------------------------------------

void require_same_ring(const Polynomial& a, const Polynomial& b) {
  if (!a.ring() || !b.ring() || !(*a.ring() == *b.ring()))
    throw Error("polynomial ring mismatch");
}

Polynomial Polynomial::constant(RingPtr ring, std::int64_t c) {
  std::uint32_t r = ring->field().reduce(c);
  Polynomial f(ring);
  if (r != 0) f.terms_.push_back({Monomial(ring->nvars(), 0), r});
  return f;
}

Polynomial Polynomial::variable(RingPtr ring, std::size_t index) {
  if (index >= ring->nvars()) throw Error("variable index out of range");
  Monomial m(ring->nvars(), 0);
  m[index] = 1;
  Polynomial f(ring);
  f.terms_.push_back({std::move(m), 1});
  return f;
}

Polynomial Polynomial::monomial(RingPtr ring, Monomial m, std::int64_t c) {
  if (m.size() != ring->nvars()) throw Error("monomial arity mismatch");
  std::uint32_t r = ring->field().reduce(c);
  Polynomial f(ring);
  if (r != 0) f.terms_.push_back({std::move(m), r});
  return f;
}

Polynomial Polynomial::from_terms(RingPtr ring, std::vector<Term> terms) {
  for (auto& t : terms)
    if (t.mono.size() != ring->nvars()) throw Error("term arity mismatch");
  std::sort(terms.begin(), terms.end(), [&](const Term& a, const Term& b) {
    return ring->compare(a.mono, b.mono) == Cmp::GT;
  });
  Polynomial f(ring);
  const auto& F = ring->field();
  for (auto& t : terms) {
    if (!f.terms_.empty() && f.terms_.back().mono == t.mono) {
      f.terms_.back().coeff = F.add(f.terms_.back().coeff, t.coeff % F.characteristic());
      if (f.terms_.back().coeff == 0) f.terms_.pop_back();
    } else {
      std::uint32_t c = t.coeff % F.characteristic();
      if (c != 0) f.terms_.push_back({std::move(t.mono), c});
    }
  }
  return f;
}

const Term& Polynomial::leading_term() const {
  if (terms_.empty()) throw Error("zero polynomial has no leading term");
  return terms_.front();
}

std::uint32_t Polynomial::total_degree() const {
  std::uint32_t d = 0;
  for (const auto& t : terms_) d = std::max(d, mono_degree(t.mono));
  return d;
}

std::uint32_t Polynomial::degree_in(std::span<const std::size_t> vars) const {
  std::uint32_t d = 0;
  for (const auto& t : terms_) {
    std::uint32_t s = 0;
    for (auto v : vars) s += t.mono[v];
    d = std::max(d, s);
  }
  return d;
}

bool Polynomial::is_homogeneous() const {
  if (terms_.empty()) return true;
  const auto d = mono_degree(terms_.front().mono);
  for (const auto& t : terms_)
    if (mono_degree(t.mono) != d) return false;
  return true;
}

bool Polynomial::is_homogeneous(std::span<const std::int64_t> weights) const {
  if (terms_.empty()) return true;
  auto wdeg = [&](const Monomial& m) {
    std::int64_t s = 0;
    for (std::size_t i = 0; i < m.size(); ++i) s += weights[i] * std::int64_t(m[i]);
    return s;
  };
  const auto d = wdeg(terms_.front().mono);
  for (const auto& t : terms_)
    if (wdeg(t.mono) != d) return false;
  return true;
}

Polynomial Polynomial::operator-() const {
  Polynomial f(*this);
  const auto& F = ring_->field();
  for (auto& t : f.terms_) t.coeff = F.neg(t.coeff);
  return f;
}

Polynomial Polynomial::operator+(const Polynomial& g) const {
  require_same_ring(*this, g);
  const auto& F = ring_->field();
  Polynomial r(ring_);
  r.terms_.reserve(terms_.size() + g.terms_.size());
  std::size_t i = 0, j = 0;
  while (i < terms_.size() && j < g.terms_.size()) {
    Cmp c = ring_->compare(terms_[i].mono, g.terms_[j].mono);
    if (c == Cmp::GT) {
      r.terms_.push_back(terms_[i++]);
    } else if (c == Cmp::LT) {
      r.terms_.push_back(g.terms_[j++]);
    } else {
      std::uint32_t s = F.add(terms_[i].coeff, g.terms_[j].coeff);
      if (s != 0) r.terms_.push_back({terms_[i].mono, s});
      ++i, ++j;
    }
  }
  for (; i < terms_.size(); ++i) r.terms_.push_back(terms_[i]);
  for (; j < g.terms_.size(); ++j) r.terms_.push_back(g.terms_[j]);
  return r;
}

Polynomial Polynomial::operator-(const Polynomial& g) const { return *this + (-g); }

namespace {
struct MonoHash {
  std::size_t operator()(const Monomial& m) const {
    std::uint64_t h = 1469598103934665603ull;
    for (auto e : m) {
      h ^= e;
      h *= 1099511628211ull;
    }
    return static_cast<std::size_t>(h);
  }
};
}  // namespace

Polynomial Polynomial::operator*(const Polynomial& g) const {
  require_same_ring(*this, g);
  if (is_zero() || g.is_zero()) return Polynomial(ring_);
  if (g.terms_.size() == 1) return term_multiple(g.terms_.front());
  if (terms_.size() == 1) return g.term_multiple(terms_.front());
  const auto& F = ring_->field();
  std::unordered_map<Monomial, std::uint32_t, MonoHash> acc;
  acc.reserve(terms_.size() * g.terms_.size() / 2 + 8);
  for (const auto& a : terms_)
    for (const auto& b : g.terms_) {
      auto m = mono_mul(a.mono, b.mono);
      auto [it, fresh] = acc.try_emplace(std::move(m), 0);
      it->second = F.add(it->second, F.mul(a.coeff, b.coeff));
    }
  std::vector<Term> ts;
  ts.reserve(acc.size());
  for (auto& [m, c] : acc)
    if (c != 0) ts.push_back({m, c});
  std::sort(ts.begin(), ts.end(), [&](const Term& a, const Term& b) {
    return ring_->compare(a.mono, b.mono) == Cmp::GT;
  });
  Polynomial r(ring_);
  r.terms_ = std::move(ts);
  return r;
}

Polynomial Polynomial::scaled(std::uint32_t c) const {
  const auto& F = ring_->field();
  c %= F.characteristic();
  if (c == 0) return Polynomial(ring_);
  Polynomial r(*this);
  for (auto& t : r.terms_) t.coeff = F.mul(t.coeff, c);
  return r;
}

Polynomial Polynomial::term_multiple(const Term& t) const {
  // multiplying by a single term preserves the ordering of the terms
  const auto& F = ring_->field();
  Polynomial r(ring_);
  if (t.coeff == 0) return r;
  r.terms_.reserve(terms_.size());
  for (const auto& a : terms_) {
    std::uint32_t c = F.mul(a.coeff, t.coeff);
    if (c != 0) r.terms_.push_back({mono_mul(a.mono, t.mono), c});
  }
  return r;
}

Polynomial Polynomial::pow(std::uint32_t k) const {
  Polynomial r = Polynomial::one(ring_);
  Polynomial base = *this;
  while (k) {
    if (k & 1) r = r * base;
    base = base * base;
    k >>= 1;
  }
  return r;
}

Polynomial Polynomial::monic() const {
  if (is_zero()) return *this;
  return scaled(ring_->field().inv(leading_coeff()));
}

bool Polynomial::operator==(const Polynomial& g) const {
  if (!ring_ || !g.ring_) return terms_.empty() && g.terms_.empty();
  if (!ring_->same_vars(*g.ring_)) return false;
  if (ring_->order() == g.ring_->order()) return terms_ == g.terms_;
  // different orders sort the terms differently; compare as multisets
  if (terms_.size() != g.terms_.size()) return false;
  auto key_sorted = [](const std::vector<Term>& ts) {
    std::vector<Term> s = ts;
    std::sort(s.begin(), s.end(),
              [](const Term& a, const Term& b) { return a.mono < b.mono; });
    return s;
  };
  return key_sorted(terms_) == key_sorted(g.terms_);
}

Polynomial Polynomial::differentiate(std::size_t var) const {
  if (var >= ring_->nvars()) throw Error("unknown variable in differentiate");
  const auto& F = ring_->field();
  std::vector<Term> ts;
  for (const auto& t : terms_) {
    if (t.mono[var] == 0) continue;
    std::uint32_t c = F.mul(t.coeff, t.mono[var] % F.characteristic());
    if (c == 0) continue;
    Term d{t.mono, c};
    d.mono[var] -= 1;
    ts.push_back(std::move(d));
  }
  return from_terms(ring_, std::move(ts));  // order is preserved, but normalize anyway
}

Polynomial Polynomial::substitute(std::span<const Polynomial> images) const {
  if (images.size() != ring_->nvars()) throw Error("substitution needs one image per variable");
  const RingPtr& target = images.empty() ? ring_ : images[0].ring();
  for (const auto& im : images)
    if (!im.ring() || !(*im.ring() == *target)) throw Error("substitution images must share one ring");
  if (target->characteristic() != ring_->characteristic())
    throw Error("substitution across different characteristics");
  // cache image powers per variable
  std::vector<std::vector<Polynomial>> powers(images.size());
  auto power = [&](std::size_t v, Exponent e) -> const Polynomial& {
    auto& cache = powers[v];
    if (cache.empty()) cache.push_back(Polynomial::one(target));
    while (cache.size() <= e) cache.push_back(cache.back() * images[v]);
    return cache[e];
  };
  Polynomial acc(target);
  for (const auto& t : terms_) {
    Polynomial prod = Polynomial::constant(target, t.coeff);
    for (std::size_t v = 0; v < images.size(); ++v)
      if (t.mono[v]) prod = prod * power(v, t.mono[v]);
    acc = acc + prod;
  }
  return acc;
}

std::uint32_t Polynomial::evaluate(std::span<const std::uint32_t> point) const {
  if (point.size() != ring_->nvars()) throw Error("evaluation point arity mismatch");
  const auto& F = ring_->field();
  std::uint32_t acc = 0;
  for (const auto& t : terms_) {
    std::uint32_t v = t.coeff;
    for (std::size_t i = 0; i < point.size(); ++i)
      if (t.mono[i]) v = F.mul(v, F.pow(point[i], t.mono[i]));
    acc = F.add(acc, v);
  }
  return acc;
}

std::string Polynomial::str() const {
  if (terms_.empty()) return "0";
  const std::uint32_t p = ring_->characteristic();
  std::string out;
  bool first = true;
  for (const auto& t : terms_) {
    // signed least-absolute residue for readability
    bool negative = t.coeff > p / 2;
    std::uint32_t mag = negative ? p - t.coeff : t.coeff;
    if (first) {
      if (negative) out += '-';
      first = false;
    } else {
      out += negative ? '-' : '+';
    }
    bool has_var = mono_degree(t.mono) > 0;
    if (mag != 1 || !has_var) out += std::to_string(mag);
    bool need_star = mag != 1;
    for (std::size_t v = 0; v < t.mono.size(); ++v) {
      if (t.mono[v] == 0) continue;
      if (need_star) out += '*';
      out += ring_->variable(v);
      if (t.mono[v] > 1) out += "^" + std::to_string(t.mono[v]);
      need_star = true;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Parser
// ---------------------------------------------------------------------------

namespace {

constexpr Exponent kMaxExponent = 1u << 20;

class PolyParser {
 public:
  PolyParser(std::string_view src, const RingPtr& ring, bool compat)
      : src_(src), ring_(ring), compat_(compat) {}

  Polynomial run() {
    std::vector<Term> terms;
    skip_ws();
    bool negative = eat_sign();
    parse_term(terms, negative);
    skip_ws();
    while (pos_ < src_.size()) {
      char c = src_[pos_];
      if (c != '+' && c != '-') throw ParseError("expected '+' or '-'", pos_);
      ++pos_;
      skip_ws();
      parse_term(terms, c == '-');
      skip_ws();
    }
    return Polynomial::from_terms(ring_, std::move(terms));
  }

 private:
  void skip_ws() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
  }

  bool eat_sign() {
    if (pos_ < src_.size() && src_[pos_] == '-') {
      ++pos_;
      skip_ws();
      return true;
    }
    if (pos_ < src_.size() && src_[pos_] == '+') {
      ++pos_;
      skip_ws();
    }
    return false;
  }

  bool digit_ahead() const {
    return pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]));
  }

  std::uint32_t parse_coeff() {
    const auto& F = ring_->field();
    std::uint64_t v = 0;
    while (digit_ahead()) {
      v = v * 10 + std::uint64_t(src_[pos_] - '0');
      v %= F.characteristic();
      ++pos_;
    }
    return static_cast<std::uint32_t>(v);
  }

  Exponent parse_exponent() {
    if (!digit_ahead()) throw ParseError("expected exponent", pos_);
    std::uint64_t v = 0;
    while (digit_ahead()) {
      v = v * 10 + std::uint64_t(src_[pos_] - '0');
      if (v > kMaxExponent) throw ParseError("exponent too large", pos_);
      ++pos_;
    }
    return static_cast<Exponent>(v);
  }

  // A variable reference: a declared name, or name[k] -> namek in compat mode.
  std::optional<std::size_t> try_parse_var() {
    std::size_t best_len = 0;
    std::size_t best_var = 0;
    for (std::size_t i = 0; i < ring_->nvars(); ++i) {
      const auto& name = ring_->variable(i);
      if (name.size() > best_len && src_.substr(pos_).starts_with(name)) {
        best_len = name.size();
        best_var = i;
      }
    }
    if (best_len > 0) {
      pos_ += best_len;
      return best_var;
    }
    if (compat_) {
      // try ident[digits]
      std::size_t q = pos_;
      std::string ident;
      while (q < src_.size() && (std::isalpha(static_cast<unsigned char>(src_[q])) || src_[q] == '_'))
        ident += src_[q++];
      if (!ident.empty() && q < src_.size() && src_[q] == '[') {
        ++q;
        std::string digits;
        while (q < src_.size() && std::isdigit(static_cast<unsigned char>(src_[q]))) digits += src_[q++];
        if (!digits.empty() && q < src_.size() && src_[q] == ']') {
          ++q;
          if (auto idx = ring_->find_var(ident + digits)) {
            pos_ = q;
            return idx;
          }
          throw ParseError("unknown variable '" + ident + "[" + digits + "]'", pos_);
        }
      }
    }
    // if an identifier sits here, it is an unknown variable
    if (pos_ < src_.size() &&
        (std::isalpha(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_')) {
      std::size_t q = pos_;
      std::string ident;
      while (q < src_.size() &&
             (std::isalnum(static_cast<unsigned char>(src_[q])) || src_[q] == '_' ||
              src_[q] == '[' || src_[q] == ']'))
        ident += src_[q++];
      throw ParseError("unknown variable '" + ident + "'", pos_);
    }
    return std::nullopt;
  }

  void parse_term(std::vector<Term>& out, bool negative) {
    const auto& F = ring_->field();
    std::uint32_t coeff = 1;
    bool any = false;
    Monomial mono(ring_->nvars(), 0);
    if (digit_ahead()) {
      coeff = parse_coeff();
      any = true;
    }
    for (;;) {
      skip_ws();
      std::size_t mark = pos_;
      bool consumed_star = false;
      if (pos_ < src_.size() && src_[pos_] == '*') {
        ++pos_;
        skip_ws();
        consumed_star = true;
      }
      auto var = try_parse_var();
      if (!var) {
        if (consumed_star) throw ParseError("dangling '*'", mark);
        pos_ = mark;
        break;
      }
      any = true;
      Exponent e = 1;
      if (pos_ < src_.size() && src_[pos_] == '^') {
        ++pos_;
        e = parse_exponent();
      } else if (compat_ && digit_ahead()) {
        e = parse_exponent();
      }
      if (mono[*var] + e > kMaxExponent) throw ParseError("exponent overflow", pos_);
      mono[*var] += e;
    }
    if (!any) throw ParseError("expected term", pos_);
    if (negative) coeff = F.neg(coeff);
    out.push_back({std::move(mono), coeff});
  }

  std::string_view src_;
  const RingPtr& ring_;
  bool compat_;
  std::size_t pos_ = 0;
};

}  // namespace

Polynomial Polynomial::parse(std::string_view src, const RingPtr& ring, bool transcript_compat) {
  return PolyParser(src, ring, transcript_compat).run();
}

Polynomial transport(const Polynomial& f, const RingPtr& target) {
  if (!f.ring()) throw Error("cannot transport a detached polynomial");
  if (f.ring()->characteristic() != target->characteristic())
    throw Error("transport across different characteristics");
  const auto& src = *f.ring();
  // a source variable may be missing from the target only if f does not use it
  std::vector<std::optional<std::size_t>> map(src.nvars());
  for (std::size_t i = 0; i < src.nvars(); ++i) map[i] = target->find_var(src.variable(i));
  std::vector<Term> ts;
  ts.reserve(f.term_count());
  for (const auto& t : f.terms()) {
    Monomial m(target->nvars(), 0);
    for (std::size_t i = 0; i < map.size(); ++i) {
      if (t.mono[i] == 0) continue;
      if (!map[i]) throw Error("target ring lacks variable " + src.variable(i));
      m[*map[i]] = t.mono[i];
    }
    ts.push_back({std::move(m), t.coeff});
  }
  return Polynomial::from_terms(target, std::move(ts));
}

}  // namespace evenset
