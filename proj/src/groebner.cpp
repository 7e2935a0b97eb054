#include "evenset/groebner.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>

namespace evenset {

Ideal Ideal::make(RingPtr ring, std::vector<Polynomial> gens) {
  std::vector<Polynomial> kept;
  kept.reserve(gens.size());
  for (auto& g : gens) {
    if (!g.ring() || !(*g.ring() == *ring)) throw Error("ideal generator ring mismatch");
    if (!g.is_zero()) kept.push_back(std::move(g));
  }
  return Ideal{std::move(ring), std::move(kept), std::nullopt};
}

namespace {

// Work list for reduction: descending terms with a consumed prefix.
struct Work {
  std::vector<Term> terms;
  std::size_t head = 0;
  bool empty() const { return head >= terms.size(); }
  const Term& front() const { return terms[head]; }
};

// work -= t * g, where the leading term of work cancels by construction.
void subtract_multiple(Work& w, const Polynomial& g, const Term& t, const Ring& ring) {
  const auto& F = ring.field();
  auto gt = g.terms();
  std::vector<Term> out;
  out.reserve(w.terms.size() - w.head + gt.size());
  std::size_t i = w.head, j = 0;
  Monomial gm;
  std::uint32_t gc = 0;
  auto fetch = [&](std::size_t jj) {
    gm = mono_mul(gt[jj].mono, t.mono);
    gc = F.mul(gt[jj].coeff, t.coeff);
  };
  if (j < gt.size()) fetch(j);
  while (i < w.terms.size() && j < gt.size()) {
    Cmp c = ring.compare(w.terms[i].mono, gm);
    if (c == Cmp::GT) {
      out.push_back(std::move(w.terms[i]));
      ++i;
    } else if (c == Cmp::LT) {
      out.push_back({std::move(gm), F.neg(gc)});
      if (++j < gt.size()) fetch(j);
    } else {
      std::uint32_t cc = F.sub(w.terms[i].coeff, gc);
      if (cc != 0) out.push_back({std::move(w.terms[i].mono), cc});
      ++i;
      if (++j < gt.size()) fetch(j);
    }
  }
  for (; i < w.terms.size(); ++i) out.push_back(std::move(w.terms[i]));
  while (j < gt.size()) {
    out.push_back({std::move(gm), F.neg(gc)});
    if (++j < gt.size()) fetch(j);
  }
  w.terms = std::move(out);
  w.head = 0;
}

// Deterministic reducer: smallest leading monomial, then lowest index.
std::optional<std::size_t> find_reducer(const Monomial& m, std::span<const Polynomial> basis,
                                        const Ring& ring) {
  std::optional<std::size_t> best;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    if (!mono_divides(basis[i].leading_monomial(), m)) continue;
    if (!best ||
        ring.compare(basis[i].leading_monomial(), basis[*best].leading_monomial()) == Cmp::LT)
      best = i;
  }
  return best;
}

void check_basis_input(const Polynomial& f, std::span<const Polynomial> basis) {
  if (basis.empty()) throw Error("reduction against an empty basis");
  for (const auto& g : basis) {
    if (g.is_zero()) throw Error("reduction against a zero basis element");
    require_same_ring(f, g);
  }
}

Polynomial reduce_full(const Polynomial& f, std::span<const Polynomial> basis,
                       std::vector<std::vector<Term>>* quotients) {
  const Ring& ring = *f.ring();
  const auto& F = ring.field();
  Work w;
  w.terms.assign(f.terms().begin(), f.terms().end());
  std::vector<Term> rem;
  while (!w.empty()) {
    const Term& lt = w.front();
    auto red = find_reducer(lt.mono, basis, ring);
    if (red) {
      const Polynomial& g = basis[*red];
      Term t{mono_div(lt.mono, g.leading_monomial()), F.mul(lt.coeff, F.inv(g.leading_coeff()))};
      if (quotients) (*quotients)[*red].push_back(t);
      subtract_multiple(w, g, t, ring);
    } else {
      rem.push_back(w.front());
      ++w.head;
    }
  }
  return Polynomial::from_terms(f.ring(), std::move(rem));
}

}  // namespace

Polynomial normal_form(const Polynomial& f, std::span<const Polynomial> basis) {
  check_basis_input(f, basis);
  return reduce_full(f, basis, nullptr);
}

DivisionResult divide(const Polynomial& f, std::span<const Polynomial> basis) {
  check_basis_input(f, basis);
  std::vector<std::vector<Term>> qt(basis.size());
  DivisionResult r;
  r.remainder = reduce_full(f, basis, &qt);
  r.quotients.reserve(basis.size());
  for (auto& q : qt) r.quotients.push_back(Polynomial::from_terms(f.ring(), std::move(q)));
  return r;
}

Polynomial s_polynomial(const Polynomial& f, const Polynomial& g) {
  require_same_ring(f, g);
  const auto& F = f.ring()->field();
  Monomial l = mono_lcm(f.leading_monomial(), g.leading_monomial());
  Term tf{mono_div(l, f.leading_monomial()), F.inv(f.leading_coeff())};
  Term tg{mono_div(l, g.leading_monomial()), F.inv(g.leading_coeff())};
  return f.term_multiple(tf) - g.term_multiple(tg);
}

namespace {

struct Pair {
  std::size_t i, j;
  Monomial lcm;
  std::uint32_t deg;
};

struct PairCmp {
  const Ring* ring;
  bool operator()(const Pair& a, const Pair& b) const {
    if (a.deg != b.deg) return a.deg < b.deg;
    Cmp c = ring->compare(a.lcm, b.lcm);
    if (c != Cmp::EQ) return c == Cmp::LT;
    if (a.i != b.i) return a.i < b.i;
    return a.j < b.j;
  }
};

using PairSet = std::set<Pair, PairCmp>;

// Gebauer-Moeller update: installs the pairs of a new basis element, pruning
// with the coprimality and chain criteria, and prunes stale old pairs.
void update_pairs(std::vector<Polynomial>& G, PairSet& P, Polynomial h) {
  const std::size_t t = G.size();
  const Monomial& lmh = h.leading_monomial();

  struct Cand {
    std::size_t i;
    Monomial lcm;
    bool coprime;
  };
  std::vector<Cand> cands;
  cands.reserve(t);
  for (std::size_t i = 0; i < t; ++i) {
    const Monomial& lmi = G[i].leading_monomial();
    cands.push_back({i, mono_lcm(lmi, lmh), mono_coprime(lmi, lmh)});
  }
  std::vector<Cand> kept;
  for (std::size_t a = 0; a < cands.size(); ++a) {
    bool keep = cands[a].coprime;
    if (!keep) {
      keep = true;
      for (std::size_t b = a + 1; b < cands.size() && keep; ++b)
        if (mono_divides(cands[b].lcm, cands[a].lcm)) keep = false;
      for (const auto& d : kept)
        if (keep && mono_divides(d.lcm, cands[a].lcm)) keep = false;
    }
    if (keep) kept.push_back(std::move(cands[a]));
  }

  // chain criterion against the old pairs
  for (auto it = P.begin(); it != P.end();) {
    const Pair& pr = *it;
    if (mono_divides(lmh, pr.lcm) &&
        mono_lcm(G[pr.i].leading_monomial(), lmh) != pr.lcm &&
        mono_lcm(G[pr.j].leading_monomial(), lmh) != pr.lcm) {
      it = P.erase(it);
    } else {
      ++it;
    }
  }

  for (auto& c : kept) {
    if (c.coprime) continue;  // Buchberger's first criterion
    std::uint32_t d = mono_degree(c.lcm);
    P.insert(Pair{c.i, t, std::move(c.lcm), d});
  }
  G.push_back(std::move(h));
}

GroebnerBasis compute_basis(const RingPtr& ring, std::vector<Polynomial> gens) {
  // deterministic input order: ascending leading monomial, short polynomials first
  std::sort(gens.begin(), gens.end(), [&](const Polynomial& a, const Polynomial& b) {
    Cmp c = ring->compare(a.leading_monomial(), b.leading_monomial());
    if (c != Cmp::EQ) return c == Cmp::LT;
    return a.term_count() < b.term_count();
  });

  std::vector<Polynomial> G;
  PairSet P{PairCmp{ring.get()}};
  std::uint32_t degree_reached = 0;

  for (const auto& g : gens) {
    Polynomial r = G.empty() ? g : reduce_full(g, G, nullptr);
    if (!r.is_zero()) update_pairs(G, P, r.monic());
  }
  while (!P.empty()) {
    Pair pr = *P.begin();
    P.erase(P.begin());
    degree_reached = std::max(degree_reached, pr.deg);
    Polynomial s = s_polynomial(G[pr.i], G[pr.j]);
    if (s.is_zero()) continue;
    Polynomial r = reduce_full(s, G, nullptr);
    if (!r.is_zero()) update_pairs(G, P, r.monic());
  }

  // minimalize
  std::vector<std::size_t> idx(G.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    Cmp c = ring->compare(G[a].leading_monomial(), G[b].leading_monomial());
    if (c != Cmp::EQ) return c == Cmp::LT;
    return a < b;
  });
  std::vector<Polynomial> minimal;
  for (auto i : idx) {
    bool redundant = false;
    for (const auto& m : minimal)
      if (mono_divides(m.leading_monomial(), G[i].leading_monomial())) {
        redundant = true;
        break;
      }
    if (!redundant) minimal.push_back(G[i]);
  }
  // interreduce tails
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < minimal.size(); ++i) {
      std::vector<Polynomial> others;
      others.reserve(minimal.size() - 1);
      for (std::size_t j = 0; j < minimal.size(); ++j)
        if (j != i) others.push_back(minimal[j]);
      if (others.empty()) continue;
      Polynomial r = reduce_full(minimal[i], others, nullptr).monic();
      if (r != minimal[i]) {
        minimal[i] = std::move(r);
        changed = true;
      }
    }
  }
  std::sort(minimal.begin(), minimal.end(), [&](const Polynomial& a, const Polynomial& b) {
    return ring->compare(a.leading_monomial(), b.leading_monomial()) == Cmp::LT;
  });
  return GroebnerBasis{ring->order(), std::move(minimal), degree_reached};
}

}  // namespace

Ideal buchberger(const Ideal& I) {
  Ideal r = I;
  r.gb = compute_basis(I.ring, I.generators);
  return r;
}

Ideal buchberger(const Ideal& I, const MonomialOrder& order) {
  if (order == I.ring->order()) return buchberger(I);
  RingPtr ring2 = I.ring->with_order(order);
  std::vector<Polynomial> gens;
  gens.reserve(I.generators.size());
  for (const auto& g : I.generators) gens.push_back(transport(g, ring2));
  Ideal r = Ideal::make(ring2, std::move(gens));
  r.gb = compute_basis(ring2, r.generators);
  return r;
}

Ideal with_groebner(Ideal I) {
  if (I.gb) return I;
  return buchberger(I);
}

bool is_groebner_basis(std::span<const Polynomial> basis) {
  for (std::size_t i = 0; i < basis.size(); ++i)
    for (std::size_t j = i + 1; j < basis.size(); ++j) {
      Polynomial s = s_polynomial(basis[i], basis[j]);
      if (s.is_zero()) continue;
      if (!reduce_full(s, basis, nullptr).is_zero()) return false;
    }
  return true;
}

bool ideal_member(const Polynomial& f, const Ideal& I) {
  if (!f.ring() || f.ring()->characteristic() != I.ring->characteristic() ||
      !f.ring()->same_vars(*I.ring))
    throw Error("ideal membership ring mismatch");
  Ideal J = with_groebner(I);
  if (J.gb->elements.empty()) return f.is_zero();
  return normal_form(transport(f, J.ring), J.gb->elements).is_zero();
}

namespace {

bool basis_has_unit(std::span<const Polynomial> basis) {
  for (const auto& g : basis)
    if (!g.is_zero() && g.total_degree() == 0) return true;
  return false;
}

std::string fresh_name(const Ring& ring, std::string stem) {
  while (ring.find_var(stem)) stem += "_";
  return stem;
}

bool all_homogeneous(std::span<const Polynomial> fs) {
  return std::all_of(fs.begin(), fs.end(), [](const Polynomial& f) { return f.is_homogeneous(); });
}

// Pure power of variable v (or a unit) present in the basis. For a grevlex
// basis of a homogeneous ideal with v the cheapest variable, dividing each
// element by its v-power yields a basis of I : v^inf, so this scan decides
// whether the saturation is the unit ideal.
bool pure_power_scan(std::span<const Polynomial> basis, std::size_t v) {
  for (const auto& g : basis) {
    if (g.term_count() != 1) continue;
    const Monomial& m = g.leading_monomial();
    bool pure = true;
    for (std::size_t i = 0; i < m.size(); ++i)
      if (i != v && m[i] != 0) {
        pure = false;
        break;
      }
    if (pure) return true;
  }
  return false;
}

}  // namespace

bool radical_member_rabinowitsch(const Polynomial& f, const Ideal& I) {
  const Ring& R = *I.ring;
  std::vector<std::string> vars(R.variables().begin(), R.variables().end());
  vars.push_back(fresh_name(R, "u"));
  RingPtr ext = Ring::make(R.characteristic(), std::move(vars), MonomialOrder::grevlex());
  // an existing reduced basis is a better starting generating set
  const std::vector<Polynomial>& start = I.gb ? I.gb->elements : I.generators;
  std::vector<Polynomial> gens;
  gens.reserve(start.size() + 1);
  for (const auto& g : start) gens.push_back(transport(g, ext));
  Polynomial u = Polynomial::variable(ext, ext->nvars() - 1);
  gens.push_back(transport(f, ext) * u - Polynomial::one(ext));
  Ideal J = buchberger(Ideal::make(ext, std::move(gens)));
  return basis_has_unit(J.gb->elements);
}

bool radical_member(const Polynomial& f, const Ideal& I) {
  if (!f.ring() || f.ring()->characteristic() != I.ring->characteristic() ||
      !f.ring()->same_vars(*I.ring))
    throw Error("radical membership ring mismatch");
  if (f.is_zero()) return true;
  Ideal J = with_groebner(I);
  if (basis_has_unit(J.gb->elements)) return true;
  if (J.gb->elements.empty()) return false;
  Polynomial ft = transport(f, J.ring);
  if (normal_form(ft, J.gb->elements).is_zero()) return true;
  // cheap power probe: sound, not complete
  Polynomial pw = ft;
  for (int k = 2; k <= 8; ++k) {
    pw = pw * ft;
    if (normal_form(pw, J.gb->elements).is_zero()) return true;
  }
  // exact saturation scan when f is a variable and I is homogeneous
  if (ft.term_count() == 1 && mono_degree(ft.leading_monomial()) == 1 &&
      all_homogeneous(J.generators)) {
    const Monomial& m = ft.leading_monomial();
    std::size_t v = 0;
    while (m[v] == 0) ++v;
    if (J.ring->order() == MonomialOrder::grevlex() && v == J.ring->nvars() - 1)
      return pure_power_scan(J.gb->elements, v);
    // move v to the back under grevlex and recompute
    std::vector<std::string> vars;
    for (std::size_t i = 0; i < J.ring->nvars(); ++i)
      if (i != v) vars.push_back(J.ring->variable(i));
    vars.push_back(J.ring->variable(v));
    RingPtr rr = Ring::make(J.ring->characteristic(), std::move(vars), MonomialOrder::grevlex());
    std::vector<Polynomial> gens;
    for (const auto& g : J.generators) gens.push_back(transport(g, rr));
    Ideal K = buchberger(Ideal::make(rr, std::move(gens)));
    return pure_power_scan(K.gb->elements, rr->nvars() - 1);
  }
  return radical_member_rabinowitsch(ft, J);
}

Ideal eliminate(const Ideal& I, std::span<const std::size_t> vars) {
  const Ring& R = *I.ring;
  for (auto v : vars)
    if (v >= R.nvars()) throw Error("eliminate: variable index out of range");
  if (vars.empty()) return Ideal::make(I.ring, I.generators);
  std::vector<bool> drop(R.nvars(), false);
  for (auto v : vars) {
    if (drop[v]) throw Error("eliminate: duplicate variable");
    drop[v] = true;
  }
  if (vars.size() >= R.nvars()) throw Error("eliminate: cannot eliminate every variable");

  std::vector<std::string> front, back;
  for (std::size_t i = 0; i < R.nvars(); ++i) (drop[i] ? front : back).push_back(R.variable(i));
  std::vector<std::string> all = front;
  all.insert(all.end(), back.begin(), back.end());
  RingPtr block_ring =
      Ring::make(R.characteristic(), std::move(all), MonomialOrder::block(front.size()));
  std::vector<Polynomial> gens;
  gens.reserve(I.generators.size());
  for (const auto& g : I.generators) gens.push_back(transport(g, block_ring));
  Ideal B = buchberger(Ideal::make(block_ring, std::move(gens)));

  MonomialOrder sub_order = MonomialOrder::grevlex();
  if (R.order().kind == MonomialOrder::Kind::Lex) sub_order = MonomialOrder::lex();
  RingPtr sub = Ring::make(R.characteristic(), back, sub_order);

  std::vector<Polynomial> kept;
  const std::size_t k = front.size();
  for (const auto& g : B.gb->elements) {
    bool in_sub = true;
    for (const auto& t : g.terms())
      for (std::size_t i = 0; i < k && in_sub; ++i)
        if (t.mono[i] != 0) in_sub = false;
    if (in_sub) kept.push_back(transport(g, sub));
  }
  Ideal out = Ideal::make(sub, std::move(kept));
  if (sub_order == MonomialOrder::grevlex()) {
    // a block-order basis restricted to the back block is a grevlex basis of
    // the elimination ideal
    out.gb = GroebnerBasis{sub_order, out.generators, B.gb->degree_reached};
  }
  return out;
}

Ideal map_kernel(const RingPtr& source, const RingPtr& target,
                 std::span<const Polynomial> images, const Ideal* constraints) {
  if (images.size() != target->nvars())
    throw Error("map_kernel: need one image per target variable");
  if (source->characteristic() != target->characteristic())
    throw Error("map_kernel: characteristic mismatch");
  for (const auto& im : images)
    if (!im.ring() || !(*im.ring() == *source)) throw Error("map_kernel: images must live in the source ring");
  if (constraints && !(*constraints->ring == *source))
    throw Error("map_kernel: constraints must live in the source ring");

  std::vector<std::string> all(source->variables().begin(), source->variables().end());
  for (const auto& v : target->variables()) {
    if (source->find_var(v)) throw Error("map_kernel: variable name clash: " + v);
    all.push_back(v);
  }
  RingPtr comb = Ring::make(source->characteristic(), std::move(all),
                            MonomialOrder::block(source->nvars()));
  std::vector<Polynomial> gens;
  if (constraints)
    for (const auto& g : constraints->generators) gens.push_back(transport(g, comb));
  for (std::size_t j = 0; j < images.size(); ++j) {
    Polynomial y = Polynomial::variable(comb, source->nvars() + j);
    gens.push_back(y - transport(images[j], comb));
  }
  Ideal G = buchberger(Ideal::make(comb, std::move(gens)));

  std::vector<Polynomial> kept;
  const std::size_t k = source->nvars();
  for (const auto& g : G.gb->elements) {
    bool in_sub = true;
    for (const auto& t : g.terms())
      for (std::size_t i = 0; i < k && in_sub; ++i)
        if (t.mono[i] != 0) in_sub = false;
    if (in_sub) kept.push_back(transport(g, target));
  }
  Ideal out = Ideal::make(target, std::move(kept));
  if (target->order() == MonomialOrder::grevlex())
    out.gb = GroebnerBasis{target->order(), out.generators, G.gb->degree_reached};
  return out;
}

PolyMatrix jacobian_matrix(std::span<const Polynomial> fs) {
  if (fs.empty()) throw Error("jacobian of an empty list");
  const RingPtr& ring = fs[0].ring();
  for (const auto& f : fs) require_same_ring(fs[0], f);
  PolyMatrix M{ring, fs.size(), ring->nvars(), {}};
  M.entries.reserve(M.rows * M.cols);
  for (const auto& f : fs)
    for (std::size_t v = 0; v < ring->nvars(); ++v) M.entries.push_back(f.differentiate(v));
  return M;
}

PolyMatrix hessian_matrix(const Polynomial& f) {
  const RingPtr& ring = f.ring();
  const std::size_t n = ring->nvars();
  std::vector<Polynomial> firsts;
  firsts.reserve(n);
  for (std::size_t v = 0; v < n; ++v) firsts.push_back(f.differentiate(v));
  PolyMatrix M{ring, n, n, std::vector<Polynomial>(n * n)};
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      M.at(i, j) = firsts[i].differentiate(j);
      if (j != i) M.at(j, i) = M.at(i, j);
    }
  return M;
}

namespace {

Polynomial det_recursive(const PolyMatrix& M, std::vector<std::size_t> rows,
                         std::vector<std::size_t> cols) {
  const RingPtr& ring = M.ring;
  if (rows.size() == 1) return M.at(rows[0], cols[0]);
  Polynomial acc(ring);
  std::vector<std::size_t> sub_rows(rows.begin() + 1, rows.end());
  for (std::size_t c = 0; c < cols.size(); ++c) {
    const Polynomial& pivot = M.at(rows[0], cols[c]);
    if (pivot.is_zero()) continue;
    std::vector<std::size_t> sub_cols;
    sub_cols.reserve(cols.size() - 1);
    for (std::size_t cc = 0; cc < cols.size(); ++cc)
      if (cc != c) sub_cols.push_back(cols[cc]);
    Polynomial term = pivot * det_recursive(M, sub_rows, std::move(sub_cols));
    acc = (c % 2 == 0) ? acc + term : acc - term;
  }
  return acc;
}

void combinations(std::size_t n, std::size_t k,
                  const std::function<void(const std::vector<std::size_t>&)>& fn) {
  std::vector<std::size_t> c(k);
  std::iota(c.begin(), c.end(), 0);
  for (;;) {
    fn(c);
    std::size_t i = k;
    while (i-- > 0) {
      if (c[i] + (k - i) < n) {
        ++c[i];
        for (std::size_t j = i + 1; j < k; ++j) c[j] = c[j - 1] + 1;
        break;
      }
      if (i == 0) return;
    }
  }
}

}  // namespace

Polynomial determinant(const PolyMatrix& M) {
  if (M.rows != M.cols || M.rows == 0) throw Error("determinant needs a nonempty square matrix");
  std::vector<std::size_t> idx(M.rows);
  std::iota(idx.begin(), idx.end(), 0);
  return det_recursive(M, idx, idx);
}

std::vector<Polynomial> minors(const PolyMatrix& M, std::size_t k) {
  if (k == 0 || k > std::min(M.rows, M.cols)) throw Error("minor size out of range");
  std::vector<Polynomial> out;
  combinations(M.rows, k, [&](const std::vector<std::size_t>& rows) {
    combinations(M.cols, k, [&](const std::vector<std::size_t>& cols) {
      Polynomial d = det_recursive(M, rows, cols);
      if (!d.is_zero()) out.push_back(std::move(d));
    });
  });
  return out;
}

// ---------------------------------------------------------------------------
// Hilbert series of monomial ideals
// ---------------------------------------------------------------------------

namespace {

using ZPoly = std::vector<std::int64_t>;  // dense in T

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw Error("hilbert numerator overflow");
  return r;
}

void zp_trim(ZPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

ZPoly zp_add(const ZPoly& a, const ZPoly& b) {
  ZPoly r(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] = checked_add(r[i], b[i]);
  zp_trim(r);
  return r;
}

// a * T^k
ZPoly zp_shift(const ZPoly& a, std::size_t k) {
  if (a.empty()) return {};
  ZPoly r(a.size() + k, 0);
  for (std::size_t i = 0; i < a.size(); ++i) r[i + k] = a[i];
  return r;
}

// a * (1 - T^d)
ZPoly zp_mul_one_minus(const ZPoly& a, std::size_t d) {
  ZPoly r(a.size() + d, 0);
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
  for (std::size_t i = 0; i < a.size(); ++i) r[i + d] = checked_add(r[i + d], -a[i]);
  zp_trim(r);
  return r;
}

std::vector<Monomial> minimalize_monomials(std::vector<Monomial> mons) {
  std::sort(mons.begin(), mons.end(), [](const Monomial& a, const Monomial& b) {
    auto da = mono_degree(a), db = mono_degree(b);
    if (da != db) return da < db;
    return a < b;
  });
  mons.erase(std::unique(mons.begin(), mons.end()), mons.end());
  std::vector<Monomial> kept;
  for (auto& m : mons) {
    bool redundant = false;
    for (const auto& h : kept)
      if (mono_divides(h, m)) {
        redundant = true;
        break;
      }
    if (!redundant) kept.push_back(std::move(m));
  }
  return kept;
}

ZPoly hilbert_rec(std::vector<Monomial> gens) {
  if (gens.empty()) return {1};
  for (const auto& g : gens)
    if (mono_degree(g) == 0) return {};  // unit ideal: zero numerator

  const std::size_t nv = gens[0].size();
  // pairwise disjoint supports form a regular sequence
  std::vector<std::uint32_t> count(nv, 0);
  bool disjoint = true;
  for (const auto& g : gens)
    for (std::size_t v = 0; v < nv; ++v)
      if (g[v]) {
        if (++count[v] > 1) disjoint = false;
      }
  if (disjoint) {
    ZPoly r{1};
    for (const auto& g : gens) r = zp_mul_one_minus(r, mono_degree(g));
    return r;
  }
  std::size_t pivot = std::max_element(count.begin(), count.end()) - count.begin();

  // I + (x_pivot): the pivot variable plus the generators avoiding it
  std::vector<Monomial> avoid;
  std::vector<Monomial> colon;
  colon.reserve(gens.size());
  for (auto& g : gens) {
    if (g[pivot] == 0) {
      avoid.push_back(g);
      colon.push_back(std::move(g));
    } else {
      Monomial q = std::move(g);
      q[pivot] -= 1;
      colon.push_back(std::move(q));
    }
  }
  ZPoly plus = zp_mul_one_minus(hilbert_rec(std::move(avoid)), 1);
  ZPoly col = hilbert_rec(minimalize_monomials(std::move(colon)));
  return zp_add(plus, zp_shift(col, 1));
}

std::int64_t zp_eval_at_one(const ZPoly& a) {
  std::int64_t s = 0;
  for (auto c : a) s = checked_add(s, c);
  return s;
}

// exact division by (1 - T); requires a(1) == 0
ZPoly zp_div_one_minus_t(const ZPoly& a) {
  if (a.empty()) return {};
  ZPoly q(a.size() - 1, 0);
  std::int64_t carry = 0;
  for (std::size_t i = 0; i + 1 < a.size(); ++i) {
    carry = checked_add(carry, a[i]);
    q[i] = carry;
  }
  zp_trim(q);
  return q;
}

}  // namespace

std::vector<std::int64_t> hilbert_numerator(std::vector<Monomial> lead_terms) {
  return hilbert_rec(minimalize_monomials(std::move(lead_terms)));
}

HilbertProfile hilbert_profile(const Ideal& I) {
  for (const auto& g : I.generators)
    if (!g.is_homogeneous()) throw Error("hilbert_profile requires a homogeneous ideal");
  Ideal J = with_groebner(I);
  if (basis_has_unit(J.gb->elements)) throw Error("hilbert_profile of the unit ideal");
  std::vector<Monomial> lead;
  lead.reserve(J.gb->elements.size());
  for (const auto& g : J.gb->elements) lead.push_back(g.leading_monomial());
  ZPoly numer = hilbert_numerator(std::move(lead));
  std::size_t codim = 0;
  while (!numer.empty() && zp_eval_at_one(numer) == 0) {
    numer = zp_div_one_minus_t(numer);
    ++codim;
  }
  if (codim > I.ring->nvars()) throw Error("hilbert_profile: codimension out of range");
  return HilbertProfile{codim, numer.empty() ? 0 : zp_eval_at_one(numer)};
}

std::vector<Polynomial> minimal_generators(const Ideal& I) {
  for (const auto& g : I.generators)
    if (!g.is_homogeneous()) throw Error("minimal_generators requires a homogeneous ideal");
  Ideal J = with_groebner(I);
  std::vector<Polynomial> cands = J.gb->elements;
  std::stable_sort(cands.begin(), cands.end(), [](const Polynomial& a, const Polynomial& b) {
    return a.total_degree() < b.total_degree();
  });
  std::vector<Polynomial> kept;
  for (auto& g : cands) {
    if (kept.empty()) {
      kept.push_back(std::move(g));
      continue;
    }
    Ideal K = buchberger(Ideal::make(J.ring, kept));
    if (!normal_form(g, K.gb->elements).is_zero()) kept.push_back(std::move(g));
  }
  return kept;
}

}  // namespace evenset
