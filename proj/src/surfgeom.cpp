#include "evenset/surfgeom.hpp"

#include <algorithm>
#include <atomic>
#include <random>
#include <sstream>
#include <thread>

namespace evenset {

namespace {

std::string fresh_var(const Ring& ring, std::string stem) {
  while (ring.find_var(stem)) stem += "_";
  return stem;
}

std::size_t gauss_rank(std::vector<std::vector<std::uint32_t>> M, const PrimeField& F) {
  std::size_t rank = 0;
  const std::size_t rows = M.size();
  if (rows == 0) return 0;
  const std::size_t cols = M[0].size();
  for (std::size_t col = 0; col < cols && rank < rows; ++col) {
    std::size_t pivot = rank;
    while (pivot < rows && M[pivot][col] == 0) ++pivot;
    if (pivot == rows) continue;
    std::swap(M[pivot], M[rank]);
    std::uint32_t inv = F.inv(M[rank][col]);
    for (std::size_t j = col; j < cols; ++j) M[rank][j] = F.mul(M[rank][j], inv);
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == rank || M[r][col] == 0) continue;
      std::uint32_t f = M[r][col];
      for (std::size_t j = col; j < cols; ++j)
        M[r][j] = F.sub(M[r][j], F.mul(f, M[rank][j]));
    }
    ++rank;
  }
  return rank;
}

// rank of the symmetric coefficient matrix of a ternary quadratic form
std::size_t conic_rank(const Polynomial& q, const RingPtr& ring) {
  const auto& F = ring->field();
  const std::uint32_t half = F.inv(2);
  std::vector<std::vector<std::uint32_t>> M(3, std::vector<std::uint32_t>(3, 0));
  for (const auto& t : q.terms()) {
    std::array<std::size_t, 2> idx{};
    std::size_t n = 0;
    for (std::size_t v = 2; v < 5; ++v)
      for (Exponent e = 0; e < t.mono[v]; ++e) idx[n++] = v - 2;
    if (idx[0] == idx[1]) {
      M[idx[0]][idx[0]] = t.coeff;
    } else {
      std::uint32_t c = F.mul(t.coeff, half);
      M[idx[0]][idx[1]] = c;
      M[idx[1]][idx[0]] = c;
    }
  }
  return gauss_rank(std::move(M), F);
}

Polynomial p1_linear_form(const RingPtr& ring, std::uint32_t a, std::uint32_t b) {
  // vanishes at (a : b): b*s - a*t
  const auto& F = ring->field();
  Polynomial s = Polynomial::variable(ring, 0);
  Polynomial t = Polynomial::variable(ring, 1);
  return s.scaled(b) - t.scaled(a);
}

void check_bidegree(const Polynomial& h) {
  for (const auto& t : h.terms()) {
    Exponent dst = t.mono[0] + t.mono[1];
    Exponent dx = t.mono[2] + t.mono[3] + t.mono[4];
    if (dst != 3 || dx != 4) throw Error("surface equation is not of bidegree (4,3)");
  }
}

}  // namespace

SurfaceData parse_surface_file(std::string_view text) {
  SurfaceData data;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t lineno = 0;
  auto fail = [&](const std::string& msg) {
    throw Error("surface file line " + std::to_string(lineno) + ": " + msg);
  };
  while (std::getline(in, line)) {
    ++lineno;
    std::size_t first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::string body = line.substr(first);
    while (!body.empty() && (body.back() == '\r' || body.back() == ' ')) body.pop_back();
    if (!data.ring) {
      if (!body.starts_with("ring")) fail("expected a ring header first");
      data.ring = Ring::parse_header(body);
      if (data.ring->nvars() != 5) fail("surface ring needs exactly 5 variables");
      continue;
    }
    auto eq = body.find('=');
    if (eq == std::string::npos) fail("expected key = value");
    std::string key = body.substr(0, eq);
    std::string val = body.substr(eq + 1);
    auto strip = [](std::string s) {
      std::size_t a = s.find_first_not_of(" \t");
      std::size_t b = s.find_last_not_of(" \t");
      return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
    };
    key = strip(key);
    val = strip(val);
    const auto& F = data.ring->field();
    if (key == "point") {
      if (val.size() < 5 || val.front() != '(' || val.back() != ')') fail("point needs (a,b)");
      auto comma = val.find(',');
      if (comma == std::string::npos) fail("point needs (a,b)");
      std::int64_t a = 0, b = 0;
      try {
        a = std::stoll(val.substr(1, comma - 1));
        b = std::stoll(val.substr(comma + 1, val.size() - comma - 2));
      } catch (const std::exception&) {
        fail("bad point coordinates");
      }
      data.points.push_back({F.reduce(a), F.reduce(b)});
    } else if (key == "conic") {
      try {
        data.conics.push_back(Polynomial::parse(val, data.ring));
      } catch (const ParseError& e) {
        fail(e.what());
      }
    } else if (key == "lambda") {
      std::vector<std::uint32_t> l;
      std::string cur;
      for (char ch : val + ",") {
        if (ch == ',') {
          if (cur.empty()) fail("bad lambda list");
          l.push_back(F.reduce(std::stoll(cur)));
          cur.clear();
        } else if (!std::isspace(static_cast<unsigned char>(ch))) {
          cur += ch;
        }
      }
      data.lambda = std::move(l);
    } else if (key == "power") {
      data.power = static_cast<std::uint32_t>(std::stoul(val));
    } else {
      fail("unknown key '" + key + "'");
    }
  }
  if (!data.ring) throw Error("surface file has no ring header");
  return data;
}

SurfaceSpec build_sigma(const std::vector<std::array<std::uint32_t, 2>>& points,
                        const std::vector<Polynomial>& conics,
                        const std::vector<std::uint32_t>& lambda, const RingPtr& ring) {
  if (ring->nvars() != 5) throw Error("build_sigma: ring needs exactly 5 variables");
  if (points.size() != 4 || conics.size() != 4 || lambda.size() != 4)
    throw Error("build_sigma: need 4 points, 4 conics and 4 weights");
  const auto& F = ring->field();

  for (const auto& z : points)
    if (z[0] == 0 && z[1] == 0) throw Error("build_sigma: (0,0) is not a point of P^1");
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = i + 1; j < 4; ++j) {
      std::uint32_t cross = F.sub(F.mul(points[i][0], points[j][1]), F.mul(points[i][1], points[j][0]));
      if (cross == 0) throw Error("build_sigma: coincident points z_" + std::to_string(i + 1) +
                                  ", z_" + std::to_string(j + 1));
    }

  const std::array<std::size_t, 2> st{0, 1};
  for (std::size_t i = 0; i < 4; ++i) {
    const auto& q = conics[i];
    if (!q.ring() || !(*q.ring() == *ring)) throw Error("build_sigma: conic ring mismatch");
    if (q.degree_in(std::span<const std::size_t>(st.data(), 2)) != 0 || q.total_degree() != 2 ||
        !q.is_homogeneous())
      throw Error("build_sigma: conic " + std::to_string(i + 1) +
                  " must be a quadratic form in the last three variables");
    if (conic_rank(q, ring) < 2)
      throw Error("build_sigma: conic " + std::to_string(i + 1) + " is not reduced");
  }
  for (std::size_t i = 0; i < 4; ++i)
    if (lambda[i] % F.characteristic() == 0)
      throw Error("build_sigma: weight " + std::to_string(i + 1) + " must be nonzero");

  // squares of the conics must be independent quartics
  std::vector<Polynomial> squares;
  for (const auto& q : conics) squares.push_back(q * q);
  {
    // quartic monomials in the three x variables
    std::vector<Monomial> basis;
    for (Exponent e0 = 0; e0 <= 4; ++e0)
      for (Exponent e1 = 0; e0 + e1 <= 4; ++e1) {
        Monomial m(5, 0);
        m[2] = e0;
        m[3] = e1;
        m[4] = 4 - e0 - e1;
        basis.push_back(std::move(m));
      }
    std::vector<std::vector<std::uint32_t>> M(4, std::vector<std::uint32_t>(basis.size(), 0));
    for (std::size_t i = 0; i < 4; ++i)
      for (const auto& t : squares[i].terms()) {
        auto it = std::find(basis.begin(), basis.end(), t.mono);
        M[i][static_cast<std::size_t>(it - basis.begin())] = t.coeff;
      }
    if (gauss_rank(std::move(M), F) != 4)
      throw Error("build_sigma: the squares of the conics are linearly dependent");
  }

  Polynomial h(ring);
  for (std::size_t i = 0; i < 4; ++i) {
    Polynomial ell = Polynomial::one(ring);
    for (std::size_t j = 0; j < 4; ++j)
      if (j != i) ell = ell * p1_linear_form(ring, points[j][0], points[j][1]);
    h = h + ell.scaled(lambda[i]) * squares[i];
  }
  check_bidegree(h);

  // fibre over z_i is a nonzero multiple of Q_i^2
  for (std::size_t i = 0; i < 4; ++i) {
    std::vector<Polynomial> images;
    images.push_back(Polynomial::constant(ring, points[i][0]));
    images.push_back(Polynomial::constant(ring, points[i][1]));
    for (std::size_t v = 2; v < 5; ++v) images.push_back(Polynomial::variable(ring, v));
    Polynomial fibre = h.substitute(images);
    if (fibre.is_zero()) throw Error("build_sigma: fibre degenerates");
    std::uint32_t scale = F.mul(fibre.leading_coeff(), F.inv(squares[i].leading_coeff()));
    if (fibre != squares[i].scaled(scale))
      throw Error("build_sigma: fibre condition failed");
  }

  return SurfaceSpec{ring, points, conics, lambda, std::move(h)};
}

std::array<Chart, 6> standard_charts() {
  return {Chart{0, 2}, Chart{0, 3}, Chart{0, 4}, Chart{1, 2}, Chart{1, 3}, Chart{1, 4}};
}

std::string chart_name(const SurfaceSpec& spec, const Chart& chart) {
  return spec.ring->variable(chart.p1_var) + "," + spec.ring->variable(chart.p2_var);
}

Polynomial chart_closure(const SurfaceSpec& spec, const Chart& chart) {
  if (chart.p1_var > 1 || chart.p2_var < 2 || chart.p2_var > 4)
    throw Error("chart must invert one P^1 and one P^2 coordinate");
  const RingPtr& R = spec.ring;
  std::vector<std::string> vars;
  vars.push_back(R->variable(1 - chart.p1_var));
  for (std::size_t v = 2; v < 5; ++v)
    if (v != chart.p2_var) vars.push_back(R->variable(v));
  vars.push_back(fresh_var(*R, "w"));
  RingPtr chart_ring = Ring::make(R->characteristic(), vars, MonomialOrder::grevlex());

  Polynomial w = Polynomial::variable(chart_ring, 3);
  std::vector<Polynomial> images(5, Polynomial(chart_ring));
  images[chart.p1_var] = w;
  images[1 - chart.p1_var] = Polynomial::variable(chart_ring, 0);
  std::size_t slot = 1;
  for (std::size_t v = 2; v < 5; ++v)
    images[v] = (v == chart.p2_var) ? w : Polynomial::variable(chart_ring, slot++);
  Polynomial closure = spec.h.substitute(images);
  if (!closure.is_homogeneous() || closure.total_degree() != 7)
    throw Error("chart closure is not a degree-7 form");
  return closure;
}

Ideal non_nodal_ideal(const Polynomial& h_chart) {
  const RingPtr& R = h_chart.ring();
  if (!R || R->nvars() != 4) throw Error("non_nodal_ideal expects a form in 4 variables");
  if (!h_chart.is_homogeneous()) throw Error("non_nodal_ideal expects a homogeneous form");
  if (h_chart.total_degree() % R->characteristic() == 0)
    throw Error("characteristic " + std::to_string(R->characteristic()) +
                " divides the degree " + std::to_string(h_chart.total_degree()) +
                "; the Euler relation fails");
  std::vector<Polynomial> gens;
  for (std::size_t v = 0; v < 4; ++v) {
    Polynomial d = h_chart.differentiate(v);
    if (!d.is_zero()) gens.push_back(std::move(d));
  }
  std::vector<Polynomial> hm = minors(hessian_matrix(h_chart), 3);
  for (auto& m : hm) {
    Polynomial cand = m.monic();
    bool dup = false;
    for (const auto& g : gens)
      if (g == cand) {
        dup = true;
        break;
      }
    if (!dup) gens.push_back(std::move(cand));
  }
  return Ideal::make(R, std::move(gens));
}

bool affine_non_nodal_empty(const Polynomial& h_chart) {
  const RingPtr& R = h_chart.ring();
  if (!R || R->nvars() != 4) throw Error("affine check expects a form in 4 variables");
  std::vector<std::string> affine_vars(R->variables().begin(), R->variables().end() - 1);
  RingPtr A = Ring::make(R->characteristic(), std::move(affine_vars), MonomialOrder::grevlex());
  std::vector<Polynomial> images;
  for (std::size_t v = 0; v < 3; ++v) images.push_back(Polynomial::variable(A, v));
  images.push_back(Polynomial::one(A));
  Polynomial f = h_chart.substitute(images);
  std::vector<Polynomial> gens{f};
  for (std::size_t v = 0; v < 3; ++v) {
    Polynomial d = f.differentiate(v);
    if (!d.is_zero()) gens.push_back(std::move(d));
  }
  Polynomial det = determinant(hessian_matrix(f));
  if (!det.is_zero()) gens.push_back(std::move(det));
  Ideal I = buchberger(Ideal::make(A, std::move(gens)));
  return !I.gb->elements.empty() && I.gb->elements.front().total_degree() == 0;
}

namespace {

ChartReport check_chart(const SurfaceSpec& spec, const Chart& chart, const NodalOptions& opts) {
  ChartReport rep;
  rep.chart = chart_name(spec, chart);
  Polynomial closure = chart_closure(spec, chart);
  Ideal I = buchberger(non_nodal_ideal(closure));
  rep.gb_degree_reached = I.gb->degree_reached;
  const RingPtr& cr = closure.ring();
  Polynomial w = Polynomial::variable(cr, 3);
  if (opts.power) {
    const std::uint32_t N = *opts.power;
    std::optional<std::uint32_t> hit;
    for (std::uint32_t k = 1; k <= N && !hit; ++k) {
      Monomial m(4, 0);
      m[3] = k;
      if (normal_form(Polynomial::monomial(cr, m), I.gb->elements).is_zero()) hit = k;
    }
    rep.nodal_ok = hit.has_value();
    rep.certificate = hit ? cr->variable(3) + "^" + std::to_string(*hit) + " reduces to 0"
                          : "no power of " + cr->variable(3) + " up to " + std::to_string(N) +
                                " reduces to 0";
  } else {
    rep.nodal_ok = radical_member(w, I);
    rep.certificate = cr->variable(3) + (rep.nodal_ok ? " lies in the radical"
                                                      : " does not lie in the radical");
  }
  if (opts.affine_cross_check) {
    bool affine_ok = affine_non_nodal_empty(closure);
    // a power-mode miss is not a disagreement, the bound may just be too small
    if (!opts.power && affine_ok != rep.nodal_ok)
      throw Error("chart " + rep.chart + ": affine and projective routes disagree");
    rep.certificate += affine_ok ? "; affine route: clean" : "; affine route: non-nodal points";
  }
  return rep;
}

}  // namespace

std::vector<ChartReport> verify_nodal(const SurfaceSpec& spec, const NodalOptions& opts) {
  auto charts = standard_charts();
  std::vector<ChartReport> reports(charts.size());
  unsigned jobs = std::max(1u, std::min<unsigned>(opts.jobs, charts.size()));
  if (jobs == 1) {
    for (std::size_t i = 0; i < charts.size(); ++i) reports[i] = check_chart(spec, charts[i], opts);
    return reports;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(charts.size());
  std::vector<std::thread> workers;
  for (unsigned t = 0; t < jobs; ++t)
    workers.emplace_back([&] {
      for (;;) {
        std::size_t i = next.fetch_add(1);
        if (i >= charts.size()) return;
        try {
          reports[i] = check_chart(spec, charts[i], opts);
        } catch (...) {
          errors[i] = std::current_exception();
        }
      }
    });
  for (auto& w : workers) w.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return reports;
}

SegreResult segre_singular_profile(const SurfaceSpec& spec) {
  const RingPtr& R = spec.ring;
  std::vector<std::string> ynames;
  for (int i = 0; i < 6; ++i) {
    std::string n = "y" + std::to_string(i);
    ynames.push_back(fresh_var(*R, n));
  }
  RingPtr yring = Ring::make(R->characteristic(), ynames, MonomialOrder::grevlex());

  std::vector<Polynomial> images;
  for (std::size_t p1 = 0; p1 < 2; ++p1)
    for (std::size_t x = 2; x < 5; ++x)
      images.push_back(Polynomial::variable(R, p1) * Polynomial::variable(R, x));
  Ideal constraints = Ideal::make(R, {spec.h});
  Ideal sigma = map_kernel(R, yring, images, &constraints);

  std::vector<Polynomial> gens = minimal_generators(sigma);
  std::vector<Polynomial> sing_gens = gens;
  for (auto& m : minors(jacobian_matrix(gens), 3)) {
    Polynomial cand = m.monic();
    bool dup = false;
    for (const auto& g : sing_gens)
      if (g == cand) {
        dup = true;
        break;
      }
    if (!dup) sing_gens.push_back(std::move(cand));
  }
  Ideal sing = buchberger(Ideal::make(yring, std::move(sing_gens)));
  HilbertProfile profile = hilbert_profile(sing);
  return SegreResult{std::move(sigma), std::move(sing), profile};
}

namespace {

// Express a bidegree-(4,4) form in Segre coordinates: each monomial
// s^a t^b x_{i1}..x_{i4} maps to the product of y's pairing the a copies of s
// (then the b copies of t) with the sorted x indices. Representatives differ
// by Segre relations, which lie in every ideal containing the surface.
Polynomial segre_pullback_44(const Polynomial& f, const RingPtr& yring) {
  std::vector<Term> out;
  for (const auto& t : f.terms()) {
    Exponent a = t.mono[0];
    Exponent b = t.mono[1];
    std::vector<std::size_t> xs;
    for (std::size_t v = 2; v < 5; ++v)
      for (Exponent e = 0; e < t.mono[v]; ++e) xs.push_back(v - 2);
    if (a + b != 4 || xs.size() != 4) throw Error("segre pullback needs a bidegree-(4,4) form");
    Monomial m(6, 0);
    for (std::size_t k = 0; k < 4; ++k) {
      std::size_t idx = xs[k];
      m[k < a ? idx : 3 + idx] += 1;
    }
    out.push_back({std::move(m), t.coeff});
  }
  return Polynomial::from_terms(yring, std::move(out));
}

}  // namespace

bool even_set_check(const SurfaceSpec& spec, const Ideal& singular_ideal) {
  if (spec.points.size() % 2 != 0) return false;
  const RingPtr& R = spec.ring;
  Polynomial fibres = Polynomial::one(R);
  for (const auto& z : spec.points) fibres = fibres * p1_linear_form(R, z[0], z[1]);
  Ideal sing = with_groebner(singular_ideal);
  for (std::size_t x = 2; x < 5; ++x) {
    Polynomial form = fibres * Polynomial::variable(R, x).pow(4);
    Polynomial pulled = segre_pullback_44(form, sing.ring);
    if (!radical_member(pulled, sing)) return false;
  }
  return true;
}

VerificationReport verify_surface(const SurfaceData& data, const VerifyOptions& opts) {
  if (data.points.size() != 4 || data.conics.size() != 4)
    throw Error("verification needs exactly 4 points and 4 conics");
  if (data.lambda && data.lambda->size() != 4) throw Error("lambda needs 4 entries");
  const auto& F = data.ring->field();

  NodalOptions nodal_opts;
  nodal_opts.power = opts.power ? opts.power : data.power;
  nodal_opts.affine_cross_check = opts.affine_cross_check;
  nodal_opts.jobs = opts.jobs;

  std::mt19937_64 rng(opts.seed);
  auto random_lambda = [&] {
    std::vector<std::uint32_t> l(4);
    for (auto& v : l) v = 1 + static_cast<std::uint32_t>(rng() % (F.characteristic() - 1));
    return l;
  };

  const std::int64_t g = static_cast<std::int64_t>(data.points.size()) / 2 - 1;
  const std::int64_t expected = 16 * g + 16;

  VerificationReport report;
  report.expected_nodes = expected;
  const unsigned max_attempts = data.lambda ? 1 : 1 + opts.retries;
  for (unsigned attempt = 1; attempt <= max_attempts; ++attempt) {
    std::vector<std::uint32_t> lambda;
    if (data.lambda)
      lambda = *data.lambda;
    else
      lambda = (attempt == 1) ? std::vector<std::uint32_t>{1, 1, 1, 1} : random_lambda();

    SurfaceSpec spec = build_sigma(data.points, data.conics, lambda, data.ring);
    report.attempts = attempt;
    report.lambda = lambda;
    report.charts = verify_nodal(spec, nodal_opts);
    report.segre = HilbertProfile{};
    report.even_set = false;
    report.passed = false;
    bool charts_ok = std::all_of(report.charts.begin(), report.charts.end(),
                                 [](const ChartReport& c) { return c.nodal_ok; });
    if (!charts_ok) continue;
    SegreResult segre = segre_singular_profile(spec);
    report.segre = segre.profile;
    if (!(segre.profile == HilbertProfile{5, expected})) continue;
    report.even_set = even_set_check(spec, segre.singular_ideal);
    report.passed = true;
    return report;
  }
  return report;
}

}  // namespace evenset
