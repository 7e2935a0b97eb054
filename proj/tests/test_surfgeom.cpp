#include "evenset/surfgeom.hpp"

#include <set>

#include "doctest.h"

using namespace evenset;

namespace {

const char* kPaperFile = R"(# four double conic fibres
ring p=31991 vars=s,t,x0,x1,x2 order=grevlex
point = (1,0)
point = (0,1)
point = (1,-1)
point = (1,1)
conic = x0^2+x1^2+x2^2
conic = x0^2+x1^2-x2^2
conic = x0*x1+x0*x2+x1*x2
conic = x0^2+5*x0*x1+7*x0*x2+2*x1^2+11*x1*x2+3*x2^2
lambda = 1,1,1,1
)";

SurfaceData paper_data(std::uint32_t p = 31991) {
  SurfaceData d = parse_surface_file(kPaperFile);
  if (p == 31991) return d;
  SurfaceData out;
  out.ring = Ring::make(p, {"s", "t", "x0", "x1", "x2"});
  const auto& F = out.ring->field();
  for (auto z : d.points) out.points.push_back({F.reduce(z[0] % 31991), F.reduce(z[1] == 31990 ? -1 : z[1])});
  for (const auto& q : d.conics) out.conics.push_back(Polynomial::parse(q.str(), out.ring));
  out.lambda = std::vector<std::uint32_t>{1, 1, 1, 1};
  return out;
}

}  // namespace

TEST_CASE("surface file parsing") {
  SurfaceData d = parse_surface_file(kPaperFile);
  CHECK(d.ring->characteristic() == 31991);
  CHECK(d.points.size() == 4);
  CHECK(d.points[2] == std::array<std::uint32_t, 2>{1, 31990});
  CHECK(d.conics.size() == 4);
  CHECK(d.lambda.has_value());
  CHECK(!d.power.has_value());

  CHECK_THROWS_AS(parse_surface_file("point = (1,0)\n"), Error);
  CHECK_THROWS_AS(parse_surface_file("ring p=31991 vars=s,t,x0,x1,x2 order=grevlex\nnonsense\n"),
                  Error);
  CHECK_THROWS_AS(parse_surface_file("ring p=31991 vars=x,y order=grevlex\n"), Error);
}

TEST_CASE("build_sigma constructs the bidegree-(4,3) equation") {
  SurfaceData d = paper_data();
  SurfaceSpec spec = build_sigma(d.points, d.conics, *d.lambda, d.ring);

  // bidegree is (4,3): degree 3 in (s,t), 4 in the x variables
  std::vector<std::size_t> st{0, 1}, xs{2, 3, 4};
  CHECK(spec.h.degree_in(st) == 3);
  CHECK(spec.h.degree_in(xs) == 4);
  for (const auto& t : spec.h.terms()) {
    CHECK(t.mono[0] + t.mono[1] == 3);
    CHECK(t.mono[2] + t.mono[3] + t.mono[4] == 4);
  }

  // the fibre over each z_i is a nonzero multiple of Q_i^2
  const auto& F = d.ring->field();
  for (std::size_t i = 0; i < 4; ++i) {
    std::vector<Polynomial> images;
    images.push_back(Polynomial::constant(d.ring, d.points[i][0]));
    images.push_back(Polynomial::constant(d.ring, d.points[i][1]));
    for (std::size_t v = 2; v < 5; ++v) images.push_back(Polynomial::variable(d.ring, v));
    Polynomial fibre = spec.h.substitute(images);
    Polynomial sq = d.conics[i] * d.conics[i];
    REQUIRE(!fibre.is_zero());
    std::uint32_t scale = F.mul(fibre.leading_coeff(), F.inv(sq.leading_coeff()));
    CHECK(fibre == sq.scaled(scale));
  }
}

TEST_CASE("build_sigma rejects degenerate data") {
  SurfaceData d = paper_data();

  SUBCASE("coincident points") {
    auto pts = d.points;
    pts[1] = pts[0];
    CHECK_THROWS_WITH_AS(build_sigma(pts, d.conics, *d.lambda, d.ring),
                         doctest::Contains("coincident"), Error);
  }
  SUBCASE("proportional points count as coincident") {
    auto pts = d.points;
    pts[1] = {2, 0};  // proportional to (1,0)
    CHECK_THROWS_AS(build_sigma(pts, d.conics, *d.lambda, d.ring), Error);
  }
  SUBCASE("non-reduced conic") {
    auto conics = d.conics;
    conics[0] = Polynomial::parse("x0^2", d.ring);
    CHECK_THROWS_WITH_AS(build_sigma(d.points, conics, *d.lambda, d.ring),
                         doctest::Contains("reduced"), Error);
  }
  SUBCASE("zero weight") {
    CHECK_THROWS_AS(build_sigma(d.points, d.conics, {1, 0, 1, 1}, d.ring), Error);
  }
  SUBCASE("dependent squares") {
    auto conics = d.conics;
    conics[0] = Polynomial::parse("x0^2+x1^2", d.ring);
    conics[1] = Polynomial::parse("x0^2-x1^2", d.ring);
    conics[2] = Polynomial::parse("x0*x1", d.ring);
    // (Q1^2 - Q2^2) = 4 Q3^2
    CHECK_THROWS_WITH_AS(build_sigma(d.points, conics, *d.lambda, d.ring),
                         doctest::Contains("dependent"), Error);
  }
  SUBCASE("conic involving the base coordinates") {
    auto conics = d.conics;
    conics[3] = Polynomial::parse("s*x0", d.ring);
    CHECK_THROWS_AS(build_sigma(d.points, conics, *d.lambda, d.ring), Error);
  }
}

TEST_CASE("chart closures are degree-7 forms that dehomogenize back") {
  SurfaceData d = paper_data();
  SurfaceSpec spec = build_sigma(d.points, d.conics, *d.lambda, d.ring);

  for (const auto& chart : standard_charts()) {
    Polynomial closure = chart_closure(spec, chart);
    CHECK(closure.ring()->nvars() == 4);
    CHECK(closure.is_homogeneous());
    CHECK(closure.total_degree() == 7);

    // substituting w -> 1 recovers the affine dehomogenization of h
    std::vector<Polynomial> back;
    const auto& cr = closure.ring();
    for (std::size_t v = 0; v < 3; ++v) {
      auto idx = spec.ring->find_var(cr->variable(v));
      REQUIRE(idx.has_value());
      back.push_back(Polynomial::variable(spec.ring, *idx));
    }
    back.push_back(Polynomial::one(spec.ring));
    Polynomial affine_from_closure = closure.substitute(back);

    std::vector<Polynomial> dehom;
    for (std::size_t v = 0; v < 5; ++v)
      dehom.push_back((v == chart.p1_var || v == chart.p2_var)
                          ? Polynomial::one(spec.ring)
                          : Polynomial::variable(spec.ring, v));
    CHECK(affine_from_closure == spec.h.substitute(dehom));
  }

  CHECK_THROWS_AS(chart_closure(spec, Chart{0, 0}), Error);
}

TEST_CASE("non-nodal ideal on model singularities") {
  auto R = Ring::make(31991, {"x0", "x1", "x2", "w"});

  SUBCASE("smooth quadric: empty non-nodal locus") {
    auto f = Polynomial::parse("x0^2+x1^2+x2^2-w^2", R);
    auto I = buchberger(non_nodal_ideal(f));
    REQUIRE(I.gb->elements.size() == 1);
    CHECK(I.gb->elements[0] == Polynomial::one(R));
    for (std::size_t v = 0; v < 4; ++v)
      CHECK(radical_member(Polynomial::variable(R, v), I));
  }

  SUBCASE("rank-3 cone: the vertex is a node") {
    auto f = Polynomial::parse("x0^2+x1^2+x2^2", R);
    auto I = buchberger(non_nodal_ideal(f));
    // one 3x3 Hessian minor is a nonzero constant, so nothing is worse than a node
    REQUIRE(I.gb->elements.size() == 1);
    CHECK(I.gb->elements[0].total_degree() == 0);
    CHECK(radical_member(Polynomial::variable(R, 3), I));
  }

  SUBCASE("a non-nodal singular line is detected") {
    auto f = Polynomial::parse("x0^2*x1", R);
    auto I = non_nodal_ideal(f);
    CHECK(!radical_member(Polynomial::variable(R, 3), I));
  }

  SUBCASE("characteristic dividing the degree is rejected") {
    auto R7 = Ring::make(7, {"x0", "x1", "x2", "w"});
    auto f = Polynomial::parse("x0^7+x1^6*x2", R7);
    CHECK_THROWS_WITH_AS(non_nodal_ideal(f), doctest::Contains("Euler"), Error);
  }

  SUBCASE("affine route agrees on the model cases") {
    CHECK(affine_non_nodal_empty(Polynomial::parse("x0^2+x1^2+x2^2-w^2", R)));
    CHECK(affine_non_nodal_empty(Polynomial::parse("x0^2+x1^2+x2^2", R)));
    CHECK(!affine_non_nodal_empty(Polynomial::parse("x0^2*x1", R)));
  }

  SUBCASE("scaling the form does not change the reduced basis") {
    auto f = Polynomial::parse("x0^2*x1 + x1^2*w - x2^3", R);
    auto a = buchberger(non_nodal_ideal(f));
    auto b = buchberger(non_nodal_ideal(f.scaled(5)));
    CHECK(a.gb->elements == b.gb->elements);
  }
}

TEST_CASE("chart classification is consistent across overlapping charts") {
  // brute force over a tiny field: find the rational singular points of the
  // surface, then check that every chart containing such a point classifies
  // it the same way
  std::vector<std::uint32_t> primes{11, 13, 17};
  bool found_any = false;
  for (auto p : primes) {
    SurfaceData d = paper_data(p);
    SurfaceSpec spec;
    try {
      spec = build_sigma(d.points, d.conics, *d.lambda, d.ring);
    } catch (const Error&) {
      continue;  // data degenerates mod p
    }
    const auto& F = d.ring->field();

    std::vector<Polynomial> partials;
    for (std::size_t v = 0; v < 5; ++v) partials.push_back(spec.h.differentiate(v));

    // chart data: closure polynomial, its partials, its hessian minors
    struct ChartData {
      Chart chart;
      std::vector<Polynomial> gens;
    };
    std::vector<ChartData> charts;
    for (const auto& c : standard_charts()) {
      Ideal I = non_nodal_ideal(chart_closure(spec, c));
      charts.push_back({c, I.generators});
    }

    // enumerate P^1 x P^2 (normalized representatives)
    std::vector<std::array<std::uint32_t, 2>> p1s;
    p1s.push_back({0, 1});
    for (std::uint32_t t = 0; t < p; ++t) p1s.push_back({1, t});
    std::vector<std::array<std::uint32_t, 3>> p2s;
    for (std::size_t lead = 0; lead < 3; ++lead)
      for (std::uint32_t a = 0; a < (lead < 2 ? p : 1); ++a)
        for (std::uint32_t b = 0; b < (lead < 1 ? p : 1); ++b) {
          std::array<std::uint32_t, 3> pt{0, 0, 0};
          pt[lead] = 1;
          if (lead == 1) pt[2] = a;
          if (lead == 0) {
            pt[1] = b;
            pt[2] = a;
          }
          p2s.push_back(pt);
        }

    for (const auto& z : p1s)
      for (const auto& x : p2s) {
        std::vector<std::uint32_t> pt{z[0], z[1], x[0], x[1], x[2]};
        bool singular = true;
        for (const auto& g : partials)
          if (g.evaluate(pt) != 0) {
            singular = false;
            break;
          }
        if (!singular) continue;
        found_any = true;
        // classify in every chart containing the point
        std::set<bool> verdicts;
        for (const auto& cd : charts) {
          if (pt[cd.chart.p1_var] == 0 || pt[cd.chart.p2_var] == 0) continue;
          // affine coordinates of the point in this chart, homogenizer = 1
          std::uint32_t zi = F.inv(pt[cd.chart.p1_var]);
          std::uint32_t xi = F.inv(pt[cd.chart.p2_var]);
          std::vector<std::uint32_t> cpt;
          cpt.push_back(F.mul(pt[1 - cd.chart.p1_var], zi));
          for (std::size_t v = 2; v < 5; ++v)
            if (v != cd.chart.p2_var) cpt.push_back(F.mul(pt[v], xi));
          cpt.push_back(1);
          bool non_nodal = true;
          for (const auto& g : cd.gens)
            if (g.evaluate(cpt) != 0) {
              non_nodal = false;
              break;
            }
          verdicts.insert(non_nodal);
        }
        CHECK(verdicts.size() <= 1);
      }
    if (found_any) break;
  }
  CHECK(found_any);
}

TEST_CASE("hessian minors of a chart closure") {
  SurfaceData d = paper_data();
  SurfaceSpec spec = build_sigma(d.points, d.conics, *d.lambda, d.ring);
  Polynomial closure = chart_closure(spec, Chart{0, 2});
  auto ms = minors(hessian_matrix(closure), 3);
  CHECK(ms.size() <= 16);
  CHECK(!ms.empty());
  for (const auto& m : ms) {
    CHECK(m.total_degree() == 15);
    CHECK(m.is_homogeneous());
  }
}

TEST_CASE("chart groebner basis statistics") {
  SurfaceData d = paper_data();
  SurfaceSpec spec = build_sigma(d.points, d.conics, *d.lambda, d.ring);
  Ideal I = buchberger(non_nodal_ideal(chart_closure(spec, Chart{0, 2})));
  // the reduced basis is canonical, so its shape is a frozen regression value
  CHECK(I.gb->elements.size() == 109);
  std::uint32_t max_deg = 0;
  for (const auto& g : I.gb->elements) max_deg = std::max(max_deg, g.total_degree());
  CHECK(max_deg == 20);
  CHECK(I.gb->degree_reached == 21);
}

TEST_CASE("even set check on the paper data and a perturbed point set") {
  SurfaceData d = paper_data();
  SurfaceSpec spec = build_sigma(d.points, d.conics, *d.lambda, d.ring);
  SegreResult segre = segre_singular_profile(spec);
  CHECK(segre.profile == HilbertProfile{5, 32});

  // the image surface itself has codimension 3 and degree 11 in P^5, and is
  // cut out by the three Segre quadrics plus two quartics
  CHECK(hilbert_profile(segre.sigma_ideal) == HilbertProfile{3, 11});
  auto mins = minimal_generators(segre.sigma_ideal);
  REQUIRE(mins.size() == 5);
  CHECK(mins[0].total_degree() == 2);
  CHECK(mins[1].total_degree() == 2);
  CHECK(mins[2].total_degree() == 2);
  CHECK(mins[3].total_degree() == 4);
  CHECK(mins[4].total_degree() == 4);
  auto J = jacobian_matrix(mins);
  CHECK(J.rows == 5);
  CHECK(J.cols == 6);

  CHECK(even_set_check(spec, segre.singular_ideal));

  // lying about a fibre point breaks the incidence condition
  SurfaceSpec wrong = spec;
  wrong.points[3] = {1, 2};
  CHECK(!even_set_check(wrong, segre.singular_ideal));
}

TEST_CASE("scaling the equation changes no report field") {
  SurfaceData d = paper_data();
  SurfaceSpec spec = build_sigma(d.points, d.conics, *d.lambda, d.ring);
  SurfaceSpec scaled = spec;
  scaled.h = spec.h.scaled(7);

  NodalOptions opts;
  opts.jobs = 6;
  auto a = verify_nodal(spec, opts);
  auto b = verify_nodal(scaled, opts);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].chart == b[i].chart);
    CHECK(a[i].nodal_ok == b[i].nodal_ok);
    CHECK(a[i].gb_degree_reached == b[i].gb_degree_reached);
    CHECK(a[i].certificate == b[i].certificate);
  }
  CHECK(segre_singular_profile(spec).profile == segre_singular_profile(scaled).profile);
}

TEST_CASE("even set parity precondition") {
  SurfaceData d = paper_data();
  SurfaceSpec three;
  three.ring = d.ring;
  three.points = {{1, 0}, {0, 1}, {1, 1}};
  Ideal dummy = Ideal::make(Ring::make(31991, {"y0", "y1", "y2", "y3", "y4", "y5"}), {});
  CHECK(!even_set_check(three, dummy));
}

TEST_CASE("verify rejects malformed input data") {
  SurfaceData d = paper_data();
  d.points.pop_back();
  CHECK_THROWS_AS(verify_surface(d), Error);
}
