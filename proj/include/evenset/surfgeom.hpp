#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "evenset/groebner.hpp"
#include "evenset/polyring.hpp"

namespace evenset {

/// Data of the bidegree-(4,3) divisor with prescribed double conic fibres.
/// The ring has five variables: two P^1 coordinates first, then three P^2
/// coordinates. h is the derived equation.
struct SurfaceSpec {
  RingPtr ring;
  std::vector<std::array<std::uint32_t, 2>> points;  // (a_i : b_i) in P^1
  std::vector<Polynomial> conics;                    // Q_i in the x variables
  std::vector<std::uint32_t> lambda;                 // nonzero weights
  Polynomial h;
};

/// Parsed surface input file (ring header, point/conic/lambda/power lines).
struct SurfaceData {
  RingPtr ring;
  std::vector<std::array<std::uint32_t, 2>> points;
  std::vector<Polynomial> conics;
  std::optional<std::vector<std::uint32_t>> lambda;
  std::optional<std::uint32_t> power;
};

SurfaceData parse_surface_file(std::string_view text);

/// h = sum_i lambda_i * l_i(s,t) * Q_i(x)^2 with l_i the cubic vanishing at
/// the three other points, so the fibre over z_i is a nonzero multiple of
/// Q_i^2. Validates the defining data (distinct points, reduced conics,
/// nonzero weights, independent squares).
SurfaceSpec build_sigma(const std::vector<std::array<std::uint32_t, 2>>& points,
                        const std::vector<Polynomial>& conics,
                        const std::vector<std::uint32_t>& lambda, const RingPtr& ring);

struct Chart {
  std::size_t p1_var;  // inverted P^1 coordinate (0 or 1)
  std::size_t p2_var;  // inverted P^2 coordinate (2, 3 or 4)
};

/// The six affine charts in the fixed report order.
std::array<Chart, 6> standard_charts();
std::string chart_name(const SurfaceSpec& spec, const Chart& chart);

/// Projective closure of the chart: both inverted variables are replaced by a
/// fresh homogenizing variable (the last ring variable of the result); the
/// result is homogeneous of total degree 7.
Polynomial chart_closure(const SurfaceSpec& spec, const Chart& chart);

/// Ideal of the singular points of {h_chart = 0} that are worse than nodes:
/// the four first partials plus the 3x3 minors of the 4x4 Hessian (h_chart
/// itself is implied by the Euler relation).
Ideal non_nodal_ideal(const Polynomial& h_chart);

/// Affine-route cross-check: true iff the dehomogenized chart has no point
/// that is singular with a degenerate 3x3 Hessian, i.e. the affine non-nodal
/// ideal is the unit ideal.
bool affine_non_nodal_empty(const Polynomial& h_chart);

struct ChartReport {
  std::string chart;
  bool nodal_ok = false;
  std::uint32_t gb_degree_reached = 0;
  std::string certificate;
};

struct NodalOptions {
  std::optional<std::uint32_t> power;  // literal w^N reduction instead of radical membership
  bool affine_cross_check = false;     // also run the affine-Hessian route and compare
  unsigned jobs = 1;
};

/// Per-chart nodality: all non-nodal singular points lie at the chart's
/// hyperplane at infinity, i.e. the homogenizer is in the radical of the
/// non-nodal ideal.
std::vector<ChartReport> verify_nodal(const SurfaceSpec& spec, const NodalOptions& opts = {});

struct SegreResult {
  Ideal sigma_ideal;     // homogeneous ideal of the image surface in P^5
  Ideal singular_ideal;  // sigma ideal + 3x3 minors of its Jacobian
  HilbertProfile profile;
};

SegreResult segre_singular_profile(const SurfaceSpec& spec);

/// Even-set preconditions: the number of prescribed double fibres is even,
/// and every singular point lies on a double fibre (the pullbacks of the
/// fibre product form lie in the radical of the singular ideal).
bool even_set_check(const SurfaceSpec& spec, const Ideal& singular_ideal);

struct VerificationReport {
  std::vector<ChartReport> charts;
  HilbertProfile segre;
  std::int64_t expected_nodes = 0;
  bool even_set = false;
  bool passed = false;
  std::vector<std::uint32_t> lambda;
  unsigned attempts = 0;
};

struct VerifyOptions {
  std::optional<std::uint32_t> power;
  bool affine_cross_check = false;
  unsigned jobs = 1;
  std::uint64_t seed = 1;
  unsigned retries = 8;  // extra weight choices tried after (1,1,1,1)
};

/// Full pipeline with the weight retry policy: the given lambda if present,
/// otherwise (1,1,1,1) followed by seeded random nonzero weights until the
/// chart checks and the singular-locus profile both succeed.
VerificationReport verify_surface(const SurfaceData& data, const VerifyOptions& opts = {});

}  // namespace evenset
