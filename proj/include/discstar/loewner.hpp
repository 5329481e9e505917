#pragma once

#include <complex>
#include <cstdint>
#include <cstddef>
#include <string>
#include <vector>

#include "discstar/series.hpp"

namespace discstar::loewner {

using series::cplx;
using series::TruncatedSeries;

/// Piecewise-constant unimodular control kappa(t) = e^{i alpha_j} on
/// [t_{j-1}, t_j), with a constant tail angle for t >= T = last breakpoint.
struct Driving {
  std::vector<double> breakpoints;  // 0 = t_0 < t_1 < ... < t_m = T, T <= 50
  std::vector<double> angles;       // alpha_1 .. alpha_m
  double tail_angle = 0.0;

  Driving(std::vector<double> breakpoints, std::vector<double> angles, double tail_angle);

  double total_time() const { return breakpoints.back(); }
  std::size_t segments() const { return angles.size(); }

  static Driving constant(double angle, double total_time = 1.0);

  /// Same control with a constant added to every angle (including the tail).
  Driving rotated(double beta) const;
};

/// First n_order+1 Taylor coefficients (0, 1, A_2, ..., A_n) of the univalent
/// function generated by the coefficient evolution under the given driving.
/// Fixed-step fourth-order integration up to T, then the constant-tail
/// closed form. The result is certified by re-running at half the step and
/// requiring coefficient agreement within 1e-8; disagreement throws.
/// Requires n_order <= 64 and step <= 1e-2.
TruncatedSeries loewner_coefficients(const Driving& d, std::size_t n_order, double step = 5e-3);

/// Step at which the halving certificate passes with margin; the integration
/// error grows steeply with the order.
double recommended_step(std::size_t n_order);

/// Closed-form second coefficient for piecewise-constant driving (a weighted
/// exponential integral of kappa).
cplx second_coefficient_closed_form(const Driving& d);

/// Closed-form third coefficient for piecewise-constant driving.
cplx third_coefficient_closed_form(const Driving& d);

/// Fifth coefficient of the odd square-root transform, from the first two
/// nontrivial coefficients of H: a5 = (A3 - A2^2/4) / 2.
cplx odd_a5_from_coefficients(cplx a2, cplx a3);

struct SanityVerdict {
  bool pass = false;
  std::string reason;  // empty when pass
};

/// Necessary-condition screen for univalence of a numerically produced
/// series on |z| = r (r <= 0.95): normalization, a pairwise sample
/// distortion screen, and winding number 1 around interior probe points.
SanityVerdict univalence_sanity(const TruncatedSeries& H, double r, std::size_t M);

struct FeketeSzegoResult {
  Driving driving;
  TruncatedSeries H;   // generated function in S
  TruncatedSeries h;   // odd square-root transform
  TruncatedSeries h1;  // h / z
  cplx a5{0.0, 0.0};
  bool success = false;          // |a5| exceeded the acceptance floor 1.001
  std::size_t evaluations = 0;
  std::vector<double> best_trace;  // best-so-far objective, nondecreasing
};

/// Maximizes |a5| of the odd transform over piecewise-constant drivings with
/// m_segments pieces (m_segments >= 2), by seeded random exploration
/// followed by Nelder-Mead refinement. Deterministic in (seed, budget).
FeketeSzegoResult fekete_szego_search(std::size_t m_segments, std::size_t budget,
                                      std::uint64_t seed = 0);

/// Driving found by the default search, shipped so that downstream runs do
/// not repeat it.
const Driving& default_driving();

/// Classical uniform bound for the coefficients of odd univalent functions;
/// used as the tail envelope beyond the computed truncation.
inline constexpr double kOddCoefficientCeiling = 1.17;

/// h/z for the odd transform of H, with the growth class widened to the odd
/// univalent coefficient ceiling so tail bounds cover the unknown
/// coefficients beyond the truncation.
TruncatedSeries odd_transform_ratio(const TruncatedSeries& H);

}  // namespace discstar::loewner
