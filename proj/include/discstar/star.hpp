#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "discstar/circle.hpp"

namespace discstar::star {

using circle::RealRingSamples;

/// The map theta -> u*(r e^{i theta}) on a uniform grid over [0, pi], where
/// u*(theta) is the largest integral of u over circle subsets of measure
/// 2*theta. Computed as the cumulative integral of the decreasing
/// rearrangement of the samples; always concave in theta with u*(0) = 0 and
/// u*(pi) equal to the full circle integral.
struct StarProfile {
  double r = 0.0;
  std::vector<double> thetas;  // 0 = theta_0 < ... < theta_K = pi
  std::vector<double> values;
  double circle_integral = 0.0;
  double err_bound = 0.0;
};

/// Builds the profile on K+1 grid points. The error bound combines the
/// propagated sample error with an observed M -> M/2 rearrangement
/// difference.
StarProfile star_profile(const RealRingSamples& u, std::size_t K);

enum class StarOrder {
  holds,             // max gap certified below zero
  holds_within_tol,  // gap inside the error margin
  fails,             // gap certified above the margin
};

struct StarVerdict {
  StarOrder order = StarOrder::holds_within_tol;
  double max_gap = 0.0;     // max over the grid of u* - v*
  double theta = 0.0;       // grid point attaining the max gap
  std::size_t index = 0;
  double margin = 0.0;      // threshold actually applied (margin + combined err)
};

/// Compares u* <= v* on a shared grid. Declares failure only when the gap
/// exceeds margin plus the combined error bounds, and a certified hold only
/// when the gap clears the same threshold on the other side.
StarVerdict star_leq(const StarProfile& u_star, const StarProfile& v_star, double margin);

/// Margin for the 10x-error-budget comparison policy, to be passed to
/// star_leq (which adds the combined bounds once more on top).
double default_star_margin(const StarProfile& u_star, const StarProfile& v_star);

/// Profile of (-u)*: theta -> -circle_integral + u*(pi - theta). Exact for
/// any sampled u, not just harmonic ones.
StarProfile reflect_negate(const StarProfile& u_star);

/// True iff u is even in the angle and nonincreasing on [0, pi], both within
/// tol.
bool symmetric_decreasing_check(const RealRingSamples& u, double tol);

/// A convex nondecreasing test function for the means comparison.
struct PhiSpec {
  std::string name;
  std::function<double(double)> fn;
  /// Bound on the slope over [lo, hi]; used to propagate sample errors.
  std::function<double(double, double)> slope_bound;
};

/// exp(p x) for p in {0.25, 0.5, 1, 2, 4} plus hinges max(x - c, 0) with c at
/// quantiles of the combined sample range.
std::vector<PhiSpec> default_phi_family(const RealRingSamples& u, const RealRingSamples& v);

struct PhiVerdict {
  std::string phi_name;
  double lhs = 0.0;
  double rhs = 0.0;
  double err_budget = 0.0;
  bool holds = false;  // lhs <= rhs + err_budget
};

/// Checks integral Phi(u) <= integral Phi(v) for each Phi by quadrature.
std::vector<PhiVerdict> phi_means_compare(const RealRingSamples& u, const RealRingSamples& v,
                                          const std::vector<PhiSpec>& phi_family);

}  // namespace discstar::star
