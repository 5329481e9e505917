#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "discstar/circle.hpp"
#include "discstar/series.hpp"

namespace discstar::measures {

using circle::RingSamples;
using series::cplx;
using series::TruncatedSeries;

/// Finite atomic complex measure on the unit circle. Angles are canonical:
/// reduced to [-pi, pi), strictly increasing, duplicates merged.
class UnitCircleMeasure {
 public:
  struct Atom {
    double angle;
    cplx weight;
  };

  UnitCircleMeasure(std::vector<Atom> atoms, std::optional<std::string> tag = std::nullopt);

  const std::vector<Atom>& atoms() const { return atoms_; }
  const std::optional<std::string>& tag() const { return tag_; }
  double total_variation() const { return total_variation_; }

  /// Sum of the weights (the 0-th moment).
  cplx total_mass() const;

 private:
  std::vector<Atom> atoms_;
  std::optional<std::string> tag_;
  double total_variation_ = 0.0;
};

/// Trapezoidal atomic discretization of a density on [-pi, pi) at `nodes`
/// equispaced angles: weight(phi_j) = density(phi_j) * 2*pi/nodes.
UnitCircleMeasure discretized_density(const std::function<double(double)>& density,
                                      std::size_t nodes, std::string tag);

/// Point mass of the given weight.
UnitCircleMeasure dirac(double angle, cplx weight = cplx{1.0, 0.0});

/// F(z) whose n-th Taylor coefficient is the n-th moment of the measure,
/// moment_n = sum_j w_j e^{i n phi_j}. Growth class: bounded by the total
/// variation.
TruncatedSeries cauchy_transform(const UnitCircleMeasure& mu, std::size_t n_order);

/// Samples of the convolution with the measure's transform, computed on the
/// measure side: sum_j w_j f(r e^{i(t + phi_j)}). Error bound is the total
/// variation times f's tail bound.
RingSamples convolve_via_measure(const TruncatedSeries& f, const UnitCircleMeasure& mu, double r,
                                 std::size_t M);

/// Total variation at most 1 (within 1e-12).
bool is_bound_preserving(const UnitCircleMeasure& mu);

/// Probability measure: real nonnegative weights summing to 1 (within 1e-12).
bool is_convexity_preserving(const UnitCircleMeasure& mu);

enum class MeasureKind { bound_preserving, probability };

/// Deterministic in the seed. probability: nonnegative weights summing to 1;
/// bound_preserving: complex weights with total variation drawn in (0, 1].
UnitCircleMeasure random_measure(std::uint64_t seed, MeasureKind kind, std::size_t max_atoms);

}  // namespace discstar::measures
