#pragma once

#include <complex>
#include <cstddef>
#include <limits>
#include <vector>

#include "discstar/series.hpp"

namespace discstar::circle {

using series::cplx;
using series::TruncatedSeries;

/// Distinguished token for the maximum-modulus mean.
inline constexpr double kInfinityP = std::numeric_limits<double>::infinity();

/// Floor applied to log-modulus samples; with the default grids no catalog
/// function on r <= 0.99 comes near it.
inline constexpr double kLogFloor = -1e3;

/// Complex samples of a function at the M-th roots of unity scaled to |z| = r,
/// t_j = 2*pi*j/M, with a certified uniform bound on |sample - true value|.
struct RingSamples {
  double r = 0.0;
  std::vector<cplx> values;
  double err_bound = 0.0;
};

/// Real samples of a field on |z| = r (log-modulus or a real part).
struct RealRingSamples {
  double r = 0.0;
  std::vector<double> values;
  double err_bound = 0.0;
};

namespace detail {
/// In-place radix-2 FFT; sign +1 gives X_j = sum_n a_n e^{+2 pi i n j / M}.
void fft(std::vector<cplx>& a, int sign);
bool is_pow2(std::size_t m);
}  // namespace detail

/// values[j] = sum_n a_n r^n e^{i n t_j} by discrete Fourier synthesis.
/// Requires 0 < r < 1 and M a power of two with M >= max(8, 2*(N+1)).
RingSamples sample_circle(const TruncatedSeries& f, double r, std::size_t M);

/// log|values| with the floor applied; the error bound is propagated through
/// the logarithm (infinite when the modulus does not clear the sample error).
RealRingSamples log_abs(const RingSamples& s, double floor = kLogFloor);

/// Real parts; error bound carried over unchanged.
RealRingSamples real_part(const RingSamples& s);

/// Pointwise negation.
RealRingSamples negate(const RealRingSamples& s);

struct MeanResult {
  double value = 0.0;
  /// Certified bound combining the propagated sample error with an observed
  /// M -> M/2 quadrature difference.
  double err_bound = 0.0;
};

/// M_p of the sampled circle: periodic-trapezoid quadrature of |values|^p
/// raised to 1/p; p = kInfinityP returns the grid maximum (an underestimate
/// of the true supremum). Requires p != 0, and all moduli positive beyond the
/// sample error when p < 0. zero_free_floor, when positive, floors the moduli
/// before the mean is taken.
MeanResult integral_mean(const RingSamples& s, double p, double zero_free_floor = 0.0);

/// max over the radius grid of M_p(r, f): a certified lower bound for the
/// H^p norm. Sampling uses the given M at every radius.
MeanResult hardy_norm(const TruncatedSeries& f, double p, const std::vector<double>& r_grid,
                      std::size_t M);

}  // namespace discstar::circle
