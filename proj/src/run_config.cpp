#include "discstar/run_config.hpp"

#include <stdexcept>

namespace discstar {

namespace {
bool is_pow2(std::size_t m) { return m != 0 && (m & (m - 1)) == 0; }
}  // namespace

void RunConfig::validate() const {
  if (!is_pow2(fft_size) || fft_size < 2 * (n_coeffs + 1))
    throw std::invalid_argument("RunConfig: fft_size must be a power of two >= 2*(n_coeffs+1)");
  if (theta_points < 16) throw std::invalid_argument("RunConfig: theta_points must be >= 16");
  if (r_grid.empty()) throw std::invalid_argument("RunConfig: empty r_grid");
  for (const double r : r_grid)
    if (!(r > 0.0 && r < 1.0))
      throw std::invalid_argument("RunConfig: radii must lie in (0,1)");
  if (!is_pow2(q1_star_fft)) throw std::invalid_argument("RunConfig: q1_star_fft must be a power of two");
}

}  // namespace discstar
