#include "discstar/circle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace discstar::circle {

namespace detail {

bool is_pow2(std::size_t m) { return m != 0 && (m & (m - 1)) == 0; }

void fft(std::vector<cplx>& a, int sign) {
  const std::size_t n = a.size();
  if (!is_pow2(n)) throw std::invalid_argument("fft: length must be a power of two");
  // bit reversal
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const double ang = static_cast<double>(sign) * 2.0 * std::numbers::pi / static_cast<double>(len);
    const cplx wlen{std::cos(ang), std::sin(ang)};
    for (std::size_t i = 0; i < n; i += len) {
      cplx w{1.0, 0.0};
      for (std::size_t j = 0; j < len / 2; ++j) {
        const cplx u = a[i + j];
        const cplx v = a[i + j + len / 2] * w;
        a[i + j] = u + v;
        a[i + j + len / 2] = u - v;
        w *= wlen;
      }
    }
  }
}

}  // namespace detail

RingSamples sample_circle(const TruncatedSeries& f, double r, std::size_t M) {
  if (!(r > 0.0 && r < 1.0)) throw std::invalid_argument("sample_circle: radius must be in (0,1)");
  if (!detail::is_pow2(M) || M < 8 || M < 2 * f.size())
    throw std::invalid_argument("sample_circle: M must be a power of two >= max(8, 2*(N+1))");

  std::vector<cplx> a(M, cplx{0.0, 0.0});
  double rn = 1.0;
  for (std::size_t n = 0; n < f.size(); ++n) {
    a[n] = f.coeffs()[n] * rn;
    rn *= r;
  }
  detail::fft(a, +1);
  return RingSamples{r, std::move(a), f.tail_bound(r)};
}

RealRingSamples log_abs(const RingSamples& s, double floor) {
  RealRingSamples out;
  out.r = s.r;
  out.values.reserve(s.values.size());
  double min_abs = std::numeric_limits<double>::infinity();
  for (const auto& v : s.values) {
    const double m = std::abs(v);
    min_abs = std::min(min_abs, m);
    out.values.push_back(std::max(std::log(std::max(m, 0.0)), floor));
  }
  if (s.err_bound == 0.0)
    out.err_bound = 0.0;
  else if (min_abs > s.err_bound)
    out.err_bound = -std::log1p(-s.err_bound / min_abs);
  else
    out.err_bound = std::numeric_limits<double>::infinity();
  return out;
}

RealRingSamples real_part(const RingSamples& s) {
  RealRingSamples out;
  out.r = s.r;
  out.err_bound = s.err_bound;
  out.values.reserve(s.values.size());
  for (const auto& v : s.values) out.values.push_back(v.real());
  return out;
}

RealRingSamples negate(const RealRingSamples& s) {
  RealRingSamples out = s;
  for (auto& v : out.values) v = -v;
  return out;
}

namespace {

// Plain average of |v|^p over the given stride (stride 2 is the half-rule
// used for the observed quadrature difference).
double mean_pow(const std::vector<double>& mods, double p, std::size_t stride) {
  double acc = 0.0;
  std::size_t count = 0;
  for (std::size_t j = 0; j < mods.size(); j += stride) {
    acc += std::pow(mods[j], p);
    ++count;
  }
  return acc / static_cast<double>(count);
}

double mean_value(const std::vector<double>& mods, double p, std::size_t stride) {
  if (p == kInfinityP) {
    double m = 0.0;
    for (std::size_t j = 0; j < mods.size(); j += stride) m = std::max(m, mods[j]);
    return m;
  }
  return std::pow(mean_pow(mods, p, stride), 1.0 / p);
}

}  // namespace

MeanResult integral_mean(const RingSamples& s, double p, double zero_free_floor) {
  if (p == 0.0) throw std::invalid_argument("integral_mean: p = 0 is not a mean");
  if (s.values.empty()) throw std::invalid_argument("integral_mean: empty samples");

  std::vector<double> mods(s.values.size());
  for (std::size_t j = 0; j < s.values.size(); ++j) {
    mods[j] = std::abs(s.values[j]);
    if (zero_free_floor > 0.0) mods[j] = std::max(mods[j], zero_free_floor);
  }
  const double e = s.err_bound;
  const double min_mod = *std::min_element(mods.begin(), mods.end());
  if (p < 0.0 && min_mod - e <= 0.0)
    throw std::domain_error("integral_mean: nonpositive modulus with p < 0");

  MeanResult res;
  if (p == kInfinityP) {
    res.value = mean_value(mods, p, 1);
    res.err_bound = e;
    return res;
  }

  res.value = mean_value(mods, p, 1);
  // Sample-error propagation: the p-mean is monotone in the pointwise moduli
  // for every p != 0, so shifted moduli bracket the true value.
  std::vector<double> shifted(mods.size());
  for (std::size_t j = 0; j < mods.size(); ++j) shifted[j] = mods[j] + e;
  const double hi = mean_value(shifted, p, 1);
  for (std::size_t j = 0; j < mods.size(); ++j) shifted[j] = std::max(mods[j] - e, 0.0);
  const double lo = mean_value(shifted, p, 1);
  const double prop = std::max(std::abs(hi - res.value), std::abs(res.value - lo));

  const double quad = std::abs(res.value - mean_value(mods, p, 2));
  res.err_bound = prop + quad;
  return res;
}

MeanResult hardy_norm(const TruncatedSeries& f, double p, const std::vector<double>& r_grid,
                      std::size_t M) {
  if (r_grid.empty()) throw std::invalid_argument("hardy_norm: empty radius grid");
  if (!(p > 0.0)) throw std::invalid_argument("hardy_norm: requires p > 0");
  MeanResult best;
  best.value = -std::numeric_limits<double>::infinity();
  for (const double r : r_grid) {
    const MeanResult m = integral_mean(sample_circle(f, r, M), p);
    if (m.value > best.value) best = m;
  }
  return best;
}

}  // namespace discstar::circle
