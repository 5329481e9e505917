#include "discstar/star.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace discstar::star {

namespace {

constexpr double kPi = std::numbers::pi;

// Cumulative integral of the decreasing rearrangement, evaluated at measure
// mu in [0, 2*pi]. prefix[j] holds the sum of the j largest samples; the
// fractional cell is linearly interpolated, which realizes the supremum over
// sample subsets of the given measure.
double rearranged_cumulative(const std::vector<double>& sorted_desc,
                             const std::vector<double>& prefix, double cell, double mu) {
  const double cells = mu / cell;
  const auto full = static_cast<std::size_t>(std::min(
      std::floor(cells), static_cast<double>(sorted_desc.size())));
  double value = prefix[full] * cell;
  if (full < sorted_desc.size()) {
    const double frac = mu - static_cast<double>(full) * cell;
    value += frac * sorted_desc[full];
  }
  return value;
}

std::vector<double> profile_values(const std::vector<double>& samples, std::size_t K,
                                   double* circle_integral) {
  const std::size_t M = samples.size();
  const double cell = 2.0 * kPi / static_cast<double>(M);

  std::vector<double> sorted = samples;
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  std::vector<double> prefix(M + 1, 0.0);
  for (std::size_t j = 0; j < M; ++j) prefix[j + 1] = prefix[j] + sorted[j];

  std::vector<double> values(K + 1);
  for (std::size_t k = 0; k <= K; ++k) {
    const double theta = kPi * static_cast<double>(k) / static_cast<double>(K);
    values[k] = rearranged_cumulative(sorted, prefix, cell, 2.0 * theta);
  }
  if (circle_integral) *circle_integral = prefix[M] * cell;
  return values;
}

}  // namespace

StarProfile star_profile(const RealRingSamples& u, std::size_t K) {
  if (K < 2) throw std::invalid_argument("star_profile: grid too small");
  if (u.values.size() < 8 || u.values.size() % 2 != 0)
    throw std::invalid_argument("star_profile: needs an even sample count >= 8");
  for (const double v : u.values)
    if (!std::isfinite(v)) throw std::invalid_argument("star_profile: non-finite sample");

  StarProfile p;
  p.r = u.r;
  p.thetas.resize(K + 1);
  for (std::size_t k = 0; k <= K; ++k)
    p.thetas[k] = kPi * static_cast<double>(k) / static_cast<double>(K);

  p.values = profile_values(u.values, K, &p.circle_integral);

  // Observed rearrangement discretization error: rebuild from every other
  // sample and take the largest grid difference.
  std::vector<double> half;
  half.reserve(u.values.size() / 2);
  for (std::size_t j = 0; j < u.values.size(); j += 2) half.push_back(u.values[j]);
  const std::vector<double> coarse = profile_values(half, K, nullptr);
  double disc = 0.0;
  for (std::size_t k = 0; k <= K; ++k) disc = std::max(disc, std::abs(p.values[k] - coarse[k]));

  p.err_bound = 2.0 * kPi * u.err_bound + disc;
  return p;
}

StarVerdict star_leq(const StarProfile& u_star, const StarProfile& v_star, double margin) {
  if (u_star.thetas.size() != v_star.thetas.size())
    throw std::invalid_argument("star_leq: mismatched theta grids");
  if (u_star.r != v_star.r) throw std::invalid_argument("star_leq: mismatched radii");

  StarVerdict verdict;
  verdict.max_gap = -std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < u_star.values.size(); ++k) {
    const double gap = u_star.values[k] - v_star.values[k];
    if (gap > verdict.max_gap) {
      verdict.max_gap = gap;
      verdict.index = k;
      verdict.theta = u_star.thetas[k];
    }
  }
  verdict.margin = margin + u_star.err_bound + v_star.err_bound;
  if (verdict.max_gap > verdict.margin)
    verdict.order = StarOrder::fails;
  else if (verdict.max_gap <= -verdict.margin)
    verdict.order = StarOrder::holds;
  else
    verdict.order = StarOrder::holds_within_tol;
  return verdict;
}

double default_star_margin(const StarProfile& u_star, const StarProfile& v_star) {
  // Total failure threshold becomes 10x the combined error bounds, since
  // star_leq adds the combined bounds once on top of the margin.
  return 9.0 * (u_star.err_bound + v_star.err_bound) + 1e-13;
}

StarProfile reflect_negate(const StarProfile& u_star) {
  StarProfile out;
  out.r = u_star.r;
  out.thetas = u_star.thetas;
  out.circle_integral = -u_star.circle_integral;
  out.err_bound = u_star.err_bound;
  const std::size_t K = u_star.values.size() - 1;
  out.values.resize(K + 1);
  for (std::size_t k = 0; k <= K; ++k)
    out.values[k] = -u_star.circle_integral + u_star.values[K - k];
  return out;
}

bool symmetric_decreasing_check(const RealRingSamples& u, double tol) {
  const std::size_t M = u.values.size();
  for (std::size_t j = 1; j < M; ++j) {
    if (std::abs(u.values[j] - u.values[M - j]) > tol) return false;
  }
  for (std::size_t j = 0; j + 1 <= M / 2; ++j) {
    if (u.values[j + 1] > u.values[j] + tol) return false;
  }
  return true;
}

std::vector<PhiSpec> default_phi_family(const RealRingSamples& u, const RealRingSamples& v) {
  std::vector<PhiSpec> family;
  for (const double p : {0.25, 0.5, 1.0, 2.0, 4.0}) {
    family.push_back(PhiSpec{
        "exp(" + std::to_string(p) + "x)",
        [p](double x) { return std::exp(p * x); },
        [p](double, double hi) { return p * std::exp(p * hi); }});
  }
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (const double x : u.values) lo = std::min(lo, x), hi = std::max(hi, x);
  for (const double x : v.values) lo = std::min(lo, x), hi = std::max(hi, x);
  for (const double q : {0.0, 0.25, 0.5, 0.75}) {
    const double c = lo + q * (hi - lo);
    family.push_back(PhiSpec{"hinge(" + std::to_string(c) + ")",
                             [c](double x) { return std::max(x - c, 0.0); },
                             [](double, double) { return 1.0; }});
  }
  return family;
}

std::vector<PhiVerdict> phi_means_compare(const RealRingSamples& u, const RealRingSamples& v,
                                          const std::vector<PhiSpec>& phi_family) {
  const auto range = [](const RealRingSamples& s) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (const double x : s.values) lo = std::min(lo, x), hi = std::max(hi, x);
    return std::pair<double, double>{lo, hi};
  };
  const auto [ulo, uhi] = range(u);
  const auto [vlo, vhi] = range(v);

  std::vector<PhiVerdict> verdicts;
  verdicts.reserve(phi_family.size());
  for (const auto& phi : phi_family) {
    PhiVerdict pv;
    pv.phi_name = phi.name;
    double lhs = 0.0, rhs = 0.0;
    for (const double x : u.values) lhs += phi.fn(x);
    for (const double x : v.values) rhs += phi.fn(x);
    pv.lhs = lhs * 2.0 * kPi / static_cast<double>(u.values.size());
    pv.rhs = rhs * 2.0 * kPi / static_cast<double>(v.values.size());
    const double slope_u = phi.slope_bound(ulo - u.err_bound, uhi + u.err_bound);
    const double slope_v = phi.slope_bound(vlo - v.err_bound, vhi + v.err_bound);
    pv.err_budget = 2.0 * kPi * (slope_u * u.err_bound + slope_v * v.err_bound) + 1e-12;
    pv.holds = pv.lhs <= pv.rhs + pv.err_budget;
    verdicts.push_back(std::move(pv));
  }
  return verdicts;
}

}  // namespace discstar::star
