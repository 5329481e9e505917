#include "discstar/measures.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "discstar/rng.hpp"

namespace discstar::measures {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kClassTol = 1e-12;

double reduce_angle(double phi) {
  phi = std::fmod(phi + kPi, 2.0 * kPi);
  if (phi < 0.0) phi += 2.0 * kPi;
  return phi - kPi;
}

}  // namespace

UnitCircleMeasure::UnitCircleMeasure(std::vector<Atom> atoms, std::optional<std::string> tag)
    : tag_(std::move(tag)) {
  for (auto& a : atoms) {
    if (!std::isfinite(a.angle) || !std::isfinite(std::abs(a.weight)))
      throw std::invalid_argument("UnitCircleMeasure: non-finite atom");
    a.angle = reduce_angle(a.angle);
  }
  std::sort(atoms.begin(), atoms.end(),
            [](const Atom& a, const Atom& b) { return a.angle < b.angle; });
  for (const auto& a : atoms) {
    if (!atoms_.empty() && atoms_.back().angle == a.angle)
      atoms_.back().weight += a.weight;  // canonical form: merge duplicates
    else
      atoms_.push_back(a);
  }
  for (const auto& a : atoms_) total_variation_ += std::abs(a.weight);
}

cplx UnitCircleMeasure::total_mass() const {
  cplx m{0.0, 0.0};
  for (const auto& a : atoms_) m += a.weight;
  return m;
}

UnitCircleMeasure discretized_density(const std::function<double(double)>& density,
                                      std::size_t nodes, std::string tag) {
  if (nodes == 0) throw std::invalid_argument("discretized_density: needs nodes");
  std::vector<UnitCircleMeasure::Atom> atoms;
  atoms.reserve(nodes);
  const double h = 2.0 * kPi / static_cast<double>(nodes);
  for (std::size_t j = 0; j < nodes; ++j) {
    const double phi = -kPi + h * static_cast<double>(j);
    atoms.push_back({phi, cplx{density(phi) * h, 0.0}});
  }
  return UnitCircleMeasure(std::move(atoms), std::move(tag) + "@" + std::to_string(nodes));
}

UnitCircleMeasure dirac(double angle, cplx weight) {
  return UnitCircleMeasure({{angle, weight}});
}

TruncatedSeries cauchy_transform(const UnitCircleMeasure& mu, std::size_t n_order) {
  std::vector<cplx> moments(n_order + 1, cplx{0.0, 0.0});
  for (const auto& a : mu.atoms()) {
    const cplx xi{std::cos(a.angle), std::sin(a.angle)};
    cplx xin{1.0, 0.0};
    for (std::size_t n = 0; n <= n_order; ++n) {
      moments[n] += a.weight * xin;
      xin *= xi;
    }
  }
  return TruncatedSeries(std::move(moments),
                         series::GrowthClass::bounded(mu.total_variation()));
}

RingSamples convolve_via_measure(const TruncatedSeries& f, const UnitCircleMeasure& mu, double r,
                                 std::size_t M) {
  if (!(r > 0.0 && r < 1.0))
    throw std::invalid_argument("convolve_via_measure: radius must be in (0,1)");
  if (!circle::detail::is_pow2(M) || M < 8 || M < 2 * f.size())
    throw std::invalid_argument("convolve_via_measure: M too small");

  // One Fourier synthesis per atom with the coefficients pre-rotated by
  // e^{i n phi}: f(r e^{i(t_j + phi)}) = sum_n (a_n r^n e^{i n phi}) e^{i n t_j}.
  std::vector<cplx> acc(M, cplx{0.0, 0.0});
  std::vector<cplx> work(M);
  for (const auto& atom : mu.atoms()) {
    std::fill(work.begin(), work.end(), cplx{0.0, 0.0});
    const cplx xi{std::cos(atom.angle), std::sin(atom.angle)};
    cplx twist{1.0, 0.0};
    double rn = 1.0;
    for (std::size_t n = 0; n < f.size(); ++n) {
      work[n] = f.coeffs()[n] * rn * twist;
      rn *= r;
      twist *= xi;
    }
    circle::detail::fft(work, +1);
    for (std::size_t j = 0; j < M; ++j) acc[j] += atom.weight * work[j];
  }
  return RingSamples{r, std::move(acc), mu.total_variation() * f.tail_bound(r)};
}

bool is_bound_preserving(const UnitCircleMeasure& mu) {
  return mu.total_variation() <= 1.0 + kClassTol;
}

bool is_convexity_preserving(const UnitCircleMeasure& mu) {
  double sum = 0.0;
  for (const auto& a : mu.atoms()) {
    if (std::abs(a.weight.imag()) > kClassTol) return false;
    if (a.weight.real() < -kClassTol) return false;
    sum += a.weight.real();
  }
  return std::abs(sum - 1.0) <= kClassTol;
}

UnitCircleMeasure random_measure(std::uint64_t seed, MeasureKind kind, std::size_t max_atoms) {
  if (max_atoms < 1) throw std::invalid_argument("random_measure: max_atoms must be >= 1");
  Rng rng(seed);
  const std::size_t count = 1 + static_cast<std::size_t>(rng.below(max_atoms));
  std::vector<UnitCircleMeasure::Atom> atoms;
  atoms.reserve(count);

  if (kind == MeasureKind::probability) {
    double sum = 0.0;
    for (std::size_t j = 0; j < count; ++j) {
      const double w = rng.uniform(1e-3, 1.0);
      atoms.push_back({rng.uniform(-kPi, kPi), cplx{w, 0.0}});
      sum += w;
    }
    for (auto& a : atoms) a.weight /= sum;
    return UnitCircleMeasure(std::move(atoms), "random_probability");
  }

  double tv = 0.0;
  for (std::size_t j = 0; j < count; ++j) {
    const double mag = rng.uniform(1e-3, 1.0);
    const double arg = rng.uniform(-kPi, kPi);
    atoms.push_back({rng.uniform(-kPi, kPi), std::polar(mag, arg)});
    tv += mag;
  }
  const double target = rng.uniform(1e-6, 1.0);  // total variation in (0, 1]
  for (auto& a : atoms) a.weight *= target / tv;
  return UnitCircleMeasure(std::move(atoms), "random_bound_preserving");
}

}  // namespace discstar::measures
