#include "discstar/series.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace discstar::series {

namespace {

constexpr double kEnvelopeSlack = 1e-9;  // relative slack for envelope validation
constexpr double kZeroTol = 1e-12;

}  // namespace

double GrowthClass::envelope(std::size_t n) const {
  if (last_nonzero && n > *last_nonzero) return 0.0;
  double env = constant;
  if (degree != 0.0) env *= std::pow(static_cast<double>(n + 1), degree);
  if (ratio != 1.0) env *= std::pow(ratio, static_cast<double>(n));
  return env;
}

GrowthClass GrowthClass::product(const GrowthClass& other) const {
  GrowthClass g;
  g.constant = constant * other.constant;
  g.degree = degree + other.degree;
  g.ratio = ratio * other.ratio;
  if (last_nonzero && other.last_nonzero)
    g.last_nonzero = std::min(*last_nonzero, *other.last_nonzero);
  else if (last_nonzero)
    g.last_nonzero = last_nonzero;
  else
    g.last_nonzero = other.last_nonzero;
  return g;
}

double GrowthClass::tail_bound(std::size_t first_index, double r) const {
  if (r < 0.0) throw std::invalid_argument("tail_bound: negative radius");
  if (constant == 0.0) return 0.0;
  if (last_nonzero && first_index > *last_nonzero) return 0.0;

  const double x = ratio * r;
  if (x == 0.0) return first_index == 0 ? envelope(0) : 0.0;
  if (!last_nonzero && x >= 1.0) return std::numeric_limits<double>::infinity();

  // First term in log space: constants from iterated Hadamard powers can be
  // ~1e280 while r^n is ~1e-200, so the product must not be formed naively.
  const auto nd = [](std::size_t n) { return static_cast<double>(n); };
  const double log_first = std::log(constant) + degree * std::log(nd(first_index) + 1.0) +
                           nd(first_index) * std::log(x);
  if (log_first > 700.0) return std::numeric_limits<double>::infinity();
  double term = std::exp(log_first);

  double acc = 0.0;
  std::size_t n = first_index;
  for (std::size_t guard = 0; guard < 4000000; ++guard) {
    acc += term;
    if (last_nonzero && n >= *last_nonzero) return acc;
    // Term ratio q_n is decreasing in n, so the geometric remainder cap with
    // the current q is valid for the whole remaining tail.
    const double q = x * std::pow((nd(n) + 2.0) / (nd(n) + 1.0), degree);
    if (q < 1.0) {
      const double remainder = term * q / (1.0 - q);
      if (remainder <= 1e-12 * acc + 1e-300) return acc + remainder;
    }
    term *= q;
    ++n;
    if (!std::isfinite(acc)) return std::numeric_limits<double>::infinity();
  }
  return std::numeric_limits<double>::infinity();
}

std::string GrowthClass::kind() const {
  if (last_nonzero) return "finite";
  if (ratio != 1.0) return "geometric";
  if (degree != 0.0) return "polynomial";
  return "bounded";
}

TruncatedSeries::TruncatedSeries(std::vector<cplx> coeffs, GrowthClass growth)
    : coeffs_(std::move(coeffs)), growth_(growth) {
  if (coeffs_.empty()) throw std::invalid_argument("TruncatedSeries: needs at least one coefficient");
  if (!(growth_.constant >= 0.0)) throw std::invalid_argument("TruncatedSeries: negative growth constant");
  for (std::size_t n = 0; n < coeffs_.size(); ++n) {
    const double mag = std::abs(coeffs_[n]);
    if (!std::isfinite(mag)) throw std::invalid_argument("TruncatedSeries: non-finite coefficient");
    const double env = growth_.envelope(n);
    if (mag > env * (1.0 + kEnvelopeSlack) + kZeroTol)
      throw std::invalid_argument("TruncatedSeries: coefficient exceeds growth envelope");
  }
}

TruncatedSeries TruncatedSeries::measured(std::vector<cplx> coeffs) {
  double c = 0.0;
  for (const auto& a : coeffs) c = std::max(c, std::abs(a));
  return TruncatedSeries(std::move(coeffs), GrowthClass::bounded(c));
}

cplx TruncatedSeries::evaluate(cplx z) const {
  cplx acc{0.0, 0.0};
  for (std::size_t i = coeffs_.size(); i-- > 0;) acc = acc * z + coeffs_[i];
  return acc;
}

TruncatedSeries TruncatedSeries::resized(std::size_t n_coeffs) const {
  std::vector<cplx> c(coeffs_.begin(),
                      coeffs_.begin() + std::min(n_coeffs, coeffs_.size()));
  c.resize(n_coeffs, cplx{0.0, 0.0});
  return TruncatedSeries(std::move(c), growth_);
}

TruncatedSeries hadamard(const TruncatedSeries& f, const TruncatedSeries& g) {
  const std::size_t n = std::min(f.size(), g.size());
  std::vector<cplx> c(n);
  for (std::size_t i = 0; i < n; ++i) c[i] = f.coeffs()[i] * g.coeffs()[i];
  return TruncatedSeries(std::move(c), f.growth().product(g.growth()));
}

std::optional<CatalogId> catalog_id_from_string(const std::string& name) {
  if (name == "I") return CatalogId::identity_kernel;
  if (name == "koebe") return CatalogId::koebe;
  if (name == "k2") return CatalogId::k2;
  if (name == "J") return CatalogId::J;
  if (name == "inv_sq") return CatalogId::inv_sq;
  if (name == "one_minus_half_z") return CatalogId::one_minus_half_z;
  if (name == "one_minus_z") return CatalogId::one_minus_z;
  if (name == "strip") return CatalogId::strip;
  if (name == "cayley") return CatalogId::cayley;
  if (name == "halfplane_conv") return CatalogId::halfplane_conv;
  return std::nullopt;
}

std::string catalog_name(CatalogId id) {
  switch (id) {
    case CatalogId::identity_kernel: return "I";
    case CatalogId::koebe: return "koebe";
    case CatalogId::k2: return "k2";
    case CatalogId::J: return "J";
    case CatalogId::inv_sq: return "inv_sq";
    case CatalogId::one_minus_half_z: return "one_minus_half_z";
    case CatalogId::one_minus_z: return "one_minus_z";
    case CatalogId::strip: return "strip";
    case CatalogId::cayley: return "cayley";
    case CatalogId::halfplane_conv: return "halfplane_conv";
  }
  throw std::logic_error("catalog_name: bad id");
}

const std::vector<CatalogId>& catalog_all() {
  static const std::vector<CatalogId> all = {
      CatalogId::identity_kernel, CatalogId::koebe,        CatalogId::k2,
      CatalogId::J,               CatalogId::inv_sq,       CatalogId::one_minus_half_z,
      CatalogId::one_minus_z,     CatalogId::strip,        CatalogId::cayley,
      CatalogId::halfplane_conv};
  return all;
}

TruncatedSeries catalog(CatalogId id, std::size_t n_order) {
  std::vector<cplx> c(n_order + 1, cplx{0.0, 0.0});
  GrowthClass g = GrowthClass::bounded(1.0);
  switch (id) {
    case CatalogId::identity_kernel:
      for (auto& a : c) a = 1.0;
      break;
    case CatalogId::koebe:
      for (std::size_t n = 0; n <= n_order; ++n) c[n] = static_cast<double>(n);
      g = GrowthClass::polynomial(1.0, 1.0);
      break;
    case CatalogId::k2:
      for (std::size_t n = 1; n <= n_order; n += 2) c[n] = 1.0;
      break;
    case CatalogId::J:
      for (std::size_t n = 0; n <= n_order; n += 2) c[n] = 1.0;
      break;
    case CatalogId::inv_sq:
      for (std::size_t n = 0; n <= n_order; ++n) c[n] = static_cast<double>(n + 1);
      g = GrowthClass::polynomial(1.0, 1.0);
      break;
    case CatalogId::one_minus_half_z:
      c[0] = 1.0;
      if (n_order >= 1) c[1] = -0.5;
      g = g.with_last_nonzero(1);
      break;
    case CatalogId::one_minus_z:
      c[0] = 1.0;
      if (n_order >= 1) c[1] = -1.0;
      g = g.with_last_nonzero(1);
      break;
    case CatalogId::strip:
      for (std::size_t n = 1; n <= n_order; n += 2) c[n] = 2.0 / static_cast<double>(n);
      g = GrowthClass::bounded(2.0);
      break;
    case CatalogId::cayley:
      for (std::size_t n = 1; n <= n_order; ++n) c[n] = 1.0;
      break;
    case CatalogId::halfplane_conv:
      if (n_order >= 1) c[1] = 1.0;
      if (n_order >= 2) c[2] = -0.5;
      g = g.with_last_nonzero(2);
      break;
  }
  return TruncatedSeries(std::move(c), g);
}

TruncatedSeries catalog(const std::string& name, std::size_t n_order) {
  const auto id = catalog_id_from_string(name);
  if (!id) throw std::invalid_argument("catalog: unknown function name '" + name + "'");
  return catalog(*id, n_order);
}

TruncatedSeries odd_sqrt_transform(const TruncatedSeries& H) {
  if (H.size() < 2) throw std::invalid_argument("odd_sqrt_transform: series too short");
  const double scale = std::max(1.0, std::abs(H.coeffs()[1]));
  if (std::abs(H.coeffs()[0]) > kZeroTol * scale)
    throw std::invalid_argument("odd_sqrt_transform: H(0) must vanish");
  if (std::abs(H.coeffs()[1]) <= kZeroTol)
    throw std::invalid_argument("odd_sqrt_transform: H'(0) = 0, square-root branch undefined");

  // H(w) = w * G(w);  h(z) = z * sqrt(G)(z^2).  sqrt(G) by coefficient
  // recursion: 2 s0 s_n = G_n - sum_{i=1}^{n-1} s_i s_{n-i}.
  const std::size_t gn = H.size() - 1;
  std::vector<cplx> G(gn);
  for (std::size_t i = 0; i < gn; ++i) G[i] = H.coeffs()[i + 1];

  std::vector<cplx> s(gn);
  s[0] = std::sqrt(G[0]);
  for (std::size_t n = 1; n < gn; ++n) {
    cplx conv{0.0, 0.0};
    for (std::size_t i = 1; i < n; ++i) conv += s[i] * s[n - i];
    s[n] = (G[n] - conv) / (2.0 * s[0]);
  }

  std::vector<cplx> h(2 * gn, cplx{0.0, 0.0});
  for (std::size_t m = 0; m < gn; ++m) h[2 * m + 1] = s[m];
  double c = 0.0;
  for (const auto& a : h) c = std::max(c, std::abs(a));
  return TruncatedSeries(std::move(h), GrowthClass::bounded(c));
}

TruncatedSeries divide_by_z(const TruncatedSeries& h) {
  double scale = 1.0;
  for (const auto& a : h.coeffs()) scale = std::max(scale, std::abs(a));
  if (std::abs(h.coeffs()[0]) > kZeroTol * scale)
    throw std::invalid_argument("divide_by_z: h(0) must vanish");
  if (h.size() < 2) throw std::invalid_argument("divide_by_z: series too short");

  std::vector<cplx> c(h.coeffs().begin() + 1, h.coeffs().end());
  GrowthClass g = h.growth();
  // Envelope for the shifted index: |a_{n+1}| <= C (n+2)^d rho^{n+1}
  //                                          <= (C rho 2^d) (n+1)^d rho^n.
  g.constant *= g.ratio * std::pow(2.0, g.degree);
  if (g.last_nonzero) g.last_nonzero = *g.last_nonzero == 0 ? 0 : *g.last_nonzero - 1;
  return TruncatedSeries(std::move(c), g);
}

TruncatedSeries iterate_convolution(const TruncatedSeries& h1, std::size_t n) {
  if (n < 1) throw std::invalid_argument("iterate_convolution: n must be >= 1");
  TruncatedSeries acc = h1;
  for (std::size_t i = 1; i < n; ++i) acc = hadamard(acc, h1);
  return acc;
}

}  // namespace discstar::series
