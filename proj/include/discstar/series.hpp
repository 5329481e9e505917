#pragma once

#include <complex>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace discstar::series {

using cplx = std::complex<double>;

/// Coefficient envelope of an analytic function: |a_n| <= constant * (n+1)^degree * ratio^n,
/// with true coefficients vanishing beyond last_nonzero when that is set.
/// Used to certify truncation tails when a series is evaluated on |z| = r.
struct GrowthClass {
  double constant = 0.0;
  double degree = 0.0;
  double ratio = 1.0;
  std::optional<std::size_t> last_nonzero;

  static GrowthClass bounded(double c) { return {c, 0.0, 1.0, std::nullopt}; }
  static GrowthClass polynomial(double d, double c) { return {c, d, 1.0, std::nullopt}; }
  static GrowthClass geometric(double rho, double c) { return {c, 0.0, rho, std::nullopt}; }

  GrowthClass with_last_nonzero(std::size_t n) const {
    GrowthClass g = *this;
    g.last_nonzero = n;
    return g;
  }

  double envelope(std::size_t n) const;

  /// Envelope of the coefficient-wise product of two series.
  GrowthClass product(const GrowthClass& other) const;

  /// Certified bound on sum_{n >= first_index} envelope(n) * r^n.
  /// Returns +inf when the envelope does not decay at radius r.
  double tail_bound(std::size_t first_index, double r) const;

  /// "bounded", "polynomial", "geometric" or "finite"; serialization tag.
  std::string kind() const;
};

/// First N+1 Taylor coefficients of an analytic function on the unit disc.
/// Immutable after construction; the growth class is checked against the
/// stored coefficients so that tail bounds are trustworthy.
class TruncatedSeries {
 public:
  TruncatedSeries(std::vector<cplx> coeffs, GrowthClass growth);

  /// Builds with a bounded growth class whose constant is measured from the
  /// coefficients themselves.
  static TruncatedSeries measured(std::vector<cplx> coeffs);

  const std::vector<cplx>& coeffs() const { return coeffs_; }
  const GrowthClass& growth() const { return growth_; }
  std::size_t size() const { return coeffs_.size(); }
  std::size_t order() const { return coeffs_.size() - 1; }

  /// Coefficient a_n, zero beyond the truncation.
  cplx at(std::size_t n) const { return n < coeffs_.size() ? coeffs_[n] : cplx{0.0, 0.0}; }

  /// Horner evaluation of the stored polynomial part (no tail correction).
  cplx evaluate(cplx z) const;

  /// Certified bound on |f(z) - stored polynomial(z)| for |z| = r.
  double tail_bound(double r) const { return growth_.tail_bound(coeffs_.size(), r); }

  /// Same coefficients under a different (re-validated) growth class.
  TruncatedSeries with_growth(GrowthClass g) const { return TruncatedSeries(coeffs_, g); }

  /// Truncates (or zero-pads) to exactly n + 1 coefficients.
  TruncatedSeries resized(std::size_t n_coeffs) const;

 private:
  std::vector<cplx> coeffs_;
  GrowthClass growth_;
};

/// Coefficient-wise (Hadamard) product. Result length is the shorter length;
/// the growth class is the product class.
TruncatedSeries hadamard(const TruncatedSeries& f, const TruncatedSeries& g);

/// Named functions with closed-form Taylor coefficients.
enum class CatalogId {
  identity_kernel,   // 1/(1-z): unit for the Hadamard product
  koebe,             // z/(1-z)^2
  k2,                // z/(1-z^2), odd square-root transform of the Koebe function
  J,                 // 1/(1-z^2)
  inv_sq,            // 1/(1-z)^2
  one_minus_half_z,  // 1 - z/2
  one_minus_z,       // 1 - z
  strip,             // log((1+z)/(1-z))
  cayley,            // z/(1-z)
  halfplane_conv,    // z - z^2/2
};

/// Spec names used by the CLI: I, koebe, k2, J, inv_sq, one_minus_half_z,
/// one_minus_z, strip, cayley, halfplane_conv.
std::optional<CatalogId> catalog_id_from_string(const std::string& name);
std::string catalog_name(CatalogId id);
const std::vector<CatalogId>& catalog_all();

/// Exact Taylor coefficients of the named function through order n_order.
TruncatedSeries catalog(CatalogId id, std::size_t n_order);
TruncatedSeries catalog(const std::string& name, std::size_t n_order);

/// Given H with H(0)=0 and H'(0) != 0, returns the odd h with h(z)^2 = H(z^2)
/// and h'(0) = sqrt(H'(0)) (principal branch). Even-index coefficients of the
/// result are exactly zero. Output has 2*len(H) - 1 coefficients.
TruncatedSeries odd_sqrt_transform(const TruncatedSeries& H);

/// h(z)/z for h(0)=0: shifts coefficients down one index.
TruncatedSeries divide_by_z(const TruncatedSeries& h);

/// n-fold Hadamard power: coefficient k of the result is (coefficient k)^n.
TruncatedSeries iterate_convolution(const TruncatedSeries& h1, std::size_t n);

}  // namespace discstar::series
