#include "discstar/loewner.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "discstar/circle.hpp"
#include "discstar/rng.hpp"

namespace discstar::loewner {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kMaxTotalTime = 50.0;
constexpr double kCertTol = 1e-8;

using State = std::vector<cplx>;  // index n holds the coefficient of z^n

// out = a * b truncated at order N; a may have leading zeros.
void truncated_mul(const State& a, const State& b, State& out) {
  const std::size_t N = out.size() - 1;
  std::fill(out.begin(), out.end(), cplx{0.0, 0.0});
  for (std::size_t i = 0; i <= N; ++i) {
    if (a[i] == cplx{0.0, 0.0}) continue;
    for (std::size_t j = 0; i + j <= N; ++j) out[i + j] += a[i] * b[j];
  }
}

// r = 1/(1 - u) as a formal series, requires u[0] == 0.
void geometric_reciprocal(const State& u, State& r) {
  const std::size_t N = u.size() - 1;
  r.assign(N + 1, cplx{0.0, 0.0});
  r[0] = cplx{1.0, 0.0};
  for (std::size_t n = 1; n <= N; ++n) {
    cplx acc{0.0, 0.0};
    for (std::size_t j = 1; j <= n; ++j) acc += u[j] * r[n - j];
    r[n] = acc;
  }
}

// Coefficient evolution of v(z,t) = e^t w(z,t) under dw/dt =
// -w (1 + kappa w) / (1 - kappa w):
//   dv/dt = -2 sum_{m>=1} kappa^m e^{-mt} v^{m+1} = -2 s v^2 / (1 - s v),
// with s = kappa e^{-t}. B_1 stays 1; the system for (B_2, ..., B_N) is
// closed and exact, so the only numerical error is from time integration.
struct CoefficientOde {
  explicit CoefficientOde(std::size_t n_order)
      : N(n_order), u(n_order + 1), r(n_order + 1), v2(n_order + 1) {}

  void rhs(double t, double kappa_angle, const State& B, State& out) {
    const cplx s = std::polar(std::exp(-t), kappa_angle);
    for (std::size_t n = 0; n <= N; ++n) u[n] = s * B[n];
    geometric_reciprocal(u, r);
    truncated_mul(B, B, v2);
    truncated_mul(v2, r, out);
    const cplx scale = -2.0 * s;
    for (std::size_t n = 0; n <= N; ++n) out[n] *= scale;
  }

  std::size_t N;
  State u, r, v2;
};

State rk4_segment(CoefficientOde& ode, State B, double t0, double t1, double kappa_angle,
                  double step) {
  const auto n_steps = static_cast<std::size_t>(std::ceil((t1 - t0) / step - 1e-12));
  const double h = (t1 - t0) / static_cast<double>(std::max<std::size_t>(n_steps, 1));
  State k1(B.size()), k2(B.size()), k3(B.size()), k4(B.size()), stage(B.size());
  double t = t0;
  for (std::size_t s = 0; s < std::max<std::size_t>(n_steps, 1); ++s) {
    ode.rhs(t, kappa_angle, B, k1);
    for (std::size_t n = 0; n < B.size(); ++n) stage[n] = B[n] + 0.5 * h * k1[n];
    ode.rhs(t + 0.5 * h, kappa_angle, stage, k2);
    for (std::size_t n = 0; n < B.size(); ++n) stage[n] = B[n] + 0.5 * h * k2[n];
    ode.rhs(t + 0.5 * h, kappa_angle, stage, k3);
    for (std::size_t n = 0; n < B.size(); ++n) stage[n] = B[n] + h * k3[n];
    ode.rhs(t + h, kappa_angle, stage, k4);
    for (std::size_t n = 0; n < B.size(); ++n)
      B[n] += (h / 6.0) * (k1[n] + 2.0 * k2[n] + 2.0 * k3[n] + k4[n]);
    t += h;
  }
  return B;
}

// Constant driving from time T on admits the closed form
//   H = e^T k_kappa(e^{-T} v(T)),   k_kappa(x) = x / (1 + kappa x)^2.
State tail_closed_form(const State& vT, double T, double tail_angle) {
  const std::size_t N = vT.size() - 1;
  const cplx kappa = std::polar(1.0, tail_angle);
  const double damp = std::exp(-T);

  State x(N + 1);
  for (std::size_t n = 0; n <= N; ++n) x[n] = damp * vT[n];

  // minus_u = -(2 kappa x + kappa^2 x^2): then 1/(1+kappa x)^2 = 1/(1 - minus_u).
  State x2(N + 1), minus_u(N + 1), recip(N + 1), H(N + 1);
  truncated_mul(x, x, x2);
  for (std::size_t n = 0; n <= N; ++n) minus_u[n] = -(2.0 * kappa * x[n] + kappa * kappa * x2[n]);
  geometric_reciprocal(minus_u, recip);
  truncated_mul(x, recip, H);
  const double grow = std::exp(T);
  for (std::size_t n = 0; n <= N; ++n) H[n] *= grow;
  return H;
}

State integrate(const Driving& d, std::size_t n_order, double step) {
  State B(n_order + 1, cplx{0.0, 0.0});
  if (n_order >= 1) B[1] = cplx{1.0, 0.0};
  CoefficientOde ode(n_order);
  for (std::size_t j = 0; j < d.segments(); ++j)
    B = rk4_segment(ode, std::move(B), d.breakpoints[j], d.breakpoints[j + 1], d.angles[j], step);
  return tail_closed_form(B, d.total_time(), d.tail_angle);
}

}  // namespace

Driving::Driving(std::vector<double> bp, std::vector<double> ang, double tail)
    : breakpoints(std::move(bp)), angles(std::move(ang)), tail_angle(tail) {
  if (breakpoints.size() != angles.size() + 1 || angles.empty())
    throw std::invalid_argument("Driving: needs m+1 breakpoints for m segments");
  if (breakpoints.front() != 0.0) throw std::invalid_argument("Driving: must start at t = 0");
  for (std::size_t j = 0; j + 1 < breakpoints.size(); ++j)
    if (!(breakpoints[j] < breakpoints[j + 1]))
      throw std::invalid_argument("Driving: breakpoints must be strictly increasing");
  if (!(breakpoints.back() <= kMaxTotalTime))
    throw std::invalid_argument("Driving: total time exceeds 50");
  for (const double a : angles)
    if (!std::isfinite(a)) throw std::invalid_argument("Driving: non-finite angle");
  if (!std::isfinite(tail_angle)) throw std::invalid_argument("Driving: non-finite tail angle");
}

Driving Driving::constant(double angle, double total_time) {
  return Driving({0.0, total_time}, {angle}, angle);
}

Driving Driving::rotated(double beta) const {
  std::vector<double> a = angles;
  for (double& x : a) x += beta;
  return Driving(breakpoints, std::move(a), tail_angle + beta);
}

TruncatedSeries loewner_coefficients(const Driving& d, std::size_t n_order, double step) {
  if (n_order < 1 || n_order > 64)
    throw std::invalid_argument("loewner_coefficients: order must be in [1, 64]");
  if (!(step > 0.0 && step <= 1e-2))
    throw std::invalid_argument("loewner_coefficients: step must be in (0, 1e-2]");

  const State coarse = integrate(d, n_order, step);
  const State fine = integrate(d, n_order, step / 2.0);
  double diff = 0.0;
  for (std::size_t n = 0; n <= n_order; ++n) diff = std::max(diff, std::abs(coarse[n] - fine[n]));
  if (diff > kCertTol)
    throw std::runtime_error("loewner_coefficients: step-halving certification failed");

  // Class S coefficients satisfy |A_n| <= n, so the polynomial envelope
  // (n+1) * 1 covers them with room for integration noise.
  return TruncatedSeries(fine, series::GrowthClass::polynomial(1.0, 1.0));
}

cplx second_coefficient_closed_form(const Driving& d) {
  // B_2' = -2 kappa e^{-t}; integrate exactly over segments and the tail.
  cplx b2{0.0, 0.0};
  for (std::size_t j = 0; j < d.segments(); ++j) {
    const cplx kappa = std::polar(1.0, d.angles[j]);
    b2 -= 2.0 * kappa * (std::exp(-d.breakpoints[j]) - std::exp(-d.breakpoints[j + 1]));
  }
  b2 -= 2.0 * std::polar(1.0, d.tail_angle) * std::exp(-d.total_time());
  return b2;
}

cplx third_coefficient_closed_form(const Driving& d) {
  // On a constant segment, with beta = B_2(s) - 2 kappa e^{-s}:
  //   B_3(u) = B_3(s) - 4 kappa beta (e^{-s} - e^{-u}) - 5 kappa^2 (e^{-2s} - e^{-2u}).
  cplx b2{0.0, 0.0}, b3{0.0, 0.0};
  for (std::size_t j = 0; j < d.segments(); ++j) {
    const cplx kappa = std::polar(1.0, d.angles[j]);
    const double es = std::exp(-d.breakpoints[j]);
    const double eu = std::exp(-d.breakpoints[j + 1]);
    const cplx beta = b2 - 2.0 * kappa * es;
    b3 += -4.0 * kappa * beta * (es - eu) - 5.0 * kappa * kappa * (es * es - eu * eu);
    b2 -= 2.0 * kappa * (es - eu);
  }
  const cplx kappa = std::polar(1.0, d.tail_angle);
  const double eT = std::exp(-d.total_time());
  b3 += -4.0 * kappa * b2 * eT + 3.0 * kappa * kappa * eT * eT;
  return b3;
}

cplx odd_a5_from_coefficients(cplx a2, cplx a3) { return (a3 - a2 * a2 / 4.0) / 2.0; }

double recommended_step(std::size_t n_order) {
  if (n_order <= 16) return 5e-3;
  if (n_order <= 32) return 1e-3;
  return 5e-4;
}

SanityVerdict univalence_sanity(const TruncatedSeries& H, double r, std::size_t M) {
  if (!(r > 0.0 && r <= 0.95))
    throw std::invalid_argument("univalence_sanity: radius must be in (0, 0.95]");

  if (std::abs(H.at(0)) > 1e-9) return {false, "H(0) != 0"};
  if (std::abs(H.at(1) - cplx{1.0, 0.0}) > 1e-6) return {false, "H'(0) != 1"};

  const circle::RingSamples s = circle::sample_circle(H, r, M);

  // Pairwise distortion screen: distant preimages must not map to nearly the
  // same value. The floor is a fraction of the class-S derivative lower
  // bound (1-r)/(1+r)^3, which also limits how close legitimate boundary
  // crowding can bring sample pairs.
  const double floor = 0.1 * (1.0 - r) / std::pow(1.0 + r, 3.0);
  const double floor2 = floor * floor;
  std::vector<cplx> z(M);
  for (std::size_t j = 0; j < M; ++j) {
    const double t = 2.0 * kPi * static_cast<double>(j) / static_cast<double>(M);
    z[j] = std::polar(r, t);
  }
  for (std::size_t i = 0; i < M; ++i) {
    for (std::size_t j = i + 1; j < M; ++j) {
      const double df2 = std::norm(s.values[i] - s.values[j]);
      const double dz2 = std::norm(z[i] - z[j]);
      if (df2 < floor2 * dz2) return {false, "sample collision beyond distortion floor"};
    }
  }

  // Winding number around images of an interior circle must be exactly 1.
  for (std::size_t k = 0; k < 16; ++k) {
    const cplx probe = H.evaluate(std::polar(0.3 * r, 2.0 * kPi * static_cast<double>(k) / 16.0));
    double total = 0.0;
    for (std::size_t j = 0; j < M; ++j) {
      const cplx a = s.values[j] - probe;
      const cplx b = s.values[(j + 1) % M] - probe;
      if (std::abs(a) < 1e-12 || std::abs(b) < 1e-12)
        return {false, "boundary curve touches interior probe"};
      total += std::arg(b / a);
    }
    const auto winding = static_cast<long>(std::lround(total / (2.0 * kPi)));
    if (winding != 1) return {false, "winding number " + std::to_string(winding) + " != 1"};
  }
  return {true, ""};
}

namespace {

// Search space: x = (log d_1..log d_m, alpha_1..alpha_m, alpha_tail).
struct SearchSpace {
  std::size_t m;

  std::size_t dim() const { return 2 * m + 1; }

  bool valid(const std::vector<double>& x) const {
    double total = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
      if (x[j] < -9.0 || x[j] > 3.6) return false;
      total += std::exp(x[j]);
    }
    return total <= 40.0;
  }

  Driving to_driving(const std::vector<double>& x) const {
    std::vector<double> bp(m + 1, 0.0);
    for (std::size_t j = 0; j < m; ++j) bp[j + 1] = bp[j] + std::exp(x[j]);
    std::vector<double> ang(x.begin() + static_cast<std::ptrdiff_t>(m),
                            x.begin() + static_cast<std::ptrdiff_t>(2 * m));
    return Driving(std::move(bp), std::move(ang), x[2 * m]);
  }
};

struct Tracker {
  std::size_t budget;
  std::size_t used = 0;
  double best = -1.0;
  std::vector<double> best_x;
  std::vector<double> trace;

  bool exhausted() const { return used >= budget; }
};

double evaluate(const SearchSpace& space, const std::vector<double>& x, Tracker& tr) {
  ++tr.used;
  double value = -1.0;
  if (space.valid(x)) {
    const Driving d = space.to_driving(x);
    const cplx a5 = odd_a5_from_coefficients(second_coefficient_closed_form(d),
                                             third_coefficient_closed_form(d));
    value = std::abs(a5);
  }
  if (value > tr.best) {
    tr.best = value;
    tr.best_x = x;
  }
  tr.trace.push_back(tr.best);
  return value;
}

// Deterministic Nelder-Mead on -objective; stops when the shared budget runs
// out or the simplex collapses.
void nelder_mead(const SearchSpace& space, std::vector<double> x0, std::size_t max_evals,
                 Tracker& tr) {
  const std::size_t n = space.dim();
  std::vector<std::vector<double>> pts(n + 1, x0);
  std::vector<double> vals(n + 1);
  for (std::size_t i = 0; i < n; ++i) pts[i + 1][i] += 0.25;
  std::size_t local = 0;
  const auto eval = [&](const std::vector<double>& x) {
    ++local;
    return evaluate(space, x, tr);
  };
  for (std::size_t i = 0; i <= n && !tr.exhausted() && local < max_evals; ++i)
    vals[i] = eval(pts[i]);

  while (!tr.exhausted() && local < max_evals) {
    // order descending by value (maximization)
    std::vector<std::size_t> idx(n + 1);
    for (std::size_t i = 0; i <= n; ++i) idx[i] = i;
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
      if (vals[a] != vals[b]) return vals[a] > vals[b];
      return a < b;
    });
    const std::size_t worst = idx[n];
    const std::size_t second_worst = idx[n - 1];
    const std::size_t best = idx[0];

    std::vector<double> centroid(n, 0.0);
    for (std::size_t i = 0; i <= n; ++i) {
      if (i == worst) continue;
      for (std::size_t k = 0; k < n; ++k) centroid[k] += pts[i][k];
    }
    for (double& c : centroid) c /= static_cast<double>(n);

    const auto blend = [&](double coeff) {
      std::vector<double> x(n);
      for (std::size_t k = 0; k < n; ++k)
        x[k] = centroid[k] + coeff * (centroid[k] - pts[worst][k]);
      return x;
    };

    const std::vector<double> xr = blend(1.0);
    const double fr = eval(xr);
    if (fr > vals[best]) {
      const std::vector<double> xe = blend(2.0);
      const double fe = eval(xe);
      if (fe > fr) {
        pts[worst] = xe;
        vals[worst] = fe;
      } else {
        pts[worst] = xr;
        vals[worst] = fr;
      }
    } else if (fr > vals[second_worst]) {
      pts[worst] = xr;
      vals[worst] = fr;
    } else {
      const std::vector<double> xc = blend(-0.5);
      const double fc = eval(xc);
      if (fc > vals[worst]) {
        pts[worst] = xc;
        vals[worst] = fc;
      } else {
        for (std::size_t i = 0; i <= n; ++i) {
          if (i == best) continue;
          for (std::size_t k = 0; k < n; ++k)
            pts[i][k] = pts[best][k] + 0.5 * (pts[i][k] - pts[best][k]);
          if (tr.exhausted() || local >= max_evals) return;
          vals[i] = eval(pts[i]);
        }
      }
    }

    double spread = 0.0;
    for (std::size_t i = 0; i <= n; ++i) spread = std::max(spread, std::abs(vals[i] - vals[best]));
    if (spread < 1e-13) return;
  }
}

}  // namespace

FeketeSzegoResult fekete_szego_search(std::size_t m_segments, std::size_t budget,
                                      std::uint64_t seed) {
  if (m_segments < 2) throw std::invalid_argument("fekete_szego_search: needs >= 2 segments");
  if (budget < 50) throw std::invalid_argument("fekete_szego_search: budget too small");

  const SearchSpace space{m_segments};
  Tracker tr;
  tr.budget = budget;
  Rng rng(seed ^ 0x5eedf00dULL);

  // Baseline: constant driving (the boundary case |a5| = 1).
  {
    std::vector<double> x(space.dim(), 0.0);
    for (std::size_t j = 0; j < m_segments; ++j) x[j] = std::log(1.0);
    evaluate(space, x, tr);
  }

  // Seeded exploration over durations and angle ramps.
  const std::size_t n_random = budget * 2 / 5;
  while (tr.used < n_random && !tr.exhausted()) {
    std::vector<double> x(space.dim());
    for (std::size_t j = 0; j < m_segments; ++j) x[j] = rng.uniform(std::log(0.05), std::log(4.0));
    for (std::size_t j = m_segments; j < space.dim(); ++j) x[j] = rng.uniform(-kPi, kPi);
    evaluate(space, x, tr);
  }

  // Refine from the best point found, restarting while budget remains.
  while (!tr.exhausted()) {
    std::vector<double> x0 = tr.best_x;
    nelder_mead(space, x0, (budget - tr.used) / 2 + 32, tr);
    if (tr.exhausted()) break;
    // Perturbed restart around the incumbent.
    std::vector<double> xp = tr.best_x;
    for (double& v : xp) v += rng.uniform(-0.2, 0.2);
    nelder_mead(space, xp, (budget - tr.used) / 2 + 32, tr);
  }

  FeketeSzegoResult res{
      space.to_driving(tr.best_x),
      TruncatedSeries({cplx{0.0, 0.0}, cplx{1.0, 0.0}}, series::GrowthClass::polynomial(1.0, 1.0)),
      TruncatedSeries({cplx{0.0, 0.0}, cplx{1.0, 0.0}}, series::GrowthClass::bounded(1.0)),
      TruncatedSeries({cplx{1.0, 0.0}}, series::GrowthClass::bounded(1.0)),
      cplx{0.0, 0.0},
      false,
      tr.used,
      std::move(tr.trace)};

  res.H = loewner_coefficients(res.driving, 64, recommended_step(64));
  res.h = series::odd_sqrt_transform(res.H);
  res.h1 = odd_transform_ratio(res.H);
  res.a5 = res.h.at(5);
  res.success = std::abs(res.a5) > 1.001;
  return res;
}

TruncatedSeries odd_transform_ratio(const TruncatedSeries& H) {
  const TruncatedSeries h1 = series::divide_by_z(series::odd_sqrt_transform(H));
  double c = kOddCoefficientCeiling;
  for (const auto& a : h1.coeffs()) c = std::max(c, std::abs(a));
  return h1.with_growth(series::GrowthClass::bounded(c));
}

const Driving& default_driving() {
  // Output of fekete_szego_search(3, 2000, 0); regenerate with
  // `discstar loewner search --save`.
  static const Driving d = fekete_szego_search(3, 2000, 0).driving;
  return d;
}

}  // namespace discstar::loewner
