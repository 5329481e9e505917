#include "discstar/verify.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <numbers>
#include <stdexcept>

#include "discstar/circle.hpp"
#include "discstar/json_io.hpp"
#include "discstar/loewner.hpp"
#include "discstar/measures.hpp"
#include "discstar/rng.hpp"
#include "discstar/star.hpp"

namespace discstar::verify {

namespace {

namespace fs = std::filesystem;
using circle::MeanResult;
using circle::RealRingSamples;
using circle::RingSamples;
using measures::UnitCircleMeasure;
using series::CatalogId;
using series::cplx;
using series::TruncatedSeries;
using star::StarOrder;
using star::StarProfile;
using star::StarVerdict;

constexpr double kPi = std::numbers::pi;

// ---------------------------------------------------------------------------
// Plumbing

void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  for (std::size_t i = 0; i < header.size(); ++i) out << (i ? "," : "") << header[i];
  out << "\n";
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << row[i];
    out << "\n";
  }
}

std::string d2s(double x) { return io::csv_double(x); }

std::string table_path(const RunConfig& cfg, const std::string& name) {
  fs::create_directories(cfg.output_dir);
  return (fs::path(cfg.output_dir) / name).string();
}

// Radius-adaptive resolution: near the boundary the default truncation tail
// is no longer small, so catalog series are refined there.
struct Sampler {
  explicit Sampler(const RunConfig& cfg) : cfg_(cfg) {}

  std::pair<std::size_t, std::size_t> resolution(double r) const {
    if (r <= 0.9 + 1e-12) return {cfg_.n_coeffs, cfg_.fft_size};
    const std::size_t n = std::max<std::size_t>(cfg_.n_coeffs, 2048);
    std::size_t m = cfg_.fft_size;
    while (m < 2 * (n + 1)) m <<= 1;
    return {n, m};
  }

  const TruncatedSeries& catalog_at(CatalogId id, std::size_t n_order) {
    const auto key = std::make_pair(id, n_order);
    auto it = cache_.find(key);
    if (it == cache_.end())
      it = cache_.emplace(key, series::catalog(id, n_order)).first;
    return it->second;
  }

  RingSamples sample(CatalogId id, double r) {
    const auto [n, m] = resolution(r);
    return circle::sample_circle(catalog_at(id, n), r, m);
  }

  RingSamples sample(const TruncatedSeries& f, double r) const {
    return circle::sample_circle(f, r, fft_for(f, r));
  }

  RingSamples convolve(CatalogId id, const UnitCircleMeasure& mu, double r) {
    const auto [n, m] = resolution(r);
    return measures::convolve_via_measure(catalog_at(id, n), mu, r, m);
  }

  RingSamples convolve(const TruncatedSeries& f, const UnitCircleMeasure& mu, double r) const {
    return measures::convolve_via_measure(f, mu, r, fft_for(f, r));
  }

  std::size_t fft_for(const TruncatedSeries& f, double r) const {
    std::size_t m = std::max(resolution(r).second, cfg_.fft_size);
    while (m < 2 * f.size()) m <<= 1;
    return m;
  }

 private:
  const RunConfig& cfg_;
  std::map<std::pair<CatalogId, std::size_t>, TruncatedSeries> cache_;
};

StarVerdict compare_star(const StarProfile& u, const StarProfile& v, double factor) {
  const double combined = u.err_bound + v.err_bound;
  return star::star_leq(u, v, (factor - 1.0) * combined + 1e-13);
}

double max_adjacent_modulus_diff(const RingSamples& s) {
  double m = 0.0;
  const std::size_t n = s.values.size();
  for (std::size_t j = 0; j < n; ++j)
    m = std::max(m, std::abs(std::abs(s.values[j]) - std::abs(s.values[(j + 1) % n])));
  return m;
}

// Witness for the largest observed gap; keeps comparisons auditable even
// when a scenario passes everywhere.
struct GapTracker {
  Witness worst;
  double score = -std::numeric_limits<double>::infinity();

  void offer(Witness w) {
    const double s = w.gap - w.err;
    if (s > score) {
      score = s;
      worst = w;
    }
  }
};

// ---------------------------------------------------------------------------
// Convex hull containment (range of the convolution inside the hull of the
// range of f).

struct ConvexHull {
  std::vector<cplx> v;  // vertices, counterclockwise

  static double cross(cplx o, cplx a, cplx b) {
    return (a.real() - o.real()) * (b.imag() - o.imag()) -
           (a.imag() - o.imag()) * (b.real() - o.real());
  }

  static ConvexHull build(std::vector<cplx> pts) {
    std::sort(pts.begin(), pts.end(), [](cplx a, cplx b) {
      if (a.real() != b.real()) return a.real() < b.real();
      return a.imag() < b.imag();
    });
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    const std::size_t n = pts.size();
    if (n < 3) return ConvexHull{pts};
    std::vector<cplx> hull(2 * n);
    std::size_t k = 0;
    for (std::size_t i = 0; i < n; ++i) {  // lower
      while (k >= 2 && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0.0) --k;
      hull[k++] = pts[i];
    }
    const std::size_t lower = k + 1;
    for (std::size_t i = n - 1; i-- > 0;) {  // upper
      while (k >= lower && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0.0) --k;
      hull[k++] = pts[i];
    }
    hull.resize(k - 1);
    return ConvexHull{std::move(hull)};
  }

  static double segment_distance(cplx a, cplx b, cplx p) {
    const cplx ab = b - a;
    const double len2 = std::norm(ab);
    if (len2 == 0.0) return std::abs(p - a);
    double t = ((p.real() - a.real()) * ab.real() + (p.imag() - a.imag()) * ab.imag()) / len2;
    t = std::clamp(t, 0.0, 1.0);
    return std::abs(p - (a + t * ab));
  }

  double outside_distance(cplx p) const {
    if (v.empty()) return std::abs(p);
    if (v.size() == 1) return std::abs(p - v[0]);
    if (v.size() == 2) return segment_distance(v[0], v[1], p);
    bool inside = true;
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (cross(v[i], v[(i + 1) % v.size()], p) < 0.0) {
        inside = false;
        break;
      }
    }
    if (inside) return 0.0;
    double d = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < v.size(); ++i)
      d = std::min(d, segment_distance(v[i], v[(i + 1) % v.size()], p));
    return d;
  }
};

TruncatedSeries rotated_koebe(double beta, std::size_t n_order) {
  std::vector<cplx> c(n_order + 1, cplx{0.0, 0.0});
  for (std::size_t n = 1; n <= n_order; ++n)
    c[n] = static_cast<double>(n) * std::polar(1.0, static_cast<double>(n - 1) * beta);
  return TruncatedSeries(std::move(c), series::GrowthClass::polynomial(1.0, 1.0));
}

loewner::Driving resolve_driving(const RunConfig& cfg) {
  if (!cfg.driving_path.empty())
    return io::driving_from_json(io::load_json_file(cfg.driving_path));
  return loewner::default_driving();
}

}  // namespace

std::string status_name(Status s) {
  switch (s) {
    case Status::reproduced: return "reproduced";
    case Status::violated: return "violated";
    case Status::inconclusive: return "inconclusive";
  }
  throw std::logic_error("status_name: bad status");
}

Status expected_status(const std::string& scenario) {
  if (scenario == "q1" || scenario == "q2") return Status::violated;
  return Status::reproduced;
}

const std::vector<std::string>& scenario_names() {
  static const std::vector<std::string> names = {"thmA", "baernstein", "q1", "q2", "steiner"};
  return names;
}

// ---------------------------------------------------------------------------
// thmA: M_p(r, f * F) <= M_p(r, f) for bound-preserving F, p >= 1.

Verdict run_bound_preserving_means(const RunConfig& cfg) {
  Verdict v;
  v.scenario = "thmA";
  v.seed = cfg.seed;
  Sampler sampler(cfg);
  const std::vector<double> ps = {1.0, 1.5, 2.0, 4.0, circle::kInfinityP};

  std::size_t violations = 0;
  GapTracker tracker;
  std::map<std::pair<double, double>, std::pair<double, double>> worst_by_rp;  // (r,p) -> (gap, err)

  const auto check_pair = [&](const RingSamples& conv, const RingSamples& base, double r) {
    for (const double p : ps) {
      const MeanResult mc = circle::integral_mean(conv, p);
      const MeanResult mf = circle::integral_mean(base, p);
      double slack = mc.err_bound + mf.err_bound + cfg.mean_slack;
      if (p == circle::kInfinityP) slack += 0.5 * max_adjacent_modulus_diff(base);
      const double gap = mc.value - mf.value;
      if (gap > slack) ++violations;
      Witness w;
      w.r = r;
      w.p = p;
      w.gap = gap;
      w.err = slack;
      tracker.offer(w);
      auto& cell = worst_by_rp[{r, p}];
      if (gap - slack > cell.first - cell.second) cell = {gap, slack};
    }
  };

  // Identity measure: exact equality case.
  const UnitCircleMeasure delta = measures::dirac(0.0);
  for (const double r : cfg.r_grid)
    check_pair(sampler.convolve(CatalogId::koebe, delta, r), sampler.sample(CatalogId::koebe, r), r);

  // The explicit convexity-preserving convolver mapping 1/(1-z)^2 to 1 - z.
  const UnitCircleMeasure hann = measures::discretized_density(
      [](double t) { return (1.0 - std::cos(t)) / (2.0 * kPi); }, 1024, "(1-cos)/2pi");
  for (const double r : cfg.r_grid)
    check_pair(sampler.convolve(CatalogId::inv_sq, hann, r), sampler.sample(CatalogId::inv_sq, r), r);

  // Seeded random trials.
  const Rng root(cfg.seed);
  const auto& all = series::catalog_all();
  for (std::size_t trial = 0; trial < cfg.bound_preserving_trials; ++trial) {
    Rng rng = root.fork(trial);
    const CatalogId f_id = all[rng.below(all.size())];
    const UnitCircleMeasure mu =
        measures::random_measure(rng.next_u64(), measures::MeasureKind::bound_preserving, 8);
    for (const double r : cfg.r_grid)
      check_pair(sampler.convolve(f_id, mu, r), sampler.sample(f_id, r), r);
  }

  std::vector<std::vector<std::string>> rows;
  for (const auto& [key, cell] : worst_by_rp)
    rows.push_back({d2s(key.first), d2s(key.second), d2s(cell.first), d2s(cell.second)});
  const std::string table = table_path(cfg, "thmA_worst_gaps.csv");
  write_csv(table, {"r", "p", "max_gap", "err_budget"}, rows);
  v.tables.push_back(table);

  v.details["trials"] = static_cast<double>(cfg.bound_preserving_trials);
  v.details["violations"] = static_cast<double>(violations);
  v.witnesses.push_back(tracker.worst);
  v.status = violations == 0 ? Status::reproduced : Status::violated;
  return v;
}

// ---------------------------------------------------------------------------
// baernstein: star domination by the Koebe function over univalent catalog
// members, the means it implies, and the subordination chain h1 -> J -> I.

Verdict run_koebe_star_domination(const RunConfig& cfg) {
  Verdict v;
  v.scenario = "baernstein";
  v.seed = cfg.seed;
  Sampler sampler(cfg);

  std::size_t failures = 0;
  GapTracker tracker;
  std::vector<std::vector<std::string>> rows;

  struct Member {
    std::string name;
    TruncatedSeries f;
  };
  const auto [n_hi, m_hi] = sampler.resolution(0.99);
  std::vector<Member> members;
  members.push_back({"koebe", series::catalog(CatalogId::koebe, n_hi)});
  members.push_back({"cayley", series::catalog(CatalogId::cayley, n_hi)});
  members.push_back({"halfplane_conv", series::catalog(CatalogId::halfplane_conv, n_hi)});
  members.push_back({"koebe_rot_pi_3", rotated_koebe(kPi / 3.0, n_hi)});
  members.push_back({"koebe_rot_pi", rotated_koebe(kPi, n_hi)});

  const TruncatedSeries koebe = series::catalog(CatalogId::koebe, n_hi);
  const TruncatedSeries koebe_ratio = series::divide_by_z(koebe);  // 1/(1-z)^2
  const std::vector<double> mean_ps = {-1.0, -0.5, 0.5, 1.0, 2.0};

  const auto record = [&](const std::string& name, double r, const std::string& check, double gap,
                          double err) {
    rows.push_back({name, d2s(r), check, d2s(gap), d2s(err)});
    Witness w;
    w.r = r;
    w.gap = gap;
    w.err = err;
    tracker.offer(w);
  };

  for (const auto& member : members) {
    const TruncatedSeries member_ratio = series::divide_by_z(member.f);
    for (const double r : cfg.r_grid) {
      const RingSamples sf = sampler.sample(member.f, r);
      const RingSamples sk = sampler.sample(koebe, r);
      const StarProfile pu = star::star_profile(circle::log_abs(sf), cfg.theta_points);
      const StarProfile pv = star::star_profile(circle::log_abs(sk), cfg.theta_points);

      const StarVerdict plus = compare_star(pu, pv, cfg.star_margin_factor);
      if (plus.order == StarOrder::fails) ++failures;
      record(member.name, r, "star_plus", plus.max_gap, plus.margin);

      const StarVerdict minus =
          compare_star(star::reflect_negate(pu), star::reflect_negate(pv), cfg.star_margin_factor);
      if (minus.order == StarOrder::fails) ++failures;
      record(member.name, r, "star_minus", minus.max_gap, minus.margin);

      const RingSamples sf_ratio = sampler.sample(member_ratio, r);
      const RingSamples sk_ratio = sampler.sample(koebe_ratio, r);
      for (const double p : mean_ps) {
        double gap, slack;
        if (p > 0.0) {
          const MeanResult a = circle::integral_mean(sf, p);
          const MeanResult b = circle::integral_mean(sk, p);
          gap = a.value - b.value;  // must be <= 0 within slack
          slack = a.err_bound + b.err_bound + cfg.mean_slack;
        } else {
          // Negative p compares the zero-free ratios f/z vs k/z; the 1/p
          // power flips the direction, so domination means M_p(f/z) >= M_p(k/z).
          const MeanResult a = circle::integral_mean(sf_ratio, p);
          const MeanResult b = circle::integral_mean(sk_ratio, p);
          gap = b.value - a.value;
          slack = a.err_bound + b.err_bound + cfg.mean_slack;
        }
        if (gap > slack) ++failures;
        Witness w;
        w.r = r;
        w.p = p;
        w.gap = gap;
        w.err = slack;
        tracker.offer(w);
      }
    }
  }

  // Subordination chain: (log|J|)* <= (log|I|)* and (log|h1|)* <= (log|I|)*.
  const TruncatedSeries h1 = loewner::odd_transform_ratio(
      loewner::loewner_coefficients(resolve_driving(cfg), 64, loewner::recommended_step(64)));
  for (const double r : cfg.r_grid) {
    const StarProfile pI =
        star::star_profile(circle::log_abs(sampler.sample(CatalogId::identity_kernel, r)),
                           cfg.theta_points);
    const StarProfile pJ = star::star_profile(circle::log_abs(sampler.sample(CatalogId::J, r)),
                                              cfg.theta_points);
    const StarVerdict ji = compare_star(pJ, pI, cfg.star_margin_factor);
    if (ji.order == StarOrder::fails) ++failures;
    record("J_vs_I", r, "star_plus", ji.max_gap, ji.margin);

    const StarProfile ph1 =
        star::star_profile(circle::log_abs(sampler.sample(h1, r)), cfg.theta_points);
    const StarVerdict fi = compare_star(ph1, pI, cfg.star_margin_factor);
    if (fi.order == StarOrder::fails) ++failures;
    record("h1_vs_I", r, "star_plus", fi.max_gap, fi.margin);
  }

  const std::string table = table_path(cfg, "baernstein_gaps.csv");
  write_csv(table, {"function", "r", "check", "gap", "err_budget"}, rows);
  v.tables.push_back(table);
  v.details["failures"] = static_cast<double>(failures);
  v.witnesses.push_back(tracker.worst);
  v.status = failures == 0 ? Status::reproduced : Status::violated;
  return v;
}

// ---------------------------------------------------------------------------
// q1: iterated Hadamard powers of h1 escape star domination by I.

Verdict run_iterated_convolution_escape(const RunConfig& cfg) {
  Verdict v;
  v.scenario = "q1";
  v.seed = cfg.seed;
  Sampler sampler(cfg);

  const loewner::Driving driving = resolve_driving(cfg);
  const TruncatedSeries H = loewner::loewner_coefficients(driving, 64, loewner::recommended_step(64));
  const TruncatedSeries h = series::odd_sqrt_transform(H);
  const TruncatedSeries h1 = loewner::odd_transform_ratio(H);
  v.details["a5_abs"] = std::abs(h.at(5));

  // Eq. (fI): the base of the iteration is star-dominated by I everywhere.
  bool fi_holds = true;
  for (const double r : cfg.r_grid) {
    const StarProfile pu = star::star_profile(
        circle::log_abs(circle::sample_circle(h1, r, cfg.fft_size)), cfg.theta_points);
    const StarProfile pI = star::star_profile(
        circle::log_abs(sampler.sample(CatalogId::identity_kernel, r)), cfg.theta_points);
    if (compare_star(pu, pI, cfg.star_margin_factor).order == StarOrder::fails) fi_holds = false;
  }
  v.details["fI_holds"] = fi_holds ? 1.0 : 0.0;

  // Cheap pre-filter: the H^{1/2} escape at the largest grid radius.
  const double r_escape = cfg.r_grid.back();
  const MeanResult mhalf_I =
      circle::integral_mean(sampler.sample(CatalogId::identity_kernel, r_escape), 0.5);
  v.details["m_half_I"] = mhalf_I.value;

  std::vector<std::vector<std::string>> scan_rows;
  std::vector<std::vector<std::string>> star_rows;
  bool found = false;
  bool prefilter_latched = false;
  std::size_t found_n = 0;
  double found_mhalf = 0.0;
  Witness witness;
  std::size_t witness_index = 0;
  StarProfile witness_u, witness_v;

  TruncatedSeries f_prev = h1;  // f_{n-1}
  TruncatedSeries f = h1;      // f_n
  for (std::size_t n = 2; n <= cfg.q1_cap && !found; ++n) {
    f_prev = f;
    f = series::hadamard(f, h1);

    const MeanResult mhalf =
        circle::integral_mean(circle::sample_circle(f, r_escape, cfg.fft_size), 0.5);
    const bool prefilter =
        mhalf.value > mhalf_I.value + mhalf_I.err_bound + cfg.mean_slack;
    prefilter_latched = prefilter_latched || prefilter;
    scan_rows.push_back(
        {std::to_string(n), d2s(mhalf.value), d2s(mhalf.err_bound), prefilter ? "1" : "0"});
    if (!prefilter_latched) continue;

    // Confirm with full star profiles across the grid; radii where the tail
    // envelope swamps the samples cannot certify anything and are skipped.
    for (const double r : cfg.r_grid) {
      const RingSamples sf = circle::sample_circle(f, r, cfg.q1_star_fft);
      const RealRingSamples lu = circle::log_abs(sf);
      if (!std::isfinite(lu.err_bound)) continue;
      const std::size_t n_base = sampler.resolution(r).first;
      const RingSamples sI =
          circle::sample_circle(sampler.catalog_at(CatalogId::identity_kernel, n_base), r,
                                cfg.q1_star_fft);
      const StarProfile pu = star::star_profile(lu, cfg.theta_points);
      const StarProfile pv = star::star_profile(circle::log_abs(sI), cfg.theta_points);
      const StarVerdict verdict = compare_star(pu, pv, cfg.star_margin_factor);
      if (verdict.order != StarOrder::fails) continue;

      found = true;
      found_n = n;
      found_mhalf = mhalf.value;
      witness.r = r;
      witness.theta = verdict.theta;
      witness.gap = verdict.max_gap;
      witness.err = verdict.margin;
      witness_index = verdict.index;
      witness_u = pu;
      witness_v = pv;
      break;
    }
  }

  const std::string scan_table = table_path(cfg, "q1_scan.csv");
  write_csv(scan_table, {"n", "m_half", "m_half_err", "prefilter"}, scan_rows);
  v.tables.push_back(scan_table);

  if (!found) {
    v.status = Status::inconclusive;
    v.notes.push_back("scan cap reached without a certified star failure");
    v.details["cap"] = static_cast<double>(cfg.q1_cap);
    return v;
  }

  // Recompose f_N = F1 * F2 with F1 = h1 = f_1 and F2 = f_{N-1}, and confirm
  // the failure again through the algebra path.
  const TruncatedSeries recomposed = series::hadamard(h1, f_prev);
  const StarProfile pr = star::star_profile(
      circle::log_abs(circle::sample_circle(recomposed, witness.r, cfg.q1_star_fft)),
      cfg.theta_points);
  const StarVerdict again = compare_star(pr, witness_v, cfg.star_margin_factor);
  const bool recheck = again.order == StarOrder::fails;

  for (std::size_t k = witness_index == 0 ? 0 : witness_index - 1;
       k <= std::min(witness_index + 1, witness_u.values.size() - 1); ++k) {
    star_rows.push_back({d2s(witness.r), d2s(witness_u.thetas[k]), d2s(witness_u.values[k]),
                         d2s(witness_v.values[k]), d2s(witness_u.values[k] - witness_v.values[k]),
                         d2s(witness_u.err_bound + witness_v.err_bound)});
    Witness w;
    w.r = witness.r;
    w.theta = witness_u.thetas[k];
    w.gap = witness_u.values[k] - witness_v.values[k];
    w.err = witness_u.err_bound + witness_v.err_bound;
    v.witnesses.push_back(w);
  }
  const std::string star_table = table_path(cfg, "q1_star.csv");
  write_csv(star_table, {"r", "theta", "u_star", "v_star", "gap", "err_bound"}, star_rows);
  v.tables.push_back(star_table);

  v.details["N"] = static_cast<double>(found_n);
  v.details["m_half_fN"] = found_mhalf;
  v.details["recheck_product"] = recheck ? 1.0 : 0.0;
  const bool cross_check = found_mhalf > mhalf_I.value + mhalf_I.err_bound;
  v.details["m_half_cross_check"] = cross_check ? 1.0 : 0.0;

  if (fi_holds && found_n > 1 && recheck && cross_check)
    v.status = Status::violated;
  else
    v.status = Status::inconclusive;
  return v;
}

// ---------------------------------------------------------------------------
// q2: the explicit pair f = 1/(1-z)^2, F = 1 - z/2.

Verdict run_convexity_counterexample(const RunConfig& cfg) {
  Verdict v;
  v.scenario = "q2";
  v.seed = cfg.seed;
  Sampler sampler(cfg);
  bool parts_ok = true;

  // (a) moments of the 1024-node discretization of (1-cos t)/2pi are
  // (1, -1/2, 0, 0, ...).
  const UnitCircleMeasure hann = measures::discretized_density(
      [](double t) { return (1.0 - std::cos(t)) / (2.0 * kPi); }, 1024, "(1-cos)/2pi");
  const TruncatedSeries F = measures::cauchy_transform(hann, 16);
  double moment_err = 0.0;
  for (std::size_t n = 0; n < F.size(); ++n) {
    const cplx expected = n == 0 ? cplx{1.0, 0.0} : (n == 1 ? cplx{-0.5, 0.0} : cplx{0.0, 0.0});
    moment_err = std::max(moment_err, std::abs(F.at(n) - expected));
  }
  v.details["moment_err"] = moment_err;
  parts_ok = parts_ok && moment_err <= 1e-10;

  // (b) the discretization is convexity preserving.
  const bool convexity = measures::is_convexity_preserving(hann);
  v.details["convexity_preserving"] = convexity ? 1.0 : 0.0;
  parts_ok = parts_ok && convexity;

  // (c) exact coefficient algebra: (1/(1-z)^2) * (1 - z/2) = 1 - z.
  const TruncatedSeries fF = series::hadamard(series::catalog(CatalogId::inv_sq, cfg.n_coeffs),
                                              series::catalog(CatalogId::one_minus_half_z, cfg.n_coeffs));
  const TruncatedSeries one_minus_z = series::catalog(CatalogId::one_minus_z, cfg.n_coeffs);
  bool algebra_exact = fF.size() == one_minus_z.size();
  for (std::size_t n = 0; algebra_exact && n < fF.size(); ++n)
    algebra_exact = fF.coeffs()[n] == one_minus_z.coeffs()[n];
  v.details["algebra_exact"] = algebra_exact ? 1.0 : 0.0;
  parts_ok = parts_ok && algebra_exact;

  // (d) star failure witness: (log|1-z|)* > (log|1/(1-z)^2|)* somewhere.
  bool found = false;
  Witness witness;
  std::size_t witness_index = 0;
  StarProfile witness_u, witness_v;
  for (const double r : cfg.r_grid) {
    const std::size_t fft = sampler.resolution(r).second;
    const StarProfile pu =
        star::star_profile(circle::log_abs(circle::sample_circle(fF, r, fft)), cfg.theta_points);
    const StarProfile pv = star::star_profile(circle::log_abs(sampler.sample(CatalogId::inv_sq, r)),
                                              cfg.theta_points);
    const StarVerdict verdict = compare_star(pu, pv, cfg.star_margin_factor);
    if (verdict.order == StarOrder::fails) {
      const double score = verdict.max_gap - verdict.margin;
      if (!found || score > witness.gap - witness.err) {
        witness.r = r;
        witness.theta = verdict.theta;
        witness.gap = verdict.max_gap;
        witness.err = verdict.margin;
        witness_index = verdict.index;
        witness_u = pu;
        witness_v = pv;
      }
      found = true;
    }
  }

  // (e) reflection identity on both functions at r in {0.5, 0.9}.
  double reflect_err = 0.0;
  for (const double r : {0.5, 0.9}) {
    for (const bool use_conv : {true, false}) {
      const RingSamples s = use_conv ? circle::sample_circle(fF, r, cfg.fft_size)
                                     : sampler.sample(CatalogId::inv_sq, r);
      const RealRingSamples u = circle::log_abs(s);
      const StarProfile direct = star::star_profile(circle::negate(u), cfg.theta_points);
      const StarProfile reflected = star::reflect_negate(star::star_profile(u, cfg.theta_points));
      double diff = 0.0;
      for (std::size_t k = 0; k < direct.values.size(); ++k)
        diff = std::max(diff, std::abs(direct.values[k] - reflected.values[k]));
      reflect_err = std::max(reflect_err, diff);
      const double budget = 2.0 * std::max(direct.err_bound, reflected.err_bound) + 1e-9;
      parts_ok = parts_ok && diff <= budget;
    }
  }
  v.details["reflection_max_diff"] = reflect_err;

  // (f) sup-norm dichotomy: 1/(f*F) = 1/(1-z) escapes every bound while
  // 1/f = (1-z)^2 stays below 4.
  const MeanResult m_inf_I =
      circle::integral_mean(sampler.sample(CatalogId::identity_kernel, 0.99), circle::kInfinityP);
  v.details["m_inf_reciprocal_conv"] = m_inf_I.value;
  parts_ok = parts_ok && m_inf_I.value > 50.0;

  const TruncatedSeries one_minus_z_sq(
      {cplx{1.0, 0.0}, cplx{-2.0, 0.0}, cplx{1.0, 0.0}},
      series::GrowthClass::bounded(2.0).with_last_nonzero(2));
  double sup_sq = 0.0;
  for (const double r : cfg.r_grid)
    sup_sq = std::max(sup_sq, circle::integral_mean(
                                  circle::sample_circle(one_minus_z_sq, r, cfg.fft_size),
                                  circle::kInfinityP)
                                  .value);
  v.details["sup_m_inf_reciprocal_f"] = sup_sq;
  parts_ok = parts_ok && sup_sq <= 4.0 + 1e-9;

  if (found) {
    std::vector<std::vector<std::string>> star_rows;
    for (std::size_t k = 0; k < witness_u.values.size(); ++k)
      star_rows.push_back({d2s(witness.r), d2s(witness_u.thetas[k]), d2s(witness_u.values[k]),
                           d2s(witness_v.values[k]),
                           d2s(witness_u.values[k] - witness_v.values[k]),
                           d2s(witness_u.err_bound + witness_v.err_bound)});
    const std::string table = table_path(cfg, "q2_star.csv");
    write_csv(table, {"r", "theta", "u_star", "v_star", "gap", "err_bound"}, star_rows);
    v.tables.push_back(table);

    for (std::size_t k = witness_index == 0 ? 0 : witness_index - 1;
         k <= std::min(witness_index + 1, witness_u.values.size() - 1); ++k) {
      Witness w;
      w.r = witness.r;
      w.theta = witness_u.thetas[k];
      w.gap = witness_u.values[k] - witness_v.values[k];
      w.err = witness_u.err_bound + witness_v.err_bound;
      v.witnesses.push_back(w);
    }
  }

  v.status = (found && parts_ok) ? Status::violated : Status::inconclusive;
  return v;
}

// ---------------------------------------------------------------------------
// steiner: convolution with probability measures against Steiner symmetric
// functions.

bool steiner_check(const TruncatedSeries& f, const RunConfig& cfg) {
  double scale = 0.0;
  for (const auto& a : f.coeffs()) scale = std::max(scale, std::abs(a));
  if (std::abs(f.at(0)) > 1e-12 * std::max(scale, 1.0)) return false;
  if (!(f.at(1).real() > 1e-12) || std::abs(f.at(1).imag()) > 1e-9 * std::max(scale, 1.0))
    return false;

  for (const double r : cfg.r_grid) {
    std::size_t M = cfg.fft_size;
    while (M < 2 * f.size()) M <<= 1;
    const RingSamples s = circle::sample_circle(f, r, M);
    double vmax = 0.0;
    for (const auto& w : s.values) vmax = std::max(vmax, std::abs(w));
    const double tol = 2.0 * s.err_bound + 1e-9 * std::max(vmax, 1.0);
    for (std::size_t j = 0; j < M; ++j) {
      const double t = 2.0 * kPi * static_cast<double>(j) / static_cast<double>(M);
      if (s.values[j].imag() * std::sin(t) < -tol) return false;  // typically real
    }
    if (!star::symmetric_decreasing_check(circle::real_part(s), tol)) return false;
  }
  return true;
}

Verdict run_steiner_means(const RunConfig& cfg) {
  Verdict v;
  v.scenario = "steiner";
  v.seed = cfg.seed;
  Sampler sampler(cfg);
  const std::vector<double> ps = {0.25, 0.5, 0.75, 1.0, 2.0};

  struct Member {
    std::string name;
    TruncatedSeries f;
  };
  const std::size_t n_hi = sampler.resolution(0.99).first;
  std::vector<Member> members;
  members.push_back({"z", TruncatedSeries({cplx{0.0, 0.0}, cplx{1.0, 0.0}},
                                          series::GrowthClass::bounded(1.0).with_last_nonzero(1))});
  members.push_back({"k2", series::catalog(CatalogId::k2, n_hi)});
  members.push_back({"strip", series::catalog(CatalogId::strip, n_hi)});

  std::size_t violations = 0;
  GapTracker tracker;
  std::map<std::string, std::pair<double, double>> worst;  // label -> (gap, err)

  for (const auto& member : members) {
    if (!steiner_check(member.f, cfg)) {
      v.notes.push_back("steiner_check rejected " + member.name);
      v.status = Status::inconclusive;
      return v;
    }
  }

  const Rng root(cfg.seed);
  for (const auto& member : members) {
    // Per-radius hulls and base samples are measure-independent.
    std::map<double, RingSamples> base;
    std::map<double, ConvexHull> hulls;
    std::map<double, double> hull_slack;
    for (const double r : cfg.r_grid) {
      RingSamples s = sampler.sample(member.f, r);
      hulls.emplace(r, ConvexHull::build(s.values));
      double adj = 0.0;
      for (std::size_t j = 0; j < s.values.size(); ++j)
        adj = std::max(adj, std::abs(s.values[j] - s.values[(j + 1) % s.values.size()]));
      hull_slack.emplace(r, 0.5 * adj);
      base.emplace(r, std::move(s));
    }

    for (std::size_t t = 0; t < cfg.steiner_measures; ++t) {
      const UnitCircleMeasure mu = measures::random_measure(
          root.fork(t).next_u64(), measures::MeasureKind::probability, 8);
      for (const double r : cfg.r_grid) {
        const RingSamples conv = sampler.convolve(member.f, mu, r);
        const RingSamples& fs = base.at(r);

        for (const double p : ps) {
          const MeanResult mc = circle::integral_mean(conv, p);
          const MeanResult mf = circle::integral_mean(fs, p);
          const double slack = mc.err_bound + mf.err_bound + cfg.mean_slack;
          const double gap = mc.value - mf.value;
          if (gap > slack) ++violations;
          Witness w;
          w.r = r;
          w.p = p;
          w.gap = gap;
          w.err = slack;
          tracker.offer(w);
          auto& cell = worst[member.name + ":means"];
          if (gap - slack > cell.first - cell.second) cell = {gap, slack};
        }

        const StarProfile pu =
            star::star_profile(circle::real_part(conv), cfg.theta_points);
        const StarProfile pv = star::star_profile(circle::real_part(fs), cfg.theta_points);
        const StarVerdict sv = compare_star(pu, pv, cfg.star_margin_factor);
        if (sv.order == StarOrder::fails) ++violations;
        {
          Witness w;
          w.r = r;
          w.theta = sv.theta;
          w.gap = sv.max_gap;
          w.err = sv.margin;
          tracker.offer(w);
          auto& cell = worst[member.name + ":real_star"];
          if (sv.max_gap - sv.margin > cell.first - cell.second) cell = {sv.max_gap, sv.margin};
        }

        // Convex-hull containment of the convolution range.
        const double tol =
            conv.err_bound + fs.err_bound + hull_slack.at(r) + cfg.mean_slack;
        const ConvexHull& hull = hulls.at(r);
        double outside = 0.0;
        for (const auto& w : conv.values)
          outside = std::max(outside, hull.outside_distance(w));
        if (outside > tol) ++violations;
        auto& cell = worst[member.name + ":hull"];
        if (outside - tol > cell.first - cell.second) cell = {outside, tol};
      }
    }
  }

  std::vector<std::vector<std::string>> rows;
  for (const auto& [label, cell] : worst)
    rows.push_back({label, d2s(cell.first), d2s(cell.second)});
  const std::string table = table_path(cfg, "steiner_worst.csv");
  write_csv(table, {"check", "max_gap", "err_budget"}, rows);
  v.tables.push_back(table);

  v.details["violations"] = static_cast<double>(violations);
  v.details["measures"] = static_cast<double>(cfg.steiner_measures);
  v.witnesses.push_back(tracker.worst);
  v.status = violations == 0 ? Status::reproduced : Status::violated;
  return v;
}

// ---------------------------------------------------------------------------

std::vector<Verdict> run_all(const RunConfig& cfg) {
  std::vector<Verdict> out;
  for (const auto& name : scenario_names()) out.push_back(run_scenario(name, cfg));
  return out;
}

Verdict run_scenario(const std::string& scenario, const RunConfig& cfg) {
  if (scenario == "thmA") return run_bound_preserving_means(cfg);
  if (scenario == "baernstein") return run_koebe_star_domination(cfg);
  if (scenario == "q1") return run_iterated_convolution_escape(cfg);
  if (scenario == "q2") return run_convexity_counterexample(cfg);
  if (scenario == "steiner") return run_steiner_means(cfg);
  throw std::invalid_argument("unknown scenario '" + scenario + "'");
}

std::string write_verdict(const Verdict& v, const RunConfig& cfg) {
  const std::string path = table_path(cfg, v.scenario + ".json");
  io::write_json_file(path, io::to_json(v));
  return path;
}

}  // namespace discstar::verify
