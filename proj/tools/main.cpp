#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "discstar/circle.hpp"
#include "discstar/json_io.hpp"
#include "discstar/loewner.hpp"
#include "discstar/measures.hpp"
#include "discstar/run_config.hpp"
#include "discstar/series.hpp"
#include "discstar/star.hpp"
#include "discstar/verify.hpp"

namespace {

namespace fs = std::filesystem;
using namespace discstar;

double parse_p(const std::string& s) {
  if (s == "inf" || s == "Inf" || s == "INF") return circle::kInfinityP;
  return std::stod(s);
}

series::TruncatedSeries load_function(const std::string& name, const RunConfig& cfg) {
  if (auto id = series::catalog_id_from_string(name)) return series::catalog(*id, cfg.n_coeffs);
  if (fs::exists(name)) return io::series_from_json(io::load_json_file(name));
  throw CLI::ValidationError("unknown function or missing file: " + name);
}

void write_rows(const std::string& path, const std::string& header,
                const std::vector<std::string>& rows) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << header << "\n";
  for (const auto& row : rows) out << row << "\n";
}

std::string out_file(const RunConfig& cfg, const std::string& name) {
  fs::create_directories(cfg.output_dir);
  return (fs::path(cfg.output_dir) / name).string();
}

int cmd_means(const RunConfig& cfg, const std::string& fn, const std::vector<std::string>& p_args,
              std::vector<double> radii) {
  if (radii.empty()) radii = cfg.r_grid;
  const series::TruncatedSeries f = load_function(fn, cfg);
  std::vector<std::string> rows;
  for (const double r : radii) {
    std::size_t M = cfg.fft_size;
    while (M < 2 * f.size()) M <<= 1;
    const circle::RingSamples s = circle::sample_circle(f, r, M);
    for (const auto& p_arg : p_args) {
      const double p = parse_p(p_arg);
      const circle::MeanResult m = circle::integral_mean(s, p);
      rows.push_back(io::csv_double(r) + "," + io::csv_double(p) + "," + io::csv_double(m.value) +
                     "," + io::csv_double(m.err_bound));
      std::printf("M_%s(%.4g, %s) = %.12g  (err <= %.3g)\n", p_arg.c_str(), r, fn.c_str(), m.value,
                  m.err_bound);
    }
  }
  const std::string path = out_file(cfg, "means_" + fs::path(fn).stem().string() + ".csv");
  write_rows(path, "r,p,value,err_bound", rows);
  std::printf("wrote %s\n", path.c_str());
  return 0;
}

int cmd_star(const RunConfig& cfg, const std::string& fn, const std::string& vs, bool neg,
             std::vector<double> radii) {
  if (radii.empty()) radii = cfg.r_grid;
  const series::TruncatedSeries f = load_function(fn, cfg);
  std::vector<std::string> rows;
  const bool compare = !vs.empty();
  series::TruncatedSeries g = f;
  if (compare) g = load_function(vs, cfg);

  for (const double r : radii) {
    std::size_t M = cfg.fft_size;
    while (M < 2 * std::max(f.size(), g.size())) M <<= 1;
    const auto profile_of = [&](const series::TruncatedSeries& h) {
      star::StarProfile p =
          star::star_profile(circle::log_abs(circle::sample_circle(h, r, M)), cfg.theta_points);
      return neg ? star::reflect_negate(p) : p;
    };
    const star::StarProfile pu = profile_of(f);
    if (compare) {
      const star::StarProfile pv = profile_of(g);
      const star::StarVerdict verdict =
          star::star_leq(pu, pv, star::default_star_margin(pu, pv));
      for (std::size_t k = 0; k < pu.values.size(); ++k)
        rows.push_back(io::csv_double(r) + "," + io::csv_double(pu.thetas[k]) + "," +
                       io::csv_double(pu.values[k]) + "," + io::csv_double(pv.values[k]) + "," +
                       io::csv_double(pu.values[k] - pv.values[k]) + "," +
                       io::csv_double(pu.err_bound + pv.err_bound));
      const char* word = verdict.order == star::StarOrder::fails
                             ? "fails"
                             : (verdict.order == star::StarOrder::holds ? "holds"
                                                                        : "holds (within tol)");
      std::printf("r=%.4g: star order %s, max gap %.6g at theta=%.6g (margin %.3g)\n", r, word,
                  verdict.max_gap, verdict.theta, verdict.margin);
    } else {
      for (std::size_t k = 0; k < pu.values.size(); ++k)
        rows.push_back(io::csv_double(r) + "," + io::csv_double(pu.thetas[k]) + "," +
                       io::csv_double(pu.values[k]) + "," + io::csv_double(pu.err_bound));
    }
  }
  const std::string base = "star_" + fs::path(fn).stem().string() + (neg ? "_neg" : "");
  const std::string path = out_file(cfg, base + ".csv");
  write_rows(path, compare ? "r,theta,u_star,v_star,gap,err_bound" : "r,theta,u_star,err_bound",
             rows);
  std::printf("wrote %s\n", path.c_str());
  return 0;
}

int cmd_convolve(const RunConfig& cfg, const std::string& fn, const std::string& gn) {
  const series::TruncatedSeries f = load_function(fn, cfg);
  series::TruncatedSeries result = f;
  if (series::catalog_id_from_string(gn) || (fs::exists(gn) && gn.find(".json") != std::string::npos &&
                                             io::load_json_file(gn).contains("coeffs"))) {
    result = series::hadamard(f, load_function(gn, cfg));
  } else {
    const measures::UnitCircleMeasure mu = io::measure_from_json(io::load_json_file(gn));
    result = series::hadamard(f, measures::cauchy_transform(mu, f.order()));
  }
  std::printf("coefficients (first %zu):\n", std::min<std::size_t>(result.size(), 12));
  for (std::size_t n = 0; n < std::min<std::size_t>(result.size(), 12); ++n)
    std::printf("  a_%zu = %.12g %+.12gi\n", n, result.coeffs()[n].real(),
                result.coeffs()[n].imag());
  const std::string path = out_file(cfg, "convolve.json");
  io::write_json_file(path, io::to_json(result));
  std::printf("wrote %s\n", path.c_str());
  return 0;
}

int cmd_measure_moments(const RunConfig& cfg, const std::string& file, std::size_t n) {
  const measures::UnitCircleMeasure mu = io::measure_from_json(io::load_json_file(file));
  const series::TruncatedSeries F = measures::cauchy_transform(mu, n);
  std::printf("total variation: %.12g, bound preserving: %s, convexity preserving: %s\n",
              mu.total_variation(), measures::is_bound_preserving(mu) ? "yes" : "no",
              measures::is_convexity_preserving(mu) ? "yes" : "no");
  for (std::size_t k = 0; k <= n; ++k)
    std::printf("  moment_%zu = %.12g %+.12gi\n", k, F.coeffs()[k].real(), F.coeffs()[k].imag());
  (void)cfg;
  return 0;
}

int cmd_loewner_search(const RunConfig& cfg, const std::string& save) {
  const loewner::FeketeSzegoResult res =
      loewner::fekete_szego_search(cfg.search_segments, cfg.search_budget, cfg.seed);
  std::printf("|a5| = %.10g after %zu evaluations (%s)\n", std::abs(res.a5), res.evaluations,
              res.success ? "above 1.001" : "below threshold");
  const loewner::SanityVerdict sanity = loewner::univalence_sanity(res.H, 0.8, 2048);
  std::printf("univalence screen: %s%s%s\n", sanity.pass ? "pass" : "FAIL",
              sanity.pass ? "" : " - ", sanity.reason.c_str());
  if (!save.empty()) {
    io::write_json_file(save, io::to_json(res.driving));
    std::printf("wrote %s\n", save.c_str());
  } else {
    const std::string path = out_file(cfg, "driving.json");
    io::write_json_file(path, io::to_json(res.driving));
    std::printf("wrote %s\n", path.c_str());
  }
  return res.success ? 0 : 1;
}

int cmd_loewner_coeffs(const RunConfig& cfg, const std::string& driving_file, std::size_t n,
                       double step) {
  const loewner::Driving d = driving_file.empty()
                                 ? loewner::default_driving()
                                 : io::driving_from_json(io::load_json_file(driving_file));
  const series::TruncatedSeries H =
      loewner::loewner_coefficients(d, n, step > 0.0 ? step : loewner::recommended_step(n));
  for (std::size_t k = 0; k <= n; ++k)
    std::printf("  A_%zu = %.12g %+.12gi  (|A| = %.12g)\n", k, H.coeffs()[k].real(),
                H.coeffs()[k].imag(), std::abs(H.coeffs()[k]));
  const std::string path = out_file(cfg, "loewner_coeffs.json");
  io::write_json_file(path, io::to_json(H));
  std::printf("wrote %s\n", path.c_str());
  return 0;
}

int cmd_verify(const RunConfig& cfg, const std::string& scenario) {
  std::vector<verify::Verdict> verdicts;
  if (scenario == "all")
    verdicts = verify::run_all(cfg);
  else
    verdicts.push_back(verify::run_scenario(scenario, cfg));

  bool all_expected = true;
  for (const auto& v : verdicts) {
    const std::string path = verify::write_verdict(v, cfg);
    const bool ok = v.matches_expectation();
    all_expected = all_expected && ok;
    std::printf("%-11s %-13s (expected %-10s) %s -> %s\n", v.scenario.c_str(),
                verify::status_name(v.status).c_str(),
                verify::status_name(verify::expected_status(v.scenario)).c_str(),
                ok ? "ok" : "MISMATCH", path.c_str());
  }
  return all_expected ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"analytic convolution, integral means, and star functions on the unit disc"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir;
  std::uint64_t seed = 0;
  bool seed_set = false;
  app.add_option("--config", config_path, "JSON config file");
  app.add_option("--out", out_dir, "output directory (overrides config and DISCSTAR_OUT)");
  app.add_option("--seed", seed, "seed for randomized runs")->each([&](const std::string&) {
    seed_set = true;
  });

  // means
  auto* means = app.add_subcommand("means", "integral means M_p(r, f)");
  std::string means_fn;
  std::vector<std::string> means_p = {"2"};
  std::vector<double> means_r;
  means->add_option("fn", means_fn, "catalog name or series JSON")->required();
  means->add_option("--p", means_p, "exponents (numbers or 'inf')");
  means->add_option("--r", means_r, "radii (default: config grid)");

  // star
  auto* star_cmd = app.add_subcommand("star", "star-function profiles");
  std::string star_fn, star_vs;
  bool star_neg = false;
  std::vector<double> star_r;
  star_cmd->add_option("fn", star_fn, "catalog name or series JSON")->required();
  star_cmd->add_option("--vs", star_vs, "compare against this function");
  star_cmd->add_flag("--neg", star_neg, "profile of the negated field");
  star_cmd->add_option("--r", star_r, "radii (default: config grid)");

  // convolve
  auto* conv = app.add_subcommand("convolve", "Hadamard convolution");
  std::string conv_f, conv_g;
  conv->add_option("f", conv_f, "catalog name or series JSON")->required();
  conv->add_option("g", conv_g, "catalog name, series JSON, or measure JSON")->required();

  // measure
  auto* measure = app.add_subcommand("measure", "unit-circle measures");
  auto* moments = measure->add_subcommand("moments", "moments of a measure file");
  std::string measure_file;
  std::size_t moments_n = 8;
  moments->add_option("file", measure_file, "measure JSON")->required();
  moments->add_option("--n", moments_n, "highest moment");

  // loewner
  auto* loewner_cmd = app.add_subcommand("loewner", "coefficient evolution");
  auto* search = loewner_cmd->add_subcommand("search", "search for |a5| > 1");
  std::string search_save;
  search->add_option("--save", search_save, "write the found driving here");
  auto* coeffs = loewner_cmd->add_subcommand("coeffs", "coefficients for a driving");
  std::string coeffs_driving;
  std::size_t coeffs_n = 8;
  double coeffs_step = 0.0;  // 0 = recommended for the order
  coeffs->add_option("--driving", coeffs_driving, "driving JSON (default: shipped driving)");
  coeffs->add_option("--n", coeffs_n, "coefficient order (<= 64)");
  coeffs->add_option("--step", coeffs_step, "integration step (<= 1e-2)");

  // verify
  auto* verify_cmd = app.add_subcommand("verify", "scenario runners");
  std::string scenario;
  verify_cmd
      ->add_option("scenario", scenario, "thmA|baernstein|q1|q2|steiner|all")
      ->required()
      ->check(CLI::IsMember({"thmA", "baernstein", "q1", "q2", "steiner", "all"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return e.get_exit_code() == 0 ? 0 : 2;
  }

  try {
    RunConfig cfg;
    if (!config_path.empty()) cfg = io::config_from_json(io::load_json_file(config_path));
    if (const char* env = std::getenv("DISCSTAR_OUT"); env && out_dir.empty()) cfg.output_dir = env;
    if (!out_dir.empty()) cfg.output_dir = out_dir;
    if (seed_set) cfg.seed = seed;
    cfg.validate();

    if (*means) return cmd_means(cfg, means_fn, means_p, means_r);
    if (*star_cmd) return cmd_star(cfg, star_fn, star_vs, star_neg, star_r);
    if (*conv) return cmd_convolve(cfg, conv_f, conv_g);
    if (*moments) return cmd_measure_moments(cfg, measure_file, moments_n);
    if (*search) return cmd_loewner_search(cfg, search_save);
    if (*coeffs) return cmd_loewner_coeffs(cfg, coeffs_driving, coeffs_n, coeffs_step);
    if (*verify_cmd) return cmd_verify(cfg, scenario);
    std::fprintf(stderr, "no subcommand selected\n");
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}
