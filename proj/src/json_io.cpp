#include "discstar/json_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace discstar::io {

json to_json(const series::TruncatedSeries& f) {
  json coeffs = json::array();
  for (const auto& a : f.coeffs()) coeffs.push_back({a.real(), a.imag()});
  json growth = {{"kind", f.growth().kind()},
                 {"constant", f.growth().constant},
                 {"degree", f.growth().degree},
                 {"ratio", f.growth().ratio}};
  if (f.growth().last_nonzero) growth["last_nonzero"] = *f.growth().last_nonzero;
  return {{"coeffs", coeffs}, {"growth", growth}};
}

series::TruncatedSeries series_from_json(const json& j) {
  std::vector<series::cplx> coeffs;
  for (const auto& pair : j.at("coeffs"))
    coeffs.emplace_back(pair.at(0).get<double>(), pair.at(1).get<double>());
  series::GrowthClass g;
  const auto& gj = j.at("growth");
  g.constant = gj.at("constant").get<double>();
  g.degree = gj.at("degree").get<double>();
  g.ratio = gj.at("ratio").get<double>();
  if (gj.contains("last_nonzero")) g.last_nonzero = gj.at("last_nonzero").get<std::size_t>();
  return series::TruncatedSeries(std::move(coeffs), g);
}

json to_json(const measures::UnitCircleMeasure& mu) {
  json atoms = json::array();
  for (const auto& a : mu.atoms())
    atoms.push_back({a.angle, a.weight.real(), a.weight.imag()});
  json j = {{"atoms", atoms}};
  if (mu.tag()) j["tag"] = *mu.tag();
  return j;
}

measures::UnitCircleMeasure measure_from_json(const json& j) {
  std::vector<measures::UnitCircleMeasure::Atom> atoms;
  for (const auto& a : j.at("atoms"))
    atoms.push_back({a.at(0).get<double>(),
                     series::cplx{a.at(1).get<double>(), a.at(2).get<double>()}});
  std::optional<std::string> tag;
  if (j.contains("tag")) tag = j.at("tag").get<std::string>();
  return measures::UnitCircleMeasure(std::move(atoms), tag);
}

json to_json(const loewner::Driving& d) {
  return {{"breakpoints", d.breakpoints}, {"angles", d.angles}, {"tail_angle", d.tail_angle}};
}

loewner::Driving driving_from_json(const json& j) {
  return loewner::Driving(j.at("breakpoints").get<std::vector<double>>(),
                          j.at("angles").get<std::vector<double>>(),
                          j.at("tail_angle").get<double>());
}

json to_json(const RunConfig& cfg) {
  return {{"n_coeffs", cfg.n_coeffs},
          {"fft_size", cfg.fft_size},
          {"theta_points", cfg.theta_points},
          {"r_grid", cfg.r_grid},
          {"seed", cfg.seed},
          {"output_dir", cfg.output_dir},
          {"mean_slack", cfg.mean_slack},
          {"star_margin_factor", cfg.star_margin_factor},
          {"bound_preserving_trials", cfg.bound_preserving_trials},
          {"steiner_measures", cfg.steiner_measures},
          {"q1_cap", cfg.q1_cap},
          {"q1_star_fft", cfg.q1_star_fft},
          {"search_segments", cfg.search_segments},
          {"search_budget", cfg.search_budget},
          {"driving_path", cfg.driving_path}};
}

RunConfig config_from_json(const json& j) {
  RunConfig cfg;
  const auto get = [&j](const char* key, auto& field) {
    if (j.contains(key)) field = j.at(key).get<std::decay_t<decltype(field)>>();
  };
  get("n_coeffs", cfg.n_coeffs);
  get("fft_size", cfg.fft_size);
  get("theta_points", cfg.theta_points);
  get("r_grid", cfg.r_grid);
  get("seed", cfg.seed);
  get("output_dir", cfg.output_dir);
  get("mean_slack", cfg.mean_slack);
  get("star_margin_factor", cfg.star_margin_factor);
  get("bound_preserving_trials", cfg.bound_preserving_trials);
  get("steiner_measures", cfg.steiner_measures);
  get("q1_cap", cfg.q1_cap);
  get("q1_star_fft", cfg.q1_star_fft);
  get("search_segments", cfg.search_segments);
  get("search_budget", cfg.search_budget);
  get("driving_path", cfg.driving_path);
  cfg.validate();
  return cfg;
}

namespace {
// nlohmann serializes non-finite doubles as null; keep them readable instead.
json json_num(double x) {
  if (std::isfinite(x)) return x;
  return x > 0 ? "inf" : (x < 0 ? "-inf" : "nan");
}
}  // namespace

json to_json(const verify::Verdict& v) {
  json witnesses = json::array();
  for (const auto& w : v.witnesses) {
    json jw = {{"r", json_num(w.r)}, {"gap", json_num(w.gap)}, {"err", json_num(w.err)}};
    if (w.theta) jw["theta"] = json_num(*w.theta);
    if (w.p) jw["p"] = json_num(*w.p);
    witnesses.push_back(jw);
  }
  json details = json::object();
  for (const auto& [key, value] : v.details) details[key] = json_num(value);
  return {{"scenario", v.scenario},
          {"status", verify::status_name(v.status)},
          {"seed", v.seed},
          {"witnesses", witnesses},
          {"tables", v.tables},
          {"details", details},
          {"notes", v.notes}};
}

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  json j;
  in >> j;
  return j;
}

void write_json_file(const std::string& path, const json& j) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << j.dump(2) << "\n";
}

std::string csv_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

}  // namespace discstar::io
