#pragma once

#include <string>

#include <json.hpp>

#include "discstar/loewner.hpp"
#include "discstar/measures.hpp"
#include "discstar/run_config.hpp"
#include "discstar/series.hpp"
#include "discstar/verify.hpp"

namespace discstar::io {

using nlohmann::json;

/// {"coeffs": [[re, im], ...], "growth": {"kind", "constant", "degree",
///  "ratio", "last_nonzero"?}}
json to_json(const series::TruncatedSeries& f);
series::TruncatedSeries series_from_json(const json& j);

/// {"atoms": [[phi, re_w, im_w], ...], "tag"?: string}
json to_json(const measures::UnitCircleMeasure& mu);
measures::UnitCircleMeasure measure_from_json(const json& j);

/// {"breakpoints": [...], "angles": [...], "tail_angle": x}
json to_json(const loewner::Driving& d);
loewner::Driving driving_from_json(const json& j);

json to_json(const RunConfig& cfg);
/// Fields absent from the JSON keep their defaults.
RunConfig config_from_json(const json& j);

/// {scenario, status, seed, witnesses:[{r, theta?, p?, gap, err}],
///  tables:[paths], details:{...}, notes:[...]}
json to_json(const verify::Verdict& v);

json load_json_file(const std::string& path);
void write_json_file(const std::string& path, const json& j);

/// Fixed-format floating point for CSV cells (%.17g round-trips doubles).
std::string csv_double(double x);

}  // namespace discstar::io
