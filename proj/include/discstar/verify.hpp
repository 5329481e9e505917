#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "discstar/run_config.hpp"
#include "discstar/series.hpp"

namespace discstar::verify {

enum class Status { reproduced, violated, inconclusive };

std::string status_name(Status s);

/// Expected outcome per scenario: the property runners must reproduce their
/// inequalities, while the two counterexample scenarios are expected to end
/// with the target inequality violated.
Status expected_status(const std::string& scenario);

struct Witness {
  double r = 0.0;
  std::optional<double> theta;
  std::optional<double> p;
  double gap = 0.0;
  double err = 0.0;
};

/// Machine-readable outcome of one scenario. Serialized as
/// {scenario, status, seed, witnesses:[{r, theta?, p?, gap, err}],
///  tables:[paths], details:{...}, notes:[...]}.
struct Verdict {
  std::string scenario;
  Status status = Status::inconclusive;
  std::uint64_t seed = 0;
  std::vector<Witness> witnesses;
  std::vector<std::string> tables;
  std::map<std::string, double> details;
  std::vector<std::string> notes;

  bool matches_expectation() const { return status == expected_status(scenario); }
};

/// Scenario "thmA": convolution against seeded random bound-preserving
/// measures never increases M_p for p in {1, 1.5, 2, 4, inf} on the grid.
Verdict run_bound_preserving_means(const RunConfig& cfg);

/// Scenario "baernstein": star domination and integral means of univalent
/// catalog members against the Koebe function, plus the subordination chain
/// used by the iterated-convolution construction.
Verdict run_koebe_star_domination(const RunConfig& cfg);

/// Scenario "q1": iterated Hadamard powers of the odd-transform ratio escape
/// the star domination by the convolution identity at some discovered N > 1.
Verdict run_iterated_convolution_escape(const RunConfig& cfg);

/// Scenario "q2": the explicit convexity-preserving convolver that breaks
/// star domination; includes the measure identity, the exact coefficient
/// algebra, the reflection identity, and the sup-norm dichotomy.
Verdict run_convexity_counterexample(const RunConfig& cfg);

/// Scenario "steiner": convolution with probability measures against Steiner
/// symmetric functions keeps all M_p (p > 0) and the real-part star order.
Verdict run_steiner_means(const RunConfig& cfg);

/// Normalization, typical realness, and per-circle symmetric decrease of the
/// real part.
bool steiner_check(const series::TruncatedSeries& f, const RunConfig& cfg);

/// All five scenarios in a fixed order.
std::vector<Verdict> run_all(const RunConfig& cfg);

/// Runs one scenario by its CLI token (thmA, baernstein, q1, q2, steiner).
Verdict run_scenario(const std::string& scenario, const RunConfig& cfg);

const std::vector<std::string>& scenario_names();

/// Writes <output_dir>/<scenario>.json and returns the path.
std::string write_verdict(const Verdict& v, const RunConfig& cfg);

}  // namespace discstar::verify
