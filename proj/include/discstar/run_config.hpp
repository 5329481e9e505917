#pragma once

#include <cstdint>
#include <cstddef>
#include <string>
#include <vector>

namespace discstar {

/// Knobs shared by the CLI and the scenario runners. Defaults reproduce the
/// standard desk-scale runs; validate() enforces the structural invariants.
struct RunConfig {
  std::size_t n_coeffs = 256;    // truncation order for catalog series
  std::size_t fft_size = 4096;   // circle sample count (power of two)
  std::size_t theta_points = 512;  // star-profile grid resolution K
  std::vector<double> r_grid = {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 0.95, 0.99};
  std::uint64_t seed = 0;
  std::string output_dir = "out";

  // Tolerance overrides.
  double mean_slack = 1e-9;        // absolute slack on mean comparisons
  double star_margin_factor = 10.0;  // failure threshold in units of combined error

  // Trial counts for the property runners.
  std::size_t bound_preserving_trials = 200;
  std::size_t steiner_measures = 100;

  // Question-1 scan.
  std::size_t q1_cap = 5000;
  std::size_t q1_star_fft = 8192;

  // Loewner search defaults.
  std::size_t search_segments = 3;
  std::size_t search_budget = 2000;
  std::string driving_path;  // optional override; empty = shipped driving

  void validate() const;
};

}  // namespace discstar
