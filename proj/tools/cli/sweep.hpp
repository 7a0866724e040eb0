#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "selfish/sim.hpp"

namespace selfish::cli {

struct SweepPlan {
  std::vector<double> alpha_grid;
  std::vector<double> gamma_list;
  std::uint64_t num_events = 1'000'000;
  std::vector<std::uint64_t> seeds{1};
  Granularity granularity = Aggregate{};
  Settlement settlement = Settlement::Publish;
  std::string output_path;  // empty: standard output
  unsigned workers = 1;
};

/// Throws std::invalid_argument on empty grids or out-of-domain values.
void validate(const SweepPlan& plan);

struct SweepRow {
  double alpha = 0.0;
  double gamma = 0.0;
  std::uint64_t seed = 0;
  std::uint64_t num_events = 0;
  double sim_relative_revenue = 0.0;
  double analytic_relative_revenue = 0.0;
  double honest_control_revenue = 0.0;
  double threshold_gamma = 0.0;
};

/// One selfish run and one honest-control run per (alpha, gamma, seed).
/// Rows come back sorted by (alpha, gamma, seed) whatever the worker count.
std::vector<SweepRow> run_sweep(const SweepPlan& plan);

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows);

/// (gamma, threshold) pairs over `gammas`.
void write_threshold_csv(std::ostream& out, const std::vector<double>& gammas);

/// Runs `task(i)` for i in [0, n) on up to `workers` threads.
void parallel_for(std::size_t n, unsigned workers, const std::function<void(std::size_t)>& task);

/// printf("%.12g").
std::string format_real(double v);

}  // namespace selfish::cli
