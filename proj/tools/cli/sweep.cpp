#include "sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <exception>
#include <mutex>
#include <ostream>
#include <stdexcept>
#include <thread>
#include <tuple>

#include "selfish/analytic.hpp"

namespace selfish::cli {

std::string format_real(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

void validate(const SweepPlan& plan) {
  if (plan.alpha_grid.empty()) throw std::invalid_argument("alpha grid is empty");
  if (plan.gamma_list.empty()) throw std::invalid_argument("gamma list is empty");
  if (plan.seeds.empty()) throw std::invalid_argument("seed list is empty");
  for (double a : plan.alpha_grid) {
    if (!(a >= 0.0 && a < 0.5)) {
      throw std::invalid_argument("alpha grid value " + format_real(a) + " outside [0, 0.5)");
    }
  }
  for (double g : plan.gamma_list) {
    if (!(g >= 0.0 && g <= 1.0)) {
      throw std::invalid_argument("gamma value " + format_real(g) + " outside [0, 1]");
    }
  }
  if (plan.num_events < 1) throw std::invalid_argument("events must be positive");
}

void parallel_for(std::size_t n, unsigned workers, const std::function<void(std::size_t)>& task) {
  workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(n)));
  if (workers == 1) {
    for (std::size_t i = 0; i < n; ++i) task(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) {
        try {
          task(i);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

std::vector<SweepRow> run_sweep(const SweepPlan& plan) {
  validate(plan);
  std::vector<SweepRow> rows;
  for (double a : plan.alpha_grid) {
    for (double g : plan.gamma_list) {
      for (auto seed : plan.seeds) rows.push_back(SweepRow{a, g, seed, plan.num_events});
    }
  }
  parallel_for(rows.size(), plan.workers, [&](std::size_t i) {
    SweepRow& row = rows[i];
    SimConfig c;
    c.alpha = row.alpha;
    c.gamma = row.gamma;
    c.num_events = row.num_events;
    c.seed = row.seed;
    c.granularity = plan.granularity;
    c.track_occupancy = false;
    row.sim_relative_revenue = run(c).settled(plan.settlement).relative_revenue();
    row.honest_control_revenue = run_honest_control(c).relative_revenue;
    row.analytic_relative_revenue = relative_revenue({row.alpha, row.gamma});
    row.threshold_gamma = threshold(row.gamma);
  });
  std::stable_sort(rows.begin(), rows.end(), [](const SweepRow& x, const SweepRow& y) {
    return std::tie(x.alpha, x.gamma, x.seed) < std::tie(y.alpha, y.gamma, y.seed);
  });
  return rows;
}

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
  out << "alpha,gamma,seed,num_events,sim_relative_revenue,analytic_relative_revenue,"
         "honest_control_revenue,threshold_gamma\n";
  for (const auto& r : rows) {
    out << format_real(r.alpha) << ',' << format_real(r.gamma) << ',' << r.seed << ','
        << r.num_events << ',' << format_real(r.sim_relative_revenue) << ','
        << format_real(r.analytic_relative_revenue) << ','
        << format_real(r.honest_control_revenue) << ',' << format_real(r.threshold_gamma)
        << '\n';
  }
}

void write_threshold_csv(std::ostream& out, const std::vector<double>& gammas) {
  out << "gamma,threshold\n";
  for (double g : gammas) out << format_real(g) << ',' << format_real(threshold(g)) << '\n';
}

}  // namespace selfish::cli
