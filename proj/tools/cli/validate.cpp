#include "validate.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "selfish/analytic.hpp"
#include "selfish/markov_oracle.hpp"
#include "selfish/sim.hpp"
#include "selfish/strategy.hpp"
#include "sweep.hpp"

namespace selfish::cli {

namespace {

constexpr double kOracleTolerance = 1e-10;
constexpr double kSimTolerance = 0.005;
constexpr double kQuickSimTolerance = 0.02;
constexpr double kGridStep = 0.025;

CheckResult check(std::string name, double measured, double bound, bool pass) {
  return CheckResult{std::move(name), measured, bound, pass};
}

CheckResult check_below(std::string name, double measured, double bound) {
  return check(std::move(name), measured, bound, measured < bound);
}

std::vector<double> coarse_alphas() {
  std::vector<double> v;
  for (int i = 1; i <= 9; ++i) v.push_back(i * 0.05);
  return v;
}

const std::vector<double> kGammas{0.0, 0.25, 0.5, 0.75, 1.0};

CheckResult threshold_exactness() {
  const double err = std::max({std::abs(threshold(0.0) - 1.0 / 3.0),
                               std::abs(threshold(0.5) - 0.25), std::abs(threshold(1.0))});
  return check_below("threshold_exact", err, 1e-12);
}

CheckResult closed_form_vs_oracle(bool inject_fault) {
  oracle::RewardTable rewards;
  if (inject_fault) rewards.lead_two_pool = 1.0;
  double worst = 0.0;
  for (double a : coarse_alphas()) {
    for (double g : kGammas) {
      const ModelParams p{a, g};
      const auto chain = oracle::build_chain(p, oracle::auto_k_max(a));
      const auto solved = oracle::stationary(chain);
      const auto closed = state_probabilities(p);
      worst = std::max({worst, std::abs(solved.p0 - closed.p0),
                        std::abs(solved.p0_prime - closed.p0_prime)});
      for (std::size_t k = 1; k <= solved.leads.size(); ++k) {
        worst = std::max(worst, std::abs(solved.lead(k) - closed.lead(k)));
      }
      const auto o = oracle::oracle_revenue(chain, solved, rewards);
      const auto r = revenue_rates(p);
      const double rel_o = o.pool / (o.pool + o.others);
      worst = std::max({worst, std::abs(o.pool - r.pool), std::abs(o.others - r.others),
                        std::abs(rel_o - relative_revenue(p))});
    }
  }
  return check_below("closed_form_vs_oracle", worst, kOracleTolerance);
}

struct GridRun {
  std::vector<double> alphas;  // 0.025 .. 0.475
  std::vector<std::vector<double>> sim;  // [gamma][alpha]
};

GridRun simulate_grid(std::uint64_t events, unsigned workers) {
  GridRun out;
  for (int i = 1; i <= 19; ++i) out.alphas.push_back(i * kGridStep);
  out.sim.assign(kGammas.size(), std::vector<double>(out.alphas.size()));
  const auto n = kGammas.size() * out.alphas.size();
  parallel_for(n, workers, [&](std::size_t idx) {
    const auto gi = idx / out.alphas.size();
    const auto ai = idx % out.alphas.size();
    SimConfig c;
    c.alpha = out.alphas[ai];
    c.gamma = kGammas[gi];
    c.num_events = events;
    c.seed = 1000 + idx;
    c.track_occupancy = false;
    out.sim[gi][ai] = run(c).relative_revenue;
  });
  return out;
}

CheckResult sim_vs_closed_form(const GridRun& grid, double tol) {
  double worst = 0.0;
  for (std::size_t gi = 0; gi < kGammas.size(); ++gi) {
    for (std::size_t ai = 0; ai < grid.alphas.size(); ++ai) {
      const double a = grid.alphas[ai];
      if (ai % 2 == 0) continue;  // the 0.05-step points
      worst = std::max(worst, std::abs(grid.sim[gi][ai] - relative_revenue({a, kGammas[gi]})));
    }
  }
  return check_below("sim_vs_closed_form", worst, tol);
}

CheckResult threshold_crossing(const GridRun& grid) {
  double worst = 0.0;
  int sign_errors = 0;
  for (std::size_t gi = 0; gi < kGammas.size(); ++gi) {
    const double t = threshold(kGammas[gi]);
    const auto& sim = grid.sim[gi];
    // Crossing: the smallest grid alpha from which the pool out-earns its share.
    std::size_t first = grid.alphas.size();
    for (std::size_t ai = grid.alphas.size(); ai-- > 0;) {
      if (sim[ai] > grid.alphas[ai]) {
        first = ai;
      } else {
        break;
      }
    }
    const double crossing = first < grid.alphas.size() ? grid.alphas[first] : 0.5;
    worst = std::max(worst, std::abs(crossing - t));
    for (std::size_t ai = 0; ai < grid.alphas.size(); ++ai) {
      const double a = grid.alphas[ai];
      if (std::abs(a - t) <= kGridStep + 1e-12) continue;
      if ((sim[ai] > a) != (a > t)) ++sign_errors;
    }
  }
  return check("threshold_crossing", worst, kGridStep,
               worst <= kGridStep + 1e-12 && sign_errors == 0);
}

CheckResult honest_control(std::uint64_t events, double tol) {
  double worst = 0.0;
  for (double a : {0.1, 0.3, 0.5}) {
    SimConfig c;
    c.alpha = a;
    c.num_events = events;
    c.seed = 77;
    c.track_occupancy = false;
    worst = std::max(worst, std::abs(run_honest_control(c).relative_revenue - a));
  }
  return check_below("honest_control", worst, tol);
}

CheckResult occupancy(std::uint64_t events, double tol) {
  SimConfig c;
  c.alpha = 1.0 / 3.0;
  c.num_events = events;
  c.seed = 17;
  const auto r = run(c);
  const double worst = std::max({std::abs(r.state_occupancy.at(0) - 9.0 / 17.0),
                                 std::abs(r.state_occupancy.at(1) - 2.0 / 17.0),
                                 std::abs(r.state_occupancy.at(2) - 3.0 / 17.0)});
  const double norm_err = std::abs(state_probabilities({c.alpha, c.gamma}).total() - 1.0);
  return check("state_occupancy", worst, tol, worst < tol && norm_err < 1e-12);
}

CheckResult waste(std::uint64_t events) {
  double worst = 0.0;
  bool orphans = true;
  for (double a : coarse_alphas()) {
    for (double g : kGammas) {
      const auto r = revenue_rates({a, g});
      worst = std::max(worst, r.pool + r.others);
    }
    SimConfig c;
    c.alpha = a;
    c.num_events = events / 10;
    c.seed = 5;
    c.track_occupancy = false;
    const auto res = run(c);
    if (res.ledger.orphaned_pool + res.ledger.orphaned_honest == 0) orphans = false;
  }
  return check("waste", worst, 1.0, worst < 1.0 && orphans);
}

CheckResult superlinearity() {
  int violations = 0;
  for (double g : {0.0, 0.5, 1.0}) {
    double prev = -1.0;
    for (double a = threshold(g) + 0.01; a <= 0.49 + 1e-12; a += 0.01) {
      const double per_member = relative_revenue({a, g}) / a;
      if (!(per_member > prev)) ++violations;
      prev = per_member;
    }
  }
  return check("superlinearity", violations, 0, violations == 0);
}

// Reference edges of the state machine: (state, event) -> successor and credit.
// States: -1 is 0', k >= 0 is lead k. Events: 0 pool, 1 honest, 2 honest on
// the pool branch, 3 honest on the honest branch.
struct Edge {
  int from;
  int event;
  int to;
  Credit credit;
};

int state_label(const ChainState& s) { return s.tie_zero ? -1 : static_cast<int>(s.lead); }

CheckResult state_machine_table() {
  const std::vector<Edge> edges{
      {0, 0, 1, {}},
      {0, 1, 0, {.others = 1}},
      {1, 0, 2, {}},
      {1, 1, -1, {}},
      {2, 0, 3, {}},
      {2, 1, 0, {.pool = 2, .orphaned_honest = 1}},
      {3, 0, 4, {}},
      {3, 1, 2, {.pool = 1, .orphaned_honest = 1}},
      {4, 0, 5, {}},
      {4, 1, 3, {.pool = 1, .orphaned_honest = 1}},
      {-1, 0, 0, {.pool = 2, .orphaned_honest = 1}},
      {-1, 2, 0, {.pool = 1, .others = 1, .orphaned_honest = 1}},
      {-1, 3, 0, {.others = 2, .orphaned_pool = 1}},
  };
  int mismatches = 0;
  for (const Edge& e : edges) {
    BlockTree tree;
    SelfishState s = selfish_init(tree.genesis());
    auto pool = [&] {
      const auto id = tree.extend(pool_mining_target(s.chain), MinerClass::Pool).id;
      return selfish_on_pool_block(s, tree, id);
    };
    auto honest = [&](TieBranch b) {
      const auto id = tree.extend(honest_on_block(s.chain, b), MinerClass::Honest).id;
      return selfish_on_others_block(s, tree, id, b);
    };
    if (e.from == -1) {
      s = pool().state;
      s = honest(TieBranch::NotApplicable).state;
    } else {
      for (int i = 0; i < e.from; ++i) s = pool().state;
    }
    const Step step = e.event == 0   ? pool()
                      : e.event == 1 ? honest(TieBranch::NotApplicable)
                      : e.event == 2 ? honest(TieBranch::PoolBranch)
                                     : honest(TieBranch::OthersBranch);
    if (state_label(step.state.chain) != e.to || !(step.credit == e.credit) ||
        !consistent(step.state.chain, tree)) {
      ++mismatches;
    }
  }
  return check("state_machine_table", mismatches, 0, mismatches == 0);
}

CheckResult determinism(std::uint64_t events) {
  SimConfig c;
  c.alpha = 0.41;
  c.gamma = 0.5;
  c.num_events = events;
  c.seed = 99;
  c.keep_tree = true;
  const auto reference = run(c);
  int mismatches = 0;
  for (int i = 1; i < 20; ++i) {
    if (!(run(c) == reference)) ++mismatches;
  }
  return check("determinism", mismatches, 0, mismatches == 0);
}

}  // namespace

std::vector<CheckResult> run_validation(const ValidateOptions& options) {
  const std::uint64_t events = options.quick ? 100'000 : 1'000'000;
  const double tol = options.quick ? kQuickSimTolerance : kSimTolerance;

  std::vector<CheckResult> out;
  out.push_back(threshold_exactness());
  out.push_back(closed_form_vs_oracle(options.inject_fault));
  const auto grid = simulate_grid(events, options.workers);
  out.push_back(sim_vs_closed_form(grid, tol));
  out.push_back(threshold_crossing(grid));
  out.push_back(honest_control(events, tol));
  out.push_back(occupancy(events, tol));
  out.push_back(waste(events));
  out.push_back(superlinearity());
  out.push_back(state_machine_table());
  out.push_back(determinism(events / 10));
  return out;
}

void write_summary(std::ostream& out, const std::vector<CheckResult>& checks) {
  out << "check,measured,bound,result\n";
  for (const auto& c : checks) {
    out << c.name << ',' << format_real(c.measured) << ',' << format_real(c.bound) << ','
        << (c.pass ? "PASS" : "FAIL") << '\n';
  }
}

}  // namespace selfish::cli
