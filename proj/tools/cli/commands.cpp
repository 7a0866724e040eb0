#include "commands.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <json.hpp>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "grid.hpp"
#include "selfish/analytic.hpp"
#include "selfish/errors.hpp"
#include "selfish/sim.hpp"
#include "sweep.hpp"
#include "validate.hpp"

namespace selfish::cli {

namespace {

constexpr double kDefaultGamma = 0.5;
constexpr std::uint64_t kDefaultEvents = 1'000'000;
constexpr std::uint64_t kDefaultSeed = 1;

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  double alpha = 0.0;
  double gamma = kDefaultGamma;
  std::uint64_t events = kDefaultEvents;
  std::uint64_t seed = kDefaultSeed;
  std::string seeds = "1";
  std::string alpha_grid = "0:0.475:0.025";
  std::string gamma_list = "0,0.5,1";
  std::string granularity = "aggregate";
  std::string settlement = "publish";
  std::string strategy = "selfish";
  std::string output;
  unsigned workers = 1;
  bool quick = false;
  bool inject_fault = false;
  bool json = false;
  bool threshold_curve = false;
};

// Writes to `path`, or to `fallback` when the path is empty.
template <typename Fn>
void with_output(const std::string& path, std::ostream& fallback, Fn&& fn) {
  if (path.empty()) {
    fn(fallback);
    return;
  }
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw IoError("cannot open '" + path + "' for writing");
  fn(file);
  file.flush();
  if (!file) throw IoError("write to '" + path + "' failed");
}

void print_kv(std::ostream& out, const char* key, const std::string& value) {
  out << key;
  for (auto n = std::char_traits<char>::length(key); n < 20; ++n) out << ' ';
  out << value << '\n';
}

void print_kv(std::ostream& out, const char* key, double value) {
  print_kv(out, key, format_real(value));
}

int cmd_analytic(const Options& o, std::ostream& out) {
  const auto rep = analyze({o.alpha, o.gamma});
  if (o.json) {
    nlohmann::ordered_json j;
    j["alpha"] = o.alpha;
    j["gamma"] = o.gamma;
    j["p0"] = rep.dist.p0;
    j["p0_prime"] = rep.dist.p0_prime;
    j["p1"] = rep.dist.lead(1);
    j["p2"] = rep.dist.lead(2);
    j["lead_tail_ratio"] = rep.dist.tail_ratio;
    j["r_pool"] = rep.rates.pool;
    j["r_others"] = rep.rates.others;
    j["relative_revenue"] = rep.relative_revenue;
    j["threshold"] = rep.threshold;
    j["profitable"] = rep.profitable;
    out << j.dump(2) << '\n';
    return kOk;
  }
  print_kv(out, "alpha", o.alpha);
  print_kv(out, "gamma", o.gamma);
  print_kv(out, "p0", rep.dist.p0);
  print_kv(out, "p0_prime", rep.dist.p0_prime);
  print_kv(out, "p1", rep.dist.lead(1));
  print_kv(out, "p2", rep.dist.lead(2));
  print_kv(out, "r_pool", rep.rates.pool);
  print_kv(out, "r_others", rep.rates.others);
  print_kv(out, "relative_revenue", rep.relative_revenue);
  print_kv(out, "threshold", rep.threshold);
  print_kv(out, "above_threshold", rep.profitable ? "yes" : "no");
  return kOk;
}

int cmd_simulate(const Options& o, std::ostream& out) {
  SimConfig c;
  c.alpha = o.alpha;
  c.gamma = o.gamma;
  c.num_events = o.events;
  c.seed = o.seed;
  c.granularity = parse_granularity(o.granularity);
  const auto settlement = parse_settlement(o.settlement);
  PoolStrategy strategy = PoolStrategy::Selfish;
  if (o.strategy == "honest") {
    strategy = PoolStrategy::Honest;
  } else if (o.strategy != "selfish") {
    throw ConfigError("strategy must be 'selfish' or 'honest', got '" + o.strategy + "'");
  }
  const auto r = run(c, strategy);
  const auto& ledger = r.settled(settlement);
  const bool has_analytic = c.alpha < 0.5 && strategy == PoolStrategy::Selfish;
  const double analytic = has_analytic ? relative_revenue({r.effective_alpha, r.effective_gamma})
                                       : r.effective_alpha;

  if (o.json) {
    nlohmann::ordered_json j;
    j["alpha"] = c.alpha;
    j["gamma"] = c.gamma;
    j["events"] = c.num_events;
    j["seed"] = c.seed;
    j["granularity"] = to_string(c.granularity);
    j["settlement"] = to_string(settlement);
    j["strategy"] = o.strategy;
    j["pool_blocks"] = ledger.pool_blocks;
    j["others_blocks"] = ledger.others_blocks;
    j["orphaned_pool"] = ledger.orphaned_pool;
    j["orphaned_honest"] = ledger.orphaned_honest;
    j["relative_revenue"] = ledger.relative_revenue();
    j["expected_relative_revenue"] = analytic;
    j["max_lead"] = r.max_lead;
    j["state_occupancy"] = r.state_occupancy;
    out << j.dump(2) << '\n';
    return kOk;
  }
  print_kv(out, "alpha", c.alpha);
  print_kv(out, "gamma", c.gamma);
  print_kv(out, "events", std::to_string(c.num_events));
  print_kv(out, "seed", std::to_string(c.seed));
  print_kv(out, "strategy", o.strategy);
  print_kv(out, "settlement", to_string(settlement));
  print_kv(out, "pool_blocks", std::to_string(ledger.pool_blocks));
  print_kv(out, "others_blocks", std::to_string(ledger.others_blocks));
  print_kv(out, "orphaned_pool", std::to_string(ledger.orphaned_pool));
  print_kv(out, "orphaned_honest", std::to_string(ledger.orphaned_honest));
  print_kv(out, "relative_revenue", ledger.relative_revenue());
  print_kv(out, "expected", analytic);
  print_kv(out, "max_lead", std::to_string(r.max_lead));
  const char* labels[] = {"occupancy_0", "occupancy_0prime", "occupancy_1", "occupancy_2"};
  for (std::size_t k = 0; k < 4 && k < r.state_occupancy.size(); ++k) {
    print_kv(out, labels[k], r.state_occupancy[k]);
  }
  return kOk;
}

int cmd_sweep(const Options& o, std::ostream& out) {
  if (o.threshold_curve) {
    const auto gammas = parse_real_list(o.gamma_list);
    for (double g : gammas) threshold(g);
    with_output(o.output, out, [&](std::ostream& s) { write_threshold_csv(s, gammas); });
    return kOk;
  }
  SweepPlan plan;
  plan.alpha_grid = parse_real_list(o.alpha_grid);
  plan.gamma_list = parse_real_list(o.gamma_list);
  plan.num_events = o.events;
  plan.seeds = parse_seed_list(o.seeds);
  plan.granularity = parse_granularity(o.granularity);
  plan.settlement = parse_settlement(o.settlement);
  plan.output_path = o.output;
  plan.workers = o.workers;
  validate(plan);
  if (!plan.output_path.empty()) {
    // Fail on an unwritable path before spending time on the runs.
    std::ofstream probe(plan.output_path, std::ios::app);
    if (!probe) throw IoError("cannot open '" + plan.output_path + "' for writing");
  }
  const auto rows = run_sweep(plan);
  with_output(plan.output_path, out, [&](std::ostream& s) { write_sweep_csv(s, rows); });
  return kOk;
}

int cmd_threshold(const Options& o, bool single, std::ostream& out) {
  if (single) {
    out << format_real(threshold(o.gamma)) << '\n';
    return kOk;
  }
  const auto gammas = parse_real_list(o.gamma_list);
  for (double g : gammas) threshold(g);
  with_output(o.output, out, [&](std::ostream& s) { write_threshold_csv(s, gammas); });
  return kOk;
}

int cmd_validate(const Options& o, std::ostream& out, std::ostream& err) {
  ValidateOptions v;
  v.quick = o.quick;
  v.inject_fault = o.inject_fault;
  v.workers = o.workers;
  const auto checks = run_validation(v);
  with_output(o.output, out, [&](std::ostream& s) { write_summary(s, checks); });
  bool ok = true;
  for (const auto& c : checks) {
    if (!c.pass) {
      err << "validate: check '" << c.name << "' failed (measured " << format_real(c.measured)
          << ", bound " << format_real(c.bound) << ")\n";
      ok = false;
    }
  }
  return ok ? kOk : kCheckFailed;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Selfish-mining simulator and revenue analysis"};
  app.name("selfish");
  app.set_config("--config", "", "TOML/INI file with default flag values");
  app.require_subcommand(1);
  Options o;

  auto add_gamma = [&](CLI::App* sub) {
    return sub->add_option("--gamma", o.gamma, "Honest share mining on the pool branch in a tie")
        ->capture_default_str();
  };
  auto add_sim_flags = [&](CLI::App* sub) {
    sub->add_option("--events", o.events, "Blocks mined per run")->capture_default_str();
    sub->add_option("--granularity", o.granularity, "aggregate | per-miner:N")
        ->capture_default_str();
    sub->add_option("--settlement", o.settlement, "publish | discard")->capture_default_str();
  };

  auto* analytic = app.add_subcommand("analytic", "Closed-form state probabilities and revenue");
  analytic->add_option("--alpha", o.alpha, "Pool mining-power share")->required();
  add_gamma(analytic);
  analytic->add_flag("--json", o.json, "Machine-readable output");

  auto* simulate = app.add_subcommand("simulate", "One Monte Carlo run");
  simulate->add_option("--alpha", o.alpha, "Pool mining-power share")->required();
  add_gamma(simulate);
  add_sim_flags(simulate);
  simulate->add_option("--seed", o.seed, "Base seed")->capture_default_str();
  simulate->add_option("--strategy", o.strategy, "selfish | honest")->capture_default_str();
  simulate->add_flag("--json", o.json, "Machine-readable output");

  auto* sweep = app.add_subcommand("sweep", "Revenue over an (alpha, gamma, seed) grid as CSV");
  sweep->add_option("--alpha-grid", o.alpha_grid, "List a,b,c or range start:stop:step")
      ->capture_default_str();
  sweep->add_option("--gamma-list", o.gamma_list, "List or range of gamma values")
      ->capture_default_str();
  add_sim_flags(sweep);
  sweep->add_option("--seeds", o.seeds, "Comma-separated seeds")->capture_default_str();
  sweep->add_option("--output", o.output, "CSV path (default: standard output)");
  sweep->add_option("--workers", o.workers, "Parallel runs")->capture_default_str();
  sweep->add_flag("--threshold-curve", o.threshold_curve,
                  "Emit (gamma, threshold) over the gamma list instead");

  auto* thresh = app.add_subcommand("threshold", "Profitability threshold per gamma");
  auto* single_gamma = add_gamma(thresh);
  auto* gamma_list =
      thresh->add_option("--gamma-list", o.gamma_list, "List or range of gamma values");
  single_gamma->excludes(gamma_list);
  thresh->add_option("--output", o.output, "CSV path (default: standard output)");

  auto* validate_cmd = app.add_subcommand("validate", "Run the consistency suite");
  validate_cmd->add_flag("--quick", o.quick, "10^5 events per point, tolerance 0.02");
  validate_cmd->add_option("--workers", o.workers, "Parallel runs")->capture_default_str();
  validate_cmd->add_option("--output", o.output, "Summary path (default: standard output)");
  validate_cmd->add_flag("--inject-fault", o.inject_fault, "Corrupt one oracle reward")
      ->group("");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  try {
    if (analytic->parsed()) return cmd_analytic(o, out);
    if (simulate->parsed()) return cmd_simulate(o, out);
    if (sweep->parsed()) return cmd_sweep(o, out);
    if (thresh->parsed()) return cmd_threshold(o, gamma_list->count() == 0, out);
    if (validate_cmd->parsed()) return cmd_validate(o, out, err);
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kIo;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}

}  // namespace selfish::cli
