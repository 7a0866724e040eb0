#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "selfish/analytic.hpp"
#include "selfish/chain.hpp"

namespace selfish {

/// One aggregate pool and one aggregate honest agent; the next block's miner
/// is a Bernoulli(alpha) draw and tie branches are Bernoulli(gamma) draws.
struct Aggregate {
  bool operator==(const Aggregate&) const = default;
};

/// `miners` identical miners racing with explicit exponential clocks;
/// round(miners * alpha) of them form the pool and round(gamma * honest) of
/// the honest ones mine on the pool's branch during a tie.
struct PerMiner {
  std::uint32_t miners = 1000;
  bool operator==(const PerMiner&) const = default;
};

using Granularity = std::variant<Aggregate, PerMiner>;

/// Parses "aggregate" or "per-miner:N". Throws ConfigError.
Granularity parse_granularity(const std::string& text);
std::string to_string(const Granularity& g);

/// How an outstanding private branch is settled when the run stops.
enum class Settlement : std::uint8_t { Publish, Discard };

Settlement parse_settlement(const std::string& text);
std::string to_string(Settlement s);

enum class PoolStrategy : std::uint8_t { Selfish, Honest };

struct SimConfig {
  double alpha = 0.0;
  double gamma = 0.5;
  std::uint64_t num_events = 1'000'000;
  std::uint64_t seed = 0;
  Granularity granularity = Aggregate{};
  bool track_occupancy = true;
  bool keep_tree = false;
};

/// Throws ConfigError unless alpha in [0, 0.5], gamma in [0, 1],
/// num_events >= 1 and the per-miner count is positive.
void validate(const SimConfig& config);

struct SimResult {
  RevenueLedger ledger;          // incremental, publish settlement
  RevenueLedger audit_ledger;    // recounted from the block tree, publish settlement
  RevenueLedger discard_ledger;  // recounted from the block tree, private branch dropped
  double relative_revenue = 0.0;
  double discard_relative_revenue = 0.0;
  /// Events observed in each state before the event fired; index 0 is
  /// state 0, index 1 is 0', index k + 1 is lead k.
  std::vector<std::uint64_t> occupancy_counts;
  std::vector<double> state_occupancy;
  std::uint64_t wall_events = 0;
  std::uint32_t max_lead = 0;
  /// Events since the system last sat in state 0 when the run stopped.
  std::uint64_t open_excursion_events = 0;
  double effective_alpha = 0.0;
  double effective_gamma = 0.0;
  std::optional<BlockTree> tree;

  const RevenueLedger& settled(Settlement s) const {
    return s == Settlement::Publish ? ledger : discard_ledger;
  }
  bool operator==(const SimResult& o) const;
};

/// Drives the selfish pool against honest miners for `num_events` blocks.
/// Deterministic per config. Throws ConfigError before any event.
SimResult run(const SimConfig& config);

/// Same engine with the pool publishing every block at once.
SimResult run_honest_control(const SimConfig& config);

SimResult run(const SimConfig& config, PoolStrategy strategy);

struct OccupancyReport {
  std::vector<double> empirical;  // same indexing as SimResult::state_occupancy
  std::vector<double> analytic;
  std::vector<double> deviations;
  double max_deviation = 0.0;
};

/// Compares the empirical occupancy against the closed-form distribution.
/// Throws ContractViolation when the result carries no occupancy.
OccupancyReport occupancy_check(const SimResult& result, const ModelParams& params);

}  // namespace selfish
