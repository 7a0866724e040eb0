#include "selfish/sim.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <queue>
#include <utility>
#include <vector>

#include "selfish/errors.hpp"
#include "selfish/rng.hpp"
#include "selfish/strategy.hpp"

namespace selfish {

namespace {

std::size_t state_index(const ChainState& s) {
  if (s.tie_zero) return 1;
  return s.lead == 0 ? 0 : static_cast<std::size_t>(s.lead) + 1;
}

// Draws who finds the next block and, in a tie, which head honest miners used.
class EventSource {
 public:
  explicit EventSource(const SimConfig& c)
      : alpha_(c.alpha),
        gamma_(c.gamma),
        miner_rng_(c.seed, Stream::MinerIdentity),
        tie_rng_(c.seed, Stream::TieChoice) {
    if (const auto* pm = std::get_if<PerMiner>(&c.granularity)) {
      per_miner_ = true;
      miners_ = pm->miners;
      pool_miners_ = static_cast<std::uint32_t>(std::llround(miners_ * c.alpha));
      const auto honest = miners_ - pool_miners_;
      on_pool_branch_ = static_cast<std::uint32_t>(std::llround(c.gamma * honest));
      effective_alpha_ = static_cast<double>(pool_miners_) / miners_;
      effective_gamma_ = honest == 0 ? 0.0 : static_cast<double>(on_pool_branch_) / honest;
    } else {
      effective_alpha_ = alpha_;
      effective_gamma_ = gamma_;
    }
  }

  MiningEvent next(bool tie) {
    if (per_miner_) return next_per_miner(tie);
    MiningEvent e;
    e.miner = miner_rng_.bernoulli(alpha_) ? MinerClass::Pool : MinerClass::Honest;
    if (tie && e.miner == MinerClass::Honest) {
      e.tie_branch = tie_rng_.bernoulli(gamma_) ? TieBranch::PoolBranch : TieBranch::OthersBranch;
    }
    return e;
  }

  double effective_alpha() const { return effective_alpha_; }
  double effective_gamma() const { return effective_gamma_; }

 private:
  // Every miner runs an exponential clock at the same rate; the earliest wins
  // and only the winner draws a fresh clock. Miners [0, pool) are the pool, the
  // first `on_pool_branch_` honest miners mine on the pool's branch in a tie.
  MiningEvent next_per_miner(bool tie) {
    if (clocks_.empty()) {
      for (std::uint32_t i = 0; i < miners_; ++i) {
        clocks_.push({miner_rng_.exponential(1.0), i});
      }
    }
    const auto [now, winner] = clocks_.top();
    clocks_.pop();
    clocks_.push({now + miner_rng_.exponential(1.0), winner});
    MiningEvent e;
    e.miner = winner < pool_miners_ ? MinerClass::Pool : MinerClass::Honest;
    if (tie && e.miner == MinerClass::Honest) {
      e.tie_branch = winner - pool_miners_ < on_pool_branch_ ? TieBranch::PoolBranch
                                                              : TieBranch::OthersBranch;
    }
    return e;
  }

  double alpha_;
  double gamma_;
  Rng miner_rng_;
  Rng tie_rng_;
  bool per_miner_ = false;
  std::uint32_t miners_ = 0;
  using Clock = std::pair<double, std::uint32_t>;
  std::priority_queue<Clock, std::vector<Clock>, std::greater<>> clocks_;
  std::uint32_t pool_miners_ = 0;
  std::uint32_t on_pool_branch_ = 0;
  double effective_alpha_ = 0.0;
  double effective_gamma_ = 0.0;
};

BlockId deepest_published(const BlockTree& tree, BlockId head) {
  while (!tree.at(head).published) head = *tree.at(head).parent;
  return head;
}

}  // namespace

Granularity parse_granularity(const std::string& text) {
  if (text == "aggregate") return Aggregate{};
  constexpr std::string_view prefix = "per-miner:";
  if (text.starts_with(prefix)) {
    const auto digits = text.substr(prefix.size());
    if (!digits.empty() && std::all_of(digits.begin(), digits.end(), ::isdigit) &&
        digits.size() < 10) {
      const auto n = std::stoul(digits);
      if (n > 0) return PerMiner{static_cast<std::uint32_t>(n)};
    }
  }
  throw ConfigError("granularity must be 'aggregate' or 'per-miner:N' with N > 0, got '" +
                    text + "'");
}

std::string to_string(const Granularity& g) {
  if (const auto* pm = std::get_if<PerMiner>(&g)) {
    return "per-miner:" + std::to_string(pm->miners);
  }
  return "aggregate";
}

Settlement parse_settlement(const std::string& text) {
  if (text == "publish") return Settlement::Publish;
  if (text == "discard") return Settlement::Discard;
  throw ConfigError("settlement must be 'publish' or 'discard', got '" + text + "'");
}

std::string to_string(Settlement s) { return s == Settlement::Publish ? "publish" : "discard"; }

void validate(const SimConfig& c) {
  if (!(c.alpha >= 0.0 && c.alpha <= 0.5)) {
    throw ConfigError("alpha must lie in [0, 0.5], got " + std::to_string(c.alpha));
  }
  if (!(c.gamma >= 0.0 && c.gamma <= 1.0)) {
    throw ConfigError("gamma must lie in [0, 1], got " + std::to_string(c.gamma));
  }
  if (c.num_events < 1) throw ConfigError("num_events must be at least 1");
  if (c.num_events >= std::numeric_limits<BlockId>::max()) {
    throw ConfigError("num_events exceeds the block id range");
  }
  if (const auto* pm = std::get_if<PerMiner>(&c.granularity); pm && pm->miners == 0) {
    throw ConfigError("per-miner granularity needs at least one miner");
  }
}

bool SimResult::operator==(const SimResult& o) const {
  const bool trees_equal =
      tree.has_value() == o.tree.has_value() &&
      (!tree || std::ranges::equal(tree->blocks(), o.tree->blocks()));
  return ledger == o.ledger && audit_ledger == o.audit_ledger &&
         discard_ledger == o.discard_ledger && relative_revenue == o.relative_revenue &&
         discard_relative_revenue == o.discard_relative_revenue &&
         occupancy_counts == o.occupancy_counts && state_occupancy == o.state_occupancy &&
         wall_events == o.wall_events && max_lead == o.max_lead &&
         open_excursion_events == o.open_excursion_events &&
         effective_alpha == o.effective_alpha && effective_gamma == o.effective_gamma &&
         trees_equal;
}

SimResult run(const SimConfig& config) { return run(config, PoolStrategy::Selfish); }

SimResult run_honest_control(const SimConfig& config) {
  return run(config, PoolStrategy::Honest);
}

SimResult run(const SimConfig& config, PoolStrategy strategy) {
  validate(config);

  BlockTree tree;
  tree.reserve(config.num_events + 1);
  EventSource source(config);
  SelfishState state = selfish_init(tree.genesis());
  SimResult result;
  RevenueLedger& ledger = result.ledger;
  std::uint64_t excursion_start = 0;

  for (std::uint64_t i = 0; i < config.num_events; ++i) {
    const ChainState& chain = state.chain;
    if (config.track_occupancy) {
      const auto idx = state_index(chain);
      if (idx >= result.occupancy_counts.size()) result.occupancy_counts.resize(idx + 1, 0);
      ++result.occupancy_counts[idx];
    }

    const MiningEvent event = source.next(chain.tie_zero);
    Step step;
    if (event.miner == MinerClass::Pool) {
      const BlockId mined = tree.extend(pool_mining_target(chain), MinerClass::Pool).id;
      step = strategy == PoolStrategy::Selfish ? selfish_on_pool_block(state, tree, mined)
                                               : honest_pool_on_pool_block(state, tree, mined);
    } else {
      const BlockId target = honest_on_block(chain, event.tie_branch);
      const BlockId mined = tree.extend(target, MinerClass::Honest).id;
      step = strategy == PoolStrategy::Selfish
                 ? selfish_on_others_block(state, tree, mined, event.tie_branch)
                 : honest_pool_on_others_block(state, tree, mined);
    }
    apply(ledger, step.credit);
    ++ledger.total_events;
    state = step.state;
    result.max_lead = std::max(result.max_lead, state.chain.lead);
    if (state.chain.lead == 0 && !state.chain.tie_zero) excursion_start = i + 1;
  }
  result.wall_events = config.num_events;
  result.open_excursion_events = config.num_events - excursion_start;
  result.effective_alpha = source.effective_alpha();
  result.effective_gamma = source.effective_gamma();

  // Discard: unpublished pool blocks never reach the network. Equal-length
  // public branches go to the one heard first, the honest head.
  const ChainState& end = state.chain;
  {
    const std::array<BlockId, 2> heads{end.public_head,
                                       deepest_published(tree, end.private_head)};
    result.discard_ledger = recount(tree, main_chain(tree, heads, end.public_head).back());
  }

  // Publish: the pool reveals its whole private branch before counting.
  if (end.tie_zero) {
    apply(ledger, Credit{.others = 1, .orphaned_pool = 1});
  } else if (end.lead > 0) {
    tree.publish_through(end.private_head);
    apply(ledger, Credit{.pool = end.lead});
  }
  const std::array<BlockId, 2> heads{end.public_head, end.private_head};
  result.audit_ledger = recount(tree, main_chain(tree, heads, end.public_head).back());

  result.relative_revenue = ledger.relative_revenue();
  result.discard_relative_revenue = result.discard_ledger.relative_revenue();
  if (config.track_occupancy) {
    result.state_occupancy.resize(result.occupancy_counts.size());
    for (std::size_t k = 0; k < result.occupancy_counts.size(); ++k) {
      result.state_occupancy[k] = static_cast<double>(result.occupancy_counts[k]) /
                                  static_cast<double>(config.num_events);
    }
  }
  if (config.keep_tree) result.tree = std::move(tree);
  return result;
}

OccupancyReport occupancy_check(const SimResult& result, const ModelParams& params) {
  if (result.state_occupancy.empty()) {
    throw ContractViolation("occupancy_check: result was produced without occupancy tracking");
  }
  const auto dist = state_probabilities(params);
  OccupancyReport report;
  report.empirical = result.state_occupancy;
  const auto n = report.empirical.size();
  report.analytic.resize(n);
  report.deviations.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    report.analytic[k] = k == 0 ? dist.p0 : k == 1 ? dist.p0_prime : dist.lead(k - 1);
    report.deviations[k] = std::abs(report.empirical[k] - report.analytic[k]);
    report.max_deviation = std::max(report.max_deviation, report.deviations[k]);
  }
  return report;
}

}  // namespace selfish
