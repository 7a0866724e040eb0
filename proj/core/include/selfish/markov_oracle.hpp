#pragma once

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include "selfish/analytic.hpp"

namespace selfish::oracle {

/// What happened on a transition; each kind carries its own reward.
enum class TransitionKind : std::uint8_t {
  PoolExtends,          // (a) pool mines on its private head, lead + 1
  PoolWinsTie,          // (b) 0' -> 0 by a pool block
  HonestOnPoolBranch,   // (c) 0' -> 0 by an honest block on the pool head
  HonestOnPublicBranch, // (d) 0' -> 0 by an honest block on the honest head
  HonestNoFork,         // (e) 0 -> 0
  HonestForcesTie,      // (f) 1 -> 0'
  HonestAtLeadTwo,      // (g) 2 -> 0, pool publishes everything
  HonestAtLongLead,     // (h) k -> k-1 for k >= 3
  TruncationLoop,       // pool block at k_max, absorbed by the self-loop
};

/// Main-chain blocks credited per transition kind. Kinds not listed here
/// carry no immediate reward.
struct RewardTable {
  double pool_wins_tie_pool = 2.0;
  double pool_branch_pool = 1.0;
  double pool_branch_others = 1.0;
  double public_branch_others = 2.0;
  double no_fork_others = 1.0;
  double lead_two_pool = 2.0;
  double long_lead_pool = 1.0;
};

struct Transition {
  std::size_t from = 0;
  std::size_t to = 0;
  double probability = 0.0;
  TransitionKind kind = TransitionKind::PoolExtends;
};

/// States are indexed 0 -> state 0, 1 -> state 0', k + 1 -> lead k.
class TruncatedChain {
 public:
  static constexpr std::size_t kZero = 0;
  static constexpr std::size_t kZeroPrime = 1;
  static constexpr std::size_t lead_index(std::size_t k) { return k + 1; }

  TruncatedChain(ModelParams params, std::size_t k_max, std::vector<Transition> transitions)
      : params_(params), k_max_(k_max), transitions_(std::move(transitions)) {}

  const ModelParams& params() const { return params_; }
  std::size_t k_max() const { return k_max_; }
  std::size_t num_states() const { return k_max_ + 2; }
  const std::vector<Transition>& transitions() const { return transitions_; }

  /// Dense row-major copy, mostly for tests.
  std::vector<double> dense() const;
  std::vector<double> row_sums() const;

 private:
  ModelParams params_;
  std::size_t k_max_;
  std::vector<Transition> transitions_;
};

/// Smallest k with (alpha / (1 - alpha))^(k-1) < tol, at least 3 and capped
/// at 10^4.
std::size_t auto_k_max(double alpha, double tol = 1e-12);

/// Builds the explicit transition structure of the state machine. The pool
/// transition at k_max loops back to k_max so every row stays stochastic.
/// Throws DomainError on invalid params, ContractViolation when k_max < 3.
TruncatedChain build_chain(const ModelParams& params, std::size_t k_max);

enum class Method { DirectSparse, PowerIteration };

struct SolveOptions {
  Method method = Method::DirectSparse;
  std::size_t max_iterations = 2'000'000;
  double tolerance = 1e-14;  // L1 change per power step
};

/// Stationary vector of the truncated chain, renormalized to sum to one.
/// Throws NumericalError if the power iteration hits its cap or the sparse
/// factorization fails.
StateDistribution stationary(const TruncatedChain& chain, const SolveOptions& options = {});

/// Expected rewards per event: probability of the source state times the
/// transition frequency times the transition's reward, over every edge.
/// Throws ContractViolation if `dist` does not cover the chain's states.
RevenueRates oracle_revenue(const TruncatedChain& chain, const StateDistribution& dist,
                            const RewardTable& rewards = {});

}  // namespace selfish::oracle
