#include "selfish/markov_oracle.hpp"

#include <Eigen/SparseCore>
#include <Eigen/SparseLU>
#include <cmath>
#include <string>

#include "selfish/errors.hpp"

namespace selfish::oracle {

namespace {

constexpr std::size_t kMaxDepth = 10'000;

double reward_pool(TransitionKind kind, const RewardTable& r) {
  switch (kind) {
    case TransitionKind::PoolWinsTie:
      return r.pool_wins_tie_pool;
    case TransitionKind::HonestOnPoolBranch:
      return r.pool_branch_pool;
    case TransitionKind::HonestAtLeadTwo:
      return r.lead_two_pool;
    case TransitionKind::HonestAtLongLead:
      return r.long_lead_pool;
    default:
      return 0.0;
  }
}

double reward_others(TransitionKind kind, const RewardTable& r) {
  switch (kind) {
    case TransitionKind::HonestOnPoolBranch:
      return r.pool_branch_others;
    case TransitionKind::HonestOnPublicBranch:
      return r.public_branch_others;
    case TransitionKind::HonestNoFork:
      return r.no_fork_others;
    default:
      return 0.0;
  }
}

StateDistribution to_distribution(const std::vector<double>& pi) {
  StateDistribution dist;
  dist.p0 = pi[TruncatedChain::kZero];
  dist.p0_prime = pi[TruncatedChain::kZeroPrime];
  dist.leads.assign(pi.begin() + 2, pi.end());
  dist.tail_ratio = 0.0;
  return dist;
}

std::vector<double> solve_direct(const TruncatedChain& chain) {
  const auto n = static_cast<Eigen::Index>(chain.num_states());
  // (P^T - I) pi = 0 with the first balance equation replaced by sum(pi) = 1.
  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(chain.transitions().size() + 2 * static_cast<std::size_t>(n));
  for (const auto& t : chain.transitions()) {
    if (t.to == 0) continue;
    triplets.emplace_back(static_cast<Eigen::Index>(t.to), static_cast<Eigen::Index>(t.from),
                          t.probability);
  }
  for (Eigen::Index i = 1; i < n; ++i) triplets.emplace_back(i, i, -1.0);
  for (Eigen::Index j = 0; j < n; ++j) triplets.emplace_back(0, j, 1.0);

  Eigen::SparseMatrix<double> a(n, n);
  a.setFromTriplets(triplets.begin(), triplets.end());
  a.makeCompressed();

  Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
  lu.compute(a);
  if (lu.info() != Eigen::Success) {
    throw NumericalError("sparse LU factorization failed for k_max=" +
                         std::to_string(chain.k_max()) + ": " + lu.lastErrorMessage());
  }
  Eigen::VectorXd b = Eigen::VectorXd::Zero(n);
  b(0) = 1.0;
  Eigen::VectorXd x = lu.solve(b);
  if (lu.info() != Eigen::Success) {
    throw NumericalError("sparse LU solve failed for k_max=" + std::to_string(chain.k_max()));
  }
  return {x.data(), x.data() + x.size()};
}

std::vector<double> solve_power(const TruncatedChain& chain, const SolveOptions& options) {
  const auto n = chain.num_states();
  std::vector<double> x(n, 0.0), next(n);
  x[TruncatedChain::kZero] = 1.0;
  double delta = 0.0;
  for (std::size_t it = 0; it < options.max_iterations; ++it) {
    std::fill(next.begin(), next.end(), 0.0);
    for (const auto& t : chain.transitions()) next[t.to] += x[t.from] * t.probability;
    delta = 0.0;
    for (std::size_t i = 0; i < n; ++i) delta += std::abs(next[i] - x[i]);
    x.swap(next);
    if (delta < options.tolerance) return x;
  }
  throw NumericalError("power iteration did not converge after " +
                       std::to_string(options.max_iterations) +
                       " iterations (last L1 change " + std::to_string(delta) +
                       ", k_max=" + std::to_string(chain.k_max()) + ")");
}

}  // namespace

std::vector<double> TruncatedChain::dense() const {
  const auto n = num_states();
  std::vector<double> m(n * n, 0.0);
  for (const auto& t : transitions_) m[t.from * n + t.to] += t.probability;
  return m;
}

std::vector<double> TruncatedChain::row_sums() const {
  std::vector<double> sums(num_states(), 0.0);
  for (const auto& t : transitions_) sums[t.from] += t.probability;
  return sums;
}

std::size_t auto_k_max(double alpha, double tol) {
  if (alpha <= 0.0) return 3;
  const double ratio = alpha / (1.0 - alpha);
  std::size_t k = 3;
  while (k < kMaxDepth && std::pow(ratio, static_cast<double>(k - 1)) >= tol) ++k;
  return k;
}

TruncatedChain build_chain(const ModelParams& params, std::size_t k_max) {
  validate(params);
  if (k_max < 3) {
    throw ContractViolation("build_chain: k_max must be at least 3, got " + std::to_string(k_max));
  }
  const double a = params.alpha;
  const double h = 1.0 - a;
  const double g = params.gamma;
  using K = TransitionKind;
  constexpr auto zero = TruncatedChain::kZero;
  constexpr auto tie = TruncatedChain::kZeroPrime;
  const auto lead = TruncatedChain::lead_index;

  std::vector<Transition> ts;
  ts.reserve(2 * k_max + 6);
  ts.push_back({zero, lead(1), a, K::PoolExtends});
  ts.push_back({zero, zero, h, K::HonestNoFork});
  ts.push_back({tie, zero, a, K::PoolWinsTie});
  ts.push_back({tie, zero, g * h, K::HonestOnPoolBranch});
  ts.push_back({tie, zero, (1.0 - g) * h, K::HonestOnPublicBranch});
  ts.push_back({lead(1), lead(2), a, K::PoolExtends});
  ts.push_back({lead(1), tie, h, K::HonestForcesTie});
  ts.push_back({lead(2), zero, h, K::HonestAtLeadTwo});
  for (std::size_t k = 2; k <= k_max; ++k) {
    if (k < k_max) {
      ts.push_back({lead(k), lead(k + 1), a, K::PoolExtends});
    } else {
      ts.push_back({lead(k), lead(k), a, K::TruncationLoop});
    }
    if (k >= 3) ts.push_back({lead(k), lead(k - 1), h, K::HonestAtLongLead});
  }
  return TruncatedChain(params, k_max, std::move(ts));
}

StateDistribution stationary(const TruncatedChain& chain, const SolveOptions& options) {
  auto pi = options.method == Method::DirectSparse ? solve_direct(chain)
                                                    : solve_power(chain, options);
  double total = 0.0;
  for (double& v : pi) {
    if (v < 0.0) v = 0.0;  // round-off below zero on vanishing tail states
    total += v;
  }
  for (double& v : pi) v /= total;
  return to_distribution(pi);
}

RevenueRates oracle_revenue(const TruncatedChain& chain, const StateDistribution& dist,
                            const RewardTable& rewards) {
  if (dist.leads.size() != chain.k_max()) {
    throw ContractViolation("oracle_revenue: distribution has " +
                            std::to_string(dist.leads.size()) + " lead states, chain has " +
                            std::to_string(chain.k_max()));
  }
  auto prob = [&](std::size_t state) {
    if (state == TruncatedChain::kZero) return dist.p0;
    if (state == TruncatedChain::kZeroPrime) return dist.p0_prime;
    return dist.leads[state - 2];
  };
  RevenueRates r;
  for (const auto& t : chain.transitions()) {
    const double w = prob(t.from) * t.probability;
    r.pool += w * reward_pool(t.kind, rewards);
    r.others += w * reward_others(t.kind, rewards);
  }
  return r;
}

}  // namespace selfish::oracle
