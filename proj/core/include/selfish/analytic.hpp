#pragma once

#include <cstddef>
#include <vector>

namespace selfish {

/// Pool mining-power share and the share of honest power that mines on the
/// pool's branch during a one-block tie.
struct ModelParams {
  double alpha = 0.0;
  double gamma = 0.5;
};

/// Throws DomainError unless 0 <= alpha < 0.5 and 0 <= gamma <= 1.
void validate(const ModelParams& params);

/// Probability of each lead state. Leads 1..leads.size() are stored
/// explicitly; beyond that the mass continues geometrically with
/// `tail_ratio` (zero for a truncated distribution).
struct StateDistribution {
  double p0 = 1.0;
  double p0_prime = 0.0;
  std::vector<double> leads;
  double tail_ratio = 0.0;

  /// p_k for k >= 1.
  double lead(std::size_t k) const;
  /// Sum over leads k > `k`, geometric tail included.
  double mass_above(std::size_t k) const;
  double total() const { return p0 + p0_prime + mass_above(0); }
};

struct RevenueRates {
  double pool = 0.0;
  double others = 0.0;
};

struct AnalyticReport {
  ModelParams params;
  StateDistribution dist;
  RevenueRates rates;
  double relative_revenue = 0.0;
  double threshold = 0.0;
  bool profitable = false;
};

/// Stationary distribution of the selfish-mining state machine in closed form.
/// alpha = 0 gives the degenerate distribution concentrated on state 0.
StateDistribution state_probabilities(const ModelParams& params);

/// Expected main-chain blocks per mining event credited to the pool and to
/// the honest miners, summed over the revenue cases of each transition.
RevenueRates revenue_rates(const ModelParams& params);

/// Pool share of the main chain, evaluated from the factored closed form.
double relative_revenue(const ModelParams& params);

/// Smallest pool share for which selfish mining beats honest mining:
/// (1 - gamma) / (3 - 2 gamma). Throws DomainError for gamma outside [0, 1].
double threshold(double gamma);

AnalyticReport analyze(const ModelParams& params);

}  // namespace selfish
