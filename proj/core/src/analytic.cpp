#include "selfish/analytic.hpp"

#include <cmath>
#include <string>

#include "selfish/errors.hpp"

namespace selfish {

void validate(const ModelParams& params) {
  const auto [a, g] = params;
  if (!(a >= 0.0 && a < 0.5)) {
    throw DomainError("alpha must lie in [0, 0.5), got " + std::to_string(a));
  }
  if (!(g >= 0.0 && g <= 1.0)) {
    throw DomainError("gamma must lie in [0, 1], got " + std::to_string(g));
  }
}

double StateDistribution::lead(std::size_t k) const {
  if (k == 0 || leads.empty()) return 0.0;
  if (k <= leads.size()) return leads[k - 1];
  return leads.back() * std::pow(tail_ratio, static_cast<double>(k - leads.size()));
}

double StateDistribution::mass_above(std::size_t k) const {
  double sum = 0.0;
  for (std::size_t i = k; i < leads.size(); ++i) sum += leads[i];
  if (tail_ratio > 0.0 && !leads.empty()) {
    // Sum of lead(j) for j > max(k, n) is lead(max(k, n)) * r / (1 - r).
    const auto from = k > leads.size() ? k : leads.size();
    sum += lead(from) * tail_ratio / (1.0 - tail_ratio);
  }
  return sum;
}

StateDistribution state_probabilities(const ModelParams& params) {
  validate(params);
  const double a = params.alpha;
  StateDistribution dist;
  if (a == 0.0) return dist;

  const double denom = 2.0 * a * a * a - 4.0 * a * a + 1.0;
  const double p1 = (a - 2.0 * a * a) / denom;
  dist.p0 = (a - 2.0 * a * a) / (a * denom);
  dist.p0_prime = (1.0 - a) * (a - 2.0 * a * a) / denom;
  dist.leads = {p1};
  dist.tail_ratio = a / (1.0 - a);
  return dist;
}

RevenueRates revenue_rates(const ModelParams& params) {
  const auto dist = state_probabilities(params);
  const double a = params.alpha;
  const double g = params.gamma;
  const double honest = 1.0 - a;

  RevenueRates r;
  r.others = dist.p0_prime * g * honest * 1.0          // honest block on pool head
             + dist.p0_prime * (1.0 - g) * honest * 2.0  // honest block on honest head
             + dist.p0 * honest * 1.0;                   // no fork
  r.pool = dist.p0_prime * a * 2.0                       // pool wins the tie
           + dist.p0_prime * g * honest * 1.0            // honest block on pool head
           + dist.lead(2) * honest * 2.0                 // lead 2 publishes all
           + dist.mass_above(2) * honest * 1.0;          // lead > 2 reveals one
  return r;
}

double relative_revenue(const ModelParams& params) {
  validate(params);
  const double a = params.alpha;
  const double g = params.gamma;
  const double num = a * (1.0 - a) * (1.0 - a) * (4.0 * a + g * (1.0 - 2.0 * a)) - a * a * a;
  const double den = 1.0 - a * (1.0 + (2.0 - a) * a);
  return num / den;
}

double threshold(double gamma) {
  if (!(gamma >= 0.0 && gamma <= 1.0)) {
    throw DomainError("gamma must lie in [0, 1], got " + std::to_string(gamma));
  }
  return (1.0 - gamma) / (3.0 - 2.0 * gamma);
}

AnalyticReport analyze(const ModelParams& params) {
  AnalyticReport report;
  report.params = params;
  report.dist = state_probabilities(params);
  report.rates = revenue_rates(params);
  report.relative_revenue = relative_revenue(params);
  report.threshold = threshold(params.gamma);
  report.profitable = report.relative_revenue > params.alpha;
  return report;
}

}  // namespace selfish
