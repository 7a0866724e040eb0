#include <cmath>
#include <vector>

#include "doctest.h"
#include "selfish/analytic.hpp"
#include "selfish/errors.hpp"
#include "support/rational_oracle.hpp"

using namespace selfish;
using selfish::testing::exact_model;
using selfish::testing::Q;

namespace {

std::vector<double> alpha_grid() {
  std::vector<double> g;
  for (int i = 1; i <= 49; i += 4) g.push_back(i / 100.0);  // 0.01, 0.05, ..., 0.49
  return g;
}

const std::vector<double> kGammas{0.0, 0.25, 0.5, 0.75, 1.0};

}  // namespace

TEST_CASE("state probabilities at alpha = 1/3") {
  const auto d = state_probabilities({1.0 / 3.0, 0.0});
  CHECK(d.p0 == doctest::Approx(9.0 / 17.0).epsilon(1e-14));
  CHECK(d.p0_prime == doctest::Approx(2.0 / 17.0).epsilon(1e-14));
  CHECK(d.lead(1) == doctest::Approx(3.0 / 17.0).epsilon(1e-14));
  CHECK(d.lead(2) == doctest::Approx(3.0 / 34.0).epsilon(1e-14));
  for (std::size_t k = 1; k < 20; ++k) {
    CHECK(d.lead(k + 1) / d.lead(k) == doctest::Approx(0.5).epsilon(1e-14));
  }
}

TEST_CASE("closed forms agree with the exact cut-equation derivation") {
  const std::vector<Q> alphas{Q{1, 3}, Q{1, 4}, Q{1, 10}, Q{9, 20}, Q{2, 5}};
  const std::vector<Q> gammas{Q{0}, Q{1, 2}, Q{1}, Q{3, 4}};
  for (const Q a : alphas) {
    for (const Q g : gammas) {
      const auto exact = exact_model(a, g);
      const ModelParams p{a.value(), g.value()};
      const auto d = state_probabilities(p);
      CHECK(d.p0 == doctest::Approx(exact.p0.value()).epsilon(1e-13));
      CHECK(d.p0_prime == doctest::Approx(exact.p0_prime.value()).epsilon(1e-13));
      CHECK(d.lead(1) == doctest::Approx(exact.p1.value()).epsilon(1e-13));
      CHECK(d.lead(2) == doctest::Approx(exact.p2.value()).epsilon(1e-13));
      CHECK(d.mass_above(2) == doctest::Approx(exact.tail_above_two.value()).epsilon(1e-13));

      const auto r = revenue_rates(p);
      CHECK(r.pool == doctest::Approx(exact.r_pool.value()).epsilon(1e-13));
      CHECK(r.others == doctest::Approx(exact.r_others.value()).epsilon(1e-13));
      const auto rel = exact.r_pool / (exact.r_pool + exact.r_others);
      CHECK(relative_revenue(p) == doctest::Approx(rel.value()).epsilon(1e-13));
    }
  }
}

TEST_CASE("alpha = 1/3, gamma = 0 sits exactly on the threshold") {
  // Hand evaluation: numerator 13/81 over denominator 13/27.
  const auto exact = exact_model(Q{1, 3}, Q{0});
  CHECK(exact.r_pool / (exact.r_pool + exact.r_others) == Q{1, 3});
  const double a = 1.0 / 3.0;
  const double num = a * (1 - a) * (1 - a) * (4 * a) - a * a * a;
  const double den = 1 - a * (1 + (2 - a) * a);
  CHECK(num == doctest::Approx(13.0 / 81.0).epsilon(1e-15));
  CHECK(den == doctest::Approx(13.0 / 27.0).epsilon(1e-15));
  CHECK(relative_revenue({a, 0.0}) == doctest::Approx(1.0 / 3.0).epsilon(1e-15));

  const auto r = revenue_rates({a, 0.0});
  CHECK(r.pool / (r.pool + r.others) == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
}

TEST_CASE("alpha = 1/4, gamma = 1/2 earns exactly its share") {
  CHECK(relative_revenue({0.25, 0.5}) == doctest::Approx(0.25).epsilon(1e-15));
}

TEST_CASE("alpha = 0 is the degenerate honest world") {
  const auto d = state_probabilities({0.0, 0.7});
  CHECK(d.p0 == 1.0);
  CHECK(d.p0_prime == 0.0);
  CHECK(d.lead(1) == 0.0);
  CHECK(d.mass_above(0) == 0.0);
  const auto r = revenue_rates({0.0, 0.7});
  CHECK(r.pool == 0.0);
  CHECK(r.others == 1.0);
  CHECK(relative_revenue({0.0, 1.0}) == 0.0);
}

TEST_CASE("domain errors") {
  CHECK_THROWS_AS(state_probabilities({0.5, 0.5}), DomainError);
  CHECK_THROWS_AS(state_probabilities({0.6, 0.5}), DomainError);
  CHECK_THROWS_AS(relative_revenue({-0.1, 0.5}), DomainError);
  CHECK_THROWS_AS(revenue_rates({0.2, 1.5}), DomainError);
  CHECK_THROWS_AS(threshold(-0.01), DomainError);
  CHECK_THROWS_AS(threshold(1.01), DomainError);
  CHECK_THROWS_AS(relative_revenue({std::nan(""), 0.5}), DomainError);
}

TEST_CASE("threshold values") {
  CHECK(threshold(0.0) == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  CHECK(threshold(0.5) == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(threshold(1.0) == 0.0);
}

TEST_CASE("normalization over the alpha grid") {
  for (double a : alpha_grid()) {
    const auto d = state_probabilities({a, 0.5});
    CAPTURE(a);
    CHECK(std::abs(d.total() - 1.0) < 1e-12);
    CHECK(d.p0 >= 0.0);
    CHECK(d.p0 <= 1.0);
    CHECK(d.p0_prime >= 0.0);
    CHECK(d.lead(1) <= 1.0);
    CHECK(d.lead(3) / d.lead(2) == doctest::Approx(a / (1 - a)).epsilon(1e-13));
  }
}

TEST_CASE("closed-form R_pool equals the revenue-rate composition") {
  for (double a : alpha_grid()) {
    for (double g : kGammas) {
      const ModelParams p{a, g};
      const auto r = revenue_rates(p);
      CAPTURE(a);
      CAPTURE(g);
      CHECK(std::abs(relative_revenue(p) - r.pool / (r.pool + r.others)) < 1e-12);
      CHECK(r.pool + r.others < 1.0);
    }
  }
}

TEST_CASE("profitability flips sign exactly at the threshold") {
  for (double g : kGammas) {
    const double t = threshold(g);
    for (int i = 1; i < 500; ++i) {
      const double a = i / 1000.0;
      if (std::abs(a - t) < 1e-9) continue;
      const double diff = relative_revenue({a, g}) - a;
      CAPTURE(a);
      CAPTURE(g);
      CHECK((diff > 0) == (a > t));
      CHECK((diff < 0) == (a < t));
    }
  }
}

TEST_CASE("per-member revenue grows with pool size above the threshold") {
  for (double g : kGammas) {
    double prev = -1.0;
    for (double a = threshold(g) + 0.01; a < 0.5; a += 0.01) {
      const double per_member = relative_revenue({a, g}) / a;
      CAPTURE(a);
      CHECK(per_member > prev);
      prev = per_member;
    }
  }
}

TEST_CASE("relative revenue is non-decreasing in gamma") {
  for (double a : alpha_grid()) {
    double prev = -1.0;
    for (int j = 0; j <= 20; ++j) {
      const double r = relative_revenue({a, j / 20.0});
      CHECK(r >= prev);
      prev = r;
    }
  }
}

TEST_CASE("analyze bundles everything") {
  const auto rep = analyze({0.4, 0.5});
  CHECK(rep.threshold == doctest::Approx(0.25));
  CHECK(rep.profitable);
  CHECK(rep.relative_revenue ==
        doctest::Approx(rep.rates.pool / (rep.rates.pool + rep.rates.others)).epsilon(1e-12));
  CHECK_FALSE(analyze({0.1, 0.0}).profitable);
}
