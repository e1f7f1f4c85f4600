#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"
#include "prw/exact_dist.hpp"
#include "prw/genfunc.hpp"

using namespace prw;

namespace {

double worked_example(double er, double el) {
  return 2.0 * er * (1 - er) * (1 - er) * (1 - el) * (1 - el) / (2.0 - er - el);
}

}  // namespace

TEST(GammaWeight, Examples) {
  const ModelParams p(0.3, 0.8);
  EXPECT_NEAR(gamma_weight(4, 2, 1, 2, p), 0.3 * 0.7 * 0.2 * 0.2, 1e-16);
  EXPECT_NEAR(gamma_weight(7, 7, 0, 0, p), std::pow(0.3, 7), 1e-18);
  EXPECT_EQ(gamma_weight(4, 2, 1, 2, ModelParams(0.5, 0.5)), 1.0 / 16);
  EXPECT_THROW(gamma_weight(4, 3, 0, 0, p), std::domain_error);
  EXPECT_THROW(gamma_weight(4, 6, 0, 0, p), std::domain_error);
  EXPECT_THROW(gamma_weight(4, 2, -1, 0, p), std::domain_error);
  EXPECT_NEAR(log_gamma_weight(4, 2, 1, 2, p), std::log(0.3 * 0.7 * 0.04), 1e-14);
}

TEST(QPmf, Examples) {
  for (double er : ref::param_grid())
    for (double el : ref::param_grid()) {
      const ModelParams p(er, el);
      EXPECT_EQ(q_pmf(4, Direction::plus, 2, 3, p), 0.0);
      EXPECT_NEAR(q_pmf(9, Direction::plus, 9, 0, p), std::pow(er, 9), 1e-16);
      for (int n = 1; n <= 12; ++n) {
        double total = 0.0;
        for (int x = -n; x <= n; x += 2)
          for (int k = 0; k <= n; ++k) total += q_pmf(n, Direction::plus, x, k, p);
        EXPECT_NEAR(total, 1.0, 1e-13);
      }
    }
  EXPECT_EQ(q_pmf(4, Direction::plus, 2, 7, ModelParams(0.5, 0.5)), 0.0);
  EXPECT_THROW(q_pmf(4, Direction::plus, 1, 1, ModelParams(0.5, 0.5)), std::domain_error);
}

TEST(JointPmfValue, WorkedExample) {
  for (double er : ref::param_grid())
    for (double el : ref::param_grid())
      EXPECT_NEAR(joint_pmf(4, 2, 3, ModelParams(er, el)), worked_example(er, el), 1e-15);
  EXPECT_EQ(joint_pmf(4, 2, 3, ModelParams(0.5, 0.5)), 0.0625);
  EXPECT_EQ(joint_pmf_exact(4, 2, 3, RationalParams::parse("1/2", "1/2")), BigRational(1, 16));
  EXPECT_EQ(joint_pmf(4, 3, 1, ModelParams(0.5, 0.5)), 0.0);
}

TEST(JointPmfValue, ExactRationalMatchesWorkedExample) {
  const auto p = RationalParams::parse("1/3", "3/4");
  const BigRational er(1, 3), el(3, 4);
  const BigRational expected = 2 * er * (1 - er) * (1 - er) * (1 - el) * (1 - el) / (2 - er - el);
  EXPECT_EQ(joint_pmf_exact(4, 2, 3, p), expected);
}

TEST(ClosedForm, MatchesBruteForceAndDp) {
  for (int n = 1; n <= 12; ++n)
    for (double er : ref::param_grid())
      for (double el : ref::param_grid()) {
        const ModelParams p(er, el);
        const auto brute = ref::brute_pmf(n, er, el);
        const auto closed = closed_form_pmf(n, p);
        const auto dp = dp_pmf(n, p);
        for (int x = -n; x <= n; x += 2)
          for (int k = 0; k <= n; ++k) {
            const auto it = brute.find({x, k});
            const double expected = it == brute.end() ? 0.0 : it->second;
            ASSERT_NEAR(closed.prob(x, k), expected, 1e-12) << n << " " << x << " " << k;
            ASSERT_NEAR(dp.joint.prob(x, k), expected, 1e-12) << n << " " << x << " " << k;
          }
      }
}

TEST(ClosedForm, ConditionalMatchesBruteForce) {
  for (int n : {1, 5, 10})
    for (int s : {1, -1}) {
      const ModelParams p(0.3, 0.9);
      const auto brute = ref::brute_pmf(n, 0.3, 0.9, s);
      const auto q = conditional_pmf(n, direction_from_sign(s), p);
      EXPECT_EQ(q.initial(), forced(direction_from_sign(s)));
      for (const auto& [key, prob] : brute) EXPECT_NEAR(q.prob(key.first, key.second), prob, 1e-13);
      const auto dp = dp_pmf(n, p, forced(direction_from_sign(s)));
      EXPECT_LT(max_abs_difference(q, dp.joint), 1e-13);
    }
}

TEST(ClosedForm, NormalizationAndMirror) {
  for (int n : {1, 17, 120, 300}) {
    const ModelParams p(0.83, 0.41);
    const auto table = closed_form_pmf(n, p);
    EXPECT_NEAR(table.total_mass(), 1.0, 1e-12) << n;
    const auto mirrored = closed_form_pmf(n, p.mirrored());
    for (const auto& e : table.entries()) EXPECT_NEAR(mirrored.prob(-e.x, e.k), e.prob, 1e-15);
  }
  EXPECT_THROW(closed_form_pmf(kExactCountLimit + 1, ModelParams(0.5, 0.5)), std::invalid_argument);
}

TEST(ClosedForm, LogModeAgreesWithLinear) {
  const ModelParams p(0.62, 0.27);
  for (int n : {1, 12, 150, 300}) {
    const auto lin = closed_form_pmf(n, p);
    const auto lg = closed_form_pmf(n, p, Precision::log);
    EXPECT_EQ(lg.precision(), Precision::log);
    lg.for_each([&](const PmfEntry& e) {
      EXPECT_NEAR(e.log_prob, std::log(lin.prob(e.x, e.k)), 1e-11 * std::max(1.0, std::abs(e.log_prob)));
    });
    EXPECT_NEAR(lg.total_mass(), 1.0, 1e-12);
  }
}

TEST(ClosedForm, LogModeLargeN) {
  const ModelParams p(0.7, 0.4);
  const int n = 2000;
  const auto table = closed_form_pmf(n, p, Precision::log);
  EXPECT_LT(std::abs(table.normalization_defect()), 1e-9);
  const auto m = table_moments(table);
  EXPECT_NEAR(m.mean_x, mean_x(n, p), 1e-10 * std::abs(mean_x(n, p)));
  EXPECT_NEAR(m.mean_k, mean_k(n, p), 1e-10 * mean_k(n, p));
}

TEST(Dp, EndingDirectionSplit) {
  const ModelParams p(0.2, 0.6);
  const int n = 9;
  const auto dp = dp_pmf(n, p);
  // Final-direction mass equals the stationary weights.
  const auto s = stationary_dist(p);
  EXPECT_NEAR(dp.ending_plus.total(), s.p_plus, 1e-14);
  EXPECT_NEAR(dp.ending_minus.total(), s.p_minus, 1e-14);
  for (int x = -n; x <= n; x += 2)
    for (int k = 0; k <= n; ++k)
      EXPECT_NEAR(dp.ending_plus.at(x, k) + dp.ending_minus.at(x, k), dp.joint.prob(x, k), 1e-16);
}

TEST(Marginals, Examples) {
  const auto half = closed_form_pmf(4, ModelParams(0.5, 0.5));
  const auto mk = marginal_k(half);
  EXPECT_DOUBLE_EQ(mk.at(0), 1.0 / 16);
  EXPECT_EQ(half.support_size(), 14U);

  for (int n : {1, 6, 11}) {
    const auto mx = marginal_x(closed_form_pmf(n, ModelParams(0.5, 0.5)));
    for (int x = -n; x <= n; x += 2)
      EXPECT_NEAR(mx.at(x), ref::binomial(n, (n + x) / 2) / std::pow(2.0, n), 1e-15);
  }
}

TEST(DeltaProb, Examples) {
  for (double er : ref::param_grid())
    for (double el : ref::param_grid()) {
      const ModelParams p(er, el);
      const double pp = ref::stationary_plus(er, el);
      EXPECT_NEAR(delta_prob(closed_form_pmf(1, p)), pp * (1 - er) + (1 - pp) * (1 - el), 1e-15);
    }
  EXPECT_DOUBLE_EQ(delta_prob(closed_form_pmf(2, ModelParams(0.5, 0.5))), 0.5);
}

TEST(DeltaProb, RelationsBetweenConditionalAndTotal) {
  for (int n = 1; n <= 12; ++n)
    for (double er : ref::param_grid())
      for (double el : ref::param_grid()) {
        const ModelParams p(er, el);
        const auto s = stationary_dist(p);
        const double dp = delta_prob_conditional(n, Direction::plus, p);
        const double dm = delta_prob_conditional(n, Direction::minus, p);
        const double d = delta_prob(closed_form_pmf(n, p));
        EXPECT_NEAR(s.p_plus * dp, s.p_minus * dm, 1e-12);
        EXPECT_NEAR(dp, (2 - er - el) / (2 * (1 - el)) * d, 1e-12);
        EXPECT_NEAR(dm, (2 - er - el) / (2 * (1 - er)) * d, 1e-12);
      }
  const auto q = conditional_pmf(3, Direction::plus, ModelParams(0.4, 0.4));
  EXPECT_THROW(delta_prob_conditional(q, Direction::minus), std::invalid_argument);
}

TEST(TableMoments, MatchClosedForms) {
  for (int n : {1, 10, 77, 300})
    for (double er : ref::param_grid())
      for (double el : ref::param_grid()) {
        const ModelParams p(er, el);
        const auto m = table_moments(closed_form_pmf(n, p));
        EXPECT_NEAR(m.mean_x, mean_x(n, p), 1e-10 * std::max(1.0, std::abs(mean_x(n, p))));
        EXPECT_NEAR(m.mean_k, mean_k(n, p), 1e-10 * std::max(1.0, mean_k(n, p)));
      }
}
