#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "stratabound/table.hpp"

namespace stratabound {

enum class Sided {
  kTwo,
  kOneLower,  // [estimate - z*SE, +1]
  kOneUpper,  // [-1, estimate + z*SE]
};

// Confidence interval on a probability-difference scale; one-sided intervals
// carry the unbounded side at +/-1.
struct Interval {
  double lower = -1.0;
  double upper = 1.0;
  double level = 0.95;
  Sided sided = Sided::kTwo;
  // SE was exactly zero: the interval collapsed to the point estimate.
  bool zero_variance = false;
};

// Linear combination of joint cell proportions,
//   sum_i weight_i * P((M,Y) in cells_i | X = x_i) + offset.
// The variance of each arm's contribution uses the full multinomial
// covariance, cov(p_a, p_b) = -p_a p_b / n within an arm, so terms may share
// an arm.
struct StatTerm {
  double weight = 1.0;
  int x = 1;
  std::vector<std::array<int, 2>> cells;  // {m, y} pairs within the arm
};

struct JointStatistic {
  std::vector<StatTerm> terms;
  double offset = 0.0;
};

// P(Y=1 | X=1, M=m) - P(Y=1 | X=0, M=m): two independent binomial rows.
struct ConditionalRiskDiff {
  int m = 1;
};

// Ready-made statistic specs for the detection contrasts.
JointStatistic theorem1_spec(int y, int m);   // S(y,m)
JointStatistic theorem5_spec(int y, int m);   // D(y,m)
JointStatistic swapped_roles_spec(int y, int m);
JointStatistic pleiotropy_spec(int variant);  // z rides in the m slot
// D(y,m) - r for a fixed sensitivity offset.
JointStatistic theorem9_spec(int y, int m, double r);

struct Estimate {
  double value = 0.0;
  double se = 0.0;
};

Estimate evaluate(const JointStatistic& spec, const JointTable& table);
Estimate evaluate(const ConditionalRiskDiff& spec, const JointTable& table);

// Normal-approximation interval, estimate +/- z * SE with independent
// multinomial arms. A zero SE collapses the interval to the point and sets
// the zero_variance flag.
Interval wald_ci(const JointStatistic& spec, const JointTable& table,
                 double level, Sided sided);
Interval wald_ci(const ConditionalRiskDiff& spec, const JointTable& table,
                 double level, Sided sided);

// One-sided z-test of H0: statistic <= 0 against statistic > 0. Small p
// means the statistic is significantly positive. Throws ZeroVarianceError
// when the statistic has no sampling variance.
double test_null(const JointStatistic& spec, const JointTable& table);
double test_null(const ConditionalRiskDiff& spec, const JointTable& table);

// Percentile interval over multinomial resamples of each arm, deterministic
// per seed. Requires replicates >= 100.
Interval bootstrap_ci(const JointStatistic& spec, const JointTable& table,
                      double level, Sided sided, int replicates,
                      std::uint64_t seed);
Interval bootstrap_ci(const ConditionalRiskDiff& spec, const JointTable& table,
                      double level, Sided sided, int replicates,
                      std::uint64_t seed);

// Standard normal quantile and CDF (Acklam's rational approximation for the
// quantile; |error| < 1.2e-9).
double normal_quantile(double p);
double normal_cdf(double z);

}  // namespace stratabound
