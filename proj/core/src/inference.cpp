#include "stratabound/inference.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>

#include "stratabound/errors.hpp"

namespace stratabound {

namespace {

void check_level(double level) {
  if (!(level > 0.0 && level < 1.0)) {
    throw ParamOutOfRangeError("confidence level must lie in (0,1)");
  }
}

std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

double uniform01(std::uint64_t bits) {
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

// Multinomial draw by binning n uniforms against the cumulative cell
// probabilities; bitwise reproducible across standard libraries.
std::array<long long, 4> multinomial4(std::uint64_t seed, long long n,
                                      const std::array<double, 4>& probs) {
  std::array<double, 4> cum{};
  double acc = 0.0;
  for (int i = 0; i < 4; ++i) {
    acc += probs[i];
    cum[i] = acc;
  }
  cum[3] = 1.0;  // guard against rounding
  std::array<long long, 4> counts{};
  std::uint64_t state = seed;
  for (long long i = 0; i < n; ++i) {
    state = splitmix64(state);
    double u = uniform01(state);
    int cell = 0;
    while (cell < 3 && u >= cum[cell]) ++cell;
    counts[cell] += 1;
  }
  return counts;
}

long long binomial(std::uint64_t seed, long long n, double p) {
  long long k = 0;
  std::uint64_t state = seed;
  for (long long i = 0; i < n; ++i) {
    state = splitmix64(state);
    if (uniform01(state) < p) ++k;
  }
  return k;
}

// Point value and standard error of a joint-cell statistic under
// independent multinomial sampling per arm. Within an arm, the statistic is
// sum_c a_c * p_c with variance (sum_c a_c^2 p_c - (sum_c a_c p_c)^2) / n,
// which carries the full multinomial covariance between shared-arm terms.
Estimate evaluate_cells(const JointStatistic& spec,
                        const std::array<std::array<std::array<double, 2>, 2>, 2>& p,
                        const std::array<long long, 2>& arm_totals) {
  double value = spec.offset;
  double var = 0.0;
  for (int x = 0; x < 2; ++x) {
    double coef[2][2] = {{0.0, 0.0}, {0.0, 0.0}};
    bool arm_used = false;
    for (const StatTerm& term : spec.terms) {
      if (term.x != x) continue;
      arm_used = true;
      for (const auto& cell : term.cells) coef[cell[0]][cell[1]] += term.weight;
    }
    if (!arm_used) continue;
    double mean = 0.0;
    double second = 0.0;
    for (int m = 0; m < 2; ++m) {
      for (int y = 0; y < 2; ++y) {
        mean += coef[m][y] * p[x][m][y];
        second += coef[m][y] * coef[m][y] * p[x][m][y];
      }
    }
    value += mean;
    var += (second - mean * mean) / static_cast<double>(arm_totals[x]);
  }
  return Estimate{value, var > 0.0 ? std::sqrt(var) : 0.0};
}

std::array<std::array<std::array<double, 2>, 2>, 2> cell_props(
    const JointTable& table) {
  std::array<std::array<std::array<double, 2>, 2>, 2> p{};
  for (int x = 0; x < 2; ++x) {
    for (int m = 0; m < 2; ++m) {
      for (int y = 0; y < 2; ++y) {
        p[x][m][y] = static_cast<double>(table.count(x, m, y)) /
                     static_cast<double>(table.arm_total(x));
      }
    }
  }
  return p;
}

Interval wald_interval(const Estimate& est, double level, Sided sided) {
  check_level(level);
  Interval ci;
  ci.level = level;
  ci.sided = sided;
  if (est.se == 0.0) {
    ci.zero_variance = true;
    ci.lower = sided == Sided::kOneUpper ? -1.0 : est.value;
    ci.upper = sided == Sided::kOneLower ? 1.0 : est.value;
    return ci;
  }
  switch (sided) {
    case Sided::kTwo: {
      double z = normal_quantile(1.0 - (1.0 - level) / 2.0);
      ci.lower = est.value - z * est.se;
      ci.upper = est.value + z * est.se;
      break;
    }
    case Sided::kOneLower: {
      double z = normal_quantile(level);
      ci.lower = est.value - z * est.se;
      ci.upper = 1.0;
      break;
    }
    case Sided::kOneUpper: {
      double z = normal_quantile(level);
      ci.lower = -1.0;
      ci.upper = est.value + z * est.se;
      break;
    }
  }
  return ci;
}

double one_sided_p(const Estimate& est) {
  if (est.se == 0.0) {
    throw ZeroVarianceError("statistic has zero sampling variance");
  }
  return normal_cdf(-est.value / est.se);
}

double percentile(std::vector<double>& values, double p) {
  std::sort(values.begin(), values.end());
  double h = p * static_cast<double>(values.size() - 1);
  std::size_t lo = static_cast<std::size_t>(h);
  std::size_t hi = std::min(lo + 1, values.size() - 1);
  double frac = h - static_cast<double>(lo);
  return values[lo] * (1.0 - frac) + values[hi] * frac;
}

Interval percentile_interval(std::vector<double>& values, double level,
                             Sided sided) {
  Interval ci;
  ci.level = level;
  ci.sided = sided;
  double alpha = 1.0 - level;
  switch (sided) {
    case Sided::kTwo:
      ci.lower = percentile(values, alpha / 2.0);
      ci.upper = percentile(values, 1.0 - alpha / 2.0);
      break;
    case Sided::kOneLower:
      ci.lower = percentile(values, alpha);
      ci.upper = 1.0;
      break;
    case Sided::kOneUpper:
      ci.lower = -1.0;
      ci.upper = percentile(values, level);
      break;
  }
  if (ci.lower == ci.upper) ci.zero_variance = true;
  return ci;
}

void check_replicates(int replicates) {
  if (replicates < 100) {
    throw ParamOutOfRangeError("bootstrap needs at least 100 replicates");
  }
}

}  // namespace

JointStatistic theorem1_spec(int y, int m) {
  JointStatistic s;
  s.terms.push_back({1.0, 1, {{m, y}}});
  s.terms.push_back({1.0, 0, {{m, 1 - y}}});
  s.offset = -1.0;
  return s;
}

JointStatistic theorem5_spec(int y, int m) {
  JointStatistic s;
  s.terms.push_back({1.0, 1 - m, {{m, 1 - y}}});
  s.terms.push_back({-1.0, m, {{m, 1 - y}}});
  return s;
}

JointStatistic swapped_roles_spec(int y, int m) {
  JointStatistic s;
  s.terms.push_back({1.0, 1 - m, {{1 - y, m}}});
  s.terms.push_back({-1.0, m, {{1 - y, m}}});
  return s;
}

JointStatistic pleiotropy_spec(int variant) {
  if (variant < 1 || variant > 4) {
    throw ParamOutOfRangeError("pleiotropy variant must be 1..4");
  }
  int a = variant <= 2 ? 1 : 0;
  int b = (variant == 1 || variant == 3) ? 1 : 0;
  JointStatistic s;
  s.terms.push_back({1.0, 1, {{b, a}}});
  s.terms.push_back({1.0, 0, {{1 - b, 1 - a}}});
  s.offset = -1.0;
  return s;
}

JointStatistic theorem9_spec(int y, int m, double r) {
  JointStatistic s = theorem5_spec(y, m);
  s.offset = -r;
  return s;
}

Estimate evaluate(const JointStatistic& spec, const JointTable& table) {
  return evaluate_cells(spec, cell_props(table),
                        {table.arm_total(0), table.arm_total(1)});
}

Estimate evaluate(const ConditionalRiskDiff& spec, const JointTable& table) {
  double value = 0.0;
  double var = 0.0;
  for (int x = 0; x < 2; ++x) {
    long long row = table.count(x, spec.m, 0) + table.count(x, spec.m, 1);
    if (row == 0) {
      throw EmptyArmError("row X=" + std::to_string(x) +
                          ", M=" + std::to_string(spec.m) + " is empty");
    }
    double p = static_cast<double>(table.count(x, spec.m, 1)) /
               static_cast<double>(row);
    value += x == 1 ? p : -p;
    var += p * (1.0 - p) / static_cast<double>(row);
  }
  return Estimate{value, var > 0.0 ? std::sqrt(var) : 0.0};
}

Interval wald_ci(const JointStatistic& spec, const JointTable& table,
                 double level, Sided sided) {
  return wald_interval(evaluate(spec, table), level, sided);
}

Interval wald_ci(const ConditionalRiskDiff& spec, const JointTable& table,
                 double level, Sided sided) {
  return wald_interval(evaluate(spec, table), level, sided);
}

double test_null(const JointStatistic& spec, const JointTable& table) {
  return one_sided_p(evaluate(spec, table));
}

double test_null(const ConditionalRiskDiff& spec, const JointTable& table) {
  return one_sided_p(evaluate(spec, table));
}

Interval bootstrap_ci(const JointStatistic& spec, const JointTable& table,
                      double level, Sided sided, int replicates,
                      std::uint64_t seed) {
  check_level(level);
  check_replicates(replicates);
  auto p_hat = cell_props(table);
  std::array<long long, 2> totals = {table.arm_total(0), table.arm_total(1)};
  std::vector<double> values;
  values.reserve(static_cast<std::size_t>(replicates));
  for (int rep = 0; rep < replicates; ++rep) {
    std::array<std::array<std::array<double, 2>, 2>, 2> p_rep{};
    for (int x = 0; x < 2; ++x) {
      std::array<double, 4> probs = {p_hat[x][0][0], p_hat[x][0][1],
                                     p_hat[x][1][0], p_hat[x][1][1]};
      std::uint64_t rep_seed =
          splitmix64(seed ^ (0x51ed2701ULL * (rep + 1) + x));
      std::array<long long, 4> counts =
          multinomial4(rep_seed, totals[x], probs);
      p_rep[x][0][0] = static_cast<double>(counts[0]) / totals[x];
      p_rep[x][0][1] = static_cast<double>(counts[1]) / totals[x];
      p_rep[x][1][0] = static_cast<double>(counts[2]) / totals[x];
      p_rep[x][1][1] = static_cast<double>(counts[3]) / totals[x];
    }
    values.push_back(evaluate_cells(spec, p_rep, totals).value);
  }
  return percentile_interval(values, level, sided);
}

Interval bootstrap_ci(const ConditionalRiskDiff& spec, const JointTable& table,
                      double level, Sided sided, int replicates,
                      std::uint64_t seed) {
  check_level(level);
  check_replicates(replicates);
  std::array<long long, 2> rows{};
  std::array<double, 2> p_hat{};
  for (int x = 0; x < 2; ++x) {
    rows[x] = table.count(x, spec.m, 0) + table.count(x, spec.m, 1);
    if (rows[x] == 0) {
      throw EmptyArmError("row X=" + std::to_string(x) +
                          ", M=" + std::to_string(spec.m) + " is empty");
    }
    p_hat[x] = static_cast<double>(table.count(x, spec.m, 1)) /
               static_cast<double>(rows[x]);
  }
  std::vector<double> values;
  values.reserve(static_cast<std::size_t>(replicates));
  for (int rep = 0; rep < replicates; ++rep) {
    double diff = 0.0;
    for (int x = 0; x < 2; ++x) {
      std::uint64_t rep_seed =
          splitmix64(seed ^ (0x2545f491ULL * (rep + 1) + x));
      double p = static_cast<double>(binomial(rep_seed, rows[x], p_hat[x])) /
                 static_cast<double>(rows[x]);
      diff += x == 1 ? p : -p;
    }
    values.push_back(diff);
  }
  return percentile_interval(values, level, sided);
}

// Acklam's inverse normal CDF approximation.
double normal_quantile(double p) {
  if (!(p > 0.0 && p < 1.0)) {
    throw ParamOutOfRangeError("normal quantile needs p in (0,1)");
  }
  static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                             -2.759285104469687e+02, 1.383577518672690e+02,
                             -3.066479806614716e+01, 2.506628277459239e+00};
  static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                             -1.556989798598866e+02, 6.680131188771972e+01,
                             -1.328068155288572e+01};
  static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                             -2.400758277161838e+00, -2.549732539343734e+00,
                             4.374664141464968e+00,  2.938163982698783e+00};
  static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                             2.445134137142996e+00, 3.754408661907416e+00};
  const double p_low = 0.02425;
  double q, r;
  if (p < p_low) {
    q = std::sqrt(-2.0 * std::log(p));
    return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q +
            c[5]) /
           ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  if (p <= 1.0 - p_low) {
    q = p - 0.5;
    r = q * q;
    return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r +
            a[5]) *
           q /
           (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
  }
  q = std::sqrt(-2.0 * std::log(1.0 - p));
  return -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q +
           c[5]) /
         ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
}

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

}  // namespace stratabound
