#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "stratabound/inference.hpp"
#include "stratabound/rational.hpp"
#include "stratabound/table.hpp"

namespace stratabound {

// Result of one detection / bounding computation. Values are carried as
// exact rationals; doubles appear only in serialized reports and attached
// confidence intervals.
struct BoundReport {
  int y = 0;
  int m = 0;
  std::string label;   // direction, e.g. "treatment causes the outcome ..."
  std::string source;  // result identifier backing the numbers

  Rational statistic;      // raw detection statistic
  bool detected = false;   // statistic > 0, strictly, no epsilon
  Rational lower_unstd;    // lower bound on the unstandardized effect
  bool clamped = false;    // lower_unstd was clamped at zero (opt-in)
  std::optional<Rational> lower_std;
  std::optional<Rational> denominator;  // standardization denominator
  std::string mode;                     // "paper" or "exact-monotone"
  bool monotonicity_assumed = false;

  std::optional<Interval> ci;      // attached by the caller, never computed here
  std::optional<double> p_value;   // likewise
  std::string notes;
};

struct BoundOptions {
  // Replace a negative lower bound by zero (a proportion is nonnegative).
  // Always flagged in the report; the raw statistic is preserved.
  bool clamp_at_zero = false;
};

// Detection statistic without monotonicity assumptions:
//   S(y,m) = P(Y=y,M=m|X=1) + P(Y=1-y,M=m|X=0) - 1.
// S(y,m) > 0 certifies individuals with Y1=y, Y0=1-y, M1=M0=m.
Rational s_statistic(const ObservedDist& dist, int y, int m);

// Detection statistic under a positive monotonic effect of X on M:
//   D(y,m) = P(Y=1-y,M=m|X=1-m) - P(Y=1-y,M=m|X=m).
Rational d_statistic(const ObservedDist& dist, int y, int m);

// D with the roles of M and Y interchanged.
Rational d_swapped_statistic(const ObservedDist& dist, int y, int m);

// Scans all four (y,m) pairs with S. At most one report can be detected.
std::array<BoundReport, 4> theorem1_scan(const ObservedDist& dist,
                                         const BoundOptions& options = {});

// Lower bounds on the principal-stratum direct effect from S(y,m) alone.
// The standardized bound S / (P(M=m|X=1) - P(M=1-m|X=0)) is emitted only
// when S > 0; the denominator is recorded either way. Throws
// DegenerateDenominatorError if S > 0 while the denominator is nonpositive
// (impossible for distributions arising from real populations).
BoundReport corollary4_bounds(const ObservedDist& dist, int y, int m,
                              const BoundOptions& options = {});

// Scans all four (y,m) pairs with D. The caller asserts positive
// monotonicity; at most two reports can be detected.
std::array<BoundReport, 4> theorem5_scan(const ObservedDist& dist,
                                         const BoundOptions& options = {});

enum class DenominatorMode {
  kPaper,          // P(M=m|X=0)
  kExactMonotone,  // the stratum mass identified under monotonicity:
                   // P(M=1|X=0) for m=1, P(M=0|X=1) for m=0
};

enum class Roles {
  kStandard,
  kSwapped,  // interchange M and Y; the caller then asserts a positive
             // monotonic effect of X on Y instead
};

// Lower bounds under positive monotonicity. The standardized bound
// D / denominator is emitted only when D > 0.
BoundReport corollary8_bounds(const ObservedDist& dist, int y, int m,
                              DenominatorMode mode = DenominatorMode::kPaper,
                              Roles roles = Roles::kStandard,
                              const BoundOptions& options = {});

// Unidentified aggregates of monotonicity-violating mass. Exact decimal
// input is supported through Rational::from_decimal.
struct SensitivityParams {
  Rational r;
  Rational q;
};

// Sensitivity-adjusted values: unstandardized D - r and standardized
// (D - r) / (P(M=m|X=1) - q). Exact equalities under the true (r, q).
// r must lie in [-1,1] and q in [0,1]; values beyond the advisory ranges
// (r above D, q above P(M=m|X=1)) are flagged in notes, and a nonpositive
// denominator suppresses the standardized value.
BoundReport theorem9_adjust(const ObservedDist& dist, int y, int m,
                            const SensitivityParams& params);

struct SweepCell {
  Rational r;
  Rational q;
  std::optional<BoundReport> report;  // empty when the cell is invalid
  std::string error;
};

// Grid evaluation of theorem9_adjust; invalid cells are marked and the
// sweep continues.
std::vector<SweepCell> sensitivity_sweep(const ObservedDist& dist, int y,
                                         int m,
                                         const std::vector<Rational>& r_grid,
                                         const std::vector<Rational>& q_grid);

// Report JSON, schema:
//   {"target":{"y":..,"m":..,"label":".."}, "statistic":.., "detected":..,
//    "lower_unstd":.., "lower_std":.., "denominator":.., "mode":"..",
//    "clamped":.., "source":"..", ...}
std::string to_json_string(const BoundReport& report);

}  // namespace stratabound
