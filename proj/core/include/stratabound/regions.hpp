#pragma once

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "stratabound/bounds.hpp"
#include "stratabound/microdata.hpp"
#include "stratabound/table.hpp"

namespace stratabound {

enum class MissingPolicy {
  kExcludeFromRegion,  // a tuple with any unobserved selected component is
                       // never a member (response indicator folded in)
  kError,              // such a record aborts the analysis
};

// Membership condition on one tuple coordinate: either a half-open interval
// [lower, upper) or a finite category set. Exactly one of the two is set.
struct CoordCondition {
  std::size_t index = 0;
  std::optional<std::pair<double, double>> interval;
  std::vector<double> categories;
};

// Conjunction of per-coordinate conditions; an empty list is the whole
// space (every fully-present tuple is a member).
struct RegionPredicate {
  std::vector<CoordCondition> coords;
};

// Region pair turning tuple-valued Y and M into binary membership events
// Y* = [Y in y_region], M* = [M in m_region]. An empty (whole-space)
// m_region makes M* identically 1, reducing the analysis to total effects.
struct RegionSpec {
  RegionPredicate y_region;
  RegionPredicate m_region;
  MissingPolicy missing = MissingPolicy::kExcludeFromRegion;
  std::vector<int> time;  // optional trajectory time labels

  // Throws SchemaMismatchError on an inverted interval, an empty category
  // set, or a condition carrying both or neither membership form.
  void validate() const;
};

// Evaluates one tuple against a predicate under the missing-data policy.
// Throws MissingComponentError under MissingPolicy::kError when a selected
// component is unobserved, and SchemaMismatchError when a condition indexes
// beyond the tuple.
bool region_member(std::span<const double> values,
                   std::span<const std::uint8_t> observed,
                   const RegionPredicate& predicate, MissingPolicy policy);

// Tallies records into the binary table over (X, M*, Y*).
JointTable coarsen(std::span<const MicroRecord> records,
                   const RegionSpec& spec);

// No-assumption detection and bounds on set-membership events, computed
// directly from membership frequencies:
//   statistic   P(Y in y_a, M in m_a | X=1) + P(Y not in y_a, M in m_a | X=0) - 1
//   denominator P(M in m_a | X=1) - P(M not in m_a | X=0)
// Numerically identical to corollary4_bounds(y=1, m=1) on the coarsened
// table.
BoundReport prop11_bounds(std::span<const MicroRecord> records,
                          const RegionSpec& spec,
                          const BoundOptions& options = {});
// Same computation routed through the binary engine on a coarsened table.
BoundReport prop11_bounds(const JointTable& coarsened,
                          const BoundOptions& options = {});

// Set-monotone version (caller asserts no individual leaves the mediator
// region under treatment while being inside under control):
//   statistic   P(Y not in y_a, M in m_a | X=0) - P(Y not in y_a, M in m_a | X=1)
//   denominator P(M in m_a | X=0), which equals the stratum mass exactly
//   under the asserted set-monotonicity.
BoundReport prop12_bounds(std::span<const MicroRecord> records,
                          const RegionSpec& spec,
                          const BoundOptions& options = {});
BoundReport prop12_bounds(const JointTable& coarsened,
                          const BoundOptions& options = {});

// Sensitivity adjustment for violations of set-monotonicity: unstandardized
// statistic - r, standardized over P(M in m_a | X=0) - q with
// q = P(M1 not in m_a, M0 in m_a). Note the denominator anchors to the
// control arm here, unlike theorem9_adjust which anchors to X=1; with the
// true parameters both recover the same standardized effect.
BoundReport prop13_adjust(std::span<const MicroRecord> records,
                          const RegionSpec& spec,
                          const SensitivityParams& params);
BoundReport prop13_adjust(const JointTable& coarsened,
                          const SensitivityParams& params);

// Builds a trajectory region over series sampled at the given times: record
// tuples carry one component per time, and each condition constrains the
// value at one time to [lower, upper). Missing components follow the
// policy. An empty outcome condition list is rejected
// (EmptyOutcomeSelectorError); an empty mediator list yields the
// total-effect region.
struct TrajectoryCondition {
  int time = 0;
  double lower = 0.0;
  double upper = 0.0;
};

RegionSpec trajectory_region(const std::vector<int>& times,
                             const std::vector<TrajectoryCondition>& y_conditions,
                             const std::vector<TrajectoryCondition>& m_conditions,
                             MissingPolicy policy);

// Region JSON:
//   {"y":{"coords":[{"index":0,"interval":[0,2500]}]},
//    "m":{"coords":[...]}, "missing":"exclude", "time":[1,2]}
// Conditions take "interval":[lo,hi] or "categories":[...].
RegionSpec read_region_json(const std::string& text);
std::string write_region_json(const RegionSpec& spec);

}  // namespace stratabound
