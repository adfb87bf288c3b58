#pragma once

#include "stratabound/bounds.hpp"
#include "stratabound/counterfactual.hpp"
#include "stratabound/table.hpp"

namespace stratabound {

// Two-outcome analysis: does the treatment causally move both Y and Z in
// the same individual? The second outcome Z occupies the mediator slot of
// the shared table and response-type machinery, so a pleiotropic response
// type (y1, y0, z1, z0) is a ResponseType read with m1 := z1, m0 := z0.
class PleioDist {
 public:
  explicit PleioDist(ObservedDist joint) : joint_(std::move(joint)) {}
  static PleioDist from_table(const JointTable& table);
  static PleioDist from_population(const FinitePopulation& pop);

  // P(Y=y, Z=z | X=x).
  const Rational& p(int y, int z, int x) const { return joint_.p(y, z, x); }

 private:
  ObservedDist joint_;
};

// The four individual-level pleiotropy variants. Variant k targets the
// response type with Y1=a, Y0=1-a, Z1=b, Z0=1-b:
//   1: (a,b)=(1,1)  causative for both outcomes
//   2: (a,b)=(1,0)  causative for Y, preventative for Z
//   3: (a,b)=(0,1)  preventative for Y, causative for Z
//   4: (a,b)=(0,0)  preventative for both
// Variants 2-4 arise from variant 1 by relabeling outcomes.
struct PleioTarget {
  int a = 1;
  int b = 1;
};
PleioTarget pleiotropy_target(int variant);

// Detection statistic P(Y=a,Z=b|X=1) + P(Y=1-a,Z=1-b|X=0) - 1. A positive
// value certifies individuals of the variant's response type and lower
// bounds their population share. The test cannot tell mediated pleiotropy
// (one outcome driving the other) from biologic pleiotropy (separate
// pathways); reports say so.
BoundReport pleiotropy_test(const PleioDist& dist, int variant);

// Exact decomposition of the same statistic over the 16 two-outcome
// response types: the target mass minus the nine masses with
// (Y1,Z1) != (a,b) and (Y0,Z0) != (1-a,1-b). Equals the test statistic on
// every population. `cd` is read with (m1,m0) as (z1,z0).
Rational pleiotropy_identity(const CounterfactualDist& cd, int variant);

}  // namespace stratabound
