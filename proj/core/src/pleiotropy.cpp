#include "stratabound/pleiotropy.hpp"

#include "stratabound/errors.hpp"

namespace stratabound {

PleioDist PleioDist::from_table(const JointTable& table) {
  return PleioDist(estimate_dist(table));
}

PleioDist PleioDist::from_population(const FinitePopulation& pop) {
  return PleioDist(observed_from_population(pop));
}

PleioTarget pleiotropy_target(int variant) {
  if (variant < 1 || variant > 4) {
    throw ParamOutOfRangeError("pleiotropy variant must be 1..4");
  }
  return PleioTarget{variant <= 2 ? 1 : 0, (variant % 2) == 1 ? 1 : 0};
}

BoundReport pleiotropy_test(const PleioDist& dist, int variant) {
  PleioTarget t = pleiotropy_target(variant);
  BoundReport r;
  r.y = t.a;
  r.m = t.b;
  r.source = "theorem10";
  r.label = std::string("treatment ") + (t.a == 1 ? "causes" : "prevents") +
            " the first outcome and " + (t.b == 1 ? "causes" : "prevents") +
            " the second outcome in the same individual (variant " +
            std::to_string(variant) + ")";
  r.statistic = dist.p(t.a, t.b, 1) + dist.p(1 - t.a, 1 - t.b, 0) - Rational(1);
  r.detected = r.statistic > Rational(0);
  r.lower_unstd = r.statistic;
  r.notes = "mediated and biologic pleiotropy are indistinguishable here";
  if (variant != 1) {
    r.notes += "; variant derived from variant 1 by outcome relabeling";
  }
  return r;
}

Rational pleiotropy_identity(const CounterfactualDist& cd, int variant) {
  PleioTarget t = pleiotropy_target(variant);
  // mass(y1, y0, z1, z0) with the second outcome in the mediator slot.
  Rational value = cd.mass(t.a, 1 - t.a, t.b, 1 - t.b);
  for (int y1 = 0; y1 < 2; ++y1) {
    for (int z1 = 0; z1 < 2; ++z1) {
      if (y1 == t.a && z1 == t.b) continue;
      for (int y0 = 0; y0 < 2; ++y0) {
        for (int z0 = 0; z0 < 2; ++z0) {
          if (y0 == 1 - t.a && z0 == 1 - t.b) continue;
          value -= cd.mass(y1, y0, z1, z0);
        }
      }
    }
  }
  return value;
}

}  // namespace stratabound
