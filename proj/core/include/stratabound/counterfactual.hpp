#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>

#include "stratabound/rational.hpp"
#include "stratabound/table.hpp"

namespace stratabound {

// One of the 16 counterfactual response types (Y under treatment, Y under
// control, M under treatment, M under control). An individual's full
// behavior in both treatment worlds is summarized by this vector.
struct ResponseType {
  int y1 = 0;
  int y0 = 0;
  int m1 = 0;
  int m0 = 0;

  static constexpr int kCount = 16;

  int index() const { return (y1 << 3) | (y0 << 2) | (m1 << 1) | m0; }
  static ResponseType from_index(int i);

  int y(int x) const { return x == 1 ? y1 : y0; }
  int m(int x) const { return x == 1 ? m1 : m0; }

  // Four-digit key "y1 y0 m1 m0", e.g. "1011"; used in population JSON.
  std::string key() const;
  static ResponseType from_key(const std::string& key);

  friend bool operator==(const ResponseType&, const ResponseType&) = default;
};

// Exact multiset of response types: the oracle's ground-truth population.
class FinitePopulation {
 public:
  // Throws on negative frequencies or an all-zero population.
  explicit FinitePopulation(const std::array<long long, 16>& freq);

  long long frequency(const ResponseType& t) const { return freq_[t.index()]; }
  long long frequency(int index) const { return freq_[index]; }
  long long total() const { return total_; }

  friend bool operator==(const FinitePopulation&,
                         const FinitePopulation&) = default;

 private:
  std::array<long long, 16> freq_;
  long long total_;
};

// Probability mass over the 16 response types, exact.
class CounterfactualDist {
 public:
  // Throws unless masses are nonnegative and sum to exactly 1.
  explicit CounterfactualDist(const std::array<Rational, 16>& mass);
  static CounterfactualDist from_population(const FinitePopulation& pop);

  const Rational& mass(const ResponseType& t) const { return mass_[t.index()]; }
  const Rational& mass(int y1, int y0, int m1, int m0) const {
    return mass_[ResponseType{y1, y0, m1, m0}.index()];
  }

  // P(M1 = m1, M0 = m0).
  Rational stratum_mass(int m1, int m0) const;

 private:
  std::array<Rational, 16> mass_;
};

// Signs of an individual's causal effects. Direct and indirect entries are
// derived through the composition axiom and exist only on strata with
// M1 = M0; elsewhere they are left empty rather than fabricated, because the
// nested counterfactuals are not identified there.
enum class Stratum {
  kNeverMediator,   // m1 = m0 = 0
  kAlwaysMediator,  // m1 = m0 = 1
  kGained,          // m1 > m0
  kLost,            // m1 < m0
};

struct EffectProfile {
  int total = 0;  // y1 - y0, always defined
  std::optional<int> total_direct;
  std::optional<int> pure_direct;
  std::optional<int> total_indirect;
  std::optional<int> pure_indirect;
  Stratum stratum = Stratum::kNeverMediator;
};

EffectProfile classify_effects(const ResponseType& t);

// Observed-data distribution implied by randomizing treatment over the
// population: p(y,m|x) is the frequency share of types with Y_x=y, M_x=m.
ObservedDist observed_from_population(const FinitePopulation& pop);

// Principal-stratum direct effect in the y-direction on stratum M1=M0=m:
// P(Y1=y, Y0=1-y, M1=M0=m) - P(Y1=1-y, Y0=y, M1=M0=m), optionally divided by
// the stratum mass. Throws EmptyStratumError if standardization is requested
// on a stratum of mass zero.
Rational psde(const CounterfactualDist& cd, int y, int m, bool standardized);

// The ten-term counterfactual decomposition of the no-assumption detection
// statistic S(y,m) = P(Y=y,M=m|X=1) + P(Y=1-y,M=m|X=0) - 1. Equals S exactly
// for every distribution arising from a population.
Rational prop3_rhs(const CounterfactualDist& cd, int y, int m);

// The four-term decomposition of the monotone detection statistic
// D(y,m) = P(Y=1-y,M=m|X=1-m) - P(Y=1-y,M=m|X=m), valid when no individual
// has M1=0, M0=1. Throws MonotonicityViolatedError otherwise.
Rational prop7_rhs(const CounterfactualDist& cd, int y, int m);

// Quantities controlling monotonicity violations: subtracting r from D(y,m)
// recovers the unstandardized direct effect exactly, and dividing by
// P(M=m|X=1) - q standardizes it, where q = P(M1=m, M0 != m).
struct TrueSensitivity {
  Rational r;
  Rational q;
};

TrueSensitivity true_sensitivity(const CounterfactualDist& cd, int y, int m);

enum class PopulationConstraint {
  kNone,
  kPositiveMonotone,  // no mass on types with m1=0, m0=1
};

// Deterministic multinomial draw of n individuals with uniform probability
// over the admissible types.
FinitePopulation sample_population(std::uint64_t seed, long long n,
                                   PopulationConstraint constraint);

// Population JSON: {"types": {"1011": 30, ...}, "N": 100}.
FinitePopulation read_population_json(const std::string& text);
std::string write_population_json(const FinitePopulation& pop);

}  // namespace stratabound
