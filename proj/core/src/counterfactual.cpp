#include "stratabound/counterfactual.hpp"

#include <random>

#include <json.hpp>

#include "stratabound/errors.hpp"

namespace stratabound {

ResponseType ResponseType::from_index(int i) {
  return ResponseType{(i >> 3) & 1, (i >> 2) & 1, (i >> 1) & 1, i & 1};
}

std::string ResponseType::key() const {
  std::string k(4, '0');
  k[0] = static_cast<char>('0' + y1);
  k[1] = static_cast<char>('0' + y0);
  k[2] = static_cast<char>('0' + m1);
  k[3] = static_cast<char>('0' + m0);
  return k;
}

ResponseType ResponseType::from_key(const std::string& key) {
  if (key.size() != 4) throw ParseError("response type key must be 4 digits");
  ResponseType t;
  int* fields[4] = {&t.y1, &t.y0, &t.m1, &t.m0};
  for (int i = 0; i < 4; ++i) {
    if (key[i] != '0' && key[i] != '1') {
      throw ParseError("response type key must be 4 binary digits");
    }
    *fields[i] = key[i] - '0';
  }
  return t;
}

FinitePopulation::FinitePopulation(const std::array<long long, 16>& freq)
    : freq_(freq), total_(0) {
  for (long long f : freq_) {
    if (f < 0) throw NegativeCountError("negative type frequency");
    total_ += f;
  }
  if (total_ == 0) throw EmptyArmError("population is empty");
}

CounterfactualDist::CounterfactualDist(const std::array<Rational, 16>& mass)
    : mass_(mass) {
  Rational sum(0);
  for (const Rational& m : mass_) {
    if (m < Rational(0)) throw Error("negative counterfactual mass");
    sum += m;
  }
  if (sum != Rational(1)) {
    throw Error("counterfactual masses sum to " + sum.str() + ", not 1");
  }
}

CounterfactualDist CounterfactualDist::from_population(
    const FinitePopulation& pop) {
  std::array<Rational, 16> mass;
  for (int i = 0; i < 16; ++i) {
    mass[i] = Rational(pop.frequency(i), pop.total());
  }
  return CounterfactualDist(mass);
}

Rational CounterfactualDist::stratum_mass(int m1, int m0) const {
  Rational sum(0);
  for (int y1 = 0; y1 < 2; ++y1) {
    for (int y0 = 0; y0 < 2; ++y0) sum += mass(y1, y0, m1, m0);
  }
  return sum;
}

EffectProfile classify_effects(const ResponseType& t) {
  EffectProfile p;
  p.total = t.y1 - t.y0;
  if (t.m1 == t.m0) {
    // Composition: M fixed across worlds pins every nested counterfactual to
    // the plain one, so all direct effects coincide and nothing is mediated.
    p.stratum = t.m1 == 0 ? Stratum::kNeverMediator : Stratum::kAlwaysMediator;
    p.total_direct = p.total;
    p.pure_direct = p.total;
    p.total_indirect = 0;
    p.pure_indirect = 0;
  } else {
    p.stratum = t.m1 > t.m0 ? Stratum::kGained : Stratum::kLost;
  }
  return p;
}

ObservedDist observed_from_population(const FinitePopulation& pop) {
  std::array<std::array<std::array<Rational, 2>, 2>, 2> p{};
  std::array<std::array<std::array<long long, 2>, 2>, 2> tally{};
  for (int i = 0; i < 16; ++i) {
    ResponseType t = ResponseType::from_index(i);
    for (int x = 0; x < 2; ++x) {
      tally[x][t.m(x)][t.y(x)] += pop.frequency(i);
    }
  }
  for (int x = 0; x < 2; ++x) {
    for (int m = 0; m < 2; ++m) {
      for (int y = 0; y < 2; ++y) {
        p[x][m][y] = Rational(tally[x][m][y], pop.total());
      }
    }
  }
  return ObservedDist(p);
}

namespace {

void require_binary_target(int y, int m) {
  if ((y != 0 && y != 1) || (m != 0 && m != 1)) {
    throw ParamOutOfRangeError("y and m must be 0 or 1");
  }
}

}  // namespace

Rational psde(const CounterfactualDist& cd, int y, int m, bool standardized) {
  require_binary_target(y, m);
  Rational diff = cd.mass(y, 1 - y, m, m) - cd.mass(1 - y, y, m, m);
  if (!standardized) return diff;
  Rational stratum = cd.stratum_mass(m, m);
  if (stratum == Rational(0)) {
    throw EmptyStratumError("stratum M1=M0=" + std::to_string(m) +
                            " has zero mass");
  }
  return diff / stratum;
}

Rational prop3_rhs(const CounterfactualDist& cd, int y, int m) {
  require_binary_target(y, m);
  Rational value = cd.mass(y, 1 - y, m, m);
  value -= cd.mass(1 - y, y, m, m);
  value -= cd.mass(1 - y, 1 - y, m, 1 - m);
  value -= cd.mass(1 - y, y, m, 1 - m);
  value -= cd.mass(y, y, 1 - m, m);
  value -= cd.mass(1 - y, y, 1 - m, m);
  value -= cd.mass(y, 1 - y, 1 - m, 1 - m);
  value -= cd.mass(1 - y, 1 - y, 1 - m, 1 - m);
  value -= cd.mass(y, y, 1 - m, 1 - m);
  value -= cd.mass(1 - y, y, 1 - m, 1 - m);
  return value;
}

namespace {

void require_positive_monotone(const CounterfactualDist& cd) {
  for (int y1 = 0; y1 < 2; ++y1) {
    for (int y0 = 0; y0 < 2; ++y0) {
      if (cd.mass(y1, y0, 0, 1) != Rational(0)) {
        throw MonotonicityViolatedError(
            "nonzero mass on a type with M1=0, M0=1");
      }
    }
  }
}

}  // namespace

Rational prop7_rhs(const CounterfactualDist& cd, int y, int m) {
  require_binary_target(y, m);
  require_positive_monotone(cd);
  // Direction of the detectable effect on stratum M1=M0=m.
  int a = y * m + (1 - m) * (1 - y);
  int b = (1 - y) * m + (1 - m) * y;
  return cd.mass(a, b, m, m) - cd.mass(b, a, m, m) - cd.mass(b, a, 1, 0) -
         cd.mass(1 - y, 1 - y, 1, 0);
}

TrueSensitivity true_sensitivity(const CounterfactualDist& cd, int y, int m) {
  require_binary_target(y, m);
  int a = y * m + (1 - m) * (1 - y);
  int b = (1 - y) * m + (1 - m) * y;
  TrueSensitivity s;
  s.r = cd.mass(a, b, 0, 1) + cd.mass(1 - y, 1 - y, 0, 1) -
        cd.mass(b, a, 1, 0) - cd.mass(1 - y, 1 - y, 1, 0);
  s.q = cd.stratum_mass(m, 1 - m);
  return s;
}

FinitePopulation sample_population(std::uint64_t seed, long long n,
                                   PopulationConstraint constraint) {
  if (n < 1) throw ParamOutOfRangeError("population size must be >= 1");
  std::array<int, 16> admissible{};
  int k = 0;
  for (int i = 0; i < 16; ++i) {
    ResponseType t = ResponseType::from_index(i);
    if (constraint == PopulationConstraint::kPositiveMonotone && t.m1 == 0 &&
        t.m0 == 1) {
      continue;
    }
    admissible[k++] = i;
  }
  // Modulo draw instead of uniform_int_distribution keeps the stream
  // identical across standard library implementations; the bias at k <= 16
  // is ~1e-18.
  std::mt19937_64 rng(seed);
  std::array<long long, 16> freq{};
  for (long long i = 0; i < n; ++i) {
    freq[admissible[static_cast<int>(rng() % k)]] += 1;
  }
  return FinitePopulation(freq);
}

FinitePopulation read_population_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("population JSON: ") + e.what());
  }
  if (!j.contains("types") || !j["types"].is_object()) {
    throw ParseError("population JSON: missing \"types\" object");
  }
  std::array<long long, 16> freq{};
  for (const auto& [key, value] : j["types"].items()) {
    if (!value.is_number_integer()) {
      throw ParseError("population JSON: frequency of \"" + key +
                       "\" must be an integer");
    }
    freq[ResponseType::from_key(key).index()] = value.get<long long>();
  }
  FinitePopulation pop(freq);
  if (j.contains("N")) {
    if (!j["N"].is_number_integer() || j["N"].get<long long>() != pop.total()) {
      throw ParseError("population JSON: N does not match the type total");
    }
  }
  return pop;
}

std::string write_population_json(const FinitePopulation& pop) {
  nlohmann::json types = nlohmann::json::object();
  for (int i = 0; i < 16; ++i) {
    if (pop.frequency(i) > 0) {
      types[ResponseType::from_index(i).key()] = pop.frequency(i);
    }
  }
  nlohmann::json j;
  j["types"] = types;
  j["N"] = pop.total();
  return j.dump();
}

}  // namespace stratabound
