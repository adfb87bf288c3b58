#include <doctest.h>

#include "stratabound/bounds.hpp"
#include "stratabound/counterfactual.hpp"
#include "stratabound/errors.hpp"
#include "test_support.hpp"

using namespace stratabound;
using test::cd_of;
using test::pop_of;

TEST_CASE("response types: 16 distinct, key round trip") {
  for (int i = 0; i < 16; ++i) {
    ResponseType t = ResponseType::from_index(i);
    CHECK(t.index() == i);
    CHECK(ResponseType::from_key(t.key()) == t);
  }
  CHECK(ResponseType::from_key("1011") == ResponseType{1, 0, 1, 1});
  CHECK_THROWS_AS(ResponseType::from_key("10"), ParseError);
  CHECK_THROWS_AS(ResponseType::from_key("10x1"), ParseError);
}

TEST_CASE("classify_effects on fixed-mediator strata") {
  EffectProfile p = classify_effects(ResponseType{1, 0, 0, 0});
  CHECK(p.total == 1);
  CHECK(p.total_direct == 1);
  CHECK(p.pure_direct == 1);
  CHECK(p.total_indirect == 0);
  CHECK(p.pure_indirect == 0);
  CHECK(p.stratum == Stratum::kNeverMediator);

  EffectProfile none = classify_effects(ResponseType{1, 1, 1, 1});
  CHECK(none.total == 0);
  CHECK(none.total_direct == 0);
  CHECK(none.pure_direct == 0);
  CHECK(none.total_indirect == 0);
  CHECK(none.pure_indirect == 0);
  CHECK(none.stratum == Stratum::kAlwaysMediator);
}

TEST_CASE("classify_effects leaves cross-world entries undefined") {
  EffectProfile p = classify_effects(ResponseType{1, 0, 1, 0});
  CHECK(p.total == 1);
  CHECK_FALSE(p.total_direct.has_value());
  CHECK_FALSE(p.pure_direct.has_value());
  CHECK_FALSE(p.total_indirect.has_value());
  CHECK_FALSE(p.pure_indirect.has_value());
  CHECK(p.stratum == Stratum::kGained);
  CHECK(classify_effects(ResponseType{0, 0, 0, 1}).stratum == Stratum::kLost);
}

TEST_CASE("classify_effects consistency over all fixed-mediator types") {
  for (int i = 0; i < 16; ++i) {
    ResponseType t = ResponseType::from_index(i);
    EffectProfile p = classify_effects(t);
    CHECK(p.total == t.y1 - t.y0);
    if (t.m1 == t.m0) {
      CHECK(p.total_direct == p.total);
      CHECK(p.pure_direct == p.total);
      CHECK(p.total_indirect == 0);
      CHECK(p.pure_indirect == 0);
    } else {
      CHECK_FALSE(p.total_direct.has_value());
    }
  }
}

TEST_CASE("observed_from_population: two-type example") {
  FinitePopulation pop = pop_of({{"1000", 50}, {"0111", 50}});
  ObservedDist d = observed_from_population(pop);
  CHECK(d.p(1, 0, 1) == Rational(1, 2));
  CHECK(d.p(1, 1, 0) == Rational(1, 2));
  CHECK(d.p(0, 1, 1) == Rational(1, 2));
  CHECK(d.p(0, 0, 0) == Rational(1, 2));
  CHECK(d.p(1, 1, 1) == Rational(0));
  CHECK(d.p(0, 1, 0) == Rational(0));
}

TEST_CASE("observed_from_population: point mass and uniform") {
  ObservedDist point = observed_from_population(pop_of({{"0000", 7}}));
  CHECK(point.p(0, 0, 1) == Rational(1));
  CHECK(point.p(0, 0, 0) == Rational(1));

  std::array<long long, 16> ones;
  ones.fill(1);
  ObservedDist uniform = observed_from_population(FinitePopulation(ones));
  for (int x = 0; x < 2; ++x) {
    for (int m = 0; m < 2; ++m) {
      for (int y = 0; y < 2; ++y) {
        CHECK(uniform.p(y, m, x) == Rational(1, 4));
      }
    }
  }
}

TEST_CASE("psde: stratum-restricted risk difference") {
  CounterfactualDist cd = cd_of({{"1011", Rational(3, 10)},
                                 {"0111", Rational(1, 10)},
                                 {"0011", Rational(2, 10)},
                                 {"0000", Rational(4, 10)}});
  CHECK(psde(cd, 1, 1, false) == Rational(1, 5));
  CHECK(psde(cd, 1, 1, true) == Rational(1, 3));

  CounterfactualDist point = cd_of({{"1011", Rational(1)}});
  CHECK(psde(point, 1, 1, false) == Rational(1));
  CHECK(psde(point, 1, 1, true) == Rational(1));
  CHECK_THROWS_AS(psde(point, 1, 0, true), EmptyStratumError);

  std::array<Rational, 16> mass;
  mass.fill(Rational(1, 16));
  CounterfactualDist u(mass);
  for (int y = 0; y < 2; ++y) {
    for (int m = 0; m < 2; ++m) {
      CHECK(psde(u, y, m, false) == Rational(0));
    }
  }
}

TEST_CASE("prop3_rhs matches its frozen examples") {
  std::array<Rational, 16> mass;
  mass.fill(Rational(1, 16));
  CounterfactualDist uniform(mass);
  for (int y = 0; y < 2; ++y) {
    for (int m = 0; m < 2; ++m) {
      CHECK(prop3_rhs(uniform, y, m) == Rational(-1, 2));
    }
  }

  CounterfactualDist point = cd_of({{"1000", Rational(1)}});
  CHECK(prop3_rhs(point, 1, 0) == Rational(1));

  CounterfactualDist cd = cd_of({{"1011", Rational(3, 10)},
                                 {"0111", Rational(1, 10)},
                                 {"0011", Rational(2, 10)},
                                 {"0000", Rational(4, 10)}});
  CHECK(prop3_rhs(cd, 1, 1) == Rational(-1, 5));
  ObservedDist d = observed_from_population(
      pop_of({{"1011", 3}, {"0111", 1}, {"0011", 2}, {"0000", 4}}));
  CHECK(prop3_rhs(cd, 1, 1) == s_statistic(d, 1, 1));
}

TEST_CASE("oracle identity: decomposition equals observed statistic") {
  for (std::uint64_t seed = 1; seed <= 200; ++seed) {
    FinitePopulation pop =
        sample_population(seed, 100, PopulationConstraint::kNone);
    CounterfactualDist cd = CounterfactualDist::from_population(pop);
    ObservedDist dist = observed_from_population(pop);
    for (int y = 0; y < 2; ++y) {
      for (int m = 0; m < 2; ++m) {
        REQUIRE(prop3_rhs(cd, y, m) == s_statistic(dist, y, m));
      }
    }
  }
}

TEST_CASE("prop7_rhs: monotone decomposition and precondition") {
  FinitePopulation example = pop_of({{"1000", 1}, {"0111", 1}});
  CounterfactualDist cd = CounterfactualDist::from_population(example);
  ObservedDist dist = observed_from_population(example);
  CHECK(prop7_rhs(cd, 0, 0) == Rational(1, 2));
  CHECK(prop7_rhs(cd, 0, 0) == dist.p(1, 0, 1) - dist.p(1, 0, 0));
  CHECK(prop7_rhs(cd, 0, 1) == Rational(1, 2));
  CHECK(prop7_rhs(cd, 0, 1) == dist.p(1, 1, 0) - dist.p(1, 1, 1));

  CounterfactualDist violating = cd_of({{"1001", Rational(1)}});
  CHECK_THROWS_AS(prop7_rhs(violating, 0, 0), MonotonicityViolatedError);
}

TEST_CASE("oracle identity: monotone decomposition equals D") {
  for (std::uint64_t seed = 1; seed <= 200; ++seed) {
    FinitePopulation pop =
        sample_population(seed, 100, PopulationConstraint::kPositiveMonotone);
    CounterfactualDist cd = CounterfactualDist::from_population(pop);
    ObservedDist dist = observed_from_population(pop);
    for (int y = 0; y < 2; ++y) {
      for (int m = 0; m < 2; ++m) {
        REQUIRE(prop7_rhs(cd, y, m) == d_statistic(dist, y, m));
      }
    }
  }
}

TEST_CASE("true_sensitivity: frozen examples") {
  CounterfactualDist cd = cd_of({{"1011", Rational(5, 10)},
                                 {"0010", Rational(3, 10)},
                                 {"0111", Rational(2, 10)}});
  TrueSensitivity s = true_sensitivity(cd, 1, 1);
  CHECK(s.r == Rational(-3, 10));
  CHECK(s.q == Rational(3, 10));
  ObservedDist dist = observed_from_population(
      pop_of({{"1011", 5}, {"0010", 3}, {"0111", 2}}));
  Rational d = d_statistic(dist, 1, 1);
  CHECK(d - s.r == Rational(3, 10));
  CHECK(d - s.r == psde(cd, 1, 1, false));
  CHECK(dist.p_m(1, 1) - s.q == Rational(7, 10));
  CHECK(dist.p_m(1, 1) - s.q == cd.stratum_mass(1, 1));

  // No stratum-switching mass => both parameters vanish.
  CounterfactualDist still = cd_of({{"1011", Rational(1, 2)},
                                    {"1000", Rational(1, 2)}});
  for (int y = 0; y < 2; ++y) {
    for (int m = 0; m < 2; ++m) {
      TrueSensitivity zero = true_sensitivity(still, y, m);
      CHECK(zero.r == Rational(0));
      CHECK(zero.q == Rational(0));
    }
  }

  // Uniform: r cancels, q is the full gained-stratum mass.
  std::array<Rational, 16> mass;
  mass.fill(Rational(1, 16));
  TrueSensitivity u = true_sensitivity(CounterfactualDist(mass), 1, 1);
  CHECK(u.r == Rational(0));
  CHECK(u.q == Rational(1, 4));
}

TEST_CASE("oracle identity: sensitivity parameters recover the direct effect") {
  for (std::uint64_t seed = 300; seed < 500; ++seed) {
    FinitePopulation pop =
        sample_population(seed, 100, PopulationConstraint::kNone);
    CounterfactualDist cd = CounterfactualDist::from_population(pop);
    ObservedDist dist = observed_from_population(pop);
    for (int y = 0; y < 2; ++y) {
      for (int m = 0; m < 2; ++m) {
        TrueSensitivity s = true_sensitivity(cd, y, m);
        int a = y * m + (1 - m) * (1 - y);
        int b = 1 - a;
        Rational target = cd.mass(a, b, m, m) - cd.mass(b, a, m, m);
        REQUIRE(d_statistic(dist, y, m) - s.r == target);
        Rational stratum = cd.stratum_mass(m, m);
        if (stratum > Rational(0)) {
          REQUIRE((d_statistic(dist, y, m) - s.r) /
                      (dist.p_m(m, 1) - s.q) ==
                  target / stratum);
        }
      }
    }
  }
}

TEST_CASE("sample_population: determinism and constraints") {
  FinitePopulation a = sample_population(42, 100, PopulationConstraint::kNone);
  FinitePopulation b = sample_population(42, 100, PopulationConstraint::kNone);
  CHECK(a == b);
  CHECK(a.total() == 100);

  FinitePopulation mono =
      sample_population(42, 100, PopulationConstraint::kPositiveMonotone);
  CHECK(mono.total() == 100);
  for (int y1 = 0; y1 < 2; ++y1) {
    for (int y0 = 0; y0 < 2; ++y0) {
      CHECK(mono.frequency(ResponseType{y1, y0, 0, 1}) == 0);
    }
  }

  FinitePopulation other =
      sample_population(43, 100, PopulationConstraint::kNone);
  CHECK(a.total() == other.total());
  CHECK_THROWS_AS(sample_population(1, 0, PopulationConstraint::kNone),
                  ParamOutOfRangeError);
}

TEST_CASE("population JSON round trip") {
  FinitePopulation pop = pop_of({{"1011", 30}, {"0000", 70}});
  std::string text = write_population_json(pop);
  CHECK(read_population_json(text) == pop);
  CHECK(text.find("\"N\":100") != std::string::npos);
  CHECK(text.find("\"1011\":30") != std::string::npos);

  CHECK_THROWS_AS(read_population_json("{}"), ParseError);
  CHECK_THROWS_AS(
      read_population_json(R"({"types":{"1011":3},"N":4})"), ParseError);
}
