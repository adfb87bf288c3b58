#include <doctest.h>

#include <random>
#include <vector>

#include "stratabound/bounds.hpp"
#include "stratabound/counterfactual.hpp"
#include "stratabound/errors.hpp"
#include "stratabound/regions.hpp"
#include "stratabound/table.hpp"
#include "stratabound/yerushalmy.hpp"
#include "test_support.hpp"

using namespace stratabound;
using test::pop_of;

namespace {

// Tuple-level oracle: an exact population of individuals whose
// counterfactual outcome and mediator tuples are all known. Expanding every
// individual into both arms yields the exact randomized-data distribution.
struct TupleIndividual {
  std::vector<double> y1v, y0v, m1v, m0v;
  long long count = 1;
};
using TuplePopulation = std::vector<TupleIndividual>;

std::vector<MicroRecord> tuple_records(const TuplePopulation& pop) {
  std::vector<MicroRecord> records;
  for (const TupleIndividual& ind : pop) {
    for (long long i = 0; i < ind.count; ++i) {
      MicroRecord treated;
      treated.x = 1;
      treated.y = ind.y1v;
      treated.y_observed.assign(ind.y1v.size(), 1);
      treated.m = ind.m1v;
      treated.m_observed.assign(ind.m1v.size(), 1);
      records.push_back(std::move(treated));
      MicroRecord control;
      control.x = 0;
      control.y = ind.y0v;
      control.y_observed.assign(ind.y0v.size(), 1);
      control.m = ind.m0v;
      control.m_observed.assign(ind.m0v.size(), 1);
      records.push_back(std::move(control));
    }
  }
  return records;
}

// Tags each individual with the binary response type of its region
// memberships.
FinitePopulation tag_population(const TuplePopulation& pop,
                                const RegionSpec& spec) {
  std::array<long long, 16> freq{};
  auto member = [&spec](const std::vector<double>& v,
                        const RegionPredicate& pred) {
    std::vector<std::uint8_t> observed(v.size(), 1);
    return region_member(v, observed, pred, spec.missing) ? 1 : 0;
  };
  for (const TupleIndividual& ind : pop) {
    ResponseType t{member(ind.y1v, spec.y_region),
                   member(ind.y0v, spec.y_region),
                   member(ind.m1v, spec.m_region),
                   member(ind.m0v, spec.m_region)};
    freq[t.index()] += ind.count;
  }
  return FinitePopulation(freq);
}

RegionSpec binary_region(double y_value, double m_value) {
  RegionSpec spec;
  spec.y_region.coords.push_back(CoordCondition{0, {}, {y_value}});
  spec.m_region.coords.push_back(CoordCondition{0, {}, {m_value}});
  return spec;
}

}  // namespace

TEST_CASE("coarsen reproduces the low-birth-weight table from microdata") {
  // Expand the bundled table into per-baby records with synthetic gram
  // weights inside/outside the low-birth-weight cutoff.
  JointTable t = yerushalmy_table();
  std::vector<MicroRecord> records;
  for (int x = 0; x < 2; ++x) {
    for (int m = 0; m < 2; ++m) {
      for (int y = 0; y < 2; ++y) {
        for (long long i = 0; i < t.count(x, m, y); ++i) {
          MicroRecord r;
          r.x = x;
          r.y = {static_cast<double>(y)};
          r.y_observed = {1};
          r.m = {m == 1 ? 2000.0 : 3250.0};
          r.m_observed = {1};
          records.push_back(std::move(r));
        }
      }
    }
  }
  RegionSpec spec;
  spec.y_region.coords.push_back(CoordCondition{0, {}, {1.0}});
  spec.m_region.coords.push_back(CoordCondition{0, {{0.0, 2500.0}}, {}});
  JointTable coarsened = coarsen(records, spec);
  CHECK(coarsened == t);
}

TEST_CASE("whole-space mediator region degenerates to total effects") {
  JointTable t = yerushalmy_table();
  std::vector<MicroRecord> records = test::expand_to_records(t);
  RegionSpec spec;
  spec.y_region.coords.push_back(CoordCondition{0, {}, {1.0}});
  // m_region left empty: every record is a member.
  JointTable coarsened = coarsen(records, spec);
  for (int x = 0; x < 2; ++x) {
    CHECK(coarsened.count(x, 0, 0) == 0);
    CHECK(coarsened.count(x, 0, 1) == 0);
    CHECK(coarsened.count(x, 1, 1) ==
          t.count(x, 0, 1) + t.count(x, 1, 1));
  }
  // The membership statistic is then the total-effect contrast
  // P(Y=1|X=1) + P(Y=0|X=0) - 1.
  BoundReport r = prop11_bounds(std::span<const MicroRecord>(records), spec);
  ObservedDist d = estimate_dist(t);
  CHECK(r.statistic == d.p_y(1, 1) + d.p_y(0, 0) - Rational(1));
}

TEST_CASE("missing components: excluded from the region or an error") {
  MicroRecord r;
  r.x = 1;
  r.y = {1.0};
  r.y_observed = {1};
  r.m = {0.0};
  r.m_observed = {0};  // mediator unobserved
  std::vector<MicroRecord> records = {r, binary_record(0, 0, 0),
                                      binary_record(1, 1, 1)};
  RegionSpec spec = binary_region(1.0, 1.0);
  JointTable t = coarsen(records, spec);
  CHECK(t.count(1, 0, 1) == 1);  // counted as a non-member of the m-region

  spec.missing = MissingPolicy::kError;
  CHECK_THROWS_AS(coarsen(records, spec), MissingComponentError);
}

TEST_CASE("region validation rejects malformed conditions") {
  RegionSpec bad;
  bad.y_region.coords.push_back(CoordCondition{0, {{5.0, 1.0}}, {}});
  CHECK_THROWS_AS(bad.validate(), SchemaMismatchError);

  RegionSpec empty_form;
  empty_form.y_region.coords.push_back(CoordCondition{0, {}, {}});
  CHECK_THROWS_AS(empty_form.validate(), SchemaMismatchError);

  RegionSpec arity = binary_region(1.0, 1.0);
  std::vector<MicroRecord> records = {binary_record(1, 1, 1)};
  arity.y_region.coords[0].index = 3;
  CHECK_THROWS_AS(coarsen(records, arity), SchemaMismatchError);
}

TEST_CASE("binary data through {1},{1} regions equals the binary engine") {
  std::vector<MicroRecord> records =
      test::expand_to_records(yerushalmy_table());
  RegionSpec spec = binary_region(1.0, 1.0);
  BoundReport direct =
      prop11_bounds(std::span<const MicroRecord>(records), spec);
  BoundReport engine = corollary4_bounds(estimate_dist(yerushalmy_table()), 1, 1);
  CHECK(direct.statistic == engine.statistic);
  CHECK(*direct.denominator == *engine.denominator);
  CHECK(direct.detected == engine.detected);
}

TEST_CASE("prop11: tight tuple case and uniform binary case") {
  // Point-mass population: treated tuples inside both regions, the control
  // outcome outside.
  TuplePopulation point = {TupleIndividual{{1500.0}, {4000.0}, {3.0}, {3.0}, 4}};
  RegionSpec spec;
  spec.y_region.coords.push_back(CoordCondition{0, {{0.0, 2500.0}}, {}});
  spec.m_region.coords.push_back(CoordCondition{0, {}, {3.0}});
  std::vector<MicroRecord> records = tuple_records(point);
  BoundReport r = prop11_bounds(std::span<const MicroRecord>(records), spec);
  CHECK(r.statistic == Rational(1));
  REQUIRE(r.lower_std.has_value());
  CHECK(*r.lower_std == Rational(1));

  // Uniform over the 16 binary types, viewed through {1},{1}.
  TuplePopulation uniform;
  for (int i = 0; i < 16; ++i) {
    ResponseType t = ResponseType::from_index(i);
    uniform.push_back(TupleIndividual{{double(t.y1)},
                                      {double(t.y0)},
                                      {double(t.m1)},
                                      {double(t.m0)},
                                      1});
  }
  std::vector<MicroRecord> urecords = tuple_records(uniform);
  BoundReport ur = prop11_bounds(std::span<const MicroRecord>(urecords),
                                 binary_region(1.0, 1.0));
  CHECK(ur.statistic == Rational(-1, 2));
}

TEST_CASE("prop11 identity: statistic equals the tagged decomposition") {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 40; ++trial) {
    TuplePopulation pop;
    int n_types = 3 + static_cast<int>(rng() % 5);
    for (int i = 0; i < n_types; ++i) {
      auto value = [&rng] { return static_cast<double>(rng() % 10); };
      pop.push_back(TupleIndividual{{value(), value()},
                                    {value(), value()},
                                    {value()},
                                    {value()},
                                    static_cast<long long>(1 + rng() % 9)});
    }
    RegionSpec spec;
    double lo = static_cast<double>(rng() % 8);
    spec.y_region.coords.push_back(
        CoordCondition{rng() % 2, {{lo, lo + 1 + static_cast<double>(rng() % 4)}}, {}});
    double mlo = static_cast<double>(rng() % 8);
    spec.m_region.coords.push_back(
        CoordCondition{0, {{mlo, mlo + 1 + static_cast<double>(rng() % 4)}}, {}});

    std::vector<MicroRecord> records = tuple_records(pop);
    FinitePopulation tagged = tag_population(pop, spec);
    CounterfactualDist cd = CounterfactualDist::from_population(tagged);
    BoundReport r = prop11_bounds(std::span<const MicroRecord>(records), spec);
    REQUIRE(r.statistic == prop3_rhs(cd, 1, 1));
  }
}

TEST_CASE("prop12: prevention direction on the two-type example") {
  TuplePopulation pop = {TupleIndividual{{1.0}, {0.0}, {0.0}, {0.0}, 1},
                         TupleIndividual{{0.0}, {1.0}, {1.0}, {1.0}, 1}};
  // Outcome region {0}: membership = survival; treatment causing membership
  // is treatment preventing the raw outcome.
  RegionSpec spec = binary_region(0.0, 1.0);
  std::vector<MicroRecord> records = tuple_records(pop);
  BoundReport r = prop12_bounds(std::span<const MicroRecord>(records), spec);
  CHECK(r.statistic == Rational(1, 2));
  CHECK(r.detected);
  FinitePopulation tagged = tag_population(pop, spec);
  CHECK(tagged.frequency(ResponseType{1, 0, 1, 1}) == 1);
  REQUIRE(r.lower_std.has_value());
  CHECK(*r.denominator == Rational(1, 2));
  CHECK(*r.lower_std == Rational(1));
}

TEST_CASE("prop12 on the coarsened bundled data") {
  std::vector<MicroRecord> records =
      test::expand_to_records(yerushalmy_table());
  BoundReport r = prop12_bounds(std::span<const MicroRecord>(records),
                                binary_region(1.0, 1.0));
  CHECK(r.statistic.to_double() == doctest::Approx(-0.030977487));
  CHECK_FALSE(r.detected);
  CHECK_FALSE(r.lower_std.has_value());
}

namespace {

// Random set-monotone tuple population: no individual exits the mediator
// region under treatment while being inside under control.
TuplePopulation random_set_monotone(std::mt19937_64& rng,
                                    const RegionSpec& spec) {
  TuplePopulation pop;
  int n_types = 3 + static_cast<int>(rng() % 5);
  for (int i = 0; i < n_types; ++i) {
    auto value = [&rng] { return static_cast<double>(rng() % 10); };
    TupleIndividual ind{{value()}, {value()}, {value()}, {value()},
                        static_cast<long long>(1 + rng() % 9)};
    std::vector<std::uint8_t> one(1, 1);
    bool in1 = region_member(ind.m1v, one, spec.m_region, spec.missing);
    bool in0 = region_member(ind.m0v, one, spec.m_region, spec.missing);
    if (!in1 && in0) std::swap(ind.m1v, ind.m0v);
    pop.push_back(std::move(ind));
  }
  return pop;
}

}  // namespace

TEST_CASE("prop12 set-monotone equality: control arm pins the stratum mass") {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 40; ++trial) {
    RegionSpec spec;
    spec.y_region.coords.push_back(CoordCondition{0, {{0.0, 5.0}}, {}});
    double mlo = static_cast<double>(rng() % 8);
    spec.m_region.coords.push_back(
        CoordCondition{0, {{mlo, mlo + 1 + static_cast<double>(rng() % 4)}}, {}});
    TuplePopulation pop = random_set_monotone(rng, spec);
    FinitePopulation tagged = tag_population(pop, spec);
    CounterfactualDist cd = CounterfactualDist::from_population(tagged);
    ObservedDist dist = observed_from_population(tagged);
    REQUIRE(cd.stratum_mass(1, 1) == dist.p_m(1, 0));
  }
}

TEST_CASE("prop13: zero adjustment equals the set-monotone bound") {
  std::vector<MicroRecord> records =
      test::expand_to_records(yerushalmy_table());
  RegionSpec spec = binary_region(1.0, 1.0);
  std::span<const MicroRecord> view(records);
  BoundReport adjusted =
      prop13_adjust(view, spec, SensitivityParams{Rational(0), Rational(0)});
  BoundReport plain = prop12_bounds(view, spec);
  CHECK(adjusted.statistic == plain.statistic);
  CHECK(*adjusted.denominator == *plain.denominator);
}

TEST_CASE("prop13: the q parameter restores the stratum denominator") {
  TuplePopulation pop = {TupleIndividual{{1.0}, {0.0}, {1.0}, {1.0}, 5},
                         TupleIndividual{{0.0}, {1.0}, {1.0}, {1.0}, 2},
                         TupleIndividual{{0.0}, {0.0}, {0.0}, {1.0}, 3}};
  RegionSpec spec = binary_region(1.0, 1.0);
  FinitePopulation tagged = tag_population(pop, spec);
  CounterfactualDist cd = CounterfactualDist::from_population(tagged);
  Rational q_true = cd.stratum_mass(0, 1);  // P(M1 out, M0 in)
  CHECK(q_true == Rational(3, 10));
  std::vector<MicroRecord> records = tuple_records(pop);
  BoundReport r =
      prop13_adjust(std::span<const MicroRecord>(records), spec,
                    SensitivityParams{true_sensitivity(cd, 1, 1).r, q_true});
  CHECK(*r.denominator == Rational(7, 10));
  CHECK(*r.denominator == cd.stratum_mass(1, 1));
}

TEST_CASE("prop13: true parameters recover the effect exactly") {
  std::mt19937_64 rng(123);
  for (int trial = 0; trial < 40; ++trial) {
    RegionSpec spec;
    spec.y_region.coords.push_back(CoordCondition{0, {{0.0, 5.0}}, {}});
    spec.m_region.coords.push_back(CoordCondition{0, {{3.0, 8.0}}, {}});
    TuplePopulation pop = random_set_monotone(rng, spec);
    FinitePopulation tagged = tag_population(pop, spec);
    CounterfactualDist cd = CounterfactualDist::from_population(tagged);
    Rational r_true = true_sensitivity(cd, 1, 1).r;
    Rational q_true = cd.stratum_mass(0, 1);
    std::vector<MicroRecord> records = tuple_records(pop);
    BoundReport r = prop13_adjust(std::span<const MicroRecord>(records), spec,
                                  SensitivityParams{r_true, q_true});
    REQUIRE(r.statistic == psde(cd, 1, 1, false));
    if (cd.stratum_mass(1, 1) > Rational(0)) {
      REQUIRE(r.lower_std.has_value());
      REQUIRE(*r.lower_std == psde(cd, 1, 1, true));
    }
  }
}

TEST_CASE("reduction identity: direct route equals the coarsened engine") {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 30; ++trial) {
    // Random records (not a population expansion), some components missing.
    std::vector<MicroRecord> records;
    records.push_back(binary_record(1, 1, 1));
    records.push_back(binary_record(0, 0, 0));
    int n = 20 + static_cast<int>(rng() % 60);
    for (int i = 0; i < n; ++i) {
      MicroRecord r;
      r.x = static_cast<int>(rng() % 2);
      r.y = {static_cast<double>(rng() % 10), static_cast<double>(rng() % 10)};
      r.y_observed = {static_cast<std::uint8_t>(rng() % 10 != 0),
                      static_cast<std::uint8_t>(rng() % 10 != 0)};
      r.m = {static_cast<double>(rng() % 10)};
      r.m_observed = {static_cast<std::uint8_t>(rng() % 10 != 0)};
      records.push_back(std::move(r));
    }
    RegionSpec spec;
    double ylo = static_cast<double>(rng() % 8);
    spec.y_region.coords.push_back(
        CoordCondition{rng() % 2, {{ylo, ylo + 1 + static_cast<double>(rng() % 4)}}, {}});
    double mlo = static_cast<double>(rng() % 8);
    spec.m_region.coords.push_back(
        CoordCondition{0, {{mlo, mlo + 1 + static_cast<double>(rng() % 4)}}, {}});

    // The binary records carry 1-component y; give the region a matching
    // arity by re-checking only index 0 when needed.
    spec.y_region.coords[0].index = 0;

    std::span<const MicroRecord> view(records);
    JointTable table = coarsen(view, spec);
    BoundReport direct11 = prop11_bounds(view, spec);
    BoundReport engine11 = prop11_bounds(table);
    REQUIRE(direct11.statistic == engine11.statistic);
    REQUIRE(*direct11.denominator == *engine11.denominator);
    REQUIRE(direct11.lower_std.has_value() == engine11.lower_std.has_value());
    if (direct11.lower_std) {
      REQUIRE(*direct11.lower_std == *engine11.lower_std);
    }

    BoundReport direct12 = prop12_bounds(view, spec);
    BoundReport engine12 = prop12_bounds(table);
    REQUIRE(direct12.statistic == engine12.statistic);
    REQUIRE(*direct12.denominator == *engine12.denominator);

    SensitivityParams params{Rational(1, 100), Rational(1, 50)};
    BoundReport direct13 = prop13_adjust(view, spec, params);
    BoundReport engine13 = prop13_adjust(table, params);
    REQUIRE(direct13.statistic == engine13.statistic);
    REQUIRE(*direct13.denominator == *engine13.denominator);
  }
}

TEST_CASE("trajectory regions: conjunction over times with missingness") {
  RegionSpec spec = trajectory_region(
      {1, 2},
      {TrajectoryCondition{1, 0.0, 6.0}, TrajectoryCondition{2, 0.0, 6.0}},
      {}, MissingPolicy::kExcludeFromRegion);
  CHECK(spec.time == std::vector<int>{1, 2});
  CHECK(spec.m_region.coords.empty());  // total-effect mode

  MicroRecord ok;
  ok.x = 1;
  ok.y = {3.0, 5.0};
  ok.y_observed = {1, 1};
  ok.m = {};
  ok.m_observed = {};
  CHECK(region_member(ok.y, ok.y_observed, spec.y_region, spec.missing));

  MicroRecord late;
  late.y = {3.0, 7.0};
  late.y_observed = {1, 1};
  CHECK_FALSE(
      region_member(late.y, late.y_observed, spec.y_region, spec.missing));

  MicroRecord missing;
  missing.y = {3.0, 0.0};
  missing.y_observed = {1, 0};  // Y(2) unobserved
  CHECK_FALSE(region_member(missing.y, missing.y_observed, spec.y_region,
                            spec.missing));

  CHECK_THROWS_AS(
      trajectory_region({1}, {}, {}, MissingPolicy::kExcludeFromRegion),
      EmptyOutcomeSelectorError);
  CHECK_THROWS_AS(
      trajectory_region({1}, {TrajectoryCondition{9, 0.0, 1.0}}, {},
                        MissingPolicy::kExcludeFromRegion),
      SchemaMismatchError);
}

TEST_CASE("region JSON: round trip and published layout") {
  RegionSpec spec = read_region_json(
      R"({"y":{"coords":[{"index":0,"interval":[0,2500]}]},)"
      R"("m":{"coords":[{"index":0,"categories":[1]}]},)"
      R"("missing":"exclude","time":[1,2]})");
  REQUIRE(spec.y_region.coords.size() == 1);
  CHECK(spec.y_region.coords[0].interval->second == 2500.0);
  REQUIRE(spec.m_region.coords.size() == 1);
  CHECK(spec.m_region.coords[0].categories == std::vector<double>{1.0});
  CHECK(spec.missing == MissingPolicy::kExcludeFromRegion);
  CHECK(spec.time == std::vector<int>{1, 2});

  RegionSpec back = read_region_json(write_region_json(spec));
  CHECK(back.y_region.coords[0].interval == spec.y_region.coords[0].interval);
  CHECK(back.m_region.coords[0].categories ==
        spec.m_region.coords[0].categories);
  CHECK(back.time == spec.time);

  CHECK_THROWS_AS(read_region_json("{"), ParseError);
  CHECK_THROWS_AS(
      read_region_json(R"({"y":{"coords":[{"index":0}]},"missing":"x"})"),
      ParseError);
}
