#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "stratabound/bounds.hpp"
#include "stratabound/counterfactual.hpp"
#include "stratabound/inference.hpp"
#include "stratabound/regions.hpp"
#include "stratabound/table.hpp"
#include "stratabound/yerushalmy.hpp"

using namespace stratabound;

static void DetectionScans(benchmark::State& state) {
  ObservedDist dist = estimate_dist(yerushalmy_table());
  for (auto _ : state) {
    auto s = theorem1_scan(dist);
    auto d = theorem5_scan(dist);
    benchmark::DoNotOptimize(s);
    benchmark::DoNotOptimize(d);
  }
}
BENCHMARK(DetectionScans);

static void OracleIdentityCheck(benchmark::State& state) {
  std::uint64_t seed = 1;
  for (auto _ : state) {
    FinitePopulation pop =
        sample_population(seed++, state.range(0), PopulationConstraint::kNone);
    CounterfactualDist cd = CounterfactualDist::from_population(pop);
    ObservedDist dist = observed_from_population(pop);
    bool ok = true;
    for (int y = 0; y < 2; ++y) {
      for (int m = 0; m < 2; ++m) {
        ok &= prop3_rhs(cd, y, m) == s_statistic(dist, y, m);
      }
    }
    benchmark::DoNotOptimize(ok);
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(OracleIdentityCheck)->Range(100, 100000)->Complexity();

static void CoarsenRecords(benchmark::State& state) {
  std::mt19937_64 rng(5);
  std::vector<MicroRecord> records;
  records.reserve(state.range(0));
  for (long long i = 0; i < state.range(0); ++i) {
    MicroRecord r;
    r.x = static_cast<int>(rng() % 2);
    r.y = {static_cast<double>(rng() % 10)};
    r.y_observed = {1};
    r.m = {static_cast<double>(rng() % 4000)};
    r.m_observed = {1};
    records.push_back(std::move(r));
  }
  RegionSpec spec;
  spec.y_region.coords.push_back(CoordCondition{0, {}, {1.0}});
  spec.m_region.coords.push_back(CoordCondition{0, {{0.0, 2500.0}}, {}});
  for (auto _ : state) {
    JointTable t = coarsen(records, spec);
    benchmark::DoNotOptimize(t);
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(CoarsenRecords)->Range(1 << 10, 1 << 17);

static void WaldInterval(benchmark::State& state) {
  JointTable table = yerushalmy_table();
  for (auto _ : state) {
    Interval ci = wald_ci(theorem5_spec(1, 1), table, 0.95, Sided::kOneLower);
    benchmark::DoNotOptimize(ci);
  }
}
BENCHMARK(WaldInterval);

static void BootstrapInterval(benchmark::State& state) {
  JointTable table = yerushalmy_table();
  for (auto _ : state) {
    Interval ci = bootstrap_ci(theorem5_spec(1, 1), table, 0.95, Sided::kTwo,
                               state.range(0), 7);
    benchmark::DoNotOptimize(ci);
  }
}
BENCHMARK(BootstrapInterval)->Arg(200)->Arg(1000);

BENCHMARK_MAIN();
