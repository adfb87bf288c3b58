#include "stratabound/regions.hpp"

#include <algorithm>

#include <json.hpp>

#include "stratabound/errors.hpp"

namespace stratabound {

namespace {

void validate_condition(const CoordCondition& c) {
  if (c.interval && !c.categories.empty()) {
    throw SchemaMismatchError(
        "region condition carries both an interval and a category set");
  }
  if (!c.interval && c.categories.empty()) {
    throw SchemaMismatchError("region condition carries no membership form");
  }
  if (c.interval && !(c.interval->first <= c.interval->second)) {
    throw SchemaMismatchError("region interval has lower > upper");
  }
}

}  // namespace

void RegionSpec::validate() const {
  for (const CoordCondition& c : y_region.coords) validate_condition(c);
  for (const CoordCondition& c : m_region.coords) validate_condition(c);
}

bool region_member(std::span<const double> values,
                   std::span<const std::uint8_t> observed,
                   const RegionPredicate& predicate, MissingPolicy policy) {
  for (const CoordCondition& c : predicate.coords) {
    if (c.index >= values.size()) {
      throw SchemaMismatchError("region condition indexes component " +
                                std::to_string(c.index) + " of a " +
                                std::to_string(values.size()) +
                                "-component tuple");
    }
    if (!observed[c.index]) {
      if (policy == MissingPolicy::kError) {
        throw MissingComponentError("selected component " +
                                    std::to_string(c.index) +
                                    " is unobserved");
      }
      return false;  // response indicator folded into the region
    }
    double v = values[c.index];
    if (c.interval) {
      if (!(c.interval->first <= v && v < c.interval->second)) return false;
    } else {
      if (std::find(c.categories.begin(), c.categories.end(), v) ==
          c.categories.end()) {
        return false;
      }
    }
  }
  return true;
}

JointTable coarsen(std::span<const MicroRecord> records,
                   const RegionSpec& spec) {
  spec.validate();
  std::array<std::array<std::array<long long, 2>, 2>, 2> counts{};
  for (const MicroRecord& r : records) {
    if (r.x != 0 && r.x != 1) throw SchemaMismatchError("x must be 0 or 1");
    bool in_y = region_member(r.y, r.y_observed, spec.y_region, spec.missing);
    bool in_m = region_member(r.m, r.m_observed, spec.m_region, spec.missing);
    counts[r.x][in_m ? 1 : 0][in_y ? 1 : 0] += 1;
  }
  return JointTable(counts);
}

namespace {

// Membership tallies per arm, the direct route shared by the set-valued
// bounds below.
struct MembershipCounts {
  std::array<long long, 2> n{};         // arm totals
  std::array<long long, 2> y_in_m_in{};  // Y in y_a, M in m_a
  std::array<long long, 2> y_out_m_in{};
  std::array<long long, 2> m_in{};
  std::array<long long, 2> m_out{};
};

MembershipCounts tally(std::span<const MicroRecord> records,
                       const RegionSpec& spec) {
  spec.validate();
  MembershipCounts c;
  for (const MicroRecord& r : records) {
    if (r.x != 0 && r.x != 1) throw SchemaMismatchError("x must be 0 or 1");
    bool in_y = region_member(r.y, r.y_observed, spec.y_region, spec.missing);
    bool in_m = region_member(r.m, r.m_observed, spec.m_region, spec.missing);
    c.n[r.x] += 1;
    if (in_m) {
      c.m_in[r.x] += 1;
      (in_y ? c.y_in_m_in : c.y_out_m_in)[r.x] += 1;
    } else {
      c.m_out[r.x] += 1;
    }
  }
  for (int x = 0; x < 2; ++x) {
    if (c.n[x] == 0) {
      throw EmptyArmError("arm X=" + std::to_string(x) +
                          " has no observations");
    }
  }
  return c;
}

std::string membership_label(int causes) {
  return std::string("treatment ") + (causes == 1 ? "causes" : "prevents") +
         " outcome-region membership within the stratum whose mediator "
         "stays in the region under both treatments";
}

}  // namespace

BoundReport prop11_bounds(std::span<const MicroRecord> records,
                          const RegionSpec& spec,
                          const BoundOptions& options) {
  MembershipCounts c = tally(records, spec);
  BoundReport r;
  r.y = 1;
  r.m = 1;
  r.source = "proposition11";
  r.label = membership_label(1);
  r.statistic = Rational(c.y_in_m_in[1], c.n[1]) +
                Rational(c.y_out_m_in[0], c.n[0]) - Rational(1);
  r.detected = r.statistic > Rational(0);
  r.lower_unstd = r.statistic;
  r.denominator = Rational(c.m_in[1], c.n[1]) - Rational(c.m_out[0], c.n[0]);
  if (r.detected) {
    if (*r.denominator <= Rational(0)) {
      throw DegenerateDenominatorError(
          "standardization denominator is nonpositive while the statistic "
          "is positive");
    }
    r.lower_std = r.statistic / *r.denominator;
  } else {
    r.notes = "statistic <= 0: no detection, standardized bound not emitted";
  }
  if (options.clamp_at_zero && r.statistic < Rational(0)) {
    r.lower_unstd = Rational(0);
    r.clamped = true;
  }
  return r;
}

BoundReport prop11_bounds(const JointTable& coarsened,
                          const BoundOptions& options) {
  BoundReport r = corollary4_bounds(estimate_dist(coarsened), 1, 1, options);
  r.source = "proposition11";
  r.label = membership_label(1);
  return r;
}

BoundReport prop12_bounds(std::span<const MicroRecord> records,
                          const RegionSpec& spec,
                          const BoundOptions& options) {
  MembershipCounts c = tally(records, spec);
  BoundReport r;
  r.y = 1;
  r.m = 1;
  r.source = "proposition12";
  r.label = membership_label(1);
  r.monotonicity_assumed = true;
  r.statistic = Rational(c.y_out_m_in[0], c.n[0]) -
                Rational(c.y_out_m_in[1], c.n[1]);
  r.detected = r.statistic > Rational(0);
  r.lower_unstd = r.statistic;
  r.denominator = Rational(c.m_in[0], c.n[0]);
  if (r.detected) {
    if (*r.denominator == Rational(0)) {
      throw DegenerateDenominatorError("standardization denominator is zero");
    }
    r.lower_std = r.statistic / *r.denominator;
  } else {
    r.notes = "statistic <= 0: no detection, standardized bound not emitted";
  }
  if (options.clamp_at_zero && r.statistic < Rational(0)) {
    r.lower_unstd = Rational(0);
    r.clamped = true;
  }
  return r;
}

BoundReport prop12_bounds(const JointTable& coarsened,
                          const BoundOptions& options) {
  BoundReport r = corollary8_bounds(estimate_dist(coarsened), 1, 1,
                                    DenominatorMode::kPaper, Roles::kStandard,
                                    options);
  r.source = "proposition12";
  r.label = membership_label(1);
  return r;
}

namespace {

BoundReport prop13_from_pieces(const Rational& stat, const Rational& p_m_in_x0,
                               const SensitivityParams& params) {
  if (params.r < Rational(-1) || params.r > Rational(1)) {
    throw ParamOutOfRangeError("r must lie in [-1, 1]");
  }
  if (params.q < Rational(0) || params.q > Rational(1)) {
    throw ParamOutOfRangeError("q must lie in [0, 1]");
  }
  BoundReport r;
  r.y = 1;
  r.m = 1;
  r.source = "proposition13";
  r.label = membership_label(1) + " (sensitivity-adjusted)";
  r.statistic = stat - params.r;
  r.detected = r.statistic > Rational(0);
  r.lower_unstd = r.statistic;
  Rational denom = p_m_in_x0 - params.q;
  r.denominator = denom;
  r.notes = "r=" + params.r.str() + ", q=" + params.q.str() +
            ", raw statistic " + stat.str() +
            "; denominator anchored to the control arm";
  if (params.q > p_m_in_x0) {
    r.notes += "; q exceeds P(M in region | X=0)";
  }
  if (denom > Rational(0)) {
    r.lower_std = r.statistic / denom;
  } else {
    r.notes += "; denominator nonpositive: standardized value not emitted";
  }
  return r;
}

}  // namespace

BoundReport prop13_adjust(std::span<const MicroRecord> records,
                          const RegionSpec& spec,
                          const SensitivityParams& params) {
  MembershipCounts c = tally(records, spec);
  Rational stat = Rational(c.y_out_m_in[0], c.n[0]) -
                  Rational(c.y_out_m_in[1], c.n[1]);
  return prop13_from_pieces(stat, Rational(c.m_in[0], c.n[0]), params);
}

BoundReport prop13_adjust(const JointTable& coarsened,
                          const SensitivityParams& params) {
  ObservedDist dist = estimate_dist(coarsened);
  return prop13_from_pieces(d_statistic(dist, 1, 1), dist.p_m(1, 0), params);
}

RegionSpec trajectory_region(
    const std::vector<int>& times,
    const std::vector<TrajectoryCondition>& y_conditions,
    const std::vector<TrajectoryCondition>& m_conditions,
    MissingPolicy policy) {
  if (y_conditions.empty()) {
    throw EmptyOutcomeSelectorError(
        "a trajectory region needs at least one outcome condition");
  }
  auto coord_of = [&times](int time) -> std::size_t {
    auto it = std::find(times.begin(), times.end(), time);
    if (it == times.end()) {
      throw SchemaMismatchError("condition references time " +
                                std::to_string(time) +
                                " outside the selector");
    }
    return static_cast<std::size_t>(it - times.begin());
  };
  RegionSpec spec;
  spec.time = times;
  spec.missing = policy;
  for (const TrajectoryCondition& c : y_conditions) {
    spec.y_region.coords.push_back(
        CoordCondition{coord_of(c.time), {{c.lower, c.upper}}, {}});
  }
  for (const TrajectoryCondition& c : m_conditions) {
    spec.m_region.coords.push_back(
        CoordCondition{coord_of(c.time), {{c.lower, c.upper}}, {}});
  }
  spec.validate();
  return spec;
}

namespace {

RegionPredicate parse_predicate(const nlohmann::json& j, const char* key) {
  RegionPredicate pred;
  if (!j.contains(key)) return pred;  // absent = whole space
  const nlohmann::json& p = j[key];
  if (!p.is_object()) throw ParseError("region JSON: bad predicate");
  if (!p.contains("coords")) return pred;
  for (const auto& c : p["coords"]) {
    CoordCondition cond;
    if (!c.contains("index") || !c["index"].is_number_integer()) {
      throw ParseError("region JSON: condition needs an integer index");
    }
    cond.index = c["index"].get<std::size_t>();
    if (c.contains("interval")) {
      const auto& iv = c["interval"];
      if (!iv.is_array() || iv.size() != 2) {
        throw ParseError("region JSON: interval must be [lower, upper]");
      }
      cond.interval = {iv[0].get<double>(), iv[1].get<double>()};
    }
    if (c.contains("categories")) {
      for (const auto& v : c["categories"]) {
        cond.categories.push_back(v.get<double>());
      }
    }
    pred.coords.push_back(std::move(cond));
  }
  return pred;
}

}  // namespace

RegionSpec read_region_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("region JSON: ") + e.what());
  }
  RegionSpec spec;
  spec.y_region = parse_predicate(j, "y");
  spec.m_region = parse_predicate(j, "m");
  if (j.contains("missing")) {
    std::string policy = j["missing"].get<std::string>();
    if (policy == "exclude") {
      spec.missing = MissingPolicy::kExcludeFromRegion;
    } else if (policy == "error") {
      spec.missing = MissingPolicy::kError;
    } else {
      throw ParseError("region JSON: missing policy must be \"exclude\" or "
                       "\"error\"");
    }
  }
  if (j.contains("time")) {
    for (const auto& t : j["time"]) spec.time.push_back(t.get<int>());
  }
  spec.validate();
  return spec;
}

std::string write_region_json(const RegionSpec& spec) {
  auto predicate_json = [](const RegionPredicate& p) {
    nlohmann::json coords = nlohmann::json::array();
    for (const CoordCondition& c : p.coords) {
      nlohmann::json cond;
      cond["index"] = c.index;
      if (c.interval) {
        cond["interval"] = {c.interval->first, c.interval->second};
      }
      if (!c.categories.empty()) cond["categories"] = c.categories;
      coords.push_back(cond);
    }
    nlohmann::json out;
    out["coords"] = coords;
    return out;
  };
  nlohmann::json j;
  j["y"] = predicate_json(spec.y_region);
  j["m"] = predicate_json(spec.m_region);
  j["missing"] =
      spec.missing == MissingPolicy::kExcludeFromRegion ? "exclude" : "error";
  if (!spec.time.empty()) j["time"] = spec.time;
  return j.dump();
}

}  // namespace stratabound
