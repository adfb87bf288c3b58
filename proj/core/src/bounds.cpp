#include "stratabound/bounds.hpp"

#include <cmath>

#include <json.hpp>

#include "stratabound/errors.hpp"

namespace stratabound {

namespace {

std::string stratum_text(const char* var, int value) {
  return std::string(var) + "1=" + var + "0=" + std::to_string(value);
}

std::string direction_label(int causes, const char* target,
                            const char* stratum_var, int m) {
  return std::string("treatment ") + (causes == 1 ? "causes" : "prevents") +
         " the " + target + " within stratum " + stratum_text(stratum_var, m);
}

void apply_clamp(BoundReport& report, const BoundOptions& options) {
  if (options.clamp_at_zero && report.statistic < Rational(0)) {
    report.lower_unstd = Rational(0);
    report.clamped = true;
    if (!report.notes.empty()) report.notes += "; ";
    report.notes += "raw statistic " + report.statistic.str() +
                    " clamped to zero (a proportion is nonnegative)";
  }
}

void note(BoundReport& report, const std::string& text) {
  if (!report.notes.empty()) report.notes += "; ";
  report.notes += text;
}

void require_binary_target(int y, int m) {
  if ((y != 0 && y != 1) || (m != 0 && m != 1)) {
    throw ParamOutOfRangeError("y and m must be 0 or 1");
  }
}

}  // namespace

Rational s_statistic(const ObservedDist& dist, int y, int m) {
  return dist.p(y, m, 1) + dist.p(1 - y, m, 0) - Rational(1);
}

Rational d_statistic(const ObservedDist& dist, int y, int m) {
  return dist.p(1 - y, m, 1 - m) - dist.p(1 - y, m, m);
}

Rational d_swapped_statistic(const ObservedDist& dist, int y, int m) {
  return dist.p(m, 1 - y, 1 - m) - dist.p(m, 1 - y, m);
}

std::array<BoundReport, 4> theorem1_scan(const ObservedDist& dist,
                                         const BoundOptions& options) {
  std::array<BoundReport, 4> reports;
  int i = 0;
  for (int m = 0; m < 2; ++m) {
    for (int y = 0; y < 2; ++y) {
      BoundReport& r = reports[i++];
      r.y = y;
      r.m = m;
      r.source = "theorem1";
      r.label = direction_label(y, "outcome", "M", m);
      r.statistic = s_statistic(dist, y, m);
      r.detected = r.statistic > Rational(0);
      r.lower_unstd = r.statistic;
      apply_clamp(r, options);
    }
  }
  return reports;
}

BoundReport corollary4_bounds(const ObservedDist& dist, int y, int m,
                              const BoundOptions& options) {
  require_binary_target(y, m);
  BoundReport r;
  r.y = y;
  r.m = m;
  r.source = "corollary4";
  r.label = direction_label(y, "outcome", "M", m);
  r.statistic = s_statistic(dist, y, m);
  r.detected = r.statistic > Rational(0);
  r.lower_unstd = r.statistic;
  r.denominator = dist.p_m(m, 1) - dist.p_m(1 - m, 0);
  if (r.detected) {
    if (*r.denominator <= Rational(0)) {
      throw DegenerateDenominatorError(
          "standardization denominator is nonpositive while the statistic "
          "is positive; the input cannot arise from a population");
    }
    r.lower_std = r.statistic / *r.denominator;
  } else {
    note(r, "statistic <= 0: no detection, standardized bound not emitted");
  }
  apply_clamp(r, options);
  return r;
}

std::array<BoundReport, 4> theorem5_scan(const ObservedDist& dist,
                                         const BoundOptions& options) {
  std::array<BoundReport, 4> reports;
  int i = 0;
  for (int m = 0; m < 2; ++m) {
    for (int y = 0; y < 2; ++y) {
      BoundReport& r = reports[i++];
      r.y = y;
      r.m = m;
      r.source = "theorem5";
      r.monotonicity_assumed = true;
      int causes = y * m + (1 - m) * (1 - y);
      r.label = direction_label(causes, "outcome", "M", m);
      r.statistic = d_statistic(dist, y, m);
      r.detected = r.statistic > Rational(0);
      r.lower_unstd = r.statistic;
      apply_clamp(r, options);
    }
  }
  return reports;
}

BoundReport corollary8_bounds(const ObservedDist& dist, int y, int m,
                              DenominatorMode mode, Roles roles,
                              const BoundOptions& options) {
  require_binary_target(y, m);
  BoundReport r;
  r.y = y;
  r.m = m;
  r.source = "corollary8";
  r.mode = mode == DenominatorMode::kPaper ? "paper" : "exact-monotone";
  r.monotonicity_assumed = true;
  int causes = y * m + (1 - m) * (1 - y);
  Rational denom;
  if (roles == Roles::kStandard) {
    r.label = direction_label(causes, "outcome", "M", m);
    r.statistic = d_statistic(dist, y, m);
    denom = mode == DenominatorMode::kPaper
                ? dist.p_m(m, 0)
                : (m == 1 ? dist.p_m(1, 0) : dist.p_m(0, 1));
  } else {
    // M and Y interchanged: the "outcome" is the mediator variable and the
    // stratum is fixed on Y; monotonicity of X on Y is what the caller
    // asserts here.
    r.label = direction_label(causes, "mediator", "Y", m);
    r.statistic = d_swapped_statistic(dist, y, m);
    denom = mode == DenominatorMode::kPaper
                ? dist.p_y(m, 0)
                : (m == 1 ? dist.p_y(1, 0) : dist.p_y(0, 1));
    note(r, "roles of M and Y interchanged; positive monotonicity of "
            "treatment on Y asserted");
  }
  r.detected = r.statistic > Rational(0);
  r.lower_unstd = r.statistic;
  r.denominator = denom;
  if (r.detected) {
    if (denom == Rational(0)) {
      throw DegenerateDenominatorError("standardization denominator is zero");
    }
    r.lower_std = r.statistic / denom;
  } else {
    note(r, "statistic <= 0: no detection, standardized bound not emitted");
  }
  apply_clamp(r, options);
  return r;
}

BoundReport theorem9_adjust(const ObservedDist& dist, int y, int m,
                            const SensitivityParams& params) {
  if (params.r < Rational(-1) || params.r > Rational(1)) {
    throw ParamOutOfRangeError("r must lie in [-1, 1]");
  }
  if (params.q < Rational(0) || params.q > Rational(1)) {
    throw ParamOutOfRangeError("q must lie in [0, 1]");
  }
  require_binary_target(y, m);
  BoundReport r;
  r.y = y;
  r.m = m;
  r.source = "theorem9";
  int causes = y * m + (1 - m) * (1 - y);
  r.label = direction_label(causes, "outcome", "M", m) +
            " (sensitivity-adjusted)";
  Rational d = d_statistic(dist, y, m);
  r.statistic = d - params.r;
  r.detected = r.statistic > Rational(0);
  r.lower_unstd = r.statistic;
  Rational denom = dist.p_m(m, 1) - params.q;
  r.denominator = denom;
  note(r, "r=" + params.r.str() + ", q=" + params.q.str() +
              ", raw statistic " + d.str());
  if (params.r > d) {
    note(r, "r exceeds the observed statistic; the adjusted value "
            "concedes no effect in this direction");
  }
  if (params.q > dist.p_m(m, 1)) {
    note(r, "q exceeds P(M=m|X=1)");
  }
  if (denom > Rational(0)) {
    r.lower_std = r.statistic / denom;
  } else {
    note(r, "denominator nonpositive: standardized value not emitted");
  }
  return r;
}

std::vector<SweepCell> sensitivity_sweep(const ObservedDist& dist, int y,
                                         int m,
                                         const std::vector<Rational>& r_grid,
                                         const std::vector<Rational>& q_grid) {
  std::vector<SweepCell> cells;
  cells.reserve(r_grid.size() * q_grid.size());
  for (const Rational& r : r_grid) {
    for (const Rational& q : q_grid) {
      SweepCell cell;
      cell.r = r;
      cell.q = q;
      try {
        cell.report = theorem9_adjust(dist, y, m, SensitivityParams{r, q});
      } catch (const ParamOutOfRangeError& e) {
        cell.error = e.what();
      }
      cells.push_back(std::move(cell));
    }
  }
  return cells;
}

namespace {

double round4(double v) { return std::round(v * 1e4) / 1e4; }

nlohmann::json interval_json(const Interval& ci) {
  nlohmann::json j;
  j["lower"] = round4(ci.lower);
  j["upper"] = round4(ci.upper);
  j["level"] = ci.level;
  switch (ci.sided) {
    case Sided::kTwo:
      j["sided"] = "two";
      break;
    case Sided::kOneLower:
      j["sided"] = "one-lower";
      break;
    case Sided::kOneUpper:
      j["sided"] = "one-upper";
      break;
  }
  if (ci.zero_variance) j["zero_variance"] = true;
  return j;
}

}  // namespace

std::string to_json_string(const BoundReport& report) {
  nlohmann::json j;
  j["target"] = {{"y", report.y}, {"m", report.m}, {"label", report.label}};
  j["statistic"] = report.statistic.to_double();
  j["statistic_exact"] = report.statistic.str();
  j["detected"] = report.detected;
  j["lower_unstd"] = report.lower_unstd.to_double();
  j["lower_unstd_exact"] = report.lower_unstd.str();
  if (report.lower_std) {
    j["lower_std"] = report.lower_std->to_double();
    j["lower_std_exact"] = report.lower_std->str();
  } else {
    j["lower_std"] = nullptr;
  }
  if (report.denominator) {
    j["denominator"] = report.denominator->to_double();
    j["denominator_exact"] = report.denominator->str();
  } else {
    j["denominator"] = nullptr;
  }
  j["mode"] = report.mode;
  j["clamped"] = report.clamped;
  j["source"] = report.source;
  j["monotonicity_assumed"] = report.monotonicity_assumed;
  if (!report.notes.empty()) j["notes"] = report.notes;
  if (report.ci) j["ci"] = interval_json(*report.ci);
  if (report.p_value) j["p_value"] = *report.p_value;
  return j.dump();
}

}  // namespace stratabound
