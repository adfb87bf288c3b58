// stratabound: detection and bounding of individual-level direct effects,
// two-outcome co-causation, and set-valued reductions, from randomized
// two-arm data. One subcommand per analysis; JSON or TSV reports.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "stratabound/bounds.hpp"
#include "stratabound/counterfactual.hpp"
#include "stratabound/errors.hpp"
#include "stratabound/inference.hpp"
#include "stratabound/microdata.hpp"
#include "stratabound/pleiotropy.hpp"
#include "stratabound/regions.hpp"
#include "stratabound/table.hpp"
#include "stratabound/yerushalmy.hpp"

namespace {

using nlohmann::json;
using namespace stratabound;

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitNoDetection = 2;

struct CommonOptions {
  std::string data;
  std::string format;  // csv | json | (inferred)
  std::string region_path;
  double level = 0.95;
  bool one_sided = false;
  int bootstrap = 0;
  std::uint64_t seed = 0;
  std::string output = "json";
};

void add_common(CLI::App* cmd, CommonOptions& opt, bool needs_data = true) {
  auto* data = cmd->add_option("--data", opt.data,
                               "input path, or 'yerushalmy' for the bundled "
                               "dataset");
  if (needs_data) data->required();
  cmd->add_option("--format", opt.format, "input format: csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("--region", opt.region_path,
                  "region spec JSON for coarsening tuple-valued data");
  cmd->add_option("--level", opt.level, "confidence level (default 0.95)");
  cmd->add_flag("--one-sided", opt.one_sided,
                "one-sided (lower) confidence intervals");
  cmd->add_option("--bootstrap", opt.bootstrap,
                  "bootstrap replicates instead of Wald intervals");
  cmd->add_option("--seed", opt.seed, "bootstrap seed");
  cmd->add_option("--output", opt.output, "report format")
      ->check(CLI::IsMember({"json", "tsv"}));
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string detect_format(const CommonOptions& opt) {
  if (!opt.format.empty()) return opt.format;
  auto dot = opt.data.rfind('.');
  std::string ext = dot == std::string::npos ? "" : opt.data.substr(dot + 1);
  if (ext == "csv") return "csv";
  if (ext == "json") return "json";
  throw ConfigConflictError("cannot infer format of " + opt.data +
                            "; pass --format csv|json");
}

bool records_are_binary(const std::vector<MicroRecord>& records) {
  for (const MicroRecord& r : records) {
    if (r.y.size() != 1 || r.m.size() != 1) return false;
    if (!r.y_fully_observed() || !r.m_fully_observed()) return false;
    for (double v : r.y) {
      if (v != 0.0 && v != 1.0) return false;
    }
    for (double v : r.m) {
      if (v != 0.0 && v != 1.0) return false;
    }
  }
  return true;
}

// Loads counts: a built-in or JSON table directly; CSV microdata either
// tallied as binary or coarsened through the region spec.
JointTable load_table(const CommonOptions& opt) {
  if (opt.data == "yerushalmy") return yerushalmy_table();
  std::string format = detect_format(opt);
  if (format == "json") return read_table_json(slurp(opt.data));
  std::ifstream in(opt.data);
  if (!in) throw ParseError("cannot open " + opt.data);
  std::vector<MicroRecord> records = read_microdata_csv(in);
  if (!opt.region_path.empty()) {
    RegionSpec spec = read_region_json(slurp(opt.region_path));
    return coarsen(records, spec);
  }
  if (!records_are_binary(records)) {
    throw ConfigConflictError(
        "tuple-valued or partially observed microdata needs --region");
  }
  return ingest_microdata(records);
}

json report_json(const BoundReport& report) {
  return json::parse(to_json_string(report));
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.10g", v);
  return buf;
}

void print_reports_tsv(const std::vector<BoundReport>& reports,
                       std::ostream& os) {
  os << "source\ty\tm\tstatistic\tstatistic_exact\tdetected\tlower_unstd\t"
        "lower_std\tdenominator\tp_value\tci_lower\tci_upper\tlabel\n";
  for (const BoundReport& r : reports) {
    os << r.source << '\t' << r.y << '\t' << r.m << '\t'
       << format_double(r.statistic.to_double()) << '\t' << r.statistic.str()
       << '\t' << (r.detected ? 1 : 0) << '\t'
       << format_double(r.lower_unstd.to_double()) << '\t'
       << (r.lower_std ? format_double(r.lower_std->to_double()) : "NA")
       << '\t'
       << (r.denominator ? format_double(r.denominator->to_double()) : "NA")
       << '\t' << (r.p_value ? format_double(*r.p_value) : "NA") << '\t'
       << (r.ci ? format_double(r.ci->lower) : "NA") << '\t'
       << (r.ci ? format_double(r.ci->upper) : "NA") << '\t' << r.label
       << '\n';
  }
}

void emit_reports(const CommonOptions& opt, const std::string& command,
                  const std::vector<BoundReport>& reports) {
  if (opt.output == "tsv") {
    print_reports_tsv(reports, std::cout);
    return;
  }
  json out;
  out["command"] = command;
  out["reports"] = json::array();
  for (const BoundReport& r : reports) out["reports"].push_back(report_json(r));
  std::cout << out.dump(2) << '\n';
}

// Attaches the sampling view of one statistic to a report: one-sided p-value
// of the null "statistic <= 0" and a confidence interval. A statistic with
// zero sampling variance resolves the test by sign.
void attach_inference(BoundReport& report, const JointStatistic& spec,
                      const JointTable& table, const CommonOptions& opt) {
  Sided sided = opt.one_sided ? Sided::kOneLower : Sided::kTwo;
  if (opt.bootstrap > 0) {
    report.ci = bootstrap_ci(spec, table, opt.level, sided, opt.bootstrap,
                             opt.seed);
  } else {
    report.ci = wald_ci(spec, table, opt.level, sided);
  }
  try {
    report.p_value = test_null(spec, table);
  } catch (const ZeroVarianceError&) {
    report.p_value = report.statistic > Rational(0) ? 0.0 : 1.0;
  }
}

bool any_significant(const std::vector<BoundReport>& reports, double level) {
  double alpha = 1.0 - level;
  for (const BoundReport& r : reports) {
    if (r.p_value && *r.p_value < alpha) return true;
  }
  return false;
}

std::vector<Rational> parse_grid(const std::string& text,
                                 const std::string& name) {
  std::vector<Rational> grid;
  if (text.empty()) {
    grid.emplace_back(0);
    return grid;
  }
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ':')) parts.push_back(part);
  try {
    if (parts.size() == 1) {
      grid.push_back(Rational::from_decimal(parts[0]));
      return grid;
    }
    if (parts.size() != 3) {
      throw ParseError(name + " grid must be 'value' or 'start:stop:step'");
    }
    Rational start = Rational::from_decimal(parts[0]);
    Rational stop = Rational::from_decimal(parts[1]);
    Rational step = Rational::from_decimal(parts[2]);
    if (step <= Rational(0) || stop < start) {
      throw ParseError(name + " grid must have step > 0 and stop >= start");
    }
    for (Rational v = start; v <= stop; v += step) grid.push_back(v);
  } catch (const std::exception& e) {
    throw ParseError(name + " grid: " + e.what());
  }
  return grid;
}

int run_detect(const CommonOptions& opt, bool monotone) {
  JointTable table = load_table(opt);
  ObservedDist dist = estimate_dist(table);
  std::vector<BoundReport> reports;
  if (monotone) {
    for (BoundReport& r : theorem5_scan(dist)) {
      attach_inference(r, theorem5_spec(r.y, r.m), table, opt);
      reports.push_back(std::move(r));
    }
  } else {
    for (BoundReport& r : theorem1_scan(dist)) {
      attach_inference(r, theorem1_spec(r.y, r.m), table, opt);
      reports.push_back(std::move(r));
    }
  }
  emit_reports(opt, "detect", reports);
  return any_significant(reports, opt.level) ? kExitOk : kExitNoDetection;
}

int run_bound(const CommonOptions& opt, int y, int m, bool monotone,
              const std::string& denominator, bool swap, bool clamp) {
  JointTable table = load_table(opt);
  ObservedDist dist = estimate_dist(table);
  BoundOptions options;
  options.clamp_at_zero = clamp;
  BoundReport report;
  JointStatistic spec;
  if (monotone) {
    DenominatorMode mode = denominator == "exact"
                               ? DenominatorMode::kExactMonotone
                               : DenominatorMode::kPaper;
    Roles roles = swap ? Roles::kSwapped : Roles::kStandard;
    report = corollary8_bounds(dist, y, m, mode, roles, options);
    spec = swap ? swapped_roles_spec(y, m) : theorem5_spec(y, m);
  } else {
    if (swap) {
      throw ConfigConflictError("--swap-roles needs --assume-monotone-m "
                                "(monotonicity of treatment on Y)");
    }
    report = corollary4_bounds(dist, y, m, options);
    spec = theorem1_spec(y, m);
  }
  attach_inference(report, spec, table, opt);
  emit_reports(opt, "bound", {report});
  return kExitOk;
}

int run_sensitivity(const CommonOptions& opt, int y, int m, bool monotone,
                    const std::string& r_grid_text,
                    const std::string& q_grid_text) {
  if (!monotone) {
    throw ConfigConflictError(
        "sensitivity analysis quantifies monotonicity violations; pass "
        "--assume-monotone-m to set that context");
  }
  std::vector<Rational> r_grid = parse_grid(r_grid_text, "r");
  std::vector<Rational> q_grid = parse_grid(q_grid_text, "q");

  json cells = json::array();
  auto cell_json = [](const SweepCell& cell) {
    json c;
    c["r"] = cell.r.to_double();
    c["r_exact"] = cell.r.str();
    c["q"] = cell.q.to_double();
    c["q_exact"] = cell.q.str();
    if (cell.report) {
      c["report"] = report_json(*cell.report);
    } else {
      c["error"] = cell.error;
    }
    return c;
  };

  if (!opt.region_path.empty()) {
    // Set-valued route: coarsen microdata through the region and adjust on
    // membership, with the control-arm denominator.
    std::ifstream in(opt.data);
    if (!in) throw ParseError("cannot open " + opt.data);
    std::vector<MicroRecord> records = read_microdata_csv(in);
    RegionSpec spec = read_region_json(slurp(opt.region_path));
    for (const Rational& r : r_grid) {
      for (const Rational& q : q_grid) {
        SweepCell cell;
        cell.r = r;
        cell.q = q;
        try {
          cell.report = prop13_adjust(std::span<const MicroRecord>(records),
                                      spec, SensitivityParams{r, q});
        } catch (const ParamOutOfRangeError& e) {
          cell.error = e.what();
        }
        cells.push_back(cell_json(cell));
      }
    }
  } else {
    JointTable table = load_table(opt);
    ObservedDist dist = estimate_dist(table);
    for (const SweepCell& cell : sensitivity_sweep(dist, y, m, r_grid, q_grid)) {
      cells.push_back(cell_json(cell));
    }
  }

  if (opt.output == "tsv") {
    std::cout << "r\tq\tadjusted\tstandardized\tdenominator\terror\n";
    for (const auto& c : cells) {
      std::cout << format_double(c["r"].get<double>()) << '\t'
                << format_double(c["q"].get<double>()) << '\t';
      if (c.contains("report")) {
        const auto& rep = c["report"];
        std::cout << format_double(rep["statistic"].get<double>()) << '\t'
                  << (rep["lower_std"].is_null()
                          ? "NA"
                          : format_double(rep["lower_std"].get<double>()))
                  << '\t' << format_double(rep["denominator"].get<double>())
                  << "\t\n";
      } else {
        std::cout << "NA\tNA\tNA\t" << c["error"].get<std::string>() << '\n';
      }
    }
  } else {
    json out;
    out["command"] = "sensitivity";
    out["cells"] = cells;
    std::cout << out.dump(2) << '\n';
  }
  return kExitOk;
}

int run_pleiotropy(const CommonOptions& opt, int variant) {
  JointTable table = [&] {
    if (opt.data == "yerushalmy") {
      throw ConfigConflictError(
          "the bundled dataset has one outcome; pleiotropy needs x,y,z data");
    }
    std::string format = detect_format(opt);
    if (format == "json") return read_table_json(slurp(opt.data));
    std::ifstream in(opt.data);
    if (!in) throw ParseError("cannot open " + opt.data);
    std::vector<MicroRecord> records = read_two_outcome_csv(in);
    return ingest_microdata(records);
  }();
  PleioDist dist = PleioDist::from_table(table);
  std::vector<BoundReport> reports;
  std::vector<int> variants =
      variant == 0 ? std::vector<int>{1, 2, 3, 4} : std::vector<int>{variant};
  for (int v : variants) {
    BoundReport r = pleiotropy_test(dist, v);
    attach_inference(r, pleiotropy_spec(v), table, opt);
    reports.push_back(std::move(r));
  }
  emit_reports(opt, "pleiotropy", reports);
  return any_significant(reports, opt.level) ? kExitOk : kExitNoDetection;
}

int run_coarsen(const CommonOptions& opt) {
  if (opt.region_path.empty()) {
    throw ConfigConflictError("coarsen needs --region");
  }
  std::ifstream in(opt.data);
  if (!in) throw ParseError("cannot open " + opt.data);
  std::vector<MicroRecord> records = read_microdata_csv(in);
  RegionSpec spec = read_region_json(slurp(opt.region_path));
  JointTable table = coarsen(records, spec);
  json out;
  out["command"] = "coarsen";
  out["records"] = records.size();
  out["table"] = json::parse(write_table_json(table));
  out["n1"] = table.arm_total(1);
  out["n0"] = table.arm_total(0);
  std::cout << out.dump(2) << '\n';
  return kExitOk;
}

// One oracle check; returns the number of failures and appends labels.
int verify_population(const FinitePopulation& pop, bool monotone,
                      std::vector<std::string>& failures) {
  int checks = 0;
  CounterfactualDist cd = CounterfactualDist::from_population(pop);
  ObservedDist dist = observed_from_population(pop);
  auto fail = [&failures](const std::string& what) { failures.push_back(what); };

  int theorem1_detections = 0;
  for (int m = 0; m < 2; ++m) {
    for (int y = 0; y < 2; ++y) {
      Rational s = s_statistic(dist, y, m);
      ++checks;
      if (prop3_rhs(cd, y, m) != s) fail("prop3 identity");
      if (s > Rational(0)) ++theorem1_detections;

      ++checks;
      Rational direct = psde(cd, y, m, false);
      if (s > direct) fail("corollary4 validity");

      // Sensitivity round-trip: true (r, q) recovers the direct effect.
      TrueSensitivity ts = true_sensitivity(cd, y, m);
      int a = y * m + (1 - m) * (1 - y);
      int b = 1 - a;
      Rational target = cd.mass(a, b, m, m) - cd.mass(b, a, m, m);
      ++checks;
      BoundReport adj =
          theorem9_adjust(dist, y, m, SensitivityParams{ts.r, ts.q});
      if (adj.statistic != target) fail("theorem9 unstandardized exactness");
      if (cd.stratum_mass(m, m) > Rational(0)) {
        ++checks;
        if (!adj.lower_std || *adj.lower_std != target / cd.stratum_mass(m, m)) {
          fail("theorem9 standardized exactness");
        }
      }

      if (monotone) {
        ++checks;
        Rational d = d_statistic(dist, y, m);
        if (prop7_rhs(cd, y, m) != d) fail("prop7 identity");
        ++checks;
        if (d > target) fail("corollary8 validity");
      }
    }
  }
  ++checks;
  if (theorem1_detections > 1) fail("more than one theorem1 detection");
  if (monotone) {
    int theorem5_detections = 0;
    for (int m = 0; m < 2; ++m) {
      for (int y = 0; y < 2; ++y) {
        if (d_statistic(dist, y, m) > Rational(0)) ++theorem5_detections;
      }
    }
    ++checks;
    if (theorem5_detections > 2) fail("more than two theorem5 detections");
  }
  // Two-outcome reading of the same population: Z in the mediator slot.
  PleioDist pleio = PleioDist::from_population(pop);
  for (int v = 1; v <= 4; ++v) {
    ++checks;
    if (pleiotropy_identity(cd, v) != pleiotropy_test(pleio, v).statistic) {
      fail("theorem10 identity");
    }
  }
  return checks;
}

int run_simulate(std::uint64_t seed, long long n, int populations,
                 bool monotone, bool check_identities) {
  std::vector<std::string> failures;
  int checks = 0;
  for (int i = 0; i < populations; ++i) {
    FinitePopulation pop = sample_population(
        seed + static_cast<std::uint64_t>(i), n,
        monotone ? PopulationConstraint::kPositiveMonotone
                 : PopulationConstraint::kNone);
    if (check_identities) checks += verify_population(pop, monotone, failures);
  }
  json out;
  out["command"] = "simulate";
  out["seed"] = seed;
  out["n"] = n;
  out["populations"] = populations;
  out["monotone"] = monotone;
  out["checks"] = checks;
  out["failures"] = failures;
  std::cout << out.dump(2) << '\n';
  return failures.empty() ? kExitOk : kExitError;
}

json interval_to_json(const Interval& ci) {
  json j;
  auto round4 = [](double v) { return std::round(v * 1e4) / 1e4; };
  j["lower"] = round4(ci.lower);
  j["upper"] = round4(ci.upper);
  j["level"] = ci.level;
  j["sided"] = ci.sided == Sided::kTwo ? "two" : "one-lower";
  return j;
}

int run_reproduce(const std::string& dataset, const CommonOptions& opt) {
  if (dataset != "yerushalmy") {
    throw ConfigConflictError("unknown bundled dataset: " + dataset);
  }
  JointTable table = yerushalmy_table();
  ObservedDist dist = estimate_dist(table);
  json analyses = json::array();

  auto add = [&](const std::string& label, const std::string& source,
                 double estimate, const std::string& exact,
                 const Interval& ci) {
    json a;
    a["label"] = label;
    a["source"] = source;
    a["estimate"] = estimate;
    a["estimate_exact"] = exact;
    a["ci"] = interval_to_json(ci);
    analyses.push_back(a);
  };

  // Conditional risk difference of infant mortality among low-birth-weight
  // babies, smokers minus non-smokers.
  ConditionalRiskDiff cond{1};
  Estimate e1 = evaluate(cond, table);
  add("risk difference of infant mortality among low-birth-weight babies, "
      "smoking vs not",
      "conditional-risk-difference", e1.value,
      (Rational(27, 237) - Rational(43, 197)).str(),
      wald_ci(cond, table, 0.95, Sided::kTwo));

  // Does smoking prevent death for babies low birth weight either way?
  Rational d01 = d_statistic(dist, 0, 1);
  add("smoking prevents infant mortality among always-low-birth-weight "
      "babies (lower bound)",
      "theorem5+corollary8", d01.to_double(), d01.str(),
      wald_ci(theorem5_spec(0, 1), table, 0.95, Sided::kOneLower));

  // Does smoking cause death for babies low birth weight either way?
  Rational d11 = d_statistic(dist, 1, 1);
  add("smoking causes infant mortality among always-low-birth-weight babies "
      "(lower bound)",
      "theorem5+corollary8", d11.to_double(), d11.str(),
      wald_ci(theorem5_spec(1, 1), table, 0.95, Sided::kOneLower));

  // Roles interchanged: does smoking cause low birth weight for babies who
  // survive either way?
  Rational ds = d_swapped_statistic(dist, 0, 0);
  add("smoking causes low birth weight among babies surviving under either "
      "smoking status (lower bound)",
      "corollary8-swapped", ds.to_double(), ds.str(),
      wald_ci(swapped_roles_spec(0, 0), table, 0.95, Sided::kOneLower));

  if (opt.output == "tsv") {
    std::cout << "source\testimate\testimate_exact\tci_lower\tci_upper\tlabel\n";
    for (const auto& a : analyses) {
      std::cout << a["source"].get<std::string>() << '\t'
                << format_double(a["estimate"].get<double>()) << '\t'
                << a["estimate_exact"].get<std::string>() << '\t'
                << format_double(a["ci"]["lower"].get<double>()) << '\t'
                << format_double(a["ci"]["upper"].get<double>()) << '\t'
                << a["label"].get<std::string>() << '\n';
    }
  } else {
    json out;
    out["command"] = "reproduce";
    out["dataset"] = "yerushalmy";
    out["analyses"] = analyses;
    std::cout << out.dump(2) << '\n';
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"detection and bounds for individual-level direct effects "
               "from randomized two-arm data"};
  app.require_subcommand(1);

  // detect
  CommonOptions detect_opt;
  bool detect_monotone = false;
  CLI::App* detect = app.add_subcommand(
      "detect", "scan all four (y,m) targets for direct-effect evidence");
  add_common(detect, detect_opt);
  detect->add_flag("--assume-monotone-m", detect_monotone,
                   "assert treatment never prevents the mediator and use the "
                   "sharper monotone scan");

  // bound
  CommonOptions bound_opt;
  int bound_y = 1;
  int bound_m = 1;
  bool bound_monotone = false;
  bool bound_swap = false;
  bool bound_clamp = false;
  std::string bound_denominator = "paper";
  CLI::App* bound = app.add_subcommand(
      "bound", "lower bounds on the direct effect for one (y,m) target");
  add_common(bound, bound_opt);
  bound->add_option("--y", bound_y, "outcome direction (0 or 1)")
      ->required()
      ->check(CLI::Range(0, 1));
  bound->add_option("--m", bound_m, "mediator stratum (0 or 1)")
      ->required()
      ->check(CLI::Range(0, 1));
  bound->add_flag("--assume-monotone-m", bound_monotone,
                  "assert positive monotonicity and use the sharper bounds");
  bound->add_option("--denominator", bound_denominator,
                    "standardization denominator under monotonicity")
      ->check(CLI::IsMember({"paper", "exact"}));
  bound->add_flag("--swap-roles", bound_swap,
                  "interchange the roles of M and Y");
  bound->add_flag("--clamp", bound_clamp,
                  "clamp a negative lower bound at zero (flagged)");

  // sensitivity
  CommonOptions sens_opt;
  int sens_y = 1;
  int sens_m = 1;
  bool sens_monotone = false;
  std::string r_grid_text;
  std::string q_grid_text;
  CLI::App* sens = app.add_subcommand(
      "sensitivity",
      "sweep sensitivity parameters (r, q) for monotonicity violations");
  add_common(sens, sens_opt);
  sens->add_option("--y", sens_y, "outcome direction (0 or 1)")
      ->check(CLI::Range(0, 1));
  sens->add_option("--m", sens_m, "mediator stratum (0 or 1)")
      ->check(CLI::Range(0, 1));
  sens->add_flag("--assume-monotone-m", sens_monotone,
                 "context flag: the sweep quantifies violations of this "
                 "assumption");
  sens->add_option("--r-grid", r_grid_text, "r values: 'v' or 'a:b:step'");
  sens->add_option("--q-grid", q_grid_text, "q values: 'v' or 'a:b:step'");

  // pleiotropy
  CommonOptions pleio_opt;
  int pleio_variant = 0;
  CLI::App* pleio = app.add_subcommand(
      "pleiotropy", "detect treatment effects on two outcomes in the same "
                    "individual (data: x,y,z)");
  add_common(pleio, pleio_opt);
  pleio->add_option("--variant", pleio_variant,
                    "response-type variant 1..4 (default: all)")
      ->check(CLI::Range(1, 4));

  // coarsen
  CommonOptions coarsen_opt;
  CLI::App* coarsen_cmd = app.add_subcommand(
      "coarsen", "reduce tuple-valued microdata to a binary table through a "
                 "region spec");
  add_common(coarsen_cmd, coarsen_opt);

  // simulate
  std::uint64_t sim_seed = 0;
  long long sim_n = 100;
  int sim_populations = 1;
  bool sim_monotone = false;
  bool sim_check = false;
  CLI::App* simulate = app.add_subcommand(
      "simulate", "draw exact finite populations and verify the engine's "
                  "identities against them");
  simulate->add_option("--seed", sim_seed, "RNG seed")->required();
  simulate->add_option("--n", sim_n, "population size");
  simulate->add_option("--populations", sim_populations,
                       "number of populations");
  simulate->add_flag("--monotone", sim_monotone,
                     "draw positive-monotone populations");
  simulate->add_flag("--check-identities", sim_check,
                     "verify decomposition identities, bound validity and "
                     "detection counts");

  // reproduce
  CommonOptions repro_opt;
  std::string repro_dataset;
  CLI::App* reproduce = app.add_subcommand(
      "reproduce", "re-run the bundled dataset analyses end to end");
  reproduce->add_option("dataset", repro_dataset, "bundled dataset name")
      ->required();
  reproduce->add_option("--output", repro_opt.output, "report format")
      ->check(CLI::IsMember({"json", "tsv"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);  // prints the message; 0 for --help
    return code == 0 ? kExitOk : kExitError;
  }

  try {
    if (detect->parsed()) return run_detect(detect_opt, detect_monotone);
    if (bound->parsed()) {
      return run_bound(bound_opt, bound_y, bound_m, bound_monotone,
                       bound_denominator, bound_swap, bound_clamp);
    }
    if (sens->parsed()) {
      return run_sensitivity(sens_opt, sens_y, sens_m, sens_monotone,
                             r_grid_text, q_grid_text);
    }
    if (pleio->parsed()) return run_pleiotropy(pleio_opt, pleio_variant);
    if (coarsen_cmd->parsed()) return run_coarsen(coarsen_opt);
    if (simulate->parsed()) {
      return run_simulate(sim_seed, sim_n, sim_populations, sim_monotone,
                          sim_check);
    }
    if (reproduce->parsed()) return run_reproduce(repro_dataset, repro_opt);
  } catch (const stratabound::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitError;
  }
  return kExitError;
}
