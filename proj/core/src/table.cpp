#include "stratabound/table.hpp"

#include <json.hpp>

#include "stratabound/errors.hpp"

namespace stratabound {

JointTable::JointTable(
    const std::array<std::array<std::array<long long, 2>, 2>, 2>& counts)
    : counts_(counts) {
  for (int x = 0; x < 2; ++x) {
    long long total = 0;
    for (int m = 0; m < 2; ++m) {
      for (int y = 0; y < 2; ++y) {
        if (counts_[x][m][y] < 0) {
          throw NegativeCountError("negative count in cell (x=" +
                                   std::to_string(x) + ", m=" + std::to_string(m) +
                                   ", y=" + std::to_string(y) + ")");
        }
        total += counts_[x][m][y];
      }
    }
    if (total == 0) {
      throw EmptyArmError("arm X=" + std::to_string(x) +
                          " has no observations");
    }
    arm_totals_[x] = total;
  }
}

JointTable ingest_table(const ArmCells& x1, const ArmCells& x0) {
  std::array<std::array<std::array<long long, 2>, 2>, 2> counts{};
  counts[1][1][1] = x1.m1y1;
  counts[1][1][0] = x1.m1y0;
  counts[1][0][1] = x1.m0y1;
  counts[1][0][0] = x1.m0y0;
  counts[0][1][1] = x0.m1y1;
  counts[0][1][0] = x0.m1y0;
  counts[0][0][1] = x0.m0y1;
  counts[0][0][0] = x0.m0y0;
  return JointTable(counts);
}

ObservedDist::ObservedDist(
    const std::array<std::array<std::array<Rational, 2>, 2>, 2>& p)
    : p_(p) {
  const Rational zero(0);
  const Rational one(1);
  for (int x = 0; x < 2; ++x) {
    Rational sum(0);
    for (int m = 0; m < 2; ++m) {
      for (int y = 0; y < 2; ++y) {
        const Rational& cell = p_[x][m][y];
        if (cell < zero || cell > one) {
          throw Error("probability out of [0,1] in arm X=" + std::to_string(x));
        }
        sum += cell;
      }
    }
    if (sum != one) {
      throw Error("arm X=" + std::to_string(x) + " does not sum to 1 (got " +
                  sum.str() + ")");
    }
  }
}

ObservedDist estimate_dist(const JointTable& table) {
  std::array<std::array<std::array<Rational, 2>, 2>, 2> p;
  for (int x = 0; x < 2; ++x) {
    for (int m = 0; m < 2; ++m) {
      for (int y = 0; y < 2; ++y) {
        p[x][m][y] = Rational(table.count(x, m, y), table.arm_total(x));
      }
    }
  }
  return ObservedDist(p);
}

ObservedDist swap_roles(const ObservedDist& dist) {
  std::array<std::array<std::array<Rational, 2>, 2>, 2> p;
  for (int x = 0; x < 2; ++x) {
    for (int m = 0; m < 2; ++m) {
      for (int y = 0; y < 2; ++y) {
        p[x][m][y] = dist.p(m, y, x);
      }
    }
  }
  return ObservedDist(p);
}

namespace {

long long require_count(const nlohmann::json& arm, const char* key) {
  if (!arm.contains(key) || !arm[key].is_number_integer()) {
    throw ParseError(std::string("table JSON: missing integer cell \"") + key +
                     "\"");
  }
  return arm[key].get<long long>();
}

ArmCells parse_arm(const nlohmann::json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_object()) {
    throw ParseError(std::string("table JSON: missing arm object \"") + key +
                     "\"");
  }
  const nlohmann::json& arm = j[key];
  ArmCells cells;
  cells.m1y1 = require_count(arm, "m1y1");
  cells.m1y0 = require_count(arm, "m1y0");
  cells.m0y1 = require_count(arm, "m0y1");
  cells.m0y0 = require_count(arm, "m0y0");
  return cells;
}

}  // namespace

JointTable read_table_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("table JSON: ") + e.what());
  }
  return ingest_table(parse_arm(j, "x1"), parse_arm(j, "x0"));
}

std::string write_table_json(const JointTable& table) {
  nlohmann::json j;
  for (int x = 0; x < 2; ++x) {
    nlohmann::json arm;
    arm["m1y1"] = table.count(x, 1, 1);
    arm["m1y0"] = table.count(x, 1, 0);
    arm["m0y1"] = table.count(x, 0, 1);
    arm["m0y0"] = table.count(x, 0, 0);
    j[x == 1 ? "x1" : "x0"] = arm;
  }
  return j.dump();
}

}  // namespace stratabound
