#pragma once

#include <array>
#include <string>

#include "stratabound/rational.hpp"

namespace stratabound {

// Raw cell counts n(x, m, y) from a two-arm randomized study with binary
// mediator and outcome. Cells are ordered (x, m, y) with x slowest; that
// convention also fixes the JSON file layout, see read_table_json().
class JointTable {
 public:
  // Builds a validated table. Throws NegativeCountError on a negative cell
  // and EmptyArmError when either arm total is zero (conditionals would be
  // inestimable).
  JointTable(const std::array<std::array<std::array<long long, 2>, 2>, 2>& counts);

  long long count(int x, int m, int y) const { return counts_[x][m][y]; }
  long long arm_total(int x) const { return arm_totals_[x]; }

  friend bool operator==(const JointTable&, const JointTable&) = default;

 private:
  std::array<std::array<std::array<long long, 2>, 2>, 2> counts_;
  std::array<long long, 2> arm_totals_;
};

// Labeled cell counts for one arm, mirroring the JSON keys.
struct ArmCells {
  long long m1y1 = 0;
  long long m1y0 = 0;
  long long m0y1 = 0;
  long long m0y0 = 0;
};

// Assembles a JointTable from the eight labeled counts.
JointTable ingest_table(const ArmCells& x1, const ArmCells& x0);

// Plug-in joint distribution P(Y=y, M=m | X=x), exact per arm.
class ObservedDist {
 public:
  ObservedDist() = default;
  // Throws if any probability is outside [0, 1] or an arm does not sum to 1.
  ObservedDist(const std::array<std::array<std::array<Rational, 2>, 2>, 2>& p);

  // P(Y=y, M=m | X=x).
  const Rational& p(int y, int m, int x) const { return p_[x][m][y]; }
  // P(M=m | X=x).
  Rational p_m(int m, int x) const { return p_[x][m][0] + p_[x][m][1]; }
  // P(Y=y | X=x).
  Rational p_y(int y, int x) const { return p_[x][0][y] + p_[x][1][y]; }

  friend bool operator==(const ObservedDist&, const ObservedDist&) = default;

 private:
  std::array<std::array<std::array<Rational, 2>, 2>, 2> p_;
};

// p(y,m|x) = count(x,m,y) / n_x, exact.
ObservedDist estimate_dist(const JointTable& table);

// Exchanges the roles of mediator and outcome: the result's P(Y=a,M=b|X=x)
// equals the input's P(Y=b,M=a|X=x).
ObservedDist swap_roles(const ObservedDist& dist);

// JSON table format, bit-exact integers:
//   {"x1": {"m1y1":27,"m1y0":210,"m0y1":15,"m0y0":3474}, "x0": {...}}
JointTable read_table_json(const std::string& text);
std::string write_table_json(const JointTable& table);

}  // namespace stratabound
