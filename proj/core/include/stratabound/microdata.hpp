#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "stratabound/table.hpp"

namespace stratabound {

// One study record. Treatment is randomized at baseline and therefore always
// observed; outcome and mediator are tuples of reals or category codes with
// per-component response indicators. Binary single-component records are the
// degenerate case consumed by ingest_microdata().
struct MicroRecord {
  int x = 0;
  std::vector<double> y;
  std::vector<std::uint8_t> y_observed;  // response indicator per component
  std::vector<double> m;
  std::vector<std::uint8_t> m_observed;

  bool y_fully_observed() const;
  bool m_fully_observed() const;
};

// Convenience constructor for fully observed binary records.
MicroRecord binary_record(int x, int y, int m);

// Tallies fully observed binary records into a JointTable. Throws
// MissingComponentError when a record has an unobserved y or m (partially
// observed data is handled by region coarsening, not here) and
// SchemaMismatchError when a record is not single-component binary.
JointTable ingest_microdata(std::span<const MicroRecord> records);

// CSV microdata. Two layouts, distinguished by the header:
//   x,y,m                      binary mode, values 0/1
//   x,y1..yk,m1..mk[,r_y,r_m]  tuple mode, empty field = missing component
// The optional r_y / r_m columns mark the whole outcome or mediator tuple
// unobserved when 0.
std::vector<MicroRecord> read_microdata_csv(std::istream& in);

// CSV with header x,y,z for two-outcome data; z is stored in the mediator
// slot of the returned records.
std::vector<MicroRecord> read_two_outcome_csv(std::istream& in);

}  // namespace stratabound
