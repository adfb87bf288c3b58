#pragma once

#include "stratabound/table.hpp"

namespace stratabound {

// Yerushalmy's 1964 infant-mortality data for white mothers, the classic
// birth-weight-paradox dataset. X=1: mother smoked; M=1: low birth weight
// (< 2500 g); Y=1: the baby died within one year of birth.
//   X=1 arm: m1y1=27, m1y0=210, m0y1=15, m0y0=3474  (n=3726)
//   X=0 arm: m1y1=43, m1y0=154, m0y1=24, m0y0=5846  (n=6067)
JointTable yerushalmy_table();

}  // namespace stratabound
