#include "stratabound/yerushalmy.hpp"

namespace stratabound {

JointTable yerushalmy_table() {
  ArmCells x1;
  x1.m1y1 = 27;
  x1.m1y0 = 210;
  x1.m0y1 = 15;
  x1.m0y0 = 3474;
  ArmCells x0;
  x0.m1y1 = 43;
  x0.m1y0 = 154;
  x0.m0y1 = 24;
  x0.m0y0 = 5846;
  return ingest_table(x1, x0);
}

}  // namespace stratabound
