#pragma once

#include <string>

#include "cubicpts/arith.hpp"

namespace cubicpts {

struct LocalDensity {
  std::string place;
  double value = 0.0;
  double error_estimate = 0.0;
};

LocalDensity tau_inf_P1();
LocalDensity tau_inf_V_fiber(i64 y0, i64 y1);
LocalDensity tau_p_P1(i64 p, int k);

// target 9: both roots scaled by y; target 6: the y factor sits outside.
LocalDensity tau_inf_sym2_fiber(i64 y0, i64 y1, int target);

}  // namespace cubicpts
