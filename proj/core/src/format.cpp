#include "lielab/format.hpp"

#include <cmath>
#include <cstdio>

namespace lielab {

std::string format_double(double x) {
  if (x == 0.0) return "0";  // folds -0 into 0
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace lielab
