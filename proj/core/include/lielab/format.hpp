#pragma once

#include <complex>
#include <string>

namespace lielab {

/// Round-trippable decimal text with 17 significant digits; all CSV output
/// goes through this so artifacts are byte-reproducible.
std::string format_double(double x);

}  // namespace lielab
