// text_format.hpp: number formatting shared by every text output.
#pragma once

#include <string>

namespace girthforge {

// 9 significant digits, "%.9g" style; "inf"/"-inf"/"nan" for non-finite.
std::string format_real(double x);

}  // namespace girthforge
