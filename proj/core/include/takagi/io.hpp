#pragma once

#include <string>

#include "takagi/measures.hpp"
#include "takagi/series.hpp"

namespace takagi {

// 17 significant digits, '.' decimal; round-trips any double.
std::string format_double(double v);

// Header `x,T,H,S`, one row per grid point x = j/points, ','-separated,
// '\n' line endings.
void write_curve_csv(const std::string& path, const BitString& xi, const Params& p, int points);

// Header `bin_left,bin_right,mass`.
void write_histogram_csv(const std::string& path, const EmpiricalMeasure& m);

// Header `u,phi_sq,cumulative`.
void write_char_table_csv(const std::string& path, const CharFunctionTable& t);

}  // namespace takagi
