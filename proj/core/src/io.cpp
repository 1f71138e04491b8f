#include "takagi/io.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace takagi {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

namespace {

std::ofstream open_out(const std::string& path) {
    std::ofstream f(path, std::ios::binary);  // keep '\n' endings everywhere
    if (!f) throw std::runtime_error("cannot open " + path + " for writing");
    return f;
}

}  // namespace

void write_curve_csv(const std::string& path, const BitString& xi, const Params& p, int points) {
    if (points < 1) throw std::domain_error("write_curve_csv: points must be >= 1");
    auto f = open_out(path);
    f << "x,T,H,S\n";
    double s = stable_series(xi, p).value;
    for (int j = 0; j < points; ++j) {
        double x = static_cast<double>(j) / points;
        double t = takagi_point(x, p);
        double h = t - x * s;
        f << format_double(x) << ',' << format_double(t) << ',' << format_double(h) << ','
          << format_double(s) << '\n';
    }
}

void write_histogram_csv(const std::string& path, const EmpiricalMeasure& m) {
    auto f = open_out(path);
    f << "bin_left,bin_right,mass\n";
    for (std::size_t b = 0; b < m.mass.size(); ++b)
        f << format_double(m.bin_edges[b]) << ',' << format_double(m.bin_edges[b + 1]) << ','
          << format_double(m.mass[b]) << '\n';
}

void write_char_table_csv(const std::string& path, const CharFunctionTable& t) {
    auto f = open_out(path);
    f << "u,phi_sq,cumulative\n";
    for (std::size_t j = 0; j < t.u_grid.size(); ++j)
        f << format_double(t.u_grid[j]) << ',' << format_double(t.phi_sq[j]) << ','
          << format_double(t.cumulative[j]) << '\n';
}

}  // namespace takagi
