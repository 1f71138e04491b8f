#include "takagi/thresholds.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>

#include "takagi/parallel.hpp"

namespace takagi {

namespace {

// Remainder factor gamma^s (6g+1) / ((1-g)(2g+1)) shared by every case.
double rem(double g, int s) { return std::pow(g, s) * (6 * g + 1) / ((1 - g) * (2 * g + 1)); }

double p2(double g) { return g * g; }
double p3(double g) { return g * g * g; }
double p4(double g) { return p2(g) * p2(g); }
double p5(double g) { return p4(g) * g; }

}  // namespace

const std::vector<PositivityCase>& positivity_cases() {
    // Lower bounds assembled from the per-jump template: keep the two
    // positive leading terms, cap each pinned jump (including its worst-case
    // common-one bonuses), and close with the geometric remainder. The
    // bonus terms enter through the cleared prefactor as (2g-1) multiples.
    static const std::vector<PositivityCase> cases = {
        {"case1", 0.702, [](double g) { return g + p5(g) - rem(g, 6); }},
        {"case2", 0.668, [](double g) { return g + p4(g) - rem(g, 5); }},
        {"case3a", 0.681, [](double g) { return g + p3(g) - rem(g, 5); }},
        {"case3b", 0.675,
         [](double g) { return g + p3(g) - p4(g) - p5(g) - rem(g, 6); }},
        {"case4a", 0.697, [](double g) { return g + p2(g) - rem(g, 5); }},
        {"case4b", 0.674,
         [](double g) {
             return g + p2(g) - p4(g) - p5(g) - rem(g, 6) -
                    (2 * g - 1) * (p3(g) + p3(g) / 2);
         }},
        {"case4c", 0.699, [](double g) { return g + p2(g) - p3(g) - rem(g, 6); }},
        {"case4d", 0.673,
         [](double g) {
             return g + p2(g) - p3(g) - p5(g) - rem(g, 6) - (2 * g - 1) * p4(g);
         }},
        {"case4e", 0.673,
         [](double g) { return g + p2(g) - p3(g) - p4(g) - rem(g, 6); }},
        {"case4f", 0.682,
         [](double g) { return g + p2(g) - p3(g) - p4(g) - p5(g) - rem(g, 7); }},
        {"case4g", 0.669,
         [](double g) { return g + p2(g) - p3(g) - p4(g) - p5(g) - p5(g) * g - rem(g, 7); }},
    };
    return cases;
}

double transversality_bound(double kappa) {
    if (!(kappa > 0.5 && kappa < 1.0)) throw std::domain_error("kappa must lie in (1/2, 1)");
    return 2.0 * kappa * (1.0 - 2.0 * kappa * kappa) / (1.0 - kappa);
}

double case_threshold(const PositivityCase& c, double tol) {
    if (!(tol > 0)) throw std::domain_error("tol must be positive");
    const double lo = 0.6, hi = 0.8;
    const int scan = 2000;
    int changes = 0;
    double prev = c.lower_bound(lo);
    for (int i = 1; i <= scan; ++i) {
        double g = lo + (hi - lo) * i / scan;
        double v = c.lower_bound(g);
        if ((prev > 0) != (v > 0)) ++changes;
        prev = v;
    }
    if (changes != 1)
        throw std::runtime_error("analysis error: " + c.id + " does not change sign exactly once in (0.6, 0.8)");
    double a = lo, b = hi;
    while (b - a > tol) {
        double m = 0.5 * (a + b);
        if (c.lower_bound(m) > 0)
            a = m;
        else
            b = m;
    }
    return 0.5 * (a + b);
}

double gamma_zero(double tol) {
    double best = 1.0;
    for (const auto& c : positivity_cases()) best = std::min(best, case_threshold(c, tol));
    return best;
}

double simple_separation_bound(double gamma) {
    if (!(gamma > 0.5 && gamma < 1.0)) throw std::domain_error("gamma must lie in (1/2, 1)");
    return 0.5 * (2.0 - 3.0 * gamma) / ((2.0 * gamma - 1.0) * (1.0 - gamma));
}

namespace {

// Exact stable values for every depth-bit register, all-zero continuation
// summed in closed form.
std::vector<double> stable_table(int depth, double kappa) {
    std::size_t n = std::size_t{1} << depth;
    std::vector<double> s(n, 0.0);
    double k = 1.0;
    for (int bitpos = 0; bitpos < depth; ++bitpos) {
        k *= kappa;
        std::size_t mask = std::size_t{1} << (depth - 1 - bitpos);
        for (std::size_t r = 0; r < n; ++r) s[r] += (r & mask) ? -k : k;
    }
    double tail = k * kappa / (1.0 - kappa);
    for (auto& v : s) v += tail;
    return s;
}

std::vector<double> takagi_table(int depth, double gamma) {
    std::size_t n = std::size_t{1} << depth;
    std::vector<double> t(n, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
        double sum = 0.0, g = 1.0;
        std::size_t r = j;
        std::size_t mod = n;
        for (int m = 0; m < depth; ++m, g *= gamma) {
            double frac = static_cast<double>(r) / static_cast<double>(mod);
            sum += g * std::min(frac, 1.0 - frac);
            mod >>= 1;
            r &= mod - 1;
        }
        t[j] = sum;
    }
    return t;
}

}  // namespace

Separation empirical_separation(double gamma, int depth) {
    if (depth < 2 || depth > 16) throw std::domain_error("empirical_separation: depth in [2,16]");
    double kappa = 1.0 / (2.0 * gamma);
    std::vector<double> s = stable_table(depth, kappa);
    std::vector<double> t = takagi_table(depth, gamma);
    std::vector<double> sorted = s;
    std::sort(sorted.begin(), sorted.end());

    std::size_t n = std::size_t{1} << depth;
    std::size_t half = n >> 1;
    double inv_n = 1.0 / static_cast<double>(n);

    // min |S(i/n) - S(j/n)| over i - j > n/2, strict
    double min_s = parallel_reduce_min(half, [&](std::size_t j0, std::size_t j1) {
        double best = 1e300;
        for (std::size_t j = j0; j < j1; ++j) {
            for (std::size_t i = j + half + 1; i < n; ++i)
                best = std::min(best, std::abs(s[i] - s[j]));
        }
        return best;
    });

    // min over xi of |T(y)-T(x) - (y-x) S(xi)| for y - x > 1/2: nearest
    // sorted stable value to (T(y)-T(x))/(y-x)
    double min_h = parallel_reduce_min(half, [&](std::size_t j0, std::size_t j1) {
        double best = 1e300;
        for (std::size_t ix = j0; ix < j1; ++ix) {
            for (std::size_t iy = ix + half + 1; iy < n; ++iy) {
                double d = static_cast<double>(iy - ix) * inv_n;
                double c = t[iy] - t[ix];
                double target = c / d;
                auto it = std::lower_bound(sorted.begin(), sorted.end(), target);
                if (it != sorted.end()) best = std::min(best, std::abs(c - d * *it));
                if (it != sorted.begin()) best = std::min(best, std::abs(c - d * *(it - 1)));
            }
        }
        return best;
    });

    return {min_s, min_h, 0.0, 0.0};
}

}  // namespace takagi
