#pragma once

#include <functional>
#include <string>
#include <vector>

#include "takagi/series.hpp"

namespace takagi {

// One subcase of the jump-series positivity analysis. lower_bound(gamma) is
// the case's lower-bound expression for the jump series (positive prefactor
// cleared); nominal is the cutoff it is checked against.
struct PositivityCase {
    std::string id;
    double nominal;
    std::function<double(double)> lower_bound;
};

// The eleven subcases, in order: 1, 2, 3a, 3b, 4a..4g.
const std::vector<PositivityCase>& positivity_cases();

// Uniform lower bound 2 kappa (1 - 2 kappa^2) / (1 - kappa) for
// |S(xi) - S(eta)| over pairs with |xi - eta| > 1/2; positive iff
// kappa < 1/sqrt(2).
double transversality_bound(double kappa);

// Unique root of a case's lower bound in (0.6, 0.8), found by bisection to
// absolute tolerance tol; throws if the bracket does not change sign exactly
// once (a transcription bug, not a numeric condition).
double case_threshold(const PositivityCase& c, double tol);

// Minimum of the eleven case roots.
double gamma_zero(double tol);

// The coarse separation bound (1/2)(2-3 gamma)/((2 gamma - 1)(1 - gamma)),
// positive iff gamma < 2/3.
double simple_separation_bound(double gamma);

// Exhaustive minima over depth-limited registers:
//   min |S(xi) - S(eta)|                 over |xi - eta| > 1/2,
//   min |H(xi,y) - H(xi,x)|              over y > x + 1/2 (all xi).
// Stable values are exact at dyadic points, so the reported slacks are zero.
struct Separation {
    double min_abs_s_diff = 0.0;
    double min_abs_h_diff = 0.0;
    double s_slack = 0.0;
    double h_slack = 0.0;
};
Separation empirical_separation(double gamma, int depth);

}  // namespace takagi
