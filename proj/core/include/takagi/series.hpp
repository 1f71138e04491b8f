#pragma once

#include <vector>

#include "takagi/bitreg.hpp"

namespace takagi {

// Roughness parameters. gamma in (1/2,1) controls the curve, kappa = 1/(2 gamma)
// the dual stable-direction series. truncation is the certified series cutoff,
// depth the register depth used for sampling (depth >= truncation).
struct Params {
    double gamma = 0.6;
    double kappa = 1.0 / 1.2;
    int truncation = 48;
    int depth = 64;

    static Params from_gamma(double gamma, int truncation = 48, int depth = 64);
    static Params from_kappa(double kappa, int truncation = 48, int depth = 64);
};

// A truncated series value together with a certified remainder radius:
// the exact value lies in [value - tail_bound, value + tail_bound].
struct SeriesValue {
    double value = 0.0;
    double tail_bound = 0.0;
};

// The curve sum_{n>=0} gamma^n tent(2^n x), truncated at p.truncation.
SeriesValue takagi_curve(const BitString& x, const Params& p);
// Same series at a real argument (grid evaluation).
double takagi_point(double x, const Params& p);

// Stable-direction series sum_{n>=1} kappa^n (1 - 2 xi_{-(n-1)}). Constant in
// the forward coordinate, so it takes only the backward register.
SeriesValue stable_series(const BitString& xi, const Params& p);
// Exact value at a dyadic point: the all-zero continuation beyond the register
// is summed in closed form, so there is no truncation error at all.
double stable_series_exact(const BitString& xi, double kappa);

// Bridge between the curve and its stable fibers, H = T(x) - x S(xi).
SeriesValue bridge(const BitString& xi, const BitString& x, const Params& p);

// The same bridge evaluated as the two-sided series over baker iterates.
// Kept as an independent oracle for bridge(); O(N^2)-ish and slower.
SeriesValue bridge_series(const BitString& xi, const BitString& x, const Params& p);

// Per-disagreement factor sum_{m>=0} kappa^m [slope((1+x)/2^{m+1}) - slope(x/2^{m+1})].
// Identically -2 under the sign convention used here.
SeriesValue jump_factor(const BitString& x, const Params& p);

struct Residual {
    const char* name;
    double residual;
    double bound;
    bool pass() const { return residual <= bound; }
};

// The four one-step self-affinity identities, each with its certified bound:
//   s_scaling:   S(B(xi,x)) = 2 gamma S(xi) - slope(B2(xi,x))
//   g_diff:      S(x1*xi) - S(x1*0) = kappa (S(xi) - S(0))       (* = push front)
//   h_scaling:   H(B(xi,x)) = gamma H(xi,x) + 2 tent(B2(xi,x)) - (xi_0/2)(S(2xi)+1)
//   attractor:   T(B2(xi,x)) = tent(B2(xi,x)) + gamma T(x)
std::vector<Residual> scaling_checks(const BitString& xi, const BitString& x, const Params& p);

// OLS slope of log2 max_{|x-y|=2^-k} |T(x)-T(y)| against -k on a dyadic grid
// with 2^grid_log2 points, over k in [k_lo, k_hi].
double holder_slope(double gamma, int grid_log2, int k_lo, int k_hi);

}  // namespace takagi
