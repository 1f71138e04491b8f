#pragma once

#include <vector>

#include "takagi/series.hpp"

namespace takagi {

// Positions at which two registers disagree, strictly increasing and
// exhaustive up to complete_to.
struct JumpTimes {
    std::vector<int> positions;
    int complete_to = 0;
};

// Backward-register disagreement times (0-indexed on xi_0, xi_-1, ...).
JumpTimes backward_jumps(const BitString& xi, const BitString& eta);

// Forward-register combinatorics for a pair (x, y), all 1-indexed:
//   sigma: disagreement positions, alpha: common-one positions,
//   ones_before[l] = number of alphas <= sigma_{l+1}.
struct ForwardJumps {
    JumpTimes sigma;
    JumpTimes alpha;
    std::vector<int> ones_before;
};
ForwardJumps forward_jumps(const BitString& x, const BitString& y);

// The bit-level translation of y > x + 1/2.
struct MacroscopicWitness {
    bool sigma1_is_one = false;
    bool x1_zero = false;
    bool y1_one = false;
    bool y_sigma2_one = false;
    bool x_sigma2_zero = false;
    bool all() const {
        return sigma1_is_one && x1_zero && y1_one && y_sigma2_one && x_sigma2_zero;
    }
};
MacroscopicWitness macroscopic_witness(const BitString& x, const BitString& y);

// Telescoped stable-series difference over backward jumps:
//   S(xi) - S(eta) = -2 sum_l kappa^(tau_l + 1) (-1)^(1 - xi_{-tau_l})
SeriesValue s_diff_rep(const BitString& xi, const BitString& eta, const Params& p);

// The eta = 0 specialization: S(xi) = kappa/(1-kappa) - 2 sum_l kappa^(tau_l + 1).
SeriesValue s_oneterm_rep(const BitString& xi, const Params& p);

// Telescoped bridge increment over forward jumps. Each jump at sigma
// contributes sign * gamma^sigma * bracket with
//   bracket = kappa (1 - 2 t) + sum_{m=2..sigma} kappa^m (1 - 2 y_{sigma-m+1})
//             - kappa^sigma S(xi),
// t the value of x shifted past sigma. The middle sum is the stable series of
// the register obtained by pushing the reversed y-prefix onto xi.
SeriesValue h_diff_rep(const BitString& xi, const BitString& x, const BitString& y,
                       const Params& p);

// Same value split into the xi-free jump series and the drift term
// -(y - x) (S(xi) - S(0)), for the separation analysis.
struct HDiffParts {
    SeriesValue total;
    double jump_series = 0.0;
    double drift_term = 0.0;
};
HDiffParts h_diff_simple_rep(const BitString& xi, const BitString& x, const BitString& y,
                             const Params& p);

// Geometric bound on the jump series truncated from 1-based index ell,
// valid under the hypothesis sigma_1 = 1, ..., sigma_n_prefix = n_prefix:
//   gamma^sigma_ell / (1 - gamma) * kappa/(1-kappa) * (3+kappa)/(1+kappa)
double remainder_bound(const JumpTimes& sigma, int ell, int n_prefix, const Params& p);

// Companion per-term cap, transcribed verbatim:
//   kappa/(1-kappa) * (3 + kappa - 2 kappa^(2(floor((sigma_ell - n_prefix - 2)/2) + 1)))
//                   / (1 + kappa)
// Enumeration shows this one does NOT dominate all brackets (see tests);
// the remainder bound above still does.
double term_cap(const JumpTimes& sigma, int ell, int n_prefix, const Params& p);

}  // namespace takagi
