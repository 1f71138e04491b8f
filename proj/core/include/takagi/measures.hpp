#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "takagi/rng.hpp"
#include "takagi/series.hpp"

namespace takagi {

// Weighted histogram over a fixed real interval. mass is count/n_samples;
// restricted samplers leave the excluded samples' mass out entirely, so the
// total can be below one. Identical (seed, params, n) reproduce the mass
// vector bit for bit, independent of TAKAGI_THREADS.
struct EmpiricalMeasure {
    std::vector<double> bin_edges;  // bins + 1 edges, increasing
    std::vector<double> mass;       // one entry per bin
    std::uint64_t n_samples = 0;
    std::uint64_t seed = 0;
    double stderr_bound = 0.0;  // max per-bin binomial standard error

    double total_mass() const;
};

// Law of S(xi) over uniform depth-D registers (the x-marginal of the
// invariant measure on the stable graph).
EmpiricalMeasure sample_sbr_marginal(const Params& p, std::uint64_t n, std::uint64_t seed,
                                     int bins);

// Law of S(xi) - S(eta) over uniform pairs; with restrict_macroscopic only
// pairs with |xi - eta| > 1/2 carry mass (total -> 1/4).
EmpiricalMeasure sample_rho(const Params& p, std::uint64_t n, std::uint64_t seed, int bins,
                            bool restrict_macroscopic);

// Law of H(xi,x) - H(xi,y) over uniform triples; the flag restricts to
// |y - x| > 1/2 in the same way.
EmpiricalMeasure sample_chi(const Params& p, std::uint64_t n, std::uint64_t seed, int bins,
                            bool restrict_macroscopic);

struct TelescopeRow {
    double a = 0.0, b = 0.0;      // interval
    double lhs = 0.0;             // direct mass of [a,b]
    double rhs = 0.0;             // weighted dilation expansion
    double discrepancy = 0.0;     // |lhs - rhs|
    double slack = 0.0;           // 2^-terms + 3 * SE of the combined statistic
    bool pass = false;
};

// Checks the dilation identity  law(A) = sum_m 2^-m law_hat(dil^-m A)  by
// Monte Carlo, with dil = kappa for the stable increments and dil = gamma for
// the bridge increments. law_hat restricts to pairs whose leading registers
// disagree in the first bit (mass 1/2); the half-distance restriction does
// not satisfy the identity (it fails total mass), see the tests.
std::vector<TelescopeRow> telescope_rho_check(const Params& p,
                                              std::span<const std::pair<double, double>> intervals,
                                              std::uint64_t n, std::uint64_t seed, int terms);
std::vector<TelescopeRow> telescope_chi_check(const Params& p,
                                              std::span<const std::pair<double, double>> intervals,
                                              std::uint64_t n, std::uint64_t seed, int terms);

// Sixteen deterministic test intervals spanning [-support, support].
std::vector<std::pair<double, double>> default_interval_family(double support);

// |empirical characteristic function|^2 on a symmetric grid containing 0,
// with its running trapezoid integral.
struct CharFunctionTable {
    std::vector<double> u_grid;
    std::vector<double> phi_sq;
    std::vector<double> cumulative;
};
CharFunctionTable char_function(std::span<const double> samples, double u_max, int grid_points);

// H(xi, j/grid) for j = 0..grid-1.
std::vector<double> bridge_samples(const BitString& xi, const Params& p, std::uint64_t grid);

// Occupation histogram of x -> H(xi, x) with an L2 density estimate and its
// stability under halving the bin width.
struct OccupationReport {
    EmpiricalMeasure hist;
    double l2_density = 0.0;   // at `bins`
    double l2_refined = 0.0;   // at `2 * bins`
    double refine_ratio = 0.0; // l2_refined / l2_density
};
OccupationReport occupation_local_time(const BitString& xi, const Params& p, std::uint64_t grid,
                                       int bins);

// Certified support radii used for binning.
double sbr_support_radius(const Params& p);
double rho_support_radius(const Params& p);
double chi_support_radius(const Params& p);

}  // namespace takagi
