#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <random>

#include "takagi/measures.hpp"
#include "takagi/thresholds.hpp"

using namespace takagi;

namespace {

struct ThreadsGuard {
    explicit ThreadsGuard(const char* v) { setenv("TAKAGI_THREADS", v, 1); }
    ~ThreadsGuard() { unsetenv("TAKAGI_THREADS"); }
};

}  // namespace

TEST_CASE("histograms are reproducible bit for bit across thread counts") {
    Params p = Params::from_gamma(0.75);
    EmpiricalMeasure a, b;
    {
        ThreadsGuard g("1");
        a = sample_rho(p, 40000, 123, 64, true);
    }
    {
        ThreadsGuard g("5");
        b = sample_rho(p, 40000, 123, 64, true);
    }
    REQUIRE(a.mass.size() == b.mass.size());
    for (std::size_t i = 0; i < a.mass.size(); ++i) REQUIRE(a.mass[i] == b.mass[i]);
    EmpiricalMeasure c = sample_rho(p, 40000, 124, 64, true);
    CHECK(a.mass != c.mass);  // the seed actually matters
}

TEST_CASE("single sample lands in a single unit-mass bin") {
    Params p = Params::from_gamma(0.6);
    EmpiricalMeasure m = sample_sbr_marginal(p, 1, 7, 32);
    CHECK(m.total_mass() == 1.0);
    int nonzero = 0;
    for (double v : m.mass) nonzero += v > 0;
    CHECK(nonzero == 1);
}

TEST_CASE("stable marginal: support and symmetry") {
    Params p = Params::from_kappa(0.65);
    const std::uint64_t n = 200000;
    EmpiricalMeasure m = sample_sbr_marginal(p, n, 42, 64);
    // nothing escaped the certified support (FP summation of n bin masses)
    CHECK(std::abs(m.total_mass() - 1.0) < 1e-12);
    // bit-flip pushforward symmetry: mass(A) == mass(-A) within 3 stderr
    for (std::size_t b = 0; b < m.mass.size() / 2; ++b) {
        double diff = std::abs(m.mass[b] - m.mass[m.mass.size() - 1 - b]);
        CHECK(diff <= 3.0 * (m.stderr_bound + m.stderr_bound));
    }
}

TEST_CASE("rho: restricted mass and the spectral gap") {
    Params p = Params::from_kappa(0.65);
    const std::uint64_t n = 200000;
    EmpiricalMeasure hat = sample_rho(p, n, 42, 128, true);
    double mass = hat.total_mass();
    CHECK(std::abs(mass - 0.25) <= 3.0 * std::sqrt(0.25 * 0.75 / n));
    // no restricted sample below the transversality bound minus tails
    double b = transversality_bound(p.kappa) -
               2.0 * std::pow(p.kappa, p.truncation + 1) / (1.0 - p.kappa);
    for (std::size_t i = 0; i < hat.mass.size(); ++i) {
        double lo = hat.bin_edges[i], hi = hat.bin_edges[i + 1];
        if (hi <= b && lo >= -b) CHECK(hat.mass[i] == 0.0);
    }
    // the unrestricted law is symmetric under swapping the pair
    EmpiricalMeasure full = sample_rho(p, n, 42, 64, false);
    for (std::size_t i = 0; i < full.mass.size() / 2; ++i)
        CHECK(std::abs(full.mass[i] - full.mass[full.mass.size() - 1 - i]) <=
              6.0 * full.stderr_bound);
}

TEST_CASE("chi: restricted mass, symmetry, and no gap at the coarse bound") {
    Params p = Params::from_gamma(0.6);
    const std::uint64_t n = 200000;
    EmpiricalMeasure hat = sample_chi(p, n, 42, 128, true);
    CHECK(std::abs(hat.total_mass() - 0.25) <= 3.0 * std::sqrt(0.25 * 0.75 / n));
    EmpiricalMeasure full = sample_chi(p, n, 42, 64, false);
    for (std::size_t i = 0; i < full.mass.size() / 2; ++i)
        CHECK(std::abs(full.mass[i] - full.mass[full.mass.size() - 1 - i]) <=
              6.0 * full.stderr_bound);
    // the restricted law keeps substantial mass inside (-1.25, 1.25): the
    // coarse separation bound does not gap the bridge increments
    double inside = 0.0;
    for (std::size_t i = 0; i < hat.mass.size(); ++i) {
        double lo = hat.bin_edges[i], hi = hat.bin_edges[i + 1];
        if (lo >= -1.25 && hi <= 1.25) inside += hat.mass[i];
    }
    CHECK(inside > 0.05);
}

TEST_CASE("dilation identities hold with the leading-bit restriction") {
    const std::uint64_t n = 300000;
    Params rho_p = Params::from_gamma(0.75);
    auto rows = telescope_rho_check(rho_p, default_interval_family(rho_support_radius(rho_p)), n,
                                    42, 30);
    for (const auto& r : rows) {
        CAPTURE(r.a);
        CAPTURE(r.b);
        CHECK(r.pass);
    }
    Params chi_p = Params::from_gamma(0.6);
    auto crows = telescope_chi_check(chi_p, default_interval_family(chi_support_radius(chi_p)), n,
                                     43, 30);
    for (const auto& r : crows) {
        CAPTURE(r.a);
        CAPTURE(r.b);
        CHECK(r.pass);
    }
}

TEST_CASE("telescoping negative control: one term is not enough") {
    Params p = Params::from_gamma(0.75);
    // the restricted measure vanishes on the central gap, so a single
    // undilated term misses all of the microscopic mass there. The bias has
    // to dwarf the statistical error; the 2^-terms truncation allowance in
    // the slack formula is 1/2 here and would mask any discrepancy.
    double l = rho_support_radius(p);
    std::pair<double, double> gap{-0.11 * l, 0.11 * l};
    auto one = telescope_rho_check(p, std::span(&gap, 1), 200000, 42, 1);
    auto full = telescope_rho_check(p, std::span(&gap, 1), 200000, 42, 30);
    double stat_error = one[0].slack - 0.5;  // the 3 SE part alone
    CHECK(one[0].discrepancy > 0.02);
    CHECK(one[0].discrepancy > 10.0 * stat_error);
    CHECK(full[0].discrepancy < one[0].discrepancy / 4.0);
}

TEST_CASE("characteristic function table") {
    std::vector<double> samples(1000);
    std::mt19937_64 gen(2);
    std::uniform_real_distribution<double> unif(-2.0, 2.0);
    for (auto& s : samples) s = unif(gen);
    CharFunctionTable t = char_function(samples, 50.0, 101);
    std::size_t mid = t.u_grid.size() / 2;
    CHECK(t.u_grid[mid] == 0.0);
    CHECK(t.phi_sq[mid] == 1.0);
    for (double v : t.phi_sq) {
        CHECK(v >= 0.0);
        CHECK(v <= 1.0 + 1e-9);
    }
    for (std::size_t i = 1; i < t.cumulative.size(); ++i)
        CHECK(t.cumulative[i] >= t.cumulative[i - 1]);
    // point mass: |phi| = 1 everywhere
    std::vector<double> point(100, 0.7);
    CharFunctionTable tp = char_function(point, 50.0, 101);
    for (double v : tp.phi_sq) CHECK(v == doctest::Approx(1.0).epsilon(1e-9));
    CHECK_THROWS_AS(char_function(std::span<const double>{}, 1.0, 11), std::domain_error);
}

TEST_CASE("two estimators of the squared density agree") {
    // Plancherel: int |phi|^2 du / (2 pi) vs sum of squared histogram density
    Params p = Params::from_kappa(0.65);
    const std::uint64_t n = 1000000;
    EmpiricalMeasure m = sample_sbr_marginal(p, n, 42, 512);
    double width = m.bin_edges[1] - m.bin_edges[0];
    double f2 = 0.0;
    for (double v : m.mass) f2 += (v / width) * (v / width) * width;

    CounterRng rng{42};
    std::vector<double> samples(n);
    Params ps = p;
    // regenerate the same stream the sampler consumed
    for (std::uint64_t i = 0; i < n; ++i) {
        std::uint64_t w = rng.word(4 * i);
        double s = 0.0, k = 1.0;
        for (int b = 1; b <= ps.truncation && b <= 64; ++b) {
            k *= ps.kappa;
            s += ((w >> (64 - b)) & 1) ? -k : k;
        }
        samples[i] = s;
    }
    CharFunctionTable t = char_function(samples, 400.0, 801);
    double integral = t.cumulative.back();
    CHECK(integral / (2 * M_PI) == doctest::Approx(f2).epsilon(0.10));
}

TEST_CASE("occupation measure of the bridge") {
    Params p = Params::from_gamma(0.6);
    BitString xi = BitString::zeros(64);
    const std::uint64_t grid = 1 << 16;
    OccupationReport rep = occupation_local_time(xi, p, grid, 256);
    CHECK(rep.hist.total_mass() == 1.0);
    // support within the pointwise closed form min/max over the grid
    double s = stable_series(xi, p).value;
    double lo = 1e300, hi = -1e300;
    for (std::uint64_t j = 0; j < grid; ++j) {
        double x = static_cast<double>(j) / grid;
        double h = takagi_point(x, p) - x * s;
        lo = std::min(lo, h);
        hi = std::max(hi, h);
    }
    double width = rep.hist.bin_edges[1] - rep.hist.bin_edges[0];
    for (std::size_t b = 0; b < rep.hist.mass.size(); ++b) {
        if (rep.hist.mass[b] > 0) {
            CHECK(rep.hist.bin_edges[b + 1] >= lo - width);
            CHECK(rep.hist.bin_edges[b] <= hi + width);
        }
    }
    CHECK(rep.refine_ratio > 0.8);
    CHECK(rep.refine_ratio < 1.25);
}

TEST_CASE("per-sample baker conjugacy of the stable series") {
    // pushing (xi, x) one step forward transforms S exactly per sample
    Params p = Params::from_gamma(0.7, 48, 65);
    std::mt19937_64 gen(21);
    for (int i = 0; i < 1000; ++i) {
        std::vector<std::uint8_t> a(65), b(64);
        for (auto& v : a) v = gen() & 1;
        for (auto& v : b) v = gen() & 1;
        Phase ph{BitString(a), BitString(b)};
        Phase fwd = baker(ph, 1);
        SeriesValue before = stable_series(ph.xi, p);
        SeriesValue after = stable_series(fwd.xi, p);
        double conjugated = 2.0 * p.gamma * before.value - tent_slope(fwd.x.value());
        CHECK(std::abs(after.value - conjugated) <=
              after.tail_bound + 2.0 * p.gamma * before.tail_bound);
    }
}
