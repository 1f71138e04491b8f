#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "takagi/rep.hpp"

using namespace takagi;

namespace {

BitString random_bits(std::mt19937_64& gen, std::size_t depth) {
    std::vector<std::uint8_t> b(depth);
    for (auto& v : b) v = gen() & 1;
    return BitString(b);
}

}  // namespace

TEST_CASE("backward jump times") {
    CHECK(backward_jumps(BitString::parse("1000"), BitString::parse("0000")).positions ==
          std::vector<int>{0});
    BitString b = BitString::parse("0110");
    CHECK(backward_jumps(b, b).positions.empty());
    // 1010 xor 0011 = 1001: disagreement at 0 and 3
    CHECK(backward_jumps(BitString::parse("1010"), BitString::parse("0011")).positions ==
          std::vector<int>{0, 3});
    CHECK_THROWS_AS(backward_jumps(b, BitString::zeros(5)), std::domain_error);
}

TEST_CASE("forward jump times") {
    ForwardJumps a = forward_jumps(BitString::parse("0000"), BitString::parse("1000"));
    CHECK(a.sigma.positions == std::vector<int>{1});
    CHECK(a.alpha.positions.empty());
    CHECK(a.ones_before == std::vector<int>{0});

    ForwardJumps b = forward_jumps(BitString::parse("0101"), BitString::parse("1101"));
    CHECK(b.sigma.positions == std::vector<int>{1});
    CHECK(b.alpha.positions == std::vector<int>{2, 4});
    CHECK(b.ones_before == std::vector<int>{0});

    BitString x = BitString::parse("0110");
    ForwardJumps c = forward_jumps(x, x);
    CHECK(c.sigma.positions.empty());
    CHECK(c.alpha.positions == std::vector<int>{2, 3});
    CHECK(c.ones_before.empty());
}

TEST_CASE("macroscopic witness iff y > x + 1/2, exhaustively") {
    const int depth = 10;
    const std::size_t n = std::size_t{1} << depth;
    for (std::size_t ix = 0; ix < n; ++ix) {
        BitString x = BitString::from_value(static_cast<double>(ix) / n, depth);
        for (std::size_t iy = 0; iy < n; ++iy) {
            BitString y = BitString::from_value(static_cast<double>(iy) / n, depth);
            bool macro = iy > ix + n / 2;  // exact integer comparison
            REQUIRE(macroscopic_witness(x, y).all() == macro);
        }
    }
}

TEST_CASE("common-one interleaving on the macroscopic set, exhaustively") {
    const int depth = 10;
    const std::size_t n = std::size_t{1} << depth;
    for (std::size_t ix = 0; ix < n; ++ix) {
        for (std::size_t iy = ix + n / 2 + 1; iy < n; ++iy) {
            BitString x = BitString::from_value(static_cast<double>(ix) / n, depth);
            BitString y = BitString::from_value(static_cast<double>(iy) / n, depth);
            ForwardJumps fj = forward_jumps(x, y);
            if (!fj.alpha.positions.empty()) REQUIRE(fj.alpha.positions[0] >= 2);
            for (std::size_t l = 0; l < fj.sigma.positions.size(); ++l) {
                int r = fj.ones_before[l];
                if (r > 0) REQUIRE(fj.alpha.positions[r - 1] <= fj.sigma.positions[l] - 1);
            }
        }
    }
}

TEST_CASE("stable difference representation") {
    Params p = Params::from_gamma(0.6);
    BitString half = BitString::from_value(0.5, 64);
    SeriesValue d = s_diff_rep(half, BitString::zeros(64), p);
    CHECK(d.value == doctest::Approx(-2.0 * p.kappa).epsilon(1e-15));
    CHECK(s_diff_rep(half, half, p).value == 0.0);

    std::mt19937_64 gen(8);
    for (int i = 0; i < 1000; ++i) {
        BitString xi = random_bits(gen, 64);
        BitString eta = random_bits(gen, 64);
        SeriesValue rep = s_diff_rep(xi, eta, p);
        SeriesValue sx = stable_series(xi, p), se = stable_series(eta, p);
        CHECK(std::abs(rep.value - (sx.value - se.value)) <=
              rep.tail_bound + sx.tail_bound + se.tail_bound);
        // magnitude is invariant under flipping every bit of both registers
        std::vector<std::uint8_t> fx(64), fe(64);
        for (int b = 0; b < 64; ++b) {
            fx[b] = 1 - xi.bit(b);
            fe[b] = 1 - eta.bit(b);
        }
        SeriesValue flipped = s_diff_rep(BitString(fx), BitString(fe), p);
        CHECK(std::abs(flipped.value) == doctest::Approx(std::abs(rep.value)).epsilon(1e-12));
    }
}

TEST_CASE("one-sided representation of the stable series") {
    Params p = Params::from_gamma(0.6);
    double full = p.kappa / (1 - p.kappa);
    SeriesValue at0 = s_oneterm_rep(BitString::zeros(64), p);
    CHECK(std::abs(at0.value - full) <= at0.tail_bound);
    SeriesValue ath = s_oneterm_rep(BitString::from_value(0.5, 64), p);
    CHECK(ath.value == doctest::Approx(at0.value - 2 * p.kappa).epsilon(1e-14));

    std::mt19937_64 gen(9);
    for (int i = 0; i < 1000; ++i) {
        BitString xi = random_bits(gen, 64);
        SeriesValue rep = s_oneterm_rep(xi, p);
        SeriesValue s = stable_series(xi, p);
        CHECK(std::abs(rep.value - s.value) <= rep.tail_bound + s.tail_bound);
    }
}

TEST_CASE("bridge increment representation") {
    Params p = Params::from_gamma(0.6);
    BitString z = BitString::zeros(64);
    CHECK(h_diff_rep(z, z, z, p).value == 0.0);

    BitString half = BitString::from_value(0.5, 64);
    SeriesValue d = h_diff_rep(z, z, half, p);
    CHECK(std::abs(d.value - (-2.0)) <= d.tail_bound + 1e-9);

    std::mt19937_64 gen(10);
    for (double g : {0.6, 0.75}) {
        Params q = Params::from_gamma(g);
        for (int i = 0; i < 1000; ++i) {
            BitString xi = random_bits(gen, 64);
            BitString x = random_bits(gen, 64);
            BitString y = random_bits(gen, 64);
            SeriesValue rep = h_diff_rep(xi, x, y, q);
            SeriesValue hx = bridge(xi, x, q), hy = bridge(xi, y, q);
            CHECK(std::abs(rep.value - (hy.value - hx.value)) <=
                  rep.tail_bound + hx.tail_bound + hy.tail_bound);
        }
    }
}

TEST_CASE("split bridge increment representation") {
    Params p = Params::from_gamma(0.6);
    std::mt19937_64 gen(11);
    BitString z = BitString::zeros(64);
    BitString half = BitString::from_value(0.5, 64);
    for (int i = 0; i < 200; ++i) {
        BitString xi = random_bits(gen, 64);
        // xi = 0: no drift, total equals the plain representation
        HDiffParts p0 = h_diff_simple_rep(z, z, half, p);
        CHECK(p0.drift_term == 0.0);
        CHECK(p0.total.value == doctest::Approx(h_diff_rep(z, z, half, p).value).epsilon(1e-12));
        // x=0, y=1/2: |drift| = (y-x) |S(xi) - S(0)|
        HDiffParts ph = h_diff_simple_rep(xi, z, half, p);
        SeriesValue sx = stable_series(xi, p), s0 = stable_series(z, p);
        CHECK(std::abs(ph.drift_term) ==
              doctest::Approx(0.5 * std::abs(sx.value - s0.value)).epsilon(1e-12));
        // agreement with the unsplit form on random triples
        BitString x = random_bits(gen, 64), y = random_bits(gen, 64);
        HDiffParts split = h_diff_simple_rep(xi, x, y, p);
        SeriesValue rep = h_diff_rep(xi, x, y, p);
        CHECK(std::abs(split.total.value - rep.value) <=
              split.total.tail_bound + rep.tail_bound);
        CHECK(split.total.value == doctest::Approx(split.jump_series + split.drift_term));
    }
}

TEST_CASE("remainder bound arithmetic") {
    Params p = Params::from_kappa(0.75);
    JumpTimes sigma{{1, 2, 50}, 64};
    // large gap: the cap approaches kappa/(1-kappa) (3+kappa)/(1+kappa) = 45/7
    CHECK(term_cap(sigma, 3, 2, p) == doctest::Approx(45.0 / 7.0).epsilon(1e-5));
    // the remainder bound decreases in sigma_ell
    Params q = Params::from_gamma(0.65);
    JumpTimes near{{1, 2, 5}, 16}, far{{1, 2, 9}, 16};
    CHECK(remainder_bound(far, 3, 2, q) < remainder_bound(near, 3, 2, q));
    // hypothesis violations
    JumpTimes bad{{1, 3, 5}, 16};
    CHECK_THROWS_AS(remainder_bound(bad, 3, 2, q), std::domain_error);
    CHECK_THROWS_AS(remainder_bound(near, 2, 2, q), std::domain_error);
}

TEST_CASE("remainder bound dominates every depth-14 completion") {
    // sigma_1 = 1, sigma_2 = 2 pinned; every completion of positions 3..14
    // enumerated. The tail of the jump series (printed bracket form) from the
    // first free jump must stay under remainder_bound. The per-term cap of
    // term_cap is checked too: enumeration refutes it, so we count rather
    // than assert, and pin that violations exist while domination holds.
    Params p = Params::from_gamma(0.65);
    const int depth = 14;
    const int free = depth - 2;
    const std::size_t total = std::size_t{1} << (2 * free);
    double kap = p.kappa;
    double a = kap / (1 - kap);
    double capfac = a * (3 + kap) / (1 + kap);

    double kpow[20], gpow[20], kinv[20];
    kpow[0] = gpow[0] = kinv[0] = 1;
    for (int i = 1; i < 20; ++i) {
        kpow[i] = kpow[i - 1] * kap;
        gpow[i] = gpow[i - 1] * p.gamma;
        kinv[i] = kinv[i - 1] / kap;
    }

    double worst_gap = -1e300;
    std::size_t cap_violations = 0;
    for (std::size_t code = 0; code < total; ++code) {
        // two bits per free position: x bit and y bit; jumps where they differ
        int sig[16], ybit[16], nsig = 0;
        int alpha[16], nalpha = 0;
        sig[nsig] = 1;
        ybit[nsig++] = 1;  // y1=1, x1=0
        sig[nsig] = 2;
        ybit[nsig++] = 1;  // forced second jump (macroscopic-style prefix)
        std::size_t c = code;
        for (int pos = 3; pos <= depth; ++pos, c >>= 2) {
            int xb = c & 1, yb = (c >> 1) & 1;
            if (xb != yb) {
                sig[nsig] = pos;
                ybit[nsig++] = yb;
            } else if (xb == 1) {
                alpha[nalpha++] = pos;
            }
        }
        if (nsig <= 2) continue;
        double tail = 0.0;
        for (int l = 2; l < nsig; ++l) {
            int s = sig[l];
            double bonus = 0.0;
            for (int q = 0; q < nalpha && alpha[q] <= s; ++q) bonus += kinv[alpha[q]];
            double bracket = a + 2.0 * kpow[s] * bonus;
            if (bracket > a * (3 + kap - 2 * kpow[2 * ((s - 4) / 2 + 1)]) / (1 + kap) + 1e-12)
                ++cap_violations;
            tail += (ybit[l] ? 1.0 : -1.0) * gpow[s] * bracket;
        }
        double bound = gpow[sig[2]] / (1 - p.gamma) * capfac;
        worst_gap = std::max(worst_gap, std::abs(tail) - bound);
    }
    CHECK(worst_gap <= 0.0);
    CHECK(cap_violations > 0);  // the printed per-term cap is not sharp-safe
}
