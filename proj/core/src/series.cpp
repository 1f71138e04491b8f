#include "takagi/series.hpp"

#include <cmath>
#include <cstdint>

namespace takagi {

Params Params::from_gamma(double gamma, int truncation, int depth) {
    if (!(gamma > 0.5 && gamma < 1.0)) throw std::domain_error("gamma must lie in (1/2, 1)");
    if (truncation < 1 || depth < truncation)
        throw std::domain_error("need depth >= truncation >= 1");
    Params p;
    p.gamma = gamma;
    p.kappa = 1.0 / (2.0 * gamma);
    p.truncation = truncation;
    p.depth = depth;
    return p;
}

Params Params::from_kappa(double kappa, int truncation, int depth) {
    if (!(kappa > 0.5 && kappa < 1.0)) throw std::domain_error("kappa must lie in (1/2, 1)");
    return from_gamma(1.0 / (2.0 * kappa), truncation, depth);
}

SeriesValue takagi_curve(const BitString& x, const Params& p) {
    // 2^n x mod 1 read straight off the register; terms beyond the depth vanish.
    double sum = 0.0;
    double g = 1.0;
    std::size_t d = x.depth();
    for (int n = 0; n <= p.truncation; ++n, g *= p.gamma) {
        if (static_cast<std::size_t>(n) >= d) break;
        double v = 0.0;
        for (std::size_t i = d; i-- > static_cast<std::size_t>(n);) v = (v + x.bit(i)) * 0.5;
        sum += g * std::min(v, 1.0 - v);
    }
    double tail = 0.5 * std::pow(p.gamma, p.truncation + 1) / (1.0 - p.gamma);
    return {sum, tail};
}

double takagi_point(double x, const Params& p) {
    double sum = 0.0;
    double g = 1.0;
    double v = x - std::floor(x);
    for (int n = 0; n <= p.truncation; ++n, g *= p.gamma) {
        sum += g * std::min(v, 1.0 - v);
        v *= 2.0;
        if (v >= 1.0) v -= 1.0;
    }
    return sum;
}

SeriesValue stable_series(const BitString& xi, const Params& p) {
    if (xi.depth() < static_cast<std::size_t>(p.truncation))
        throw PrecisionError("stable_series: register shallower than truncation");
    double sum = 0.0;
    double k = 1.0;
    for (int n = 1; n <= p.truncation; ++n) {
        k *= p.kappa;
        sum += xi.bit(n - 1) ? -k : k;
    }
    double tail = std::pow(p.kappa, p.truncation + 1) / (1.0 - p.kappa);
    return {sum, tail};
}

double stable_series_exact(const BitString& xi, double kappa) {
    double sum = 0.0;
    double k = 1.0;
    for (std::size_t n = 0; n < xi.depth(); ++n) {
        k *= kappa;
        sum += xi.bit(n) ? -k : k;
    }
    sum += k * kappa / (1.0 - kappa);  // all-zero continuation
    return sum;
}

SeriesValue bridge(const BitString& xi, const BitString& x, const Params& p) {
    SeriesValue t = takagi_curve(x, p);
    SeriesValue s = stable_series(xi, p);
    return {t.value - x.value() * s.value, t.tail_bound + s.tail_bound};
}

SeriesValue bridge_series(const BitString& xi, const BitString& x, const Params& p) {
    std::size_t n = static_cast<std::size_t>(p.truncation);
    if (xi.depth() < n || x.depth() < n)
        throw PrecisionError("bridge_series: budgets do not cover the truncation both ways");

    // Expanding side: sum_{n>=0} gamma^n [tent(2^n x) - tent(0)] is the curve itself.
    SeriesValue t = takagi_curve(x, p);
    double sum = t.value;

    // Contracting side with a sign opposite to the expanding one, so that the
    // total telescopes against the closed form T(x) - x S(xi). Iterates
    // B2^k(xi, x) and B2^k(xi, 0) share the incremental recurrence
    // v_k = (xi_{-(k-1)} + v_{k-1}) / 2.
    double vx = x.value();
    double v0 = 0.0;
    double ginv = 1.0;
    for (std::size_t k = 1; k <= n; ++k) {
        int b = xi.bit(k - 1);
        vx = (b + vx) * 0.5;
        v0 = (b + v0) * 0.5;
        ginv /= p.gamma;
        sum -= ginv * (tent(vx) - tent(v0));
    }
    double tail = t.tail_bound + std::pow(p.kappa, p.truncation + 1) / (1.0 - p.kappa);
    return {sum, tail};
}

SeriesValue jump_factor(const BitString& x, const Params& p) {
    double v = x.value();
    double sum = 0.0;
    double k = 1.0;
    double hi = (1.0 + v) * 0.5;
    double lo = v * 0.5;
    for (int m = 0; m <= p.truncation; ++m, k *= p.kappa) {
        sum += k * (tent_slope(hi) - tent_slope(lo));
        hi *= 0.5;
        lo *= 0.5;
    }
    double tail = 2.0 * std::pow(p.kappa, p.truncation + 1) / (1.0 - p.kappa);
    return {sum, tail};
}

std::vector<Residual> scaling_checks(const BitString& xi, const BitString& x, const Params& p) {
    if (xi.depth() < static_cast<std::size_t>(p.truncation) + 1)
        throw PrecisionError("scaling_checks: need one spare forward step in xi");
    if (x.depth() < 1) throw PrecisionError("scaling_checks: need one x bit");

    Phase ph{xi, x};
    Phase fwd = baker(ph, 1);
    double xprime = fwd.x.value();  // B2(xi, x)
    int xi0 = xi.bit(0);

    SeriesValue s_xi = stable_series(xi, p);
    SeriesValue s_fwd = stable_series(fwd.xi, p);

    std::vector<Residual> out;

    double s_res = std::abs(s_fwd.value - (2.0 * p.gamma * s_xi.value - tent_slope(xprime)));
    out.push_back({"s_scaling", s_res, s_fwd.tail_bound + 2.0 * p.gamma * s_xi.tail_bound});

    // One backward step applied to (xi, x) and to (0, x): the prepended x bit
    // is shared, so the difference contracts by exactly kappa.
    BitString zero = BitString::zeros(xi.depth());
    BitString bxi = xi.pushed(x.bit(0));
    BitString bz = zero.pushed(x.bit(0));
    SeriesValue s_bxi = stable_series(bxi, p);
    SeriesValue s_bz = stable_series(bz, p);
    SeriesValue s_zero = stable_series(zero, p);
    double g_res =
        std::abs((s_bxi.value - s_bz.value) - p.kappa * (s_xi.value - s_zero.value));
    double g_bound = s_bxi.tail_bound + s_bz.tail_bound +
                     p.kappa * (s_xi.tail_bound + s_zero.tail_bound);
    out.push_back({"g_diff_scaling", g_res, g_bound});

    SeriesValue h_here = bridge(xi, x, p);
    SeriesValue h_fwd = bridge(fwd.xi, fwd.x, p);
    double h_rhs =
        p.gamma * h_here.value + 2.0 * tent(xprime) - 0.5 * xi0 * (s_fwd.value + 1.0);
    double h_res = std::abs(h_fwd.value - h_rhs);
    double h_bound =
        h_fwd.tail_bound + p.gamma * h_here.tail_bound + 0.5 * s_fwd.tail_bound;
    out.push_back({"h_scaling", h_res, h_bound});

    SeriesValue t_here = takagi_curve(x, p);
    SeriesValue t_fwd = takagi_curve(fwd.x, p);
    double a_res = std::abs(t_fwd.value - (tent(xprime) + p.gamma * t_here.value));
    out.push_back({"attractor", a_res, t_fwd.tail_bound + p.gamma * t_here.tail_bound});

    return out;
}

double holder_slope(double gamma, int grid_log2, int k_lo, int k_hi) {
    if (k_hi > grid_log2 || k_lo < 1 || k_lo > k_hi)
        throw std::domain_error("holder_slope: bad k range");
    std::size_t n = std::size_t{1} << grid_log2;
    std::vector<double> t(n);
    for (std::size_t j = 0; j < n; ++j) {
        // exact finite sum on the dyadic grid
        double sum = 0.0;
        double g = 1.0;
        std::uint64_t r = static_cast<std::uint64_t>(j) << (64 - grid_log2);
        for (int m = 0; m < grid_log2; ++m, g *= gamma) {
            double v = static_cast<double>(r >> 11) * 0x1.0p-53;
            sum += g * std::min(v, 1.0 - v);
            r <<= 1;
        }
        t[j] = sum;
    }
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int cnt = 0;
    for (int k = k_lo; k <= k_hi; ++k) {
        std::size_t step = n >> k;
        double m = 0.0;
        for (std::size_t j = 0; j + step < n; ++j)
            m = std::max(m, std::abs(t[j + step] - t[j]));
        double xk = -static_cast<double>(k);
        double yk = std::log2(m);
        sx += xk;
        sy += yk;
        sxx += xk * xk;
        sxy += xk * yk;
        ++cnt;
    }
    return (cnt * sxy - sx * sy) / (cnt * sxx - sx * sx);
}

}  // namespace takagi
