#include "takagi/rep.hpp"

#include <cmath>

namespace takagi {

JumpTimes backward_jumps(const BitString& xi, const BitString& eta) {
    if (xi.depth() != eta.depth()) throw std::domain_error("backward_jumps: depth mismatch");
    JumpTimes out;
    out.complete_to = static_cast<int>(xi.depth());
    for (std::size_t i = 0; i < xi.depth(); ++i)
        if (xi.bit(i) != eta.bit(i)) out.positions.push_back(static_cast<int>(i));
    return out;
}

ForwardJumps forward_jumps(const BitString& x, const BitString& y) {
    if (x.depth() != y.depth()) throw std::domain_error("forward_jumps: depth mismatch");
    ForwardJumps out;
    int d = static_cast<int>(x.depth());
    out.sigma.complete_to = d;
    out.alpha.complete_to = d;
    for (int i = 0; i < d; ++i) {
        if (x.bit(i) != y.bit(i)) out.sigma.positions.push_back(i + 1);
        if (x.bit(i) && y.bit(i)) out.alpha.positions.push_back(i + 1);
    }
    std::size_t a = 0;
    for (int s : out.sigma.positions) {
        while (a < out.alpha.positions.size() && out.alpha.positions[a] <= s) ++a;
        out.ones_before.push_back(static_cast<int>(a));
    }
    return out;
}

MacroscopicWitness macroscopic_witness(const BitString& x, const BitString& y) {
    ForwardJumps fj = forward_jumps(x, y);
    MacroscopicWitness w;
    const auto& s = fj.sigma.positions;
    if (s.empty()) return w;
    w.sigma1_is_one = s[0] == 1;
    w.x1_zero = x.bit(0) == 0;
    w.y1_one = y.bit(0) == 1;
    if (s.size() >= 2) {
        w.y_sigma2_one = y.bit(s[1] - 1) == 1;
        w.x_sigma2_zero = x.bit(s[1] - 1) == 0;
    }
    return w;
}

SeriesValue s_diff_rep(const BitString& xi, const BitString& eta, const Params& p) {
    if (xi.depth() < static_cast<std::size_t>(p.truncation))
        throw PrecisionError("s_diff_rep: register shallower than truncation");
    JumpTimes tau = backward_jumps(xi, eta);
    double sum = 0.0;
    for (int t : tau.positions) {
        if (t >= p.truncation) break;
        double term = 2.0 * std::pow(p.kappa, t + 1);
        sum -= xi.bit(t) ? term : -term;
    }
    double tail = 2.0 * std::pow(p.kappa, p.truncation + 1) / (1.0 - p.kappa);
    return {sum, tail};
}

SeriesValue s_oneterm_rep(const BitString& xi, const Params& p) {
    if (xi.depth() < static_cast<std::size_t>(p.truncation))
        throw PrecisionError("s_oneterm_rep: register shallower than truncation");
    double sum = p.kappa / (1.0 - p.kappa);
    for (std::size_t i = 0; i < static_cast<std::size_t>(p.truncation); ++i)
        if (xi.bit(i)) sum -= 2.0 * std::pow(p.kappa, static_cast<double>(i) + 1.0);
    double tail = std::pow(p.kappa, p.truncation + 1) / (1.0 - p.kappa) +
                  2.0 * std::pow(p.kappa, p.truncation + 1) / (1.0 - p.kappa);
    return {sum, tail};
}

namespace {

// Shared jump loop. s_at_xi is the stable-series value inserted for
// kappa^sigma * S(.); the split form passes S(0) here and accounts for the
// xi-dependence in the drift term.
double jump_series_sum(const BitString& x, const BitString& y, const Params& p,
                       double s_value, int sigma_cut) {
    double sum = 0.0;
    for (int i = 0; i < sigma_cut; ++i) {
        if (x.bit(i) == y.bit(i)) continue;
        int sigma = i + 1;
        double t = x.dropped(sigma).value();
        double bracket = p.kappa * (1.0 - 2.0 * t);
        double km = p.kappa;
        for (int m = 2; m <= sigma; ++m) {
            km *= p.kappa;
            bracket += y.bit(sigma - m) ? -km : km;
        }
        bracket -= std::pow(p.kappa, sigma) * s_value;
        double term = std::pow(p.gamma, sigma) * bracket;
        sum += y.bit(i) ? term : -term;
    }
    return sum;
}

double jump_series_tail(const Params& p, int sigma_cut, int depth) {
    // |bracket| <= kappa (1 + kappa) / (1 - kappa); no jumps exist past the
    // register depth, the cut only matters when it is shallower.
    double tail = std::pow(p.kappa, p.truncation + 1) / (1.0 - p.kappa);
    if (sigma_cut < depth) {
        double cap = p.kappa * (1.0 + p.kappa) / (1.0 - p.kappa);
        tail += cap * std::pow(p.gamma, sigma_cut + 1) / (1.0 - p.gamma);
    }
    return tail;
}

}  // namespace

SeriesValue h_diff_rep(const BitString& xi, const BitString& x, const BitString& y,
                       const Params& p) {
    if (x.depth() != y.depth()) throw std::domain_error("h_diff_rep: depth mismatch");
    SeriesValue s = stable_series(xi, p);
    int depth = static_cast<int>(x.depth());
    int cut = std::min(depth, p.truncation);
    double sum = jump_series_sum(x, y, p, s.value, cut);
    return {sum, jump_series_tail(p, cut, depth)};
}

HDiffParts h_diff_simple_rep(const BitString& xi, const BitString& x, const BitString& y,
                             const Params& p) {
    if (x.depth() != y.depth()) throw std::domain_error("h_diff_simple_rep: depth mismatch");
    SeriesValue s_xi = stable_series(xi, p);
    SeriesValue s_zero = stable_series(BitString::zeros(xi.depth()), p);
    int depth = static_cast<int>(x.depth());
    int cut = std::min(depth, p.truncation);

    HDiffParts out;
    out.jump_series = jump_series_sum(x, y, p, s_zero.value, cut);
    out.drift_term = -(y.value() - x.value()) * (s_xi.value - s_zero.value);
    out.total = {out.jump_series + out.drift_term, jump_series_tail(p, cut, depth)};
    return out;
}

namespace {

int checked_sigma(const JumpTimes& sigma, int ell, int n_prefix) {
    if (ell <= n_prefix || ell > static_cast<int>(sigma.positions.size()))
        throw std::domain_error("need n_prefix < ell <= #jumps");
    for (int i = 0; i < n_prefix; ++i)
        if (sigma.positions[i] != i + 1)
            throw std::domain_error("hypothesis sigma_1..sigma_n = 1..n violated");
    return sigma.positions[ell - 1];
}

}  // namespace

double remainder_bound(const JumpTimes& sigma, int ell, int n_prefix, const Params& p) {
    int s = checked_sigma(sigma, ell, n_prefix);
    double a = p.kappa / (1.0 - p.kappa);
    return std::pow(p.gamma, s) / (1.0 - p.gamma) * a * (3.0 + p.kappa) / (1.0 + p.kappa);
}

double term_cap(const JumpTimes& sigma, int ell, int n_prefix, const Params& p) {
    int s = checked_sigma(sigma, ell, n_prefix);
    double a = p.kappa / (1.0 - p.kappa);
    int num = s - n_prefix - 2;  // can be -1 when sigma_ell = n_prefix + 1
    int half = num >= 0 ? num / 2 : -((-num + 1) / 2);
    int e = 2 * (half + 1);
    return a * (3.0 + p.kappa - 2.0 * std::pow(p.kappa, e)) / (1.0 + p.kappa);
}

}  // namespace takagi
