#include "takagi/measures.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "takagi/parallel.hpp"

namespace takagi {

namespace {

constexpr std::size_t kChunk = 1 << 14;

// 64-bit register views: bit i (0-based, MSB first) of x in [0,1) is
// (reg >> (63 - i)) & 1, value = reg / 2^64.
double reg_value(std::uint64_t r) { return static_cast<double>(r >> 11) * 0x1.0p-53; }

struct RegEval {
    double gamma, kappa;
    int terms;  // min(truncation, 64)
    double kpow[65];
    double gpow[65];

    explicit RegEval(const Params& p) : gamma(p.gamma), kappa(p.kappa) {
        terms = p.truncation < 64 ? p.truncation : 64;
        kpow[0] = gpow[0] = 1.0;
        for (int i = 1; i <= 64; ++i) {
            kpow[i] = kpow[i - 1] * kappa;
            gpow[i] = gpow[i - 1] * gamma;
        }
    }

    double stable(std::uint64_t reg) const {
        double s = 0.0;
        for (int n = 1; n <= terms; ++n) {
            bool bit = (reg >> (64 - n)) & 1;
            s += bit ? -kpow[n] : kpow[n];
        }
        return s;
    }

    double curve(std::uint64_t reg) const {
        double s = 0.0;
        std::uint64_t r = reg;
        for (int n = 0; n <= terms && n < 64; ++n) {
            double v = reg_value(r);
            s += gpow[n] * (v < 0.5 ? v : 1.0 - v);
            r <<= 1;
        }
        return s;
    }

    double bridge_diff(std::uint64_t rx, std::uint64_t ry, std::uint64_t rxi) const {
        double dy = reg_value(ry) - reg_value(rx);
        return curve(ry) - curve(rx) - dy * stable(rxi);
    }
};

bool half_apart(std::uint64_t a, std::uint64_t b) {
    std::uint64_t d = a > b ? a - b : b - a;
    return d > (std::uint64_t{1} << 63);
}

struct HistogramAccumulator {
    std::vector<std::uint64_t> counts;
    HistogramAccumulator() = default;
    explicit HistogramAccumulator(std::size_t bins) : counts(bins, 0) {}
};

EmpiricalMeasure finish_histogram(std::vector<std::uint64_t> counts, double lo, double hi,
                                  std::uint64_t n, std::uint64_t seed) {
    EmpiricalMeasure m;
    std::size_t bins = counts.size();
    m.bin_edges.resize(bins + 1);
    for (std::size_t b = 0; b <= bins; ++b)
        m.bin_edges[b] = lo + (hi - lo) * static_cast<double>(b) / static_cast<double>(bins);
    m.mass.resize(bins);
    m.n_samples = n;
    m.seed = seed;
    double se = 0.0;
    for (std::size_t b = 0; b < bins; ++b) {
        double p = static_cast<double>(counts[b]) / static_cast<double>(n);
        m.mass[b] = p;
        se = std::max(se, std::sqrt(p * (1.0 - p) / static_cast<double>(n)));
    }
    m.stderr_bound = se;
    return m;
}

// Value-to-bin sampler shared by the three measures. values(lo..hi) yields
// (value, keep); out-of-support kept values abort.
template <typename Gen>
EmpiricalMeasure histogram_sample(std::uint64_t n, std::uint64_t seed, int bins, double lo,
                                  double hi, Gen gen) {
    if (n < 1) throw std::domain_error("need n >= 1");
    if (bins < 1) throw std::domain_error("need bins >= 1");
    double width = (hi - lo) / bins;
    auto acc = parallel_map_fold<HistogramAccumulator>(
        n, kChunk, HistogramAccumulator(static_cast<std::size_t>(bins)),
        [&](std::size_t i0, std::size_t i1) {
            HistogramAccumulator h(static_cast<std::size_t>(bins));
            for (std::size_t i = i0; i < i1; ++i) {
                auto [v, keep] = gen(static_cast<std::uint64_t>(i));
                if (!keep) continue;
                if (v < lo || v > hi)
                    throw std::runtime_error("sample " + std::to_string(v) +
                                             " escaped the certified support [" +
                                             std::to_string(lo) + ", " + std::to_string(hi) + "]");
                auto idx = static_cast<std::size_t>((v - lo) / width);
                if (idx >= static_cast<std::size_t>(bins)) idx = bins - 1;
                ++h.counts[idx];
            }
            return h;
        },
        [](HistogramAccumulator a, HistogramAccumulator b) {
            for (std::size_t i = 0; i < a.counts.size(); ++i) a.counts[i] += b.counts[i];
            return a;
        });
    return finish_histogram(std::move(acc.counts), lo, hi, n, seed);
}

}  // namespace

double EmpiricalMeasure::total_mass() const {
    double s = 0.0;
    for (double v : mass) s += v;
    return s;
}

double sbr_support_radius(const Params& p) {
    return p.kappa / (1.0 - p.kappa) * (1.0 + 1e-12);
}

double rho_support_radius(const Params& p) { return 2.0 * sbr_support_radius(p); }

double chi_support_radius(const Params& p) {
    return 0.5 / (1.0 - p.gamma) + p.kappa / (1.0 - p.kappa) * (1.0 + 1e-12);
}

EmpiricalMeasure sample_sbr_marginal(const Params& p, std::uint64_t n, std::uint64_t seed,
                                     int bins) {
    RegEval ev(p);
    CounterRng rng{seed};
    double l = sbr_support_radius(p);
    return histogram_sample(n, seed, bins, -l, l, [&](std::uint64_t i) {
        return std::pair{ev.stable(rng.word(4 * i)), true};
    });
}

EmpiricalMeasure sample_rho(const Params& p, std::uint64_t n, std::uint64_t seed, int bins,
                            bool restrict_macroscopic) {
    RegEval ev(p);
    CounterRng rng{seed};
    double l = rho_support_radius(p);
    return histogram_sample(n, seed, bins, -l, l, [&](std::uint64_t i) {
        std::uint64_t rxi = rng.word(4 * i);
        std::uint64_t reta = rng.word(4 * i + 1);
        (void)rng.word(4 * i + 2);  // the x coordinate: sampled, never read by S
        bool keep = !restrict_macroscopic || half_apart(rxi, reta);
        return std::pair{ev.stable(rxi) - ev.stable(reta), keep};
    });
}

EmpiricalMeasure sample_chi(const Params& p, std::uint64_t n, std::uint64_t seed, int bins,
                            bool restrict_macroscopic) {
    RegEval ev(p);
    CounterRng rng{seed};
    double l = chi_support_radius(p);
    return histogram_sample(n, seed, bins, -l, l, [&](std::uint64_t i) {
        std::uint64_t rx = rng.word(4 * i);
        std::uint64_t ry = rng.word(4 * i + 1);
        std::uint64_t rxi = rng.word(4 * i + 2);
        bool keep = !restrict_macroscopic || half_apart(rx, ry);
        return std::pair{ev.bridge_diff(ry, rx, rxi), keep};
    });
}

namespace {

struct TelescopeAccumulator {
    // per interval: sums of the per-sample statistic g and of g^2, plus the
    // raw lhs/rhs sums for reporting
    std::vector<double> g, g2, lhs, rhs;
    TelescopeAccumulator() = default;
    explicit TelescopeAccumulator(std::size_t k) : g(k, 0), g2(k, 0), lhs(k, 0), rhs(k, 0) {}
    void merge(const TelescopeAccumulator& o) {
        for (std::size_t i = 0; i < g.size(); ++i) {
            g[i] += o.g[i];
            g2[i] += o.g2[i];
            lhs[i] += o.lhs[i];
            rhs[i] += o.rhs[i];
        }
    }
};

// One pass over the sample stream. value(i) is the increment, macro(i) the
// leading-bit restriction, dil the per-step dilation (kappa or gamma).
template <typename Value, typename Macro>
std::vector<TelescopeRow> telescope_check(std::span<const std::pair<double, double>> intervals,
                                          std::uint64_t n, int terms, double dil, Value value,
                                          Macro macro) {
    if (terms < 1) throw std::domain_error("need terms >= 1");
    std::size_t k = intervals.size();
    std::vector<double> dpow(static_cast<std::size_t>(terms));
    std::vector<double> wpow(static_cast<std::size_t>(terms));
    dpow[0] = 1.0;
    wpow[0] = 1.0;
    for (int m = 1; m < terms; ++m) {
        dpow[m] = dpow[m - 1] * dil;
        wpow[m] = wpow[m - 1] * 0.5;
    }

    auto acc = parallel_map_fold<TelescopeAccumulator>(
        n, kChunk, TelescopeAccumulator(k),
        [&](std::size_t i0, std::size_t i1) {
            TelescopeAccumulator a(k);
            for (std::size_t i = i0; i < i1; ++i) {
                double v = value(static_cast<std::uint64_t>(i));
                bool mac = macro(static_cast<std::uint64_t>(i));
                for (std::size_t j = 0; j < k; ++j) {
                    auto [lo, hi] = intervals[j];
                    double direct = (v >= lo && v <= hi) ? 1.0 : 0.0;
                    double expand = 0.0;
                    if (mac) {
                        for (int m = 0; m < terms; ++m) {
                            double vd = v * dpow[m];
                            if (vd >= lo && vd <= hi) expand += wpow[m];
                        }
                    }
                    double gi = expand - direct;
                    a.g[j] += gi;
                    a.g2[j] += gi * gi;
                    a.lhs[j] += direct;
                    a.rhs[j] += expand;
                }
            }
            return a;
        },
        [](TelescopeAccumulator a, TelescopeAccumulator b) {
            a.merge(b);
            return a;
        });

    std::vector<TelescopeRow> rows(k);
    double dn = static_cast<double>(n);
    for (std::size_t j = 0; j < k; ++j) {
        TelescopeRow& r = rows[j];
        r.a = intervals[j].first;
        r.b = intervals[j].second;
        r.lhs = acc.lhs[j] / dn;
        r.rhs = acc.rhs[j] / dn;
        double mean = acc.g[j] / dn;
        double var = (acc.g2[j] - dn * mean * mean) / (dn - 1.0);
        double se = std::sqrt(std::max(var, 0.0) / dn);
        r.discrepancy = std::abs(mean);
        r.slack = std::pow(2.0, -terms) + 3.0 * se;
        r.pass = r.discrepancy <= r.slack;
    }
    return rows;
}

}  // namespace

std::vector<TelescopeRow> telescope_rho_check(const Params& p,
                                              std::span<const std::pair<double, double>> intervals,
                                              std::uint64_t n, std::uint64_t seed, int terms) {
    RegEval ev(p);
    CounterRng rng{seed};
    return telescope_check(
        intervals, n, terms, p.kappa,
        [&](std::uint64_t i) { return ev.stable(rng.word(4 * i)) - ev.stable(rng.word(4 * i + 1)); },
        [&](std::uint64_t i) { return ((rng.word(4 * i) ^ rng.word(4 * i + 1)) >> 63) != 0; });
}

std::vector<TelescopeRow> telescope_chi_check(const Params& p,
                                              std::span<const std::pair<double, double>> intervals,
                                              std::uint64_t n, std::uint64_t seed, int terms) {
    RegEval ev(p);
    CounterRng rng{seed};
    return telescope_check(
        intervals, n, terms, p.gamma,
        [&](std::uint64_t i) {
            return ev.bridge_diff(rng.word(4 * i), rng.word(4 * i + 1), rng.word(4 * i + 2));
        },
        [&](std::uint64_t i) { return ((rng.word(4 * i) ^ rng.word(4 * i + 1)) >> 63) != 0; });
}

std::vector<std::pair<double, double>> default_interval_family(double support) {
    const double f[16][2] = {
        {-1.0, 1.0},       {0.0, 1.0},        {-1.0, 0.0},       {-0.25, 0.25},
        {0.0625, 0.25},    {-0.5, -0.1875},   {0.125, 0.5},      {0.25, 0.75},
        {-0.75, -0.25},    {-0.025, 0.025},   {0.1875, 0.3125},  {-0.3125, -0.1875},
        {0.5, 1.0},        {-1.0, -0.5},      {-0.0625, 0.1875}, {-0.11, 0.11},
    };
    std::vector<std::pair<double, double>> out;
    out.reserve(16);
    for (auto& ab : f) out.emplace_back(ab[0] * support, ab[1] * support);
    return out;
}

namespace {

struct CharAccumulator {
    std::vector<double> re, im;
    CharAccumulator() = default;
    explicit CharAccumulator(std::size_t g) : re(g, 0), im(g, 0) {}
};

}  // namespace

CharFunctionTable char_function(std::span<const double> samples, double u_max, int grid_points) {
    if (samples.empty()) throw std::domain_error("char_function: empty sample set");
    if (!(u_max > 0)) throw std::domain_error("char_function: u_max must be positive");
    if (grid_points < 3) grid_points = 3;
    int half = grid_points / 2;
    std::size_t g = static_cast<std::size_t>(2 * half + 1);  // symmetric, includes 0
    double du = u_max / half;

    auto acc = parallel_map_fold<CharAccumulator>(
        samples.size(), kChunk, CharAccumulator(g),
        [&](std::size_t i0, std::size_t i1) {
            CharAccumulator a(g);
            for (std::size_t i = i0; i < i1; ++i) {
                double h = samples[i];
                // rotate e^{i u h} across the grid from u = -u_max
                double cr = std::cos(-u_max * h), ci = std::sin(-u_max * h);
                double sr = std::cos(du * h), si = std::sin(du * h);
                for (std::size_t j = 0; j < g; ++j) {
                    a.re[j] += cr;
                    a.im[j] += ci;
                    double nr = cr * sr - ci * si;
                    ci = cr * si + ci * sr;
                    cr = nr;
                }
            }
            return a;
        },
        [](CharAccumulator a, CharAccumulator b) {
            for (std::size_t i = 0; i < a.re.size(); ++i) {
                a.re[i] += b.re[i];
                a.im[i] += b.im[i];
            }
            return a;
        });

    CharFunctionTable t;
    t.u_grid.resize(g);
    t.phi_sq.resize(g);
    t.cumulative.resize(g);
    double dn = static_cast<double>(samples.size());
    for (std::size_t j = 0; j < g; ++j) {
        t.u_grid[j] = (static_cast<double>(j) - half) * du;
        double re = acc.re[j] / dn, im = acc.im[j] / dn;
        t.phi_sq[j] = re * re + im * im;
    }
    t.phi_sq[static_cast<std::size_t>(half)] = 1.0;  // exact at u = 0
    t.cumulative[0] = 0.0;
    for (std::size_t j = 1; j < g; ++j)
        t.cumulative[j] = t.cumulative[j - 1] + 0.5 * (t.phi_sq[j] + t.phi_sq[j - 1]) * du;
    return t;
}

std::vector<double> bridge_samples(const BitString& xi, const Params& p, std::uint64_t grid) {
    if (grid < 2) throw std::domain_error("bridge_samples: grid must be >= 2");
    double s = stable_series(xi, p).value;
    std::vector<double> out(grid);
    parallel_map_fold<int>(
        grid, kChunk, 0,
        [&](std::size_t i0, std::size_t i1) {
            for (std::size_t j = i0; j < i1; ++j) {
                double x = static_cast<double>(j) / static_cast<double>(grid);
                out[j] = takagi_point(x, p) - x * s;
            }
            return 0;
        },
        [](int, int) { return 0; });
    return out;
}

namespace {

double l2_density_estimate(std::span<const double> values, double lo, double hi, int bins) {
    std::vector<std::uint64_t> counts(static_cast<std::size_t>(bins), 0);
    double width = (hi - lo) / bins;
    for (double v : values) {
        auto idx = static_cast<std::size_t>((v - lo) / width);
        if (idx >= counts.size()) idx = counts.size() - 1;
        ++counts[idx];
    }
    double n = static_cast<double>(values.size());
    double sum = 0.0;
    for (auto c : counts) {
        double m = static_cast<double>(c) / n;
        sum += m * m / width;
    }
    return std::sqrt(sum);
}

}  // namespace

OccupationReport occupation_local_time(const BitString& xi, const Params& p, std::uint64_t grid,
                                       int bins) {
    if (grid < 2) throw std::domain_error("occupation_local_time: grid must be >= 2");
    std::vector<double> values = bridge_samples(xi, p, grid);
    double b = chi_support_radius(p);

    OccupationReport rep;
    rep.hist = histogram_sample(grid, 0, bins, -b, b, [&](std::uint64_t idx) {
        return std::pair{values[idx], true};
    });
    rep.l2_density = l2_density_estimate(values, -b, b, bins);
    rep.l2_refined = l2_density_estimate(values, -b, b, 2 * bins);
    rep.refine_ratio = rep.l2_refined / rep.l2_density;
    return rep;
}

}  // namespace takagi
