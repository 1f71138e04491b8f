// Command-line front end: every subcommand writes its artifacts to files and
// prints a single JSON summary line on stdout. Exit codes: 0 ok, 1 at least
// one residual/check exceeded its certified bound, 2 usage error.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "takagi/io.hpp"
#include "takagi/measures.hpp"
#include "takagi/parallel.hpp"
#include "takagi/rep.hpp"
#include "takagi/rng.hpp"
#include "takagi/thresholds.hpp"

using json = nlohmann::json;
using namespace takagi;

namespace {

struct RunConfig {
    std::optional<double> gamma;
    std::optional<double> kappa;
    int depth = 64;
    int truncation = 48;
    std::uint64_t samples = 1000000;
    bool samples_given = false;
    std::uint64_t trials = 0;  // verify alias for samples
    std::uint64_t seed = 42;
    int bins = 512;
    int points = 4096;
    std::uint64_t grid = std::uint64_t{1} << 20;
    double tol = 1e-9;
    int terms = 30;
    std::string suite = "all";
    std::string xi;
    std::string x;
    std::string out;

    Params params() const {
        if (kappa) return Params::from_kappa(*kappa, truncation, depth);
        return Params::from_gamma(gamma.value_or(0.6), truncation, depth);
    }

    BitString xi_bits() const {
        if (xi.empty()) return BitString::zeros(static_cast<std::size_t>(depth));
        return BitString::parse(xi);
    }
};

void add_common(CLI::App* cmd, RunConfig& cfg) {
    auto* g = cmd->add_option("--gamma", cfg.gamma, "roughness parameter in (1/2,1)");
    auto* k = cmd->add_option("--kappa", cfg.kappa, "dual parameter 1/(2 gamma)");
    g->excludes(k);
    k->excludes(g);
    cmd->add_option("--depth", cfg.depth, "register depth");
    cmd->add_option("--truncation", cfg.truncation, "series truncation");
    cmd->add_option("--samples", cfg.samples, "Monte Carlo sample count")
        ->each([&cfg](const std::string&) { cfg.samples_given = true; });
    cmd->add_option("--seed", cfg.seed, "RNG seed");
    cmd->add_option("--bins", cfg.bins, "histogram bins");
    cmd->add_option("--points", cfg.points, "grid points for curve emission");
    cmd->add_option("--grid", cfg.grid, "occupation grid size");
    cmd->add_option("--tol", cfg.tol, "root-finding tolerance");
    cmd->add_option("--terms", cfg.terms, "telescoping terms");
    cmd->add_option("--xi", cfg.xi, "backward register as a 0/1 string, MSB first");
    cmd->add_option("--x", cfg.x, "forward register as a 0/1 string, MSB first");
    cmd->add_option("--out", cfg.out, "output path");
}

double wall_ms_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
        .count();
}

void write_sidecar(const std::string& out, const RunConfig& cfg, const Params& p,
                   std::uint64_t n, double wall_ms) {
    json j{{"seed", cfg.seed},  {"gamma", p.gamma},         {"depth", p.depth},
           {"truncation", p.truncation}, {"n_samples", n}, {"wall_ms", wall_ms}};
    std::ofstream f(out + ".json", std::ios::binary);
    f << j.dump() << "\n";
}

void summary(const json& j) { std::cout << j.dump() << std::endl; }

json rows_to_json(const std::vector<TelescopeRow>& rows) {
    json arr = json::array();
    for (const auto& r : rows)
        arr.push_back({{"a", r.a},
                       {"b", r.b},
                       {"lhs", r.lhs},
                       {"rhs", r.rhs},
                       {"discrepancy", r.discrepancy},
                       {"slack", r.slack},
                       {"pass", r.pass}});
    return arr;
}

int cmd_curve(const RunConfig& cfg) {
    auto t0 = std::chrono::steady_clock::now();
    Params p = cfg.params();
    std::string out = cfg.out.empty() ? "curve.csv" : cfg.out;
    write_curve_csv(out, cfg.xi_bits(), p, cfg.points);
    double ms = wall_ms_since(t0);
    write_sidecar(out, cfg, p, static_cast<std::uint64_t>(cfg.points), ms);
    summary({{"command", "curve"}, {"status", "ok"}, {"out", out}, {"points", cfg.points},
             {"gamma", p.gamma}, {"wall_ms", ms}});
    return 0;
}

int cmd_thresholds(const RunConfig& cfg) {
    auto t0 = std::chrono::steady_clock::now();
    json cases = json::array();
    double g0 = 1.0;
    for (const auto& c : positivity_cases()) {
        double r = case_threshold(c, cfg.tol);
        g0 = std::min(g0, r);
        cases.push_back({{"id", c.id}, {"paper_value", c.nominal}, {"computed_root", r}});
    }
    json doc{{"cases", cases}, {"gamma0", g0}};
    std::string out = cfg.out.empty() ? "thresholds.json" : cfg.out;
    std::ofstream f(out, std::ios::binary);
    f << doc.dump(2) << "\n";
    double ms = wall_ms_since(t0);
    summary({{"command", "thresholds"}, {"status", "ok"}, {"out", out}, {"gamma0", g0},
             {"wall_ms", ms}});
    return 0;
}

int cmd_transversality(const RunConfig& cfg) {
    auto t0 = std::chrono::steady_clock::now();
    // --depth selects the enumeration depth here, not the register depth
    int depth = std::min(cfg.depth, 16);
    Params p = cfg.kappa ? Params::from_kappa(*cfg.kappa)
                         : Params::from_gamma(cfg.gamma.value_or(0.6));
    Separation sep = empirical_separation(p.gamma, depth);
    double bound = transversality_bound(p.kappa);
    json doc{{"gamma", p.gamma},
             {"kappa", p.kappa},
             {"depth", depth},
             {"transversality_bound", bound},
             {"min_abs_s_diff", sep.min_abs_s_diff},
             {"min_abs_h_diff", sep.min_abs_h_diff},
             {"separation_bound", simple_separation_bound(p.gamma)},
             {"s_bound_holds", sep.min_abs_s_diff >= bound - 1e-12}};
    std::string out = cfg.out.empty() ? "transversality.json" : cfg.out;
    std::ofstream f(out, std::ios::binary);
    f << doc.dump(2) << "\n";
    double ms = wall_ms_since(t0);
    summary({{"command", "transversality"}, {"status", "ok"}, {"out", out},
             {"min_abs_s_diff", sep.min_abs_s_diff}, {"wall_ms", ms}});
    return 0;
}

int histogram_run(const char* name, const RunConfig& cfg,
                  EmpiricalMeasure (*sampler)(const Params&, std::uint64_t, std::uint64_t, int,
                                              bool),
                  bool with_hat) {
    auto t0 = std::chrono::steady_clock::now();
    Params p = cfg.params();
    std::string out = cfg.out.empty() ? std::string(name) + ".csv" : cfg.out;
    EmpiricalMeasure full = sampler(p, cfg.samples, cfg.seed, cfg.bins, false);
    write_histogram_csv(out, full);
    json j{{"command", name}, {"status", "ok"}, {"out", out},
           {"total_mass", full.total_mass()}, {"stderr_bound", full.stderr_bound}};
    if (with_hat) {
        std::string hat = out;
        auto dot = hat.rfind('.');
        hat.insert(dot == std::string::npos ? hat.size() : dot, "_hat");
        EmpiricalMeasure restricted = sampler(p, cfg.samples, cfg.seed, cfg.bins, true);
        write_histogram_csv(hat, restricted);
        j["out_hat"] = hat;
        j["hat_mass"] = restricted.total_mass();
    }
    double ms = wall_ms_since(t0);
    write_sidecar(out, cfg, p, cfg.samples, ms);
    j["wall_ms"] = ms;
    summary(j);
    return 0;
}

EmpiricalMeasure sbr_adapter(const Params& p, std::uint64_t n, std::uint64_t seed, int bins,
                             bool) {
    return sample_sbr_marginal(p, n, seed, bins);
}

int cmd_localtime(const RunConfig& cfg) {
    auto t0 = std::chrono::steady_clock::now();
    Params p = cfg.params();
    BitString xi = cfg.xi.empty()
                       ? [&] {
                             CounterRng rng{cfg.seed};
                             std::vector<std::uint8_t> bits(static_cast<std::size_t>(cfg.depth));
                             for (std::size_t i = 0; i < bits.size(); ++i)
                                 bits[i] = (rng.word(i) >> 63) & 1;
                             return BitString(bits);
                         }()
                       : BitString::parse(cfg.xi);
    OccupationReport rep = occupation_local_time(xi, p, cfg.grid, cfg.bins);
    std::string out = cfg.out.empty() ? "localtime.csv" : cfg.out;
    write_histogram_csv(out, rep.hist);
    double ms = wall_ms_since(t0);
    write_sidecar(out, cfg, p, cfg.grid, ms);
    bool stable = rep.refine_ratio >= 0.8 && rep.refine_ratio <= 1.25;
    summary({{"command", "localtime"}, {"status", stable ? "ok" : "unstable"}, {"out", out},
             {"xi", xi.str()}, {"l2_density", rep.l2_density}, {"l2_refined", rep.l2_refined},
             {"refine_ratio", rep.refine_ratio}, {"wall_ms", ms}});
    return stable ? 0 : 1;
}

int cmd_telescope(const RunConfig& cfg) {
    auto t0 = std::chrono::steady_clock::now();
    Params p = cfg.params();
    auto rho_iv = default_interval_family(rho_support_radius(p));
    auto chi_iv = default_interval_family(chi_support_radius(p));
    auto rho_rows = telescope_rho_check(p, rho_iv, cfg.samples, cfg.seed, cfg.terms);
    auto chi_rows = telescope_chi_check(p, chi_iv, cfg.samples, cfg.seed + 1, cfg.terms);
    bool ok = true;
    for (const auto& r : rho_rows) ok &= r.pass;
    for (const auto& r : chi_rows) ok &= r.pass;
    json doc{{"gamma", p.gamma}, {"terms", cfg.terms}, {"n_samples", cfg.samples},
             {"rho", rows_to_json(rho_rows)}, {"chi", rows_to_json(chi_rows)}};
    std::string out = cfg.out.empty() ? "telescope.json" : cfg.out;
    std::ofstream f(out, std::ios::binary);
    f << doc.dump(2) << "\n";
    double ms = wall_ms_since(t0);
    summary({{"command", "telescope"}, {"status", ok ? "ok" : "violated"}, {"out", out},
             {"wall_ms", ms}});
    return ok ? 0 : 1;
}

// ---- verify suites ----

std::uint64_t effective_trials(const RunConfig& cfg) {
    if (cfg.trials) return cfg.trials;
    if (cfg.samples_given) return cfg.samples;
    return 1000;  // keep the default all-suite run under a minute
}

struct CheckList {
    json checks = json::array();
    bool ok = true;

    void add(const std::string& name, double residual, double bound) {
        bool pass = residual <= bound;
        ok &= pass;
        checks.push_back(
            {{"check", name}, {"residual", residual}, {"bound", bound}, {"pass", pass}});
    }
};

void suite_attractor(const RunConfig& cfg, CheckList& list) {
    Params p = cfg.params();
    CounterRng rng{cfg.seed};
    std::uint64_t trials = effective_trials(cfg);
    double worst = 0, bound = 0;
    for (std::uint64_t i = 0; i < trials; ++i) {
        BitString xi = BitString::from_value(rng.uniform(2 * i), p.depth + 1);
        BitString x = BitString::from_value(rng.uniform(2 * i + 1), p.depth);
        auto rs = scaling_checks(xi, x, p);
        worst = std::max(worst, rs[3].residual);
        bound = rs[3].bound;
    }
    list.add("attractor", worst, bound);
}

void suite_scaling(const RunConfig& cfg, CheckList& list) {
    Params p = cfg.params();
    // with --xi/--x given, check exactly that phase instead of random trials
    if (!cfg.xi.empty() && !cfg.x.empty()) {
        for (const auto& r : scaling_checks(BitString::parse(cfg.xi), BitString::parse(cfg.x), p))
            list.add(r.name, r.residual, r.bound);
        return;
    }
    CounterRng rng{cfg.seed};
    std::uint64_t trials = effective_trials(cfg);
    double worst[4] = {0, 0, 0, 0};
    double bound[4] = {0, 0, 0, 0};
    const char* names[4] = {"s_scaling", "g_diff_scaling", "h_scaling", "attractor"};
    for (std::uint64_t i = 0; i < trials; ++i) {
        BitString xi = BitString::from_value(rng.uniform(2 * i), p.depth + 1);
        BitString x = BitString::from_value(rng.uniform(2 * i + 1), p.depth);
        auto rs = scaling_checks(xi, x, p);
        for (int r = 0; r < 4; ++r) {
            worst[r] = std::max(worst[r], rs[r].residual);
            bound[r] = rs[r].bound;
        }
    }
    for (int r = 0; r < 4; ++r) list.add(names[r], worst[r], bound[r]);
}

void suite_representations(const RunConfig& cfg, CheckList& list) {
    Params p = cfg.params();
    CounterRng rng{cfg.seed + 7};
    std::uint64_t trials = effective_trials(cfg);
    double w_s = 0, w_one = 0, w_h = 0, w_hs = 0;
    double b_s = 0, b_one = 0, b_h = 0, b_hs = 0;
    for (std::uint64_t i = 0; i < trials; ++i) {
        BitString xi = BitString::from_value(rng.uniform(4 * i), p.depth);
        BitString eta = BitString::from_value(rng.uniform(4 * i + 1), p.depth);
        BitString x = BitString::from_value(rng.uniform(4 * i + 2), p.depth);
        BitString y = BitString::from_value(rng.uniform(4 * i + 3), p.depth);
        SeriesValue s_xi = stable_series(xi, p), s_eta = stable_series(eta, p);
        SeriesValue sd = s_diff_rep(xi, eta, p);
        w_s = std::max(w_s, std::abs(sd.value - (s_xi.value - s_eta.value)));
        b_s = sd.tail_bound + s_xi.tail_bound + s_eta.tail_bound;
        SeriesValue so = s_oneterm_rep(xi, p);
        w_one = std::max(w_one, std::abs(so.value - s_xi.value));
        b_one = so.tail_bound + s_xi.tail_bound;
        SeriesValue hx = bridge(xi, x, p), hy = bridge(xi, y, p);
        SeriesValue hd = h_diff_rep(xi, x, y, p);
        w_h = std::max(w_h, std::abs(hd.value - (hy.value - hx.value)));
        b_h = hd.tail_bound + hx.tail_bound + hy.tail_bound;
        HDiffParts hs = h_diff_simple_rep(xi, x, y, p);
        w_hs = std::max(w_hs, std::abs(hs.total.value - hd.value));
        b_hs = hs.total.tail_bound + hd.tail_bound;
    }
    list.add("s_diff_rep", w_s, b_s);
    list.add("s_oneterm_rep", w_one, b_one);
    list.add("h_diff_rep", w_h, b_h);
    list.add("h_diff_simple_rep", w_hs, b_hs);
}

void suite_macroscopic(const RunConfig& cfg, CheckList& list) {
    int depth = std::min(cfg.depth, 12);
    std::size_t n = std::size_t{1} << depth;
    std::uint64_t bad_witness = 0, bad_alpha = 0;
    for (std::size_t ix = 0; ix < n; ++ix) {
        BitString x = BitString::from_value(static_cast<double>(ix) / static_cast<double>(n),
                                            static_cast<std::size_t>(depth));
        for (std::size_t iy = 0; iy < n; ++iy) {
            BitString y = BitString::from_value(static_cast<double>(iy) / static_cast<double>(n),
                                                static_cast<std::size_t>(depth));
            bool macro = static_cast<double>(iy) / n > static_cast<double>(ix) / n + 0.5;
            MacroscopicWitness w = macroscopic_witness(x, y);
            if (w.all() != macro) ++bad_witness;
            if (macro) {
                ForwardJumps fj = forward_jumps(x, y);
                if (!fj.alpha.positions.empty() && fj.alpha.positions[0] < 2) ++bad_alpha;
                for (std::size_t l = 0; l < fj.sigma.positions.size(); ++l) {
                    int r = fj.ones_before[l];
                    if (r > 0 && fj.alpha.positions[r - 1] > fj.sigma.positions[l] - 1)
                        ++bad_alpha;
                }
            }
        }
    }
    list.add("macroscopic_witness_iff", static_cast<double>(bad_witness), 0.0);
    list.add("alpha_interleaving", static_cast<double>(bad_alpha), 0.0);
}

void suite_telescoping(const RunConfig& cfg, CheckList& list) {
    Params p = cfg.params();
    std::uint64_t n = cfg.samples;  // statistical suite keeps the sample default
    auto rho_rows =
        telescope_rho_check(p, default_interval_family(rho_support_radius(p)), n, cfg.seed,
                            cfg.terms);
    auto chi_rows =
        telescope_chi_check(p, default_interval_family(chi_support_radius(p)), n, cfg.seed + 1,
                            cfg.terms);
    // worst per-row margin; the telescope subcommand prints every row
    double w_r = -1e300, w_c = -1e300;
    for (const auto& r : rho_rows) w_r = std::max(w_r, r.discrepancy - r.slack);
    for (const auto& r : chi_rows) w_c = std::max(w_c, r.discrepancy - r.slack);
    list.add("telescope_rho_worst_margin", w_r, 0.0);
    list.add("telescope_chi_worst_margin", w_c, 0.0);
}

int cmd_verify(const RunConfig& cfg) {
    auto t0 = std::chrono::steady_clock::now();
    CheckList list;
    const std::string& s = cfg.suite;
    if (s != "attractor" && s != "scaling" && s != "representations" && s != "macroscopic" &&
        s != "telescoping" && s != "all")
        throw CLI::ValidationError("--suite", "unknown suite " + s);
    if (s == "attractor") suite_attractor(cfg, list);
    if (s == "scaling" || s == "all") suite_scaling(cfg, list);
    if (s == "representations" || s == "all") suite_representations(cfg, list);
    if (s == "macroscopic" || s == "all") suite_macroscopic(cfg, list);
    if (s == "telescoping" || s == "all") suite_telescoping(cfg, list);
    double ms = wall_ms_since(t0);
    json doc{{"suite", s}, {"checks", list.checks}, {"pass", list.ok}, {"wall_ms", ms}};
    if (!cfg.out.empty()) {
        std::ofstream f(cfg.out, std::ios::binary);
        f << doc.dump(2) << "\n";
    }
    summary({{"command", "verify"}, {"suite", s}, {"status", list.ok ? "ok" : "violated"},
             {"checks", list.checks.size()}, {"wall_ms", ms}});
    return list.ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"numerical laboratory for Takagi-type curves, baker dynamics, invariant "
                 "measures and local times"};
    app.require_subcommand(1);

    RunConfig cfg;
    cfg.samples = 1000000;

    auto* curve = app.add_subcommand("curve", "emit x,T,H,S over a uniform grid");
    auto* verify = app.add_subcommand("verify", "run an identity suite");
    auto* thresholds = app.add_subcommand("thresholds", "reproduce the positivity thresholds");
    auto* transversality =
        app.add_subcommand("transversality", "exhaustive separation minima vs the bound");
    auto* sbr = app.add_subcommand("sbr", "sample the stable-graph marginal");
    auto* rho = app.add_subcommand("rho", "sample stable-series increments");
    auto* chi = app.add_subcommand("chi", "sample bridge increments");
    auto* localtime = app.add_subcommand("localtime", "occupation measure of the bridge");
    auto* telescope = app.add_subcommand("telescope", "check the dilation identities");

    for (CLI::App* c :
         {curve, verify, thresholds, transversality, sbr, rho, chi, localtime, telescope})
        add_common(c, cfg);
    verify->add_option("--suite", cfg.suite,
                       "attractor|scaling|representations|macroscopic|telescoping|all");
    verify->add_option("--trials", cfg.trials, "trial count (alias for --samples)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {  // --help
            std::cout << app.help();
            return 0;
        }
        std::cerr << e.what() << "\n" << app.help();
        return 2;
    }

    try {
        if (curve->parsed()) return cmd_curve(cfg);
        if (verify->parsed()) return cmd_verify(cfg);
        if (thresholds->parsed()) return cmd_thresholds(cfg);
        if (transversality->parsed()) return cmd_transversality(cfg);
        if (sbr->parsed()) return histogram_run("sbr", cfg, &sbr_adapter, false);
        if (rho->parsed()) return histogram_run("rho", cfg, &sample_rho, true);
        if (chi->parsed()) return histogram_run("chi", cfg, &sample_chi, true);
        if (localtime->parsed()) return cmd_localtime(cfg);
        if (telescope->parsed()) return cmd_telescope(cfg);
    } catch (const CLI::ValidationError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
