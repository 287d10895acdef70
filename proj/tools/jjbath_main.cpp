// jjbath — command-line front end: correlation functions, spectral densities,
// GKSL coefficients and evolution, the bath duality check, disorder runs, and
// the figure presets. Writes CSV data and JSON reports; every artifact starts
// with the units convention (hbar = k_B = e = 1) and a parameter echo.
//
// Exit codes: 0 ok, 2 validation error, 3 numerical failure.

#include "CLI11.hpp"
#include "json.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "jjbath/chain.hpp"
#include "jjbath/duality.hpp"
#include "jjbath/gksl.hpp"
#include "jjbath/io.hpp"
#include "jjbath/junction.hpp"
#include "jjbath/perturbation.hpp"
#include "jjbath/scenarios.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace jjb;

namespace {

constexpr const char* kUnitsLine = "units: hbar=k_B=e=1; energies in E_C0 unless noted";

struct ValidationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// Scenario configuration
// ---------------------------------------------------------------------------

struct ScenarioConfig {
    std::string family = "lorentzian";  // "lorentzian" | "disorder"
    scenarios::LorentzianChainParams lorentzian{500.0, 0.25, 0.4, 1.0, 0.05, 1.0};
    scenarios::FabricationConstants fab{0.01, 0.2, 0.2, 1.0, 0.1};
    std::size_t n_j = 10000;
    std::uint64_t seed = 1;
    double eps_i = 0.01;
};

double field(const json& j, const char* key, double fallback) {
    return j.contains(key) ? j.at(key).get<double>() : fallback;
}

ScenarioConfig scenario_from_json(const json& j) {
    ScenarioConfig cfg;
    if (!j.contains("family")) throw ValidationError("scenario: missing field 'family'");
    cfg.family = j.at("family").get<std::string>();
    cfg.eps_i = field(j, "eps_i", cfg.eps_i);
    if (cfg.family == "lorentzian") {
        auto& p = cfg.lorentzian;
        p.amp = field(j, "amp", p.amp);
        p.sigma = field(j, "sigma", p.sigma);
        p.a = field(j, "a", p.a);
        p.e_c0 = field(j, "e_c0", p.e_c0);
        p.e_j0 = field(j, "e_j0", p.e_j0);
        p.half_length = field(j, "half_length", p.half_length);
    } else if (cfg.family == "disorder") {
        auto& f = cfg.fab;
        f.f_j_a_over_zeta = field(j, "f_j_a_over_zeta", f.f_j_a_over_zeta);
        f.e_zeta = field(j, "e_zeta", f.e_zeta);
        f.e_min = field(j, "e_min", f.e_min);
        f.e_0 = field(j, "e_0", f.e_0);
        f.delta_ec = field(j, "delta_ec", f.delta_ec);
        if (j.contains("n_j")) cfg.n_j = j.at("n_j").get<std::size_t>();
        if (j.contains("seed")) cfg.seed = j.at("seed").get<std::uint64_t>();
    } else {
        throw ValidationError("scenario: unknown family '" + cfg.family + "'");
    }
    return cfg;
}

ScenarioConfig load_scenario(const std::string& name_or_path) {
    if (name_or_path == "lorentzian" || name_or_path == "disorder") {
        ScenarioConfig cfg;
        cfg.family = name_or_path;
        return cfg;
    }
    std::ifstream in(name_or_path);
    if (!in) throw ValidationError("scenario: cannot open '" + name_or_path + "'");
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw ValidationError("scenario: " + std::string(e.what()));
    }
    return scenario_from_json(j);
}

SpectralDensity scenario_spectral(const ScenarioConfig& cfg) {
    if (cfg.family == "lorentzian") {
        return scenarios::lorentzian_chain(cfg.lorentzian, cfg.eps_i).j_closed_form;
    }
    return scenarios::disorder_spectral_density({cfg.fab, cfg.n_j, cfg.seed});
}

std::string scenario_echo(const ScenarioConfig& cfg) {
    if (cfg.family == "lorentzian") {
        const auto& p = cfg.lorentzian;
        return "scenario=lorentzian amp=" + io::format_double(p.amp) +
               " sigma=" + io::format_double(p.sigma) + " a=" + io::format_double(p.a) +
               " e_c0=" + io::format_double(p.e_c0) + " e_j0=" + io::format_double(p.e_j0) +
               " half_length=" + io::format_double(p.half_length) +
               " eps_i=" + io::format_double(cfg.eps_i);
    }
    const auto& f = cfg.fab;
    return "scenario=disorder f_j_a_over_zeta=" + io::format_double(f.f_j_a_over_zeta) +
           " e_zeta=" + io::format_double(f.e_zeta) + " e_min=" + io::format_double(f.e_min) +
           " e_0=" + io::format_double(f.e_0) + " delta_ec=" + io::format_double(f.delta_ec) +
           " n_j=" + std::to_string(cfg.n_j) + " seed=" + std::to_string(cfg.seed) +
           " eps_i=" + io::format_double(cfg.eps_i);
}

std::vector<double> linspace(double lo, double hi, int n) {
    if (n < 2 || !(hi > lo)) throw ValidationError("grid: need ascending bounds and >= 2 points");
    std::vector<double> v(n);
    for (int i = 0; i < n; ++i) v[i] = lo + (hi - lo) * i / (n - 1);
    return v;
}

std::string out_file(const std::string& dir, const std::string& name) {
    fs::create_directories(dir);
    return (fs::path(dir) / name).string();
}

// ---------------------------------------------------------------------------
// Command options
// ---------------------------------------------------------------------------

struct CommonOpts {
    std::string out = "out";
    std::string scenario = "lorentzian";
    double omega0 = 1.0;
    double e_q = 100.0;
    double beta = kInf;
    std::optional<std::uint64_t> seed;
    std::optional<double> eps_i;
};

json g_inline_scenario;  // set when a --config document carries a scenario object

ScenarioConfig resolve_scenario(const CommonOpts& opts) {
    ScenarioConfig cfg = opts.scenario == "@inline" ? scenario_from_json(g_inline_scenario)
                                                    : load_scenario(opts.scenario);
    if (opts.seed) cfg.seed = *opts.seed;
    if (opts.eps_i) cfg.eps_i = *opts.eps_i;
    return cfg;
}

struct ReportBundle {
    gksl::GkslResult res;
    bool lamb_divergent = false;  // omega0 on a support edge with J(edge) > 0
};

ReportBundle full_report(const ScenarioConfig& cfg, const gksl::OscillatorParams& osc) {
    const auto j = scenario_spectral(cfg);
    ReportBundle bundle;
    auto& res = bundle.res;
    res.kappa = gksl::decay_rate(j, osc);
    res.kappa_negative = 0.0;
    try {
        res.lamb_shift = gksl::lamb_shift(j, osc);
        res.gamma_omega = gksl::half_fourier(j, osc.omega0, osc.eps_i);
        res.lamb_constant = gksl::lamb_constant(j, osc);
    } catch (const numerics::QuadratureError&) {
        // the principal value diverges logarithmically when omega0 sits
        // exactly on a support edge where J does not vanish
        bundle.lamb_divergent = true;
        res.lamb_shift = std::numeric_limits<double>::quiet_NaN();
        res.gamma_omega = {M_PI * 0.25 * osc.eps_i * osc.eps_i * j(osc.omega0),
                           std::numeric_limits<double>::quiet_NaN()};
        res.lamb_constant = gksl::lamb_constant(j, osc);
    }
    if (cfg.family == "lorentzian") {
        res.diagnostics = gksl::markovianity_report(scenarios::to_rule(cfg.lorentzian, cfg.eps_i), osc);
    } else {
        auto grid = linspace(0.0, 10.0 / (cfg.fab.delta_ec), 2001);
        auto gamma = chain::gamma_from_spectral(j, cfg.eps_i, grid);
        res.diagnostics = gksl::markovianity_measured(gamma, 0.0, j, osc);
    }
    return bundle;
}

// ---------------------------------------------------------------------------
// Commands
// ---------------------------------------------------------------------------

void run_correlation(const CommonOpts& opts, double e_c, double e_j, int n_max,
                     const std::string& method, double t_max, int points) {
    const JunctionParams p{e_c, e_j};
    auto grid = linspace(0.0, t_max, points);
    CorrelationSeries series;
    if (method == "exact") {
        if (!(opts.beta > 0.0) || std::isinf(opts.beta)) {
            throw ValidationError("correlation: exact method needs a finite --beta > 0");
        }
        series = junction::exact_correlation(p, n_max, opts.beta, grid);
    } else if (method == "low-t") {
        series = perturbation::g_low_t(p, grid);
    } else if (method == "moderate") {
        series = perturbation::g_moderate(p, opts.beta, grid);
    } else if (method == "matsubara") {
        series = perturbation::matsubara_correlation(p, opts.beta, grid);
    } else if (method == "high-t") {
        const auto value = perturbation::g_high_t(p, opts.beta);
        series.times = grid;
        series.values.assign(grid.size(), value);
        series.meta.source = "highT";
        series.meta.e_c = e_c;
        series.meta.e_j = e_j;
        series.meta.beta = opts.beta;
    } else if (method == "harmonic") {
        series = chain::harmonic_correlation(p, opts.beta, grid);
    } else {
        throw ValidationError("correlation: unknown method '" + method + "'");
    }
    io::write_series_csv(out_file(opts.out, "correlation.csv"), series,
                         {kUnitsLine, "command=correlation method=" + method});
    std::cout << "wrote " << out_file(opts.out, "correlation.csv") << "\n";
}

void run_spectral(const CommonOpts& opts, int points, double pad) {
    const auto cfg = resolve_scenario(opts);
    auto j = scenario_spectral(cfg);
    const double width = j.width();
    SpectralDensity padded = j;
    padded.support_lo = j.support_lo - pad * width;
    padded.support_hi = j.support_hi + pad * width;
    io::write_spectral_csv(out_file(opts.out, "spectral.csv"), padded, points,
                           {kUnitsLine, scenario_echo(cfg)});

    json spec;
    if (cfg.family == "lorentzian") {
        spec = io::chain_to_json(scenarios::lorentzian_chain(cfg.lorentzian, cfg.eps_i).chain);
    } else {
        spec = io::chain_to_json(scenarios::disorder_continuum_chain({cfg.fab, cfg.n_j, cfg.seed},
                                                                     cfg.eps_i));
    }
    io::write_text(out_file(opts.out, "chain.json"), spec.dump(2) + "\n");
    std::cout << "wrote " << out_file(opts.out, "spectral.csv") << " and chain.json\n";
}

void run_gksl(const CommonOpts& opts, const std::string& report_name) {
    const auto cfg = resolve_scenario(opts);
    const gksl::OscillatorParams osc{opts.omega0, opts.e_q, cfg.eps_i};
    const auto bundle = full_report(cfg, osc);
    json j = io::gksl_report_json(bundle.res);
    if (bundle.lamb_divergent) {
        j["lamb_shift_note"] = "log-divergent: omega0 lies on the spectral support edge";
    }
    j["omega0"] = opts.omega0;
    j["e_q"] = opts.e_q;
    j["eps_i"] = cfg.eps_i;
    j["scenario"] = cfg.family;
    io::write_text(out_file(opts.out, report_name), j.dump(2) + "\n");
    std::cout << j.dump(2) << "\n";
}

void run_evolve(const CommonOpts& opts, int n_fock, int n0, double t_max, int points) {
    const auto cfg = resolve_scenario(opts);
    const gksl::OscillatorParams osc{opts.omega0, opts.e_q, cfg.eps_i};
    const auto bundle = full_report(cfg, osc);
    if (bundle.lamb_divergent) {
        throw ValidationError("evolve: omega0 sits on the spectral support edge; move it inside");
    }
    const auto& res = bundle.res;
    auto grid = linspace(0.0, t_max, points);
    auto traj = gksl::evolve_oscillator(res, osc, gksl::OscillatorState::fock(n_fock, n0), grid);
    io::write_trajectory_csv(out_file(opts.out, "trajectory.csv"), traj,
                             {kUnitsLine, scenario_echo(cfg),
                              "kappa=" + io::format_double(res.kappa) +
                                  " lamb_shift=" + io::format_double(res.lamb_shift) +
                                  " n_fock=" + std::to_string(n_fock) +
                                  " n0=" + std::to_string(n0)});
    std::cout << "wrote " << out_file(opts.out, "trajectory.csv") << "\n";
}

void run_duality(const CommonOpts& opts, int probe_points) {
    const auto cfg = resolve_scenario(opts);
    if (cfg.family != "lorentzian") {
        throw ValidationError("duality: only continuum (lorentzian-family) scenarios");
    }
    const auto scenario = scenarios::lorentzian_chain(cfg.lorentzian, cfg.eps_i);
    const auto map = duality::map_to_large_ej(scenario.chain);
    auto j = chain::spectral_density_large_ec(scenario.chain);
    auto probe = linspace(j.support_lo, j.support_hi, probe_points);
    const gksl::OscillatorParams reference{opts.omega0, opts.e_q, cfg.eps_i};
    const auto rep = duality::verify_duality(map, probe, reference);

    json doc;
    doc["source"] = io::chain_to_json(map.source);
    doc["mapped"] = io::chain_to_json(map.mapped);
    doc["log_ratio_min"] = map.log_ratio_min;
    doc["report"] = {{"max_rel_j_dev", rep.max_rel_j_dev},
                     {"kappa_rel_dev", rep.kappa_rel_dev},
                     {"lamb_rel_dev", rep.lamb_rel_dev},
                     {"max_regime_ratio", rep.max_regime_ratio},
                     {"max_omega_identity", rep.max_omega_identity},
                     {"reference_omega0", opts.omega0}};
    io::write_text(out_file(opts.out, "duality.json"), doc.dump(2) + "\n");
    std::cout << doc["report"].dump(2) << "\n";
}

void run_disorder(const CommonOpts& opts, double t_max, int points) {
    auto cfg = resolve_scenario(opts);
    if (cfg.family != "disorder") {
        throw ValidationError("disorder: scenario family must be 'disorder'");
    }
    const scenarios::DisorderChainParams p{cfg.fab, cfg.n_j, cfg.seed};
    auto sampled = scenarios::gaussian_disorder_chain(p, cfg.eps_i);
    io::write_text(out_file(opts.out, "sampled_chain.json"),
                   io::chain_to_json(sampled).dump() + "\n");

    auto grid = linspace(0.0, t_max, points);
    auto analytic = scenarios::disorder_gamma_analytic(p, cfg.eps_i, grid);
    auto discrete = chain::gamma_discrete(sampled, grid);
    discrete.meta.source = "chain-discrete";
    discrete.meta.e_c = cfg.fab.e_0;
    io::write_series_csv(out_file(opts.out, "gamma_analytic.csv"), analytic,
                         {kUnitsLine, scenario_echo(cfg)});
    io::write_series_csv(out_file(opts.out, "gamma_sampled.csv"), discrete,
                         {kUnitsLine, scenario_echo(cfg)});
    io::write_spectral_csv(out_file(opts.out, "spectral.csv"),
                           scenarios::disorder_spectral_density(p), 401,
                           {kUnitsLine, scenario_echo(cfg)});
    std::cout << "wrote gamma_analytic.csv, gamma_sampled.csv, spectral.csv, "
                 "sampled_chain.json under "
              << opts.out << "\n";
}

void run_markovianity(const CommonOpts& opts) { run_gksl(opts, "markovianity.json"); }

// ---------------------------------------------------------------------------
// Figure presets
// ---------------------------------------------------------------------------

void figure_comparison(const std::string& out) {
    const JunctionParams p{1.0, 0.01};
    auto grid = linspace(0.0, 100.0, 2001);
    struct Series {
        double beta;
        const char* tag;
    };
    for (const Series s : {Series{50.0, "beta50"}, Series{10.0, "beta10"}}) {
        auto exact = junction::exact_correlation(p, junction::kDefaultChargeCutoff, s.beta, grid);
        auto eps = perturbation::g_moderate(p, s.beta, grid);
        io::write_series_csv(out_file(out, std::string("fig2_exact_") + s.tag + ".csv"), exact,
                             {kUnitsLine, "figure=fig2 e_j=0.01E_C"});
        io::write_series_csv(out_file(out, std::string("fig2_eps_") + s.tag + ".csv"), eps,
                             {kUnitsLine, "figure=fig2 e_j=0.01E_C"});
    }
}

void figure_lorentzian_property(const std::string& out) {
    const ScenarioConfig cfg;  // defaults are the published chain parameters
    const auto scenario = scenarios::lorentzian_chain(cfg.lorentzian, cfg.eps_i);

    std::vector<std::vector<double>> nu_rows;
    for (double x : linspace(-1.0, 1.0, 2001)) {
        nu_rows.push_back({x, scenario.chain.density(x)});
    }
    io::write_table_csv(out_file(out, "fig3_nu.csv"), {"x", "nu"}, nu_rows,
                        {kUnitsLine, scenario_echo(cfg)});

    io::write_spectral_csv(out_file(out, "fig3_j.csv"), scenario.j_closed_form, 401,
                           {kUnitsLine, scenario_echo(cfg)});

    auto grid = linspace(0.0, 100.0, 2001);
    auto gamma = chain::gamma_from_spectral(scenario.j_closed_form, cfg.eps_i, grid);
    const double norm = gamma.values[0].real();
    CorrelationSeries normalized = gamma;
    for (auto& v : normalized.values) v /= norm;
    normalized.meta.source = "chain-continuum";
    io::write_series_csv(out_file(out, "fig3_gamma.csv"), normalized,
                         {kUnitsLine, scenario_echo(cfg), "normalized=Re Gamma(0)"});

    std::vector<std::vector<double>> sweep;
    for (double w : linspace(0.5, 1.7, 401)) {
        const gksl::OscillatorParams osc{w, 100.0, cfg.eps_i};
        const double kappa = gksl::decay_rate(scenario.j_closed_form, osc);
        const double dls = gksl::lamb_shift(scenario.j_closed_form, osc);
        sweep.push_back({w, kappa, kappa / 0.1, kappa / w, dls, dls / w});
    }
    io::write_table_csv(out_file(out, "fig3_rates.csv"),
                        {"omega0", "kappa", "kappa_over_dec", "kappa_over_omega0", "lamb_shift",
                         "lamb_over_omega0"},
                        sweep, {kUnitsLine, scenario_echo(cfg), "e_q=100"});
}

void figure_offset(const std::string& out, const char* tag,
                   const scenarios::LorentzianChainParams& params) {
    ScenarioConfig cfg;
    cfg.lorentzian = params;
    const auto scenario = scenarios::lorentzian_chain(params, cfg.eps_i);
    const auto delta = chain::delta_profile(scenario.chain);

    std::vector<std::vector<double>> profile_rows;
    for (double x : linspace(-1.0, 1.0, 1001)) {
        profile_rows.push_back({x, delta.delta(x), scenario.chain.ec_profile(x)});
    }
    io::write_table_csv(out_file(out, std::string(tag) + "_delta.csv"), {"x", "delta", "e_c"},
                        profile_rows,
                        {kUnitsLine, scenario_echo(cfg),
                         "delta_star=" + io::format_double(delta.delta_star) +
                             " x_star=" + io::format_double(delta.x_star)});

    auto grid = linspace(0.0, 100.0, 2001);
    auto gamma = chain::gamma_continuum(scenario.chain, grid);
    const double norm = gamma.values[0].real();
    std::vector<std::vector<double>> rows(grid.size());
    const double beta033 = 1.0 / (0.33 * delta.delta_star);
    const double beta042 = 1.0 / (0.42 * delta.delta_star);
    const double off033 = chain::offset_gamma0(scenario.chain, beta033) / norm;
    const double off042 = chain::offset_gamma0(scenario.chain, beta042) / norm;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double zero_t = gamma.values[i].real() / norm;
        rows[i] = {grid[i], zero_t, zero_t + off033, zero_t + off042};
    }
    io::write_table_csv(
        out_file(out, std::string(tag) + "_gamma.csv"),
        {"t", "re_gamma_zero_t", "re_gamma_beta033", "re_gamma_beta042"}, rows,
        {kUnitsLine, scenario_echo(cfg),
         "normalized=Re Gamma(0)|_{T=0}; offsets Gamma_0 at 1/beta = {0.33, 0.42} Delta_*"});
}

void figure_disorder(const std::string& out) {
    ScenarioConfig cfg;
    cfg.family = "disorder";
    const double e0 = cfg.fab.e_0;

    std::vector<std::vector<double>> gamma_rows;
    for (double de : linspace(0.02, 0.5, 49)) {
        scenarios::DisorderChainParams p{cfg.fab, cfg.n_j, cfg.seed};
        p.fab.delta_ec = de;
        auto grid = linspace(0.0, 100.0, 201);
        auto gamma = scenarios::disorder_gamma_analytic(p, cfg.eps_i, grid);
        const double norm = gamma.values[0].real();
        for (std::size_t i = 0; i < grid.size(); ++i) {
            gamma_rows.push_back({de, grid[i], std::abs(gamma.values[i].real()) / norm});
        }
    }
    io::write_table_csv(out_file(out, "fig6_gamma2d.csv"), {"delta_ec", "t", "abs_re_gamma"},
                        gamma_rows, {kUnitsLine, scenario_echo(cfg), "normalized=Gamma(0)"});

    std::vector<std::vector<double>> kappa_rows;
    std::vector<std::vector<double>> lamb_rows;
    for (double de : linspace(0.02, 0.5, 49)) {
        scenarios::DisorderChainParams p{cfg.fab, cfg.n_j, cfg.seed};
        p.fab.delta_ec = de;
        auto j = scenarios::disorder_spectral_density(p);
        for (double w : linspace(0.3, 2.0, 69)) {
            const gksl::OscillatorParams osc{w, 2.0, cfg.eps_i};
            kappa_rows.push_back({de, w, gksl::decay_rate(j, osc) / e0});
            lamb_rows.push_back({de, w, gksl::lamb_shift(j, osc) / e0});
        }
    }
    io::write_table_csv(out_file(out, "fig6_kappa2d.csv"), {"delta_ec", "omega0", "kappa_over_e0"},
                        kappa_rows, {kUnitsLine, scenario_echo(cfg), "e_q=2"});
    io::write_table_csv(out_file(out, "fig6_lamb2d.csv"), {"delta_ec", "omega0", "lamb_over_e0"},
                        lamb_rows, {kUnitsLine, scenario_echo(cfg), "e_q=2"});
}

void run_figure(const CommonOpts& opts, const std::string& which) {
    if (which == "fig2") {
        figure_comparison(opts.out);
    } else if (which == "fig3") {
        figure_lorentzian_property(opts.out);
    } else if (which == "fig4") {
        figure_offset(opts.out, "fig4", {500.0, 0.25, 0.4, 1.0, 0.05, 1.0});
    } else if (which == "fig5") {
        figure_offset(opts.out, "fig5", {50.0, 0.25, 40.0, 1.0, 0.05, 1.0});
    } else if (which == "fig6") {
        figure_disorder(opts.out);
    } else {
        throw ValidationError("figure: expected fig2|fig3|fig4|fig5|fig6");
    }
    std::cout << "wrote " << which << " data under " << opts.out << "\n";
}

// ---------------------------------------------------------------------------
// Config-file driver
// ---------------------------------------------------------------------------

int dispatch(const json& cfg);

int run_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("config: cannot open '" + path + "'");
    json cfg;
    try {
        in >> cfg;
    } catch (const json::exception& e) {
        throw ValidationError("config: " + std::string(e.what()));
    }
    return dispatch(cfg);
}

CommonOpts common_from_config(const json& cfg) {
    CommonOpts opts;
    if (cfg.contains("output_path")) opts.out = cfg.at("output_path").get<std::string>();
    if (cfg.contains("scenario")) {
        if (cfg.at("scenario").is_string()) {
            opts.scenario = cfg.at("scenario").get<std::string>();
        } else {
            // inline scenario object: persist to a scratch file is overkill;
            // stash the JSON so resolve_scenario can use it
            opts.scenario = "@inline";
        }
    }
    if (cfg.contains("seed")) opts.seed = cfg.at("seed").get<std::uint64_t>();
    if (cfg.contains("omega0")) opts.omega0 = cfg.at("omega0").get<double>();
    if (cfg.contains("e_q")) opts.e_q = cfg.at("e_q").get<double>();
    if (cfg.contains("beta")) opts.beta = cfg.at("beta").get<double>();
    if (cfg.contains("eps_i")) opts.eps_i = cfg.at("eps_i").get<double>();
    return opts;
}

int dispatch(const json& cfg) {
    if (!cfg.contains("command")) throw ValidationError("config: missing field 'command'");
    const std::string command = cfg.at("command").get<std::string>();
    CommonOpts opts = common_from_config(cfg);
    if (opts.scenario == "@inline") g_inline_scenario = cfg.at("scenario");

    const json grid = cfg.contains("grid") ? cfg.at("grid") : json::object();
    const double t_max = field(grid, "t_max", 100.0);
    auto points_or = [&grid](int fallback) {
        return grid.contains("points") ? grid.at("points").get<int>() : fallback;
    };

    if (command == "correlation") {
        run_correlation(opts, field(cfg, "e_c", 1.0), field(cfg, "e_j", 0.01),
                        cfg.contains("n_max") ? cfg.at("n_max").get<int>()
                                              : junction::kDefaultChargeCutoff,
                        cfg.contains("method") ? cfg.at("method").get<std::string>() : "exact",
                        t_max, points_or(2001));
    } else if (command == "spectral") {
        run_spectral(opts, points_or(401), field(cfg, "pad", 0.2));
    } else if (command == "gksl") {
        run_gksl(opts, "gksl.json");
    } else if (command == "markovianity") {
        run_markovianity(opts);
    } else if (command == "evolve") {
        run_evolve(opts, cfg.contains("n_fock") ? cfg.at("n_fock").get<int>() : 24,
                   cfg.contains("n0") ? cfg.at("n0").get<int>() : 1, t_max, points_or(501));
    } else if (command == "duality") {
        run_duality(opts, 101);
    } else if (command == "disorder") {
        run_disorder(opts, t_max, points_or(513));
    } else if (command == "figure") {
        run_figure(opts, cfg.contains("which") ? cfg.at("which").get<std::string>() : "fig2");
    } else {
        throw ValidationError("config: unknown command '" + command + "'");
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Josephson-junction-array bath simulator"};
    app.require_subcommand(0, 1);

    std::string config_path;
    app.add_option("--config", config_path, "full run configuration (JSON)");

    CommonOpts opts;
    auto add_common = [&opts](CLI::App* cmd, bool scenario_based = true) {
        cmd->add_option("--out", opts.out, "output directory");
        if (scenario_based) {
            cmd->add_option("--scenario", opts.scenario,
                            "scenario name (lorentzian|disorder) or JSON path");
            cmd->add_option("--eps-i", opts.eps_i, "coupling eps_I override");
        }
        cmd->add_option("--seed", opts.seed, "RNG seed override");
    };

    // correlation
    auto* c_corr = app.add_subcommand("correlation", "single-junction correlator G(t)");
    double e_c = 1.0, e_j = 0.01, t_max = 100.0;
    int n_max = junction::kDefaultChargeCutoff, points = 2001;
    std::string method = "exact";
    c_corr->add_option("--e-c", e_c, "charging energy");
    c_corr->add_option("--e-j", e_j, "Josephson energy");
    c_corr->add_option("--n-max", n_max, "charge basis cutoff");
    c_corr->add_option("--beta", opts.beta, "inverse temperature");
    c_corr->add_option("--method", method, "exact|low-t|moderate|high-t|matsubara|harmonic");
    c_corr->add_option("--t-max", t_max, "time window");
    c_corr->add_option("--points", points, "grid points");
    add_common(c_corr, false);

    // spectral
    auto* c_spec = app.add_subcommand("spectral", "effective spectral density J(E)");
    int spec_points = 401;
    double pad = 0.2;
    c_spec->add_option("--points", spec_points, "frequency points");
    c_spec->add_option("--pad", pad, "support padding fraction");
    add_common(c_spec);

    // gksl / markovianity
    auto* c_gksl = app.add_subcommand("gksl", "GKSL coefficients and diagnostics");
    c_gksl->add_option("--omega0", opts.omega0, "oscillator frequency");
    c_gksl->add_option("--e-q", opts.e_q, "oscillator charging energy E_Q");
    add_common(c_gksl);

    auto* c_mark = app.add_subcommand("markovianity", "Markovianity diagnostics report");
    c_mark->add_option("--omega0", opts.omega0, "oscillator frequency");
    c_mark->add_option("--e-q", opts.e_q, "oscillator charging energy E_Q");
    add_common(c_mark);

    // evolve
    auto* c_evo = app.add_subcommand("evolve", "dissipative oscillator evolution");
    int n_fock = 24, n0 = 1;
    double evo_t_max = 0.0;
    int evo_points = 501;
    c_evo->add_option("--omega0", opts.omega0, "oscillator frequency");
    c_evo->add_option("--e-q", opts.e_q, "oscillator charging energy E_Q");
    c_evo->add_option("--n-fock", n_fock, "Fock cutoff");
    c_evo->add_option("--n0", n0, "initial Fock level");
    c_evo->add_option("--t-max", evo_t_max, "time window (default 5 decay times)");
    c_evo->add_option("--points", evo_points, "grid points");
    add_common(c_evo);

    // duality
    auto* c_dual = app.add_subcommand("duality", "large-E_C <-> large-E_J correspondence");
    c_dual->add_option("--omega0", opts.omega0, "reference frequency for the rate check");
    c_dual->add_option("--e-q", opts.e_q, "oscillator charging energy E_Q");
    add_common(c_dual);

    // disorder
    auto* c_dis = app.add_subcommand("disorder", "sampled disorder chain versus the analytic law");
    double dis_t_max = 50.0;
    int dis_points = 513;
    c_dis->add_option("--t-max", dis_t_max, "time window");
    c_dis->add_option("--points", dis_points, "grid points");
    add_common(c_dis);

    // figure
    auto* c_fig = app.add_subcommand("figure", "published data-series presets");
    std::string which;
    c_fig->add_option("which", which, "fig2|fig3|fig4|fig5|fig6")->required();
    add_common(c_fig, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (app.get_subcommands().empty()) {
            if (config_path.empty()) {
                std::cerr << "error: need a subcommand or --config\n" << app.help();
                return 2;
            }
            return run_config(config_path);
        }
        if (c_corr->parsed()) {
            run_correlation(opts, e_c, e_j, n_max, method, t_max, points);
        } else if (c_spec->parsed()) {
            run_spectral(opts, spec_points, pad);
        } else if (c_gksl->parsed()) {
            run_gksl(opts, "gksl.json");
        } else if (c_mark->parsed()) {
            run_markovianity(opts);
        } else if (c_evo->parsed()) {
            if (evo_t_max <= 0.0) {
                const auto cfg = resolve_scenario(opts);
                const gksl::OscillatorParams osc{opts.omega0, opts.e_q, cfg.eps_i};
                const double kappa = gksl::decay_rate(scenario_spectral(cfg), osc);
                evo_t_max = kappa > 0.0 ? 5.0 / kappa : 100.0;
            }
            run_evolve(opts, n_fock, n0, evo_t_max, evo_points);
        } else if (c_dual->parsed()) {
            run_duality(opts, 101);
        } else if (c_dis->parsed()) {
            if (c_dis->count("--scenario") == 0) opts.scenario = "disorder";
            run_disorder(opts, dis_t_max, dis_points);
        } else if (c_fig->parsed()) {
            run_figure(opts, which);
        }
        return 0;
    } catch (const ValidationError& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return 2;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 3;
    }
}
