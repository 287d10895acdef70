#include "jjbath/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace jjb::io {

namespace {

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("io: cannot open " + path + " for writing");
    return out;
}

std::string meta_header(const SeriesMeta& m) {
    std::string line = "# source=" + (m.source.empty() ? std::string("unknown") : m.source);
    line += " e_c=" + format_double(m.e_c);
    line += " e_j=" + format_double(m.e_j);
    line += " beta=" + format_double(m.beta);
    if (m.cutoff_warning) line += " cutoff_warning=1";
    if (m.validity_warning) line += " validity_warning=1";
    return line;
}

}  // namespace

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void write_series_csv(const std::string& path, const CorrelationSeries& series,
                      const HeaderLines& extra) {
    auto out = open_out(path);
    for (const auto& line : extra) out << "# " << line << "\n";
    out << meta_header(series.meta) << "\n";
    out << "t,re,im\n";
    for (std::size_t i = 0; i < series.times.size(); ++i) {
        out << format_double(series.times[i]) << ',' << format_double(series.values[i].real())
            << ',' << format_double(series.values[i].imag()) << "\n";
    }
}

void write_spectral_csv(const std::string& path, const SpectralDensity& j, int n_points,
                        const HeaderLines& extra) {
    if (n_points < 2) throw std::invalid_argument("write_spectral_csv: need >= 2 points");
    auto out = open_out(path);
    for (const auto& line : extra) out << "# " << line << "\n";
    out << "# kind=" << to_string(j.kind) << " support=[" << format_double(j.support_lo) << ","
        << format_double(j.support_hi) << "]\n";
    out << "E,J\n";
    for (int i = 0; i < n_points; ++i) {
        const double e =
            j.support_lo + (j.support_hi - j.support_lo) * i / static_cast<double>(n_points - 1);
        out << format_double(e) << ',' << format_double(j(e)) << "\n";
    }
}

void write_trajectory_csv(const std::string& path, const gksl::Trajectory& traj,
                          const HeaderLines& extra) {
    auto out = open_out(path);
    for (const auto& line : extra) out << "# " << line << "\n";
    if (traj.cutoff_warning) out << "# cutoff_warning=1\n";
    out << "t,n_expect,trace,purity\n";
    for (std::size_t i = 0; i < traj.times.size(); ++i) {
        const auto& s = traj.states[i];
        out << format_double(traj.times[i]) << ',' << format_double(s.number_expectation())
            << ',' << format_double(s.trace()) << ',' << format_double(s.purity()) << "\n";
    }
}

void write_table_csv(const std::string& path, const std::vector<std::string>& columns,
                     const std::vector<std::vector<double>>& rows, const HeaderLines& extra) {
    auto out = open_out(path);
    for (const auto& line : extra) out << "# " << line << "\n";
    for (std::size_t c = 0; c < columns.size(); ++c) {
        out << columns[c] << (c + 1 < columns.size() ? "," : "\n");
    }
    for (const auto& row : rows) {
        if (row.size() != columns.size()) {
            throw std::invalid_argument("write_table_csv: row width mismatch");
        }
        for (std::size_t c = 0; c < row.size(); ++c) {
            out << format_double(row[c]) << (c + 1 < row.size() ? "," : "\n");
        }
    }
}

void write_text(const std::string& path, const std::string& content) {
    auto out = open_out(path);
    out << content;
}

// ---------------------------------------------------------------------------
// JSON
// ---------------------------------------------------------------------------

namespace {

using chain::Profile;

std::string form_tag(Profile::Form f) {
    switch (f) {
        case Profile::Form::constant: return "constant";
        case Profile::Form::linear: return "linear";
        case Profile::Form::power_quad: return "power-quad";
        case Profile::Form::lorentzian_nu: return "lorentzian-density";
        case Profile::Form::gaussian: return "gaussian";
        case Profile::Form::sinh_recip: return "sinh-reciprocal";
        case Profile::Form::tabulated: return "tabulated";
    }
    return "unknown";
}

Profile::Form form_from_tag(const std::string& tag) {
    if (tag == "constant") return Profile::Form::constant;
    if (tag == "linear") return Profile::Form::linear;
    if (tag == "power-quad") return Profile::Form::power_quad;
    if (tag == "lorentzian-density") return Profile::Form::lorentzian_nu;
    if (tag == "gaussian") return Profile::Form::gaussian;
    if (tag == "sinh-reciprocal") return Profile::Form::sinh_recip;
    if (tag == "tabulated") return Profile::Form::tabulated;
    throw std::invalid_argument("profile_from_json: unknown form '" + tag + "'");
}

}  // namespace

nlohmann::json profile_to_json(const Profile& p) {
    nlohmann::json j;
    j["form"] = form_tag(p.form);
    nlohmann::json params;
    switch (p.form) {
        case Profile::Form::constant:
        case Profile::Form::linear:
            params["c"] = p.c;
            break;
        case Profile::Form::power_quad:
            params["c"] = p.c;
            params["k"] = p.k;
            params["p"] = p.p;
            break;
        case Profile::Form::lorentzian_nu:
            params["amp"] = p.amp;
            params["sigma"] = p.sigma;
            params["a"] = p.a;
            params["half_length"] = p.half_length;
            break;
        case Profile::Form::gaussian:
            params["norm"] = p.norm;
            params["mean"] = p.mean;
            params["width"] = p.width;
            if (std::isfinite(p.cut)) params["cut"] = p.cut;
            break;
        case Profile::Form::sinh_recip:
            params["c"] = p.c;
            params["scale"] = p.scale;
            break;
        case Profile::Form::tabulated:
            params["xs"] = p.xs;
            params["ys"] = p.ys;
            break;
    }
    j["params"] = params;
    return j;
}

chain::Profile profile_from_json(const nlohmann::json& j) {
    const auto form = form_from_tag(j.at("form").get<std::string>());
    const auto& q = j.at("params");
    switch (form) {
        case Profile::Form::constant:
            return Profile::constant(q.at("c").get<double>());
        case Profile::Form::linear:
            return Profile::linear(q.at("c").get<double>());
        case Profile::Form::power_quad:
            return Profile::power_quad(q.at("c").get<double>(), q.at("k").get<double>(),
                                       q.at("p").get<double>());
        case Profile::Form::lorentzian_nu:
            return Profile::lorentzian_nu(q.at("amp").get<double>(), q.at("sigma").get<double>(),
                                          q.at("a").get<double>(),
                                          q.at("half_length").get<double>());
        case Profile::Form::gaussian:
            return Profile::gaussian(q.at("norm").get<double>(), q.at("mean").get<double>(),
                                     q.at("width").get<double>(),
                                     q.contains("cut") ? q.at("cut").get<double>() : -kInf);
        case Profile::Form::sinh_recip:
            return Profile::sinh_recip(q.at("c").get<double>(), q.at("scale").get<double>());
        case Profile::Form::tabulated:
            return Profile::tabulated(q.at("xs").get<std::vector<double>>(),
                                      q.at("ys").get<std::vector<double>>());
    }
    throw std::logic_error("profile_from_json: unreachable");
}

nlohmann::json chain_to_json(const chain::ContinuumChain& c) {
    nlohmann::json j;
    j["kind"] = "continuum";
    j["domain"] = {c.x_lo, c.x_hi};
    j["eps_i"] = c.coupling_eps;
    j["profiles"] = {{"nu", profile_to_json(c.density)},
                     {"ec", profile_to_json(c.ec_profile)},
                     {"ej", profile_to_json(c.ej_profile)}};
    nlohmann::json intervals = nlohmann::json::array();
    for (const auto& [a, b] : c.monotone_intervals) intervals.push_back({a, b});
    j["monotone_intervals"] = intervals;
    return j;
}

chain::ContinuumChain chain_from_json(const nlohmann::json& j) {
    if (j.at("kind").get<std::string>() != "continuum") {
        throw std::invalid_argument("chain_from_json: kind must be 'continuum'");
    }
    chain::ContinuumChain c;
    c.x_lo = j.at("domain").at(0).get<double>();
    c.x_hi = j.at("domain").at(1).get<double>();
    c.coupling_eps = j.at("eps_i").get<double>();
    c.density = profile_from_json(j.at("profiles").at("nu"));
    c.ec_profile = profile_from_json(j.at("profiles").at("ec"));
    c.ej_profile = profile_from_json(j.at("profiles").at("ej"));
    for (const auto& iv : j.at("monotone_intervals")) {
        c.monotone_intervals.emplace_back(iv.at(0).get<double>(), iv.at(1).get<double>());
    }
    chain::validate(c);
    return c;
}

nlohmann::json chain_to_json(const chain::DiscreteChain& c) {
    nlohmann::json j;
    j["kind"] = "discrete";
    j["eps_i"] = c.coupling_eps;
    nlohmann::json junctions = nlohmann::json::array();
    for (const auto& p : c.junctions) {
        junctions.push_back({{"e_c", p.e_c}, {"e_j", p.e_j}});
    }
    j["junctions"] = junctions;
    return j;
}

chain::DiscreteChain discrete_chain_from_json(const nlohmann::json& j) {
    if (j.at("kind").get<std::string>() != "discrete") {
        throw std::invalid_argument("discrete_chain_from_json: kind must be 'discrete'");
    }
    chain::DiscreteChain c;
    c.coupling_eps = j.at("eps_i").get<double>();
    for (const auto& q : j.at("junctions")) {
        c.junctions.emplace_back(q.at("e_c").get<double>(), q.at("e_j").get<double>());
    }
    return c;
}

nlohmann::json gksl_report_json(const gksl::GkslResult& res) {
    nlohmann::json j;
    j["kappa"] = res.kappa;
    j["lamb_shift"] = res.lamb_shift;
    j["kappa_negative"] = res.kappa_negative;
    j["gamma_omega"] = {{"re", res.gamma_omega.real()}, {"im", res.gamma_omega.imag()}};
    j["lamb_constant"] = res.lamb_constant;
    j["omega_b"] = res.diagnostics.omega_b;
    j["zeta_m"] = res.diagnostics.zeta_m;
    j["criteria"] = {{"bm", res.diagnostics.bm_ok}, {"secular", res.diagnostics.secular_ok}};
    j["margins"] = {{"bm", res.diagnostics.bm_margin},
                    {"secular", res.diagnostics.secular_margin}};
    j["units"] = "E_C0";
    return j;
}

}  // namespace jjb::io
