#include "doctest.h"

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <sys/wait.h>

#include "json.hpp"

#ifndef JJB_CLI_PATH
#error "JJB_CLI_PATH must point at the built jjbath binary"
#endif

namespace {

int run(const std::string& args) {
    const std::string cmd = std::string(JJB_CLI_PATH) + " " + args + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

const std::string kOut = "/tmp/jjb_cli_test";

}  // namespace

TEST_CASE("gksl command emits the JSON report") {
    REQUIRE(run("gksl --scenario lorentzian --omega0 1.0 --out " + kOut) == 0);
    const auto j = nlohmann::json::parse(slurp(kOut + "/gksl.json"));
    CHECK(j.at("kappa").get<double>() == doctest::Approx(1.9634954084936208e-5).epsilon(1e-10));
    CHECK(j.at("units") == "E_C0");
    CHECK(j.at("criteria").at("bm") == true);
    CHECK(j.at("criteria").at("secular") == true);
    CHECK(j.at("zeta_m").get<double>() == doctest::Approx(1.9634954084936208e-5).epsilon(1e-10));
}

TEST_CASE("correlation command writes the series contract") {
    REQUIRE(run("correlation --e-c 1 --e-j 0.01 --beta 10 --method exact --points 41 "
                "--t-max 10 --out " + kOut) == 0);
    const std::string text = slurp(kOut + "/correlation.csv");
    CHECK(text.find("# units: hbar=k_B=e=1") == 0);
    CHECK(text.find("# source=exact e_c=1 e_j=0.01 beta=10") != std::string::npos);
    CHECK(text.find("t,re,im") != std::string::npos);
}

TEST_CASE("figure preset is reproducible byte for byte") {
    REQUIRE(run("figure fig2 --out " + kOut + "/a") == 0);
    REQUIRE(run("figure fig2 --out " + kOut + "/b") == 0);
    CHECK(slurp(kOut + "/a/fig2_exact_beta10.csv") == slurp(kOut + "/b/fig2_exact_beta10.csv"));
    CHECK(slurp(kOut + "/a/fig2_eps_beta50.csv") == slurp(kOut + "/b/fig2_eps_beta50.csv"));
    CHECK(!slurp(kOut + "/a/fig2_exact_beta50.csv").empty());
}

TEST_CASE("config file drives a full run") {
    const std::string cfg_path = kOut + "_run.json";
    {
        std::ofstream cfg(cfg_path);
        cfg << R"({"command":"gksl","scenario":{"family":"lorentzian","eps_i":0.01},)"
            << R"("omega0":1.05,"e_q":100.0,"output_path":")" << kOut << R"("})";
    }
    REQUIRE(run("--config " + cfg_path) == 0);
    const auto j = nlohmann::json::parse(slurp(kOut + "/gksl.json"));
    CHECK(j.at("omega0").get<double>() == 1.05);
    CHECK(j.at("lamb_shift").get<double>() != 0.0);
}

TEST_CASE("validation failures exit with code 2") {
    CHECK(run("gksl --scenario /nonexistent.json --out " + kOut) == 2);
    CHECK(run("figure fig9 --out " + kOut) == 2);
    CHECK(run("correlation --method bogus --out " + kOut) == 2);
    CHECK(run("--config /nonexistent_config.json") == 2);
    CHECK(run("") == 2);  // no subcommand, no config
}

TEST_CASE("disorder command produces the sampled and analytic series") {
    REQUIRE(run("disorder --points 65 --t-max 20 --seed 11 --out " + kOut) == 0);
    const std::string sampled = slurp(kOut + "/gamma_sampled.csv");
    const std::string analytic = slurp(kOut + "/gamma_analytic.csv");
    CHECK(sampled.find("source=chain-discrete") != std::string::npos);
    CHECK(analytic.find("source=chain-continuum") != std::string::npos);
    CHECK(sampled.find("seed=11") != std::string::npos);
}
