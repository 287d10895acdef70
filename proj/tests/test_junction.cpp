#include "doctest.h"

#include <cmath>
#include <complex>

#include "jjbath/junction.hpp"
#include "jjbath/perturbation.hpp"

using namespace jjb;
using junction::build_hamiltonian;
using junction::charge_operator;
using junction::diagonalize;
using junction::parity_operator;

TEST_CASE("Hamiltonian construction in the charge basis") {
    SUBCASE("free rotor diagonal") {
        auto h = build_hamiltonian({1.0, 0.0}, 1);
        CHECK(h.entries(0, 0) == std::complex<double>(1.0, 0.0));
        CHECK(h.entries(1, 1) == std::complex<double>(0.0, 0.0));
        CHECK(h.entries(2, 2) == std::complex<double>(1.0, 0.0));
        CHECK(std::abs(h.entries(0, 1)) == 0.0);
    }
    SUBCASE("Josephson term couples neighboring charge states") {
        auto h = build_hamiltonian({1.0, 0.01}, 1);
        CHECK(h.entries(0, 1).real() == doctest::Approx(-0.005).epsilon(1e-15));
        CHECK(h.entries(1, 2).real() == doctest::Approx(-0.005).epsilon(1e-15));
        CHECK(std::abs(h.entries(0, 2)) == 0.0);
    }
    SUBCASE("ground energy at lambda = 0.01 follows -lambda^2 E_C/2") {
        const JunctionParams p{1.0, 0.01};
        auto dec = diagonalize(build_hamiltonian(p, 20));
        const double lam3 = p.lambda * p.lambda * p.lambda;
        CHECK(std::abs(dec.energies(0) - (-5e-5)) < 5.0 * lam3);
    }
    SUBCASE("cutoff below one is rejected") {
        CHECK_THROWS_AS(build_hamiltonian({1.0, 0.1}, 0), std::invalid_argument);
    }
    SUBCASE("invalid junction parameters are rejected") {
        CHECK_THROWS_AS(JunctionParams(0.0, 0.1), std::invalid_argument);
        CHECK_THROWS_AS(JunctionParams(1.0, -0.1), std::invalid_argument);
    }
}

TEST_CASE("charge conjugation operator") {
    SUBCASE("3x3 anti-diagonal permutation") {
        auto c = parity_operator(1);
        CHECK(c.entries(0, 2) == std::complex<double>(1.0, 0.0));
        CHECK(c.entries(1, 1) == std::complex<double>(1.0, 0.0));
        CHECK(c.entries(2, 0) == std::complex<double>(1.0, 0.0));
        CHECK((c.entries * c.entries - Eigen::MatrixXcd::Identity(3, 3)).cwiseAbs().maxCoeff() ==
              0.0);
    }
    SUBCASE("C N C = -N exactly") {
        auto c = parity_operator(20);
        auto n = charge_operator(20);
        CHECK((c.entries * n.entries * c.entries + n.entries).cwiseAbs().maxCoeff() == 0.0);
    }
    SUBCASE("[H, C] = 0 exactly for any parameters") {
        for (double ej : {0.0, 0.01, 0.3, 2.0}) {
            auto h = build_hamiltonian({1.0, ej}, 12);
            auto c = parity_operator(12);
            CHECK((h.entries * c.entries - c.entries * h.entries).cwiseAbs().maxCoeff() == 0.0);
        }
    }
}

TEST_CASE("diagonalization and parity labels") {
    SUBCASE("free rotor spectrum") {
        auto dec = diagonalize(build_hamiltonian({1.0, 0.0}, 2));
        const double expected[5] = {0.0, 1.0, 1.0, 4.0, 4.0};
        for (int i = 0; i < 5; ++i) {
            CHECK(dec.energies(i) == doctest::Approx(expected[i]).epsilon(1e-14));
        }
    }
    SUBCASE("non-Hermitian input rejected") {
        auto h = build_hamiltonian({1.0, 0.1}, 2);
        h.entries(0, 1) += std::complex<double>(0.0, 0.5);
        CHECK_THROWS_AS(diagonalize(h), std::invalid_argument);
    }
    SUBCASE("orthonormal states and exact parity labels") {
        for (double ej : {0.0, 0.1}) {
            auto dec = diagonalize(build_hamiltonian({1.0, ej}, 20));
            const int dim = static_cast<int>(dec.energies.size());
            Eigen::MatrixXcd overlap = dec.states.adjoint() * dec.states;
            CHECK((overlap - Eigen::MatrixXcd::Identity(dim, dim)).cwiseAbs().maxCoeff() < 1e-12);

            auto c = parity_operator(20);
            for (int i = 0; i < dim; ++i) {
                const std::complex<double> expect =
                    dec.states.col(i).dot(c.entries * dec.states.col(i));
                CHECK(std::abs(expect.real() - dec.parities[i]) < 1e-10);
                CHECK(std::abs(expect.imag()) < 1e-10);
            }
        }
    }
    SUBCASE("lambda = 0.1 level structure") {
        const JunctionParams p{1.0, 0.1};
        auto dec = diagonalize(build_hamiltonian(p, 20));
        // frozen against the dense eigensolver; perturbative E_{1,-} = 1 - lambda^2/12
        CHECK(dec.energies(1) == doctest::Approx(0.9991668112845511).epsilon(1e-12));
        CHECK(std::abs(dec.energies(1) - 0.9991667) < 5.0 * 0.1 * 0.1 * 0.1);
        // degeneracy of the first excited pair lifted by lambda^2 E_C / 2
        const double split = dec.energies(2) - dec.energies(1);
        CHECK(std::abs(split - 0.005) < 1e-4);
        // E_{1,-} - E_0 = E_C (1 + 5 lambda^2/12) up to O(lambda^3)
        CHECK(std::abs(dec.energies(1) - dec.energies(0) - 1.0041667) < 5e-4);
        // parities: ground even, first excited pair odd below even
        CHECK(dec.parities[0] == 1);
        CHECK(dec.parities[1] == -1);
        CHECK(dec.parities[2] == 1);
    }
}

TEST_CASE("exact thermal correlator") {
    std::vector<double> times;
    for (int i = 0; i <= 200; ++i) times.push_back(0.5 * i);

    SUBCASE("deep ground state of the bare rotor gives zero") {
        auto g = junction::exact_correlation({1.0, 0.0}, 8, 50.0, times);
        for (const auto& v : g.values) CHECK(std::abs(v) < 1e-15);
        CHECK_FALSE(g.meta.cutoff_warning);
    }
    SUBCASE("G(0) at lambda = 0.01, beta E_C = 10") {
        auto g = junction::exact_correlation({1.0, 0.01}, 20, 10.0, {0.0});
        // formula lambda^2/2 + 2 e^{-beta E_C} holds to O(lambda^3)
        CHECK(std::abs(g.values[0].real() - 1.408e-4) < 1e-6);
        // frozen from an independent dense-eigensolver evaluation
        CHECK(g.values[0].real() == doctest::Approx(1.4071851061691056e-4).epsilon(1e-9));
        CHECK(std::abs(g.values[0].imag()) < 1e-16);
    }
    SUBCASE("tracks the low-temperature cosine within 5 percent") {
        const JunctionParams p{1.0, 0.01};
        std::vector<double> grid;
        for (int i = 0; i <= 2000; ++i) grid.push_back(100.0 * i / 2000.0);
        auto g = junction::exact_correlation(p, 20, 50.0, grid);
        const double amp = 0.5 * p.lambda * p.lambda;
        for (std::size_t i = 0; i < grid.size(); ++i) {
            CHECK(std::abs(g.values[i].real() - amp * std::cos(grid[i])) <= 0.05 * amp);
        }
    }
    SUBCASE("hermiticity G(-t) = G(t)*") {
        const JunctionParams p{1.0, 0.05};
        std::vector<double> pm = {-3.0, -1.0, 1.0, 3.0};
        auto g = junction::exact_correlation(p, 16, 2.0, pm);
        CHECK(std::abs(g.values[0] - std::conj(g.values[3])) < 1e-12);
        CHECK(std::abs(g.values[1] - std::conj(g.values[2])) < 1e-12);
    }
    SUBCASE("G(0) is a nonnegative variance") {
        auto g = junction::exact_correlation({1.0, 0.3}, 16, 1.0, {0.0});
        CHECK(g.values[0].real() >= 0.0);
    }
    SUBCASE("free rotor correlator is the constant high-T value") {
        const JunctionParams p{1.0, 0.0};
        auto g = junction::exact_correlation(p, 20, 1.0, times);
        const auto high_t = perturbation::g_high_t(p, 1.0);
        for (const auto& v : g.values) {
            CHECK(std::abs(v - high_t) < 1e-12);
        }
    }
    SUBCASE("cutoff warning for hot chains") {
        auto g = junction::exact_correlation({1.0, 0.0}, 4, 1e-3, {0.0});
        CHECK(g.meta.cutoff_warning);
    }
    SUBCASE("cutoff convergence: doubling n_max changes nothing") {
        const JunctionParams p{1.0, 0.1};
        std::vector<double> grid = {0.0, 1.0, 5.0, 20.0};
        auto g20 = junction::exact_correlation(p, 20, 1.0, grid);
        auto g40 = junction::exact_correlation(p, 40, 1.0, grid);
        const double scale = std::abs(g20.values[0]);
        for (std::size_t i = 0; i < grid.size(); ++i) {
            CHECK(std::abs(g20.values[i] - g40.values[i]) < 1e-10 * scale);
        }
    }
    SUBCASE("beta <= 0 rejected") {
        CHECK_THROWS_AS(junction::exact_correlation({1.0, 0.1}, 8, 0.0, {0.0}),
                        std::invalid_argument);
    }
}

TEST_CASE("thermal charge expectation vanishes by symmetry") {
    CHECK(junction::thermal_charge_expectation({1.0, 0.0}, 20, 2.0) == 0.0);
    CHECK(std::abs(junction::thermal_charge_expectation({1.0, 0.5}, 20, 1.0)) < 1e-12);
    CHECK(std::abs(junction::thermal_charge_expectation({2.0, 0.2}, 14, 0.3)) < 1e-12);
}
