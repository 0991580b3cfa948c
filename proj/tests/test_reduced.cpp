#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "mzop/reduced.hpp"
#include "mzop/rng.hpp"

using namespace mzop;

namespace {
const CoupledOscillators4D model;
const ReducedSystem galerkin{ReducedKind::Galerkin, &model};
const ReducedSystem op1{ReducedKind::FirstOrderOP, &model};

double reduced_hamiltonian(std::span<const double> y, double T = 1.0) {
    return 0.5 * y[0] * y[0] + 0.5 * y[1] * y[1] + 0.5 * T * std::log(1.0 + y[1] * y[1]);
}
}  // namespace

TEST_CASE("reduced right-hand sides") {
    CHECK(reduced_rhs(galerkin, ResolvedPoint{{1.0, 0.0}}) == std::vector<double>{0.0, 1.0});
    CHECK(reduced_rhs(galerkin, ResolvedPoint{{0.0, 2.0}}) == std::vector<double>{-2.0, 0.0});
    auto f = reduced_rhs(op1, ResolvedPoint{{0.0, 1.0}});
    CHECK(f[0] == doctest::Approx(-1.5).epsilon(1e-15));
    CHECK(f[1] == 0.0);
    CHECK(reduced_rhs(op1, ResolvedPoint{{0.7, 0.0}}) == std::vector<double>{0.0, 0.7});
}

TEST_CASE("Galerkin reproduces the analytic rotation") {
    Trajectory t = solve_reduced(galerkin, ResolvedPoint{{1.0, 0.0}}, 0.01, 1000);
    double worst = 0.0;
    for (long k = 0; k < t.n_nodes(); ++k) {
        double tk = t.time(k);
        worst = std::max(worst, std::abs(t.node(k)[0] - std::cos(tk)));
        worst = std::max(worst, std::abs(t.node(k)[1] - std::sin(tk)));
    }
    CHECK(worst <= 1e-8);
}

TEST_CASE("first-order OP conserves its reduced Hamiltonian") {
    // d/dt [y1^2/2 + y2^2/2 + (T/2) log(1+y2^2)] = y1*closure1 + y2*y1
    //   + T y2 y1/(1+y2^2) = 0 along the closure flow.
    SUBCASE("from (1,0) over [0,20]") {
        Trajectory t = solve_reduced(op1, ResolvedPoint{{1.0, 0.0}}, 0.01, 2000);
        double h0 = reduced_hamiltonian(t.node(0));
        double worst = 0.0;
        for (long k = 0; k < t.n_nodes(); ++k)
            worst = std::max(worst, std::abs(reduced_hamiltonian(t.node(k)) - h0));
        CHECK(worst <= 1e-8);
    }
    SUBCASE("20 random initial conditions in [-2,2]^2") {
        Rng rng(RngState{404, 0});
        for (int trial = 0; trial < 20; ++trial) {
            ResolvedPoint y0{{4.0 * rng.uniform() - 2.0, 4.0 * rng.uniform() - 2.0}};
            Trajectory t = solve_reduced(op1, y0, 0.01, 2000);
            double h0 = reduced_hamiltonian(t.node(0));
            double worst = 0.0;
            for (long k = 0; k < t.n_nodes(); ++k)
                worst = std::max(worst, std::abs(reduced_hamiltonian(t.node(k)) - h0));
            CHECK(worst <= 1e-8);
        }
    }
    SUBCASE("general temperature") {
        CoupledOscillators4D m2(2.0);
        ReducedSystem op1_t2{ReducedKind::FirstOrderOP, &m2};
        Trajectory t = solve_reduced(op1_t2, ResolvedPoint{{1.0, 0.5}}, 0.01, 1000);
        double h0 = reduced_hamiltonian(t.node(0), 2.0);
        double worst = 0.0;
        for (long k = 0; k < t.n_nodes(); ++k)
            worst = std::max(worst, std::abs(reduced_hamiltonian(t.node(k), 2.0) - h0));
        CHECK(worst <= 1e-8);
    }
}

TEST_CASE("the origin is a fixed point of the OP system") {
    Trajectory t = solve_reduced(op1, ResolvedPoint{{0.0, 0.0}}, 0.01, 100);
    for (long k = 0; k < t.n_nodes(); ++k) {
        CHECK(t.node(k)[0] == 0.0);
        CHECK(t.node(k)[1] == 0.0);
    }
}
