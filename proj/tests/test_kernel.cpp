#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>

#include "mzop/integrator.hpp"
#include "mzop/kernel.hpp"
#include "test_support.hpp"

using namespace mzop;

namespace {
const CoupledOscillators4D model;

KernelTable synthetic_table(std::vector<double> values, double dt = 0.01) {
    KernelTable t;
    t.component = 1;
    t.dt = dt;
    t.stderr_.assign(values.size(), 0.0);
    t.n_products.assign(values.size(), 1);
    t.values = std::move(values);
    t.n_members = 1;
    t.horizon = dt * static_cast<double>(values.size() - 1);
    return t;
}
}  // namespace

TEST_CASE("k0_lookup: nodes, midpoints, range") {
    KernelTable t = synthetic_table({2.0, 1.0, -0.5, 0.25});
    CHECK(k0_lookup(t, 0.0) == 2.0);
    CHECK(k0_lookup(t, 0.01) == 1.0);
    CHECK(k0_lookup(t, 0.03) == 0.25);
    CHECK(k0_lookup(t, 0.005) == doctest::Approx(1.5).epsilon(1e-14));
    CHECK(k0_lookup(t, 0.025) == doctest::Approx(-0.125).epsilon(1e-12));
    CHECK_THROWS_AS(k0_lookup(t, 0.04), KernelRangeError);
    CHECK_THROWS_AS(k0_lookup(t, -0.01), KernelRangeError);
}

TEST_CASE("frozen kernel") {
    KernelTable t = synthetic_table({6.0, 5.0, 4.0});
    SUBCASE("w == 0 reduces to the lag lookup") {
        auto zero = [](double) { return 0.0; };
        CHECK(frozen_kernel(t, zero, 0.02, 0.0) == 4.0);
        CHECK(frozen_kernel(t, zero, 0.02, 0.02) == 6.0);
    }
    SUBCASE("equal times subtract w(t)^2") {
        auto w = [](double) { return 0.5; };
        CHECK(frozen_kernel(t, w, 0.01, 0.01) == doctest::Approx(6.0 - 0.25).epsilon(1e-14));
    }
    SUBCASE("K(0,0) equals the lag-0 value when w(0)=0") {
        // the OP1 forcing from (1,0) vanishes at t=0 (closure1 at y2=0)
        auto c = model.closure(ResolvedPoint{{1.0, 0.0}});
        auto w = [&](double) { return c[0]; };
        CHECK(c[0] == 0.0);
        CHECK(frozen_kernel(t, w, 0.0, 0.0) == t.values[0]);
    }
    CHECK_THROWS_AS(frozen_kernel(t, [](double) { return 0.0; }, 0.01, 0.02), ContractViolation);
}

TEST_CASE("estimate_k0 contract checks") {
    KernelOptions opts;
    opts.n_members = 4;
    opts.n_steps = 10;
    opts.max_lag_steps = 20;
    CHECK_THROWS_AS(estimate_k0(model, opts), ContractViolation);
    opts.max_lag_steps = 5;
    opts.component = 3;
    CHECK_THROWS_AS(estimate_k0(model, opts), ContractViolation);
}

TEST_CASE("static consistency at lag 0 through the estimator path") {
    // With a zero-length horizon the time average degenerates to E[R1(x)^2]
    // over fresh equilibrium samples; an independent plain Monte-Carlo
    // estimate with a different seed must agree at 3 combined sigma. The
    // Gaussian-moment value of E[R1(x)^2] under the sampler's measure is 6.
    KernelOptions opts;
    opts.component = 1;
    opts.n_members = 40000;
    opts.n_steps = 0;
    opts.max_lag_steps = 0;
    opts.seed = 900;
    KernelTable t = estimate_k0(model, opts);

    const long M = 40000;
    std::vector<double> r2(M);
    for (long i = 0; i < M; ++i) {
        PhasePoint p = model.sample_equilibrium(RngState{901, static_cast<std::uint64_t>(i)});
        std::vector<double> f(4);
        model.vector_field(p.coords, f);
        r2[i] = f[0] * f[0];
    }
    auto st = test::mean_stderr(r2);
    double combined = std::sqrt(st.stderr_ * st.stderr_ + t.stderr_[0] * t.stderr_[0]);
    CHECK(std::abs(t.values[0] - st.mean) < 3.0 * combined);
    CHECK(std::abs(t.values[0] - 6.0) < 3.0 * combined);
    CHECK(t.n_products[0] == opts.n_members);
}

TEST_CASE("time-averaged estimate: properties on a short run") {
    KernelOptions opts;
    opts.component = 1;
    opts.n_members = 2000;
    opts.dt = 0.01;
    opts.n_steps = 400;
    opts.max_lag_steps = 200;
    opts.seed = 42;
    opts.threads = 2;
    KernelTable t = estimate_k0(model, opts);

    SUBCASE("table shape and meta") {
        CHECK(t.values.size() == 201);
        CHECK(t.n_products[0] == 2000L * 401L);
        CHECK(t.n_products[200] == 2000L * 201L);
        CHECK(t.horizon == doctest::Approx(4.0));
        t.validate();
    }
    SUBCASE("lag 0 dominates the first couple of time units") {
        for (std::size_t k = 1; k < t.values.size(); ++k)
            CHECK(std::abs(t.values[k]) <= std::abs(t.values[0]));
    }
    SUBCASE("deterministic in the thread count") {
        KernelOptions o1 = opts;
        o1.threads = 1;
        KernelOptions o4 = opts;
        o4.threads = 4;
        KernelTable t1 = estimate_k0(model, o1);
        KernelTable t4 = estimate_k0(model, o4);
        CHECK(t1.values == t4.values);
        CHECK(t1.stderr_ == t4.stderr_);
        CHECK(t1.values == t.values);
    }
    SUBCASE("independent of the initial data: two seeds agree pointwise") {
        KernelOptions o2 = opts;
        o2.seed = 43;
        KernelTable u = estimate_k0(model, o2);
        for (std::size_t k = 0; k < t.values.size(); ++k) {
            double combined = std::sqrt(t.stderr_[k] * t.stderr_[k] + u.stderr_[k] * u.stderr_[k]);
            CHECK(std::abs(t.values[k] - u.values[k]) < 3.0 * combined);
        }
    }
    SUBCASE("two-sided products are the same estimate") {
        // r(t) r(t+k) vs r(t+k) r(t): commutative, so the accumulated table
        // must be reproduced exactly by a reversed-product reimplementation
        // on one member series.
        KernelOptions o1 = opts;
        o1.n_members = 1;
        o1.threads = 1;
        KernelTable a = estimate_k0(model, o1);
        // reversed products, independent accumulation
        PhasePoint p = model.sample_equilibrium(RngState{opts.seed, 0});
        auto field = [&](double, std::span<const double> y, std::span<double> d) {
            model.vector_field(y, d);
        };
        Trajectory traj = integrate(field, p.coords, 0.0, opts.dt, opts.n_steps);
        std::vector<double> r(static_cast<std::size_t>(traj.n_nodes()));
        std::vector<double> f(4);
        for (long k = 0; k < traj.n_nodes(); ++k) {
            model.vector_field(traj.node(k), f);
            r[static_cast<std::size_t>(k)] = f[0];
        }
        for (long lag = 0; lag <= opts.max_lag_steps; ++lag) {
            double acc = 0.0;
            for (long s = traj.n_nodes() - 1 - lag; s >= 0; --s)
                acc += r[static_cast<std::size_t>(s + lag)] * r[static_cast<std::size_t>(s)];
            acc /= static_cast<double>(traj.n_nodes() - lag);
            CHECK(acc == doctest::Approx(a.values[static_cast<std::size_t>(lag)]).epsilon(1e-12));
        }
    }
}

TEST_CASE("kernel table round-trips through its file format") {
    KernelOptions opts;
    opts.n_members = 50;
    opts.n_steps = 20;
    opts.max_lag_steps = 10;
    opts.seed = 7;
    KernelTable t = estimate_k0(model, opts);
    auto path = std::filesystem::temp_directory_path() / "mzop_test_kernel.csv";
    write_kernel_table(path.string(), t, {{"note", "round-trip"}});
    KernelTable u = read_kernel_table(path.string());
    CHECK(u.values == t.values);
    CHECK(u.stderr_ == t.stderr_);
    CHECK(u.n_products == t.n_products);
    CHECK(u.component == t.component);
    CHECK(u.dt == t.dt);
    CHECK(u.seed == t.seed);
    CHECK(u.n_members == t.n_members);
    CHECK(u.temperature == t.temperature);
    CHECK(u.horizon == t.horizon);
    std::filesystem::remove(path);
}

TEST_CASE("KernelTable validation") {
    KernelTable t = synthetic_table({1.0, 0.5});
    t.n_products[1] = 0;
    CHECK_THROWS_AS(t.validate(), ContractViolation);
    t = synthetic_table({1.0, 0.5});
    t.stderr_.pop_back();
    CHECK_THROWS_AS(t.validate(), ContractViolation);
}
