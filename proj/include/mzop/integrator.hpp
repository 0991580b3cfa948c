#pragma once

#include <cmath>
#include <span>
#include <string>
#include <vector>

#include "mzop/errors.hpp"

namespace mzop {

/// States of one integration on the uniform grid t0 + k*dt, k = 0..n_steps.
/// Row-major storage, one row per node.
struct Trajectory {
    double t0 = 0.0;
    double dt = 0.0;
    int dim = 0;
    std::vector<double> states;

    long n_nodes() const { return dim > 0 ? static_cast<long>(states.size()) / dim : 0; }
    double time(long k) const { return t0 + static_cast<double>(k) * dt; }
    std::span<const double> node(long k) const {
        return std::span<const double>(states).subspan(static_cast<std::size_t>(k) * dim,
                                                       static_cast<std::size_t>(dim));
    }
};

namespace detail {
inline bool all_finite(std::span<const double> v) {
    for (double x : v)
        if (!std::isfinite(x)) return false;
    return true;
}
}  // namespace detail

/// Scratch buffers for rk4_step, sized on first use.
struct Rk4Scratch {
    std::vector<double> k1, k2, k3, k4, tmp;
    void resize(std::size_t n) {
        k1.resize(n); k2.resize(n); k3.resize(n); k4.resize(n); tmp.resize(n);
    }
};

/// One classical RK4 update of y at time t. f(t, y, dydt) evaluates the
/// vector field. y is updated in place.
template <class F>
void rk4_step(F&& f, double t, double dt, std::vector<double>& y, Rk4Scratch& s) {
    const std::size_t n = y.size();
    s.resize(n);
    f(t, std::span<const double>(y), std::span<double>(s.k1));
    for (std::size_t i = 0; i < n; ++i) s.tmp[i] = y[i] + 0.5 * dt * s.k1[i];
    f(t + 0.5 * dt, std::span<const double>(s.tmp), std::span<double>(s.k2));
    for (std::size_t i = 0; i < n; ++i) s.tmp[i] = y[i] + 0.5 * dt * s.k2[i];
    f(t + 0.5 * dt, std::span<const double>(s.tmp), std::span<double>(s.k3));
    for (std::size_t i = 0; i < n; ++i) s.tmp[i] = y[i] + dt * s.k3[i];
    f(t + dt, std::span<const double>(s.tmp), std::span<double>(s.k4));
    for (std::size_t i = 0; i < n; ++i)
        y[i] += (dt / 6.0) * (s.k1[i] + 2.0 * s.k2[i] + 2.0 * s.k3[i] + s.k4[i]);
}

/// Fixed-step RK4 trajectory with n_steps+1 nodes; node 0 is y0.
/// Throws BlowupError (with time and step index) if the state leaves the
/// finite range.
template <class F>
Trajectory integrate(F&& f, std::span<const double> y0, double t0, double dt, long n_steps) {
    if (n_steps < 0) throw ContractViolation("integrate: n_steps must be >= 0");
    if (!(dt > 0.0)) throw ContractViolation("integrate: dt must be > 0");

    Trajectory traj;
    traj.t0 = t0;
    traj.dt = dt;
    traj.dim = static_cast<int>(y0.size());
    traj.states.reserve(static_cast<std::size_t>(n_steps + 1) * y0.size());
    traj.states.insert(traj.states.end(), y0.begin(), y0.end());

    std::vector<double> y(y0.begin(), y0.end());
    Rk4Scratch scratch;
    for (long k = 0; k < n_steps; ++k) {
        double t = t0 + static_cast<double>(k) * dt;
        rk4_step(f, t, dt, y, scratch);
        if (!detail::all_finite(y))
            throw BlowupError("integrate: state became non-finite at t=" +
                                  std::to_string(t + dt) + " (step " + std::to_string(k + 1) + ")",
                              t + dt, k + 1);
        traj.states.insert(traj.states.end(), y.begin(), y.end());
    }
    return traj;
}

}  // namespace mzop
