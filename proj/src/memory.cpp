#include "mzop/memory.hpp"

#include <cmath>
#include <string>

namespace mzop {

namespace {

double closure1(const MemoryModel& model, std::span<const double> y) {
    if (model.w_mode == WMode::None) return 0.0;
    std::vector<double> out(y.size());
    model.model->closure(y, out);
    return out[0];
}

void check_model(const MemoryModel& model) {
    if (model.model == nullptr) throw ContractViolation("MemoryModel: no model");
    model.table.validate();
    if (model.model->resolved_count() != 2)
        throw ContractViolation("memory solver supports the 2-component resolved system");
}

}  // namespace

std::vector<double> memory_rhs(long t_index, std::span<const double> y, const HistoryBuffer& hist,
                               const MemoryModel& model) {
    check_model(model);
    if (y.size() != 2) throw ContractViolation("memory_rhs: expected 2 components");
    if (static_cast<long>(hist.y1.size()) < t_index + 1 ||
        static_cast<long>(hist.w.size()) < t_index + 1)
        throw ContractViolation("memory_rhs: history does not cover nodes 0..t_index");
    if (t_index > model.table.max_lag())
        throw HorizonError("memory_rhs: t beyond kernel horizon (lag " + std::to_string(t_index) +
                           " > " + std::to_string(model.table.max_lag()) +
                           "); estimate the kernel with a larger max lag");

    const double dt = model.table.dt;
    const double wt = model.w_mode == WMode::Full || model.w_mode == WMode::NoKernelProduct
                          ? hist.w[static_cast<std::size_t>(t_index)]
                          : 0.0;
    const bool with_product = model.w_mode == WMode::Full;

    // Composite trapezoid over the history grid; node-exact kernel values.
    double integral = 0.0;
    if (t_index > 0) {
        for (long s = 0; s <= t_index; ++s) {
            double kern = model.table.values[static_cast<std::size_t>(t_index - s)];
            if (with_product) kern -= wt * hist.w[static_cast<std::size_t>(s)];
            double term = kern * hist.y1[static_cast<std::size_t>(s)];
            integral += (s == 0 || s == t_index) ? 0.5 * term : term;
        }
        integral *= dt;
    }

    double markov = model.w_mode == WMode::None ? 0.0 : wt;
    double d1 = markov - integral;
    double d2 = model.sign == SignConvention::ConsistentWithFullSystem ? y[0] : -y[0];
    return {d1, d2};
}

Trajectory solve_memory(const ResolvedPoint& y0, const MemoryModel& model, double dt,
                        long n_steps) {
    check_model(model);
    if (y0.coords.size() != 2) throw ContractViolation("solve_memory: expected 2 components");
    if (n_steps < 0) throw ContractViolation("solve_memory: n_steps must be >= 0");
    if (dt != model.table.dt)
        throw ContractViolation("solve_memory: dt must equal the kernel table dt (got " +
                                std::to_string(dt) + " vs " + std::to_string(model.table.dt) + ")");
    if (n_steps > model.table.max_lag())
        throw HorizonError("solve_memory: horizon " + std::to_string(dt * n_steps) +
                           " exceeds kernel table range " +
                           std::to_string(dt * model.table.max_lag()) +
                           "; estimate the kernel with a larger max lag");

    Trajectory traj;
    traj.t0 = 0.0;
    traj.dt = dt;
    traj.dim = 2;
    traj.states.reserve(static_cast<std::size_t>(n_steps + 1) * 2);

    std::vector<double> y = y0.coords;
    traj.states.insert(traj.states.end(), y.begin(), y.end());

    HistoryBuffer hist;
    hist.y1.reserve(static_cast<std::size_t>(n_steps + 1));
    hist.w.reserve(static_cast<std::size_t>(n_steps + 1));
    hist.y1.push_back(y[0]);
    hist.w.push_back(closure1(model, y));

    for (long n = 0; n < n_steps; ++n) {
        std::vector<double> f1 = memory_rhs(n, y, hist, model);
        // predictor node at t_{n+1}, provisional y1 and w
        std::vector<double> yp = {y[0] + dt * f1[0], y[1] + dt * f1[1]};
        hist.y1.push_back(yp[0]);
        hist.w.push_back(closure1(model, yp));
        std::vector<double> f2 = memory_rhs(n + 1, yp, hist, model);
        y[0] += 0.5 * dt * (f1[0] + f2[0]);
        y[1] += 0.5 * dt * (f1[1] + f2[1]);
        if (!std::isfinite(y[0]) || !std::isfinite(y[1]))
            throw BlowupError("solve_memory: state became non-finite at t=" +
                                  std::to_string(dt * (n + 1)),
                              dt * static_cast<double>(n + 1), n + 1);
        // commit the corrected node
        hist.y1.back() = y[0];
        hist.w.back() = closure1(model, y);
        traj.states.insert(traj.states.end(), y.begin(), y.end());
    }
    return traj;
}

}  // namespace mzop
