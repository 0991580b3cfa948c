#include "mzop/reduced.hpp"

namespace mzop {

void reduced_rhs(const ReducedSystem& sys, std::span<const double> y, std::span<double> out) {
    if (sys.model == nullptr) throw ContractViolation("reduced_rhs: no model");
    const ModelSystem& model = *sys.model;
    const int m = model.resolved_count();
    if (static_cast<int>(y.size()) != m || static_cast<int>(out.size()) != m)
        throw ContractViolation("reduced_rhs: resolved dimension mismatch");

    if (sys.kind == ReducedKind::FirstOrderOP) {
        model.closure(y, out);
        return;
    }
    // Galerkin: substitute x~ = 0 into the resolved components of R.
    std::vector<double> full(static_cast<std::size_t>(model.dimension()), 0.0);
    std::vector<double> field(static_cast<std::size_t>(model.dimension()));
    for (int c = 0; c < m; ++c) full[static_cast<std::size_t>(c)] = y[static_cast<std::size_t>(c)];
    model.vector_field(full, field);
    for (int c = 0; c < m; ++c) out[static_cast<std::size_t>(c)] = field[static_cast<std::size_t>(c)];
}

std::vector<double> reduced_rhs(const ReducedSystem& sys, const ResolvedPoint& y) {
    std::vector<double> out(y.coords.size());
    reduced_rhs(sys, y.coords, out);
    return out;
}

Trajectory solve_reduced(const ReducedSystem& sys, const ResolvedPoint& y0, double dt,
                         long n_steps) {
    auto f = [&sys](double, std::span<const double> y, std::span<double> dydt) {
        reduced_rhs(sys, y, dydt);
    };
    return integrate(f, std::span<const double>(y0.coords), 0.0, dt, n_steps);
}

}  // namespace mzop
