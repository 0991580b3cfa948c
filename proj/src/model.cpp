#include "mzop/model.hpp"

#include <cmath>

#include "mzop/quadrature.hpp"

namespace mzop {

CoupledOscillators4D::CoupledOscillators4D(double temperature) {
    params_.temperature = temperature;
    params_.dimension = 4;
    params_.resolved_count = 2;
    params_.validate();
}

void CoupledOscillators4D::vector_field(std::span<const double> x, std::span<double> out) const {
    if (x.size() != 4 || out.size() != 4)
        throw ContractViolation("vector_field: expected 4 components");
    out[0] = -x[1] * (1.0 + x[3] * x[3]);
    out[1] = x[0];
    out[2] = -x[3] * (1.0 + x[1] * x[1]);
    out[3] = x[2];
}

double CoupledOscillators4D::hamiltonian(std::span<const double> x) const {
    if (x.size() != 4) throw ContractViolation("hamiltonian: expected 4 components");
    return 0.5 * (x[0] * x[0] + x[1] * x[1] + x[2] * x[2] + x[3] * x[3] +
                  x[0] * x[0] * x[2] * x[2]);
}

void CoupledOscillators4D::closure(std::span<const double> resolved,
                                   std::span<double> out) const {
    if (resolved.size() != 2 || out.size() != 2)
        throw ContractViolation("closure: expected 2 resolved components");
    double T = params_.temperature;
    double x2 = resolved[1];
    out[0] = -x2 * (1.0 + T / (1.0 + x2 * x2));
    out[1] = resolved[0];
}

void CoupledOscillators4D::closure_quadrature(std::span<const double> resolved, double abs_tol,
                                              std::span<double> out) const {
    if (resolved.size() != 2 || out.size() != 2)
        throw ContractViolation("closure_quadrature: expected 2 resolved components");
    if (!(abs_tol > 0.0)) throw ContractViolation("closure_quadrature: abs_tol must be > 0");

    double T = params_.temperature;
    double x2 = resolved[1];
    // Conditional density of the coupled momentum given the resolved pair is
    // ~ exp(-x4^2 (1+x2^2) / (2T)); the remaining unresolved integral is a
    // common factor of numerator and denominator and cancels. Truncate at 12
    // conditional sigmas (tail mass ~ e^{-72}) and integrate each half-axis
    // separately: the x4^2 factor vanishes at the origin, so a single pass
    // over a symmetric interval could mistake the integrand for zero.
    double alpha = (1.0 + x2 * x2) / (2.0 * T);
    double cut = 12.0 * std::sqrt(0.5 / alpha);
    auto weight = [alpha](double x4) { return std::exp(-alpha * x4 * x4); };

    auto split = [&](const std::function<double(double)>& f, double tol) {
        return integrate_gk(f, -cut, 0.0, 0.5 * tol) + integrate_gk(f, 0.0, cut, 0.5 * tol);
    };
    double den = split(weight, 0.1 * abs_tol);
    double num = split([&](double x4) { return x2 * x4 * x4 * weight(x4); }, 0.1 * abs_tol * den);
    out[0] = -x2 - num / den;
    out[1] = resolved[0];  // second component of R is resolved, no integral
}

PhasePoint CoupledOscillators4D::sample_equilibrium(RngState state) const {
    Rng rng(state);
    double T = params_.temperature;
    double sd = std::sqrt(T);
    PhasePoint p;
    p.coords.resize(4);
    // Fixed draw order: x2, x4, then x1 by rejection, then x3 | x1.
    p.coords[1] = rng.gaussian(0.0, sd);
    p.coords[3] = rng.gaussian(0.0, sd);
    double x1 = rng.rejection_gaussian(T, [](double z) { return rejection_acceptance(z); });
    p.coords[0] = x1;
    p.coords[2] = rng.gaussian(0.0, std::sqrt(T / (1.0 + x1 * x1)));
    return p;
}

PhasePoint CoupledOscillators4D::sample_conditional(RngState state,
                                                    const ResolvedPoint& r) const {
    check_resolved(r);
    Rng rng(state);
    double T = params_.temperature;
    double x1 = r.coords[0];
    PhasePoint p;
    p.coords.resize(4);
    p.coords[0] = r.coords[0];
    p.coords[1] = r.coords[1];
    // Fixed draw order: x4, then x3.
    p.coords[3] = rng.gaussian(0.0, std::sqrt(T));
    p.coords[2] = rng.gaussian(0.0, std::sqrt(T / (1.0 + x1 * x1)));
    return p;
}

}  // namespace mzop
