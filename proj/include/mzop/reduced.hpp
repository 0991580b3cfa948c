#pragma once

#include <span>

#include "mzop/integrator.hpp"
#include "mzop/model.hpp"

namespace mzop {

/// The two memoryless reduced models of the resolved pair.
enum class ReducedKind {
    Galerkin,     // unresolved variables set to zero in the resolved field
    FirstOrderOP  // conditional-expectation closure
};

struct ReducedSystem {
    ReducedKind kind = ReducedKind::Galerkin;
    const ModelSystem* model = nullptr;
};

/// Right-hand side of the chosen reduced model at y.
/// Galerkin: the resolved components of R with the unresolved block zeroed.
/// FirstOrderOP: the model closure.
void reduced_rhs(const ReducedSystem& sys, std::span<const double> y, std::span<double> out);

std::vector<double> reduced_rhs(const ReducedSystem& sys, const ResolvedPoint& y);

/// RK4 trajectory of the reduced model.
Trajectory solve_reduced(const ReducedSystem& sys, const ResolvedPoint& y0, double dt,
                         long n_steps);

}  // namespace mzop
