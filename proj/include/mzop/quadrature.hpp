#pragma once

#include <functional>

namespace mzop {

/// Adaptive Gauss-Kronrod 7/15 integration of f over [a,b] to absolute
/// tolerance abs_tol. Throws QuadratureError (with the achieved error
/// estimate) if the interval budget is exhausted first.
double integrate_gk(const std::function<double(double)>& f, double a, double b, double abs_tol);

}  // namespace mzop
