#pragma once

#include <vector>

#include "mzop/integrator.hpp"
#include "mzop/kernel.hpp"
#include "mzop/model.hpp"

namespace mzop {

/// Sign of the dy2/dt equation. PaperExample2 uses dy2/dt = -y1, which
/// contradicts both the full system and the first-order closure
/// (dy2/dt = +y1); the consistent sign is the default and the alternative
/// stays selectable.
enum class SignConvention { ConsistentWithFullSystem, PaperExample2 };

/// Which roles the Markovian forcing w plays in the right-hand side. The
/// degenerate modes exist for verification: NoKernelProduct reduces the
/// equation to first-order optimal prediction when the kernel table is zero,
/// and None yields pure-memory manufactured problems.
enum class WMode { Full, NoKernelProduct, None };

struct MemoryModel {
    KernelTable table;
    const ModelSystem* model = nullptr;
    SignConvention sign = SignConvention::ConsistentWithFullSystem;
    WMode w_mode = WMode::Full;
};

/// Grid-aligned past values of y1 and of the forcing w(t_k); grows with the
/// solution as the solver commits nodes.
struct HistoryBuffer {
    std::vector<double> y1;
    std::vector<double> w;
};

/// Right-hand side of the non-Markovian system at node t_index:
///   dy1/dt = w(t) - Integral_0^t [K0(t-s) - w(t) w(s)] y1(s) ds
///   dy2/dt = +-y1
/// with w(t) the first closure component evaluated at the solution itself.
/// hist must cover nodes 0..t_index (the entry at t_index supplies w(t) and
/// the s=t endpoint of the trapezoidal quadrature). Kernel values are read at
/// integral lag offsets only.
std::vector<double> memory_rhs(long t_index, std::span<const double> y, const HistoryBuffer& hist,
                               const MemoryModel& model);

/// Heun (explicit trapezoidal) predictor-corrector solve; the history
/// quadrature is the composite trapezoidal rule on the same grid, so no
/// kernel interpolation ever happens. dt must equal table.dt and the full
/// time range must stay within the table's lag range.
Trajectory solve_memory(const ResolvedPoint& y0, const MemoryModel& model, double dt,
                        long n_steps);

}  // namespace mzop
