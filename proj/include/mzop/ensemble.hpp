#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "mzop/model.hpp"

namespace mzop {

/// Per-node mean and standard error of the resolved components over a
/// Monte-Carlo ensemble of full-system solutions.
struct EnsembleStats {
    double t0 = 0.0;
    double dt = 0.0;
    int m = 0;  // resolved components per node
    long n_members = 0;
    std::vector<double> mean;    // (n_nodes * m), row-major
    std::vector<double> stderr_; // same layout

    long n_nodes() const { return m > 0 ? static_cast<long>(mean.size()) / m : 0; }
    double mean_at(long node, int comp) const { return mean[static_cast<std::size_t>(node) * m + comp]; }
    double stderr_at(long node, int comp) const { return stderr_[static_cast<std::size_t>(node) * m + comp]; }
};

struct EnsembleOptions {
    long n_members = 10000;
    double dt = 0.01;
    long n_steps = 1000;
    std::uint64_t seed = 0;
    int threads = 0;  // 0 = MZ_THREADS or hardware
};

/// The ensemble "truth": for members i = 0..n-1, draw unresolved initial data
/// from the conditional canonical density given r (stream_id = i), integrate
/// the full system, and accumulate per-node mean and standard error of the
/// resolved components. The reduction is combined in member-index order, so
/// the result is bitwise identical for every thread count.
EnsembleStats ensemble_truth(const ModelSystem& model, const ResolvedPoint& r,
                             const EnsembleOptions& opts);

}  // namespace mzop
