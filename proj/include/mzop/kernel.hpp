#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "mzop/model.hpp"

namespace mzop {

/// Sampled equilibrium autocorrelation K0(k*dt) of one resolved component of
/// the vector field, with standard errors (over members) and the number of
/// products averaged per lag.
struct KernelTable {
    int component = 1;   // 1-based resolved index j
    double dt = 0.0;     // lag spacing == integration step
    std::vector<double> values;
    std::vector<double> stderr_;
    std::vector<long> n_products;
    // provenance
    std::uint64_t seed = 0;
    long n_members = 0;
    double temperature = 1.0;
    double horizon = 0.0;  // integration length per member

    long max_lag() const { return static_cast<long>(values.size()) - 1; }
    void validate() const;
};

struct KernelOptions {
    int component = 1;
    long n_members = 10000;
    double dt = 0.01;
    long n_steps = 2000;     // integration steps per member (horizon = n_steps*dt)
    long max_lag_steps = 1000;
    std::uint64_t seed = 0;
    int threads = 0;
};

/// Monte-Carlo estimate of K0_j(tau) = E[R_j(phi(t+tau)) R_j(phi(t))]:
/// members start from equilibrium samples (stream_id = member index), the
/// full system is integrated, r_j(t) = R_j(phi(t)) is recorded, and for each
/// lag k the product r_j(t) r_j(t+k dt) is averaged over all t-nodes of the
/// trajectory and then over members. Standard errors are computed across the
/// member-level time averages (members are independent; nodes within one
/// member are not). Deterministic for any thread count.
KernelTable estimate_k0(const ModelSystem& model, const KernelOptions& opts);

/// K0 at arbitrary lag in [0, max_lag*dt] by linear interpolation between
/// adjacent lag nodes (exact at nodes). Out-of-range lags throw
/// KernelRangeError: the memory solver must never extrapolate.
double k0_lookup(const KernelTable& table, double tau);

/// Frozen-w two-time kernel K(t,s) = K0(t-s) - w(t) w(s), 0 <= s <= t.
double frozen_kernel(const KernelTable& table, const std::function<double(double)>& w,
                     double t, double s);

/// Kernel-table file: '# key=value' meta block, then 'lag,value,stderr,n_products'
/// rows with round-trip double formatting. extra_meta lines (already formatted
/// as key=value) are echoed before the table's own meta.
void write_kernel_table(const std::string& path, const KernelTable& table,
                        const std::vector<std::pair<std::string, std::string>>& extra_meta = {});
KernelTable read_kernel_table(const std::string& path);

}  // namespace mzop
