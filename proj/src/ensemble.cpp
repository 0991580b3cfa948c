#include "mzop/ensemble.hpp"

#include <cmath>
#include <string>

#include "mzop/integrator.hpp"
#include "mzop/parallel.hpp"

namespace mzop {

namespace {
constexpr long kBlockSize = 64;

struct StatBlock {
    std::vector<double> sum;    // per node*comp
    std::vector<double> sumsq;  // per node*comp
};
}  // namespace

EnsembleStats ensemble_truth(const ModelSystem& model, const ResolvedPoint& r,
                             const EnsembleOptions& opts) {
    if (opts.n_members < 1) throw ContractViolation("ensemble_truth: n_members must be >= 1");
    if (!(opts.dt > 0.0)) throw ContractViolation("ensemble_truth: dt must be > 0");
    if (opts.n_steps < 0) throw ContractViolation("ensemble_truth: n_steps must be >= 0");
    if (static_cast<int>(r.coords.size()) != model.resolved_count())
        throw ContractViolation("ensemble_truth: resolved point dimension mismatch");

    const int m = model.resolved_count();
    const long nodes = opts.n_steps + 1;
    const std::size_t cells = static_cast<std::size_t>(nodes) * m;

    std::vector<double> total_sum(cells, 0.0), total_sumsq(cells, 0.0);

    auto field = [&model](double, std::span<const double> y, std::span<double> dydt) {
        model.vector_field(y, dydt);
    };

    blocked_reduce<StatBlock>(
        opts.n_members, resolve_threads(opts.threads), kBlockSize,
        [&](StatBlock& blk, long i) {
            if (blk.sum.empty()) {
                blk.sum.assign(cells, 0.0);
                blk.sumsq.assign(cells, 0.0);
            }
            PhasePoint p = model.sample_conditional(
                RngState{opts.seed, static_cast<std::uint64_t>(i)}, r);
            std::vector<double> y = p.coords;
            Rk4Scratch scratch;
            for (long k = 0; k < nodes; ++k) {
                if (k > 0) {
                    double t = opts.dt * static_cast<double>(k - 1);
                    rk4_step(field, t, opts.dt, y, scratch);
                    if (!detail::all_finite(std::span<const double>(y)))
                        throw BlowupError("ensemble_truth: member " + std::to_string(i) +
                                              " blew up at t=" + std::to_string(opts.dt * k),
                                          opts.dt * static_cast<double>(k), k, i);
                }
                for (int c = 0; c < m; ++c) {
                    double v = y[static_cast<std::size_t>(c)];
                    std::size_t cell = static_cast<std::size_t>(k) * m + c;
                    blk.sum[cell] += v;
                    blk.sumsq[cell] += v * v;
                }
            }
        },
        [&](StatBlock& blk) {
            if (blk.sum.empty()) return;
            for (std::size_t c = 0; c < cells; ++c) {
                total_sum[c] += blk.sum[c];
                total_sumsq[c] += blk.sumsq[c];
            }
        });

    EnsembleStats stats;
    stats.t0 = 0.0;
    stats.dt = opts.dt;
    stats.m = m;
    stats.n_members = opts.n_members;
    stats.mean.resize(cells);
    stats.stderr_.resize(cells);
    const double n = static_cast<double>(opts.n_members);
    for (std::size_t c = 0; c < cells; ++c) {
        double mean = total_sum[c] / n;
        stats.mean[c] = mean;
        if (opts.n_members > 1) {
            double var = (total_sumsq[c] - n * mean * mean) / (n - 1.0);
            stats.stderr_[c] = var > 0.0 ? std::sqrt(var / n) : 0.0;
        } else {
            stats.stderr_[c] = 0.0;
        }
    }
    // Conditioning is exact: every member starts from the same resolved
    // values, so node 0 carries them with zero spread (the accumulated sums
    // would only add rounding noise here).
    for (int c = 0; c < m; ++c) {
        stats.mean[static_cast<std::size_t>(c)] = r.coords[static_cast<std::size_t>(c)];
        stats.stderr_[static_cast<std::size_t>(c)] = 0.0;
    }
    return stats;
}

}  // namespace mzop
