#include "mzop/kernel.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "mzop/csv.hpp"
#include "mzop/integrator.hpp"
#include "mzop/parallel.hpp"

namespace mzop {

void KernelTable::validate() const {
    if (!(dt > 0.0)) throw ContractViolation("KernelTable: dt must be > 0");
    if (values.empty()) throw ContractViolation("KernelTable: empty");
    if (values.size() != stderr_.size() || values.size() != n_products.size())
        throw ContractViolation("KernelTable: column length mismatch");
    for (long n : n_products)
        if (n <= 0) throw ContractViolation("KernelTable: n_products must be positive");
    for (double s : stderr_)
        if (s < 0.0) throw ContractViolation("KernelTable: negative stderr");
}

namespace {
constexpr long kBlockSize = 64;

struct LagBlock {
    std::vector<double> sum;    // sum over members of the member time-average, per lag
    std::vector<double> sumsq;  // and its square
};
}  // namespace

KernelTable estimate_k0(const ModelSystem& model, const KernelOptions& opts) {
    if (opts.max_lag_steps > opts.n_steps)
        throw ContractViolation("estimate_k0: max_lag_steps must be <= n_steps");
    if (opts.max_lag_steps < 0) throw ContractViolation("estimate_k0: max_lag_steps must be >= 0");
    if (opts.component < 1 || opts.component > model.resolved_count())
        throw ContractViolation("estimate_k0: component out of range");
    if (opts.n_members < 1) throw ContractViolation("estimate_k0: n_members must be >= 1");
    if (!(opts.dt > 0.0)) throw ContractViolation("estimate_k0: dt must be > 0");

    const long nodes = opts.n_steps + 1;
    const long lags = opts.max_lag_steps + 1;
    const int dim = model.dimension();
    const int jc = opts.component - 1;

    std::vector<double> total_sum(static_cast<std::size_t>(lags), 0.0);
    std::vector<double> total_sumsq(static_cast<std::size_t>(lags), 0.0);

    auto field = [&model](double, std::span<const double> y, std::span<double> dydt) {
        model.vector_field(y, dydt);
    };

    blocked_reduce<LagBlock>(
        opts.n_members, resolve_threads(opts.threads), kBlockSize,
        [&](LagBlock& blk, long i) {
            if (blk.sum.empty()) {
                blk.sum.assign(static_cast<std::size_t>(lags), 0.0);
                blk.sumsq.assign(static_cast<std::size_t>(lags), 0.0);
            }
            PhasePoint p = model.sample_equilibrium(
                RngState{opts.seed, static_cast<std::uint64_t>(i)});
            std::vector<double> y = p.coords;
            std::vector<double> field_val(static_cast<std::size_t>(dim));
            std::vector<double> r(static_cast<std::size_t>(nodes));
            Rk4Scratch scratch;
            for (long k = 0; k < nodes; ++k) {
                if (k > 0) {
                    rk4_step(field, opts.dt * static_cast<double>(k - 1), opts.dt, y, scratch);
                    if (!detail::all_finite(std::span<const double>(y)))
                        throw BlowupError("estimate_k0: member " + std::to_string(i) +
                                              " blew up at t=" + std::to_string(opts.dt * k),
                                          opts.dt * static_cast<double>(k), k, i);
                }
                model.vector_field(y, field_val);
                r[static_cast<std::size_t>(k)] = field_val[static_cast<std::size_t>(jc)];
            }
            // Time average of r(t) r(t+k dt) over all admissible nodes.
            for (long lag = 0; lag < lags; ++lag) {
                double acc = 0.0;
                long count = nodes - lag;
                const double* a = r.data();
                const double* b = r.data() + lag;
                for (long t = 0; t < count; ++t) acc += a[t] * b[t];
                double avg = acc / static_cast<double>(count);
                blk.sum[static_cast<std::size_t>(lag)] += avg;
                blk.sumsq[static_cast<std::size_t>(lag)] += avg * avg;
            }
        },
        [&](LagBlock& blk) {
            if (blk.sum.empty()) return;
            for (long lag = 0; lag < lags; ++lag) {
                total_sum[static_cast<std::size_t>(lag)] += blk.sum[static_cast<std::size_t>(lag)];
                total_sumsq[static_cast<std::size_t>(lag)] += blk.sumsq[static_cast<std::size_t>(lag)];
            }
        });

    KernelTable table;
    table.component = opts.component;
    table.dt = opts.dt;
    table.seed = opts.seed;
    table.n_members = opts.n_members;
    table.temperature = model.params().temperature;
    table.horizon = opts.dt * static_cast<double>(opts.n_steps);
    table.values.resize(static_cast<std::size_t>(lags));
    table.stderr_.resize(static_cast<std::size_t>(lags));
    table.n_products.resize(static_cast<std::size_t>(lags));
    const double M = static_cast<double>(opts.n_members);
    for (long lag = 0; lag < lags; ++lag) {
        std::size_t li = static_cast<std::size_t>(lag);
        double mean = total_sum[li] / M;
        table.values[li] = mean;
        if (opts.n_members > 1) {
            double var = (total_sumsq[li] - M * mean * mean) / (M - 1.0);
            table.stderr_[li] = var > 0.0 ? std::sqrt(var / M) : 0.0;
        } else {
            table.stderr_[li] = 0.0;
        }
        table.n_products[li] = opts.n_members * (nodes - lag);
    }
    return table;
}

double k0_lookup(const KernelTable& table, double tau) {
    long L = table.max_lag();
    double range = table.dt * static_cast<double>(L);
    if (!(tau >= 0.0) || tau > range)
        throw KernelRangeError("k0_lookup: lag " + std::to_string(tau) +
                               " outside table range [0, " + std::to_string(range) + "]");
    double pos = tau / table.dt;
    long k = static_cast<long>(pos);
    if (k >= L) return table.values[static_cast<std::size_t>(L)];
    double frac = pos - static_cast<double>(k);
    if (frac == 0.0) return table.values[static_cast<std::size_t>(k)];
    return (1.0 - frac) * table.values[static_cast<std::size_t>(k)] +
           frac * table.values[static_cast<std::size_t>(k + 1)];
}

double frozen_kernel(const KernelTable& table, const std::function<double(double)>& w,
                     double t, double s) {
    if (!(s >= 0.0) || !(s <= t)) throw ContractViolation("frozen_kernel: need 0 <= s <= t");
    return k0_lookup(table, t - s) - w(t) * w(s);
}

void write_kernel_table(const std::string& path, const KernelTable& table,
                        const std::vector<std::pair<std::string, std::string>>& extra_meta) {
    table.validate();
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    for (const auto& [k, v] : extra_meta) out << "# " << k << "=" << v << "\n";
    out << "# component=" << table.component << "\n";
    out << "# dt=" << fmt_g17(table.dt) << "\n";
    out << "# seed=" << table.seed << "\n";
    out << "# n_members=" << table.n_members << "\n";
    out << "# temperature=" << fmt_g17(table.temperature) << "\n";
    out << "# horizon=" << fmt_g17(table.horizon) << "\n";
    out << "lag,value,stderr,n_products\n";
    for (std::size_t k = 0; k < table.values.size(); ++k)
        out << k << "," << fmt_g17(table.values[k]) << "," << fmt_g17(table.stderr_[k]) << ","
            << table.n_products[k] << "\n";
    if (!out) throw std::runtime_error("write failed: " + path);
}

KernelTable read_kernel_table(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open: " + path);
    KernelTable table;
    std::string line;
    bool header_seen = false;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (line[0] == '#') {
            auto eq = line.find('=');
            if (eq == std::string::npos) continue;
            std::string key = line.substr(1, eq - 1);
            std::string val = line.substr(eq + 1);
            while (!key.empty() && key.front() == ' ') key.erase(key.begin());
            while (!key.empty() && key.back() == ' ') key.pop_back();
            if (key == "component") table.component = std::stoi(val);
            else if (key == "dt") table.dt = std::stod(val);
            else if (key == "seed") table.seed = std::stoull(val);
            else if (key == "n_members") table.n_members = std::stol(val);
            else if (key == "temperature") table.temperature = std::stod(val);
            else if (key == "horizon") table.horizon = std::stod(val);
            continue;
        }
        if (!header_seen) {  // column header row
            header_seen = true;
            continue;
        }
        std::istringstream ss(line);
        std::string cell;
        std::getline(ss, cell, ',');  // lag index, implicit by position
        std::getline(ss, cell, ',');
        table.values.push_back(std::stod(cell));
        std::getline(ss, cell, ',');
        table.stderr_.push_back(std::stod(cell));
        std::getline(ss, cell, ',');
        table.n_products.push_back(std::stol(cell));
    }
    table.validate();
    return table;
}

}  // namespace mzop
