#include "mzop/csv.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace mzop {

std::string fmt_g17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

namespace {

void write_meta(std::ostream& out, const MetaLines& meta) {
    for (const auto& [k, v] : meta) out << "# " << k << "=" << v << "\n";
}

struct CsvData {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
};

CsvData read_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open: " + path);
    CsvData data;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ss(line);
        std::string cell;
        if (data.columns.empty()) {
            while (std::getline(ss, cell, ',')) data.columns.push_back(cell);
            continue;
        }
        std::vector<double> row;
        row.reserve(data.columns.size());
        while (std::getline(ss, cell, ',')) row.push_back(std::stod(cell));
        if (row.size() != data.columns.size())
            throw std::runtime_error(path + ": ragged row");
        data.rows.push_back(std::move(row));
    }
    if (data.columns.empty()) throw std::runtime_error(path + ": no header row");
    return data;
}

// Recover t0/dt from a t column written by our writers.
void grid_from_time_column(const CsvData& data, double& t0, double& dt) {
    if (data.rows.empty()) throw std::runtime_error("empty table");
    t0 = data.rows.front()[0];
    dt = data.rows.size() > 1 ? data.rows[1][0] - t0 : 0.0;
}

}  // namespace

void write_samples_csv(const std::string& path, const std::vector<PhasePoint>& samples,
                       const MetaLines& meta) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    write_meta(out, meta);
    int dim = samples.empty() ? 4 : static_cast<int>(samples.front().coords.size());
    for (int c = 0; c < dim; ++c) out << (c ? "," : "") << "x" << (c + 1);
    out << "\n";
    for (const auto& p : samples) {
        for (std::size_t c = 0; c < p.coords.size(); ++c)
            out << (c ? "," : "") << fmt_g17(p.coords[c]);
        out << "\n";
    }
    if (!out) throw std::runtime_error("write failed: " + path);
}

void write_trajectory_csv(const std::string& path, const Trajectory& traj,
                          const MetaLines& meta) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    write_meta(out, meta);
    out << "t";
    for (int c = 0; c < traj.dim; ++c) out << ",y" << (c + 1);
    out << "\n";
    for (long k = 0; k < traj.n_nodes(); ++k) {
        out << fmt_g17(traj.time(k));
        for (double v : traj.node(k)) out << "," << fmt_g17(v);
        out << "\n";
    }
    if (!out) throw std::runtime_error("write failed: " + path);
}

Trajectory read_trajectory_csv(const std::string& path) {
    CsvData data = read_csv(path);
    if (data.columns.empty() || data.columns[0] != "t")
        throw std::runtime_error(path + ": expected first column 't'");
    Trajectory traj;
    traj.dim = static_cast<int>(data.columns.size()) - 1;
    grid_from_time_column(data, traj.t0, traj.dt);
    traj.states.reserve(data.rows.size() * traj.dim);
    for (const auto& row : data.rows)
        for (int c = 0; c < traj.dim; ++c) traj.states.push_back(row[static_cast<std::size_t>(c) + 1]);
    return traj;
}

void write_ensemble_csv(const std::string& path, const EnsembleStats& stats,
                        const MetaLines& meta) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    write_meta(out, meta);
    out << "t";
    for (int c = 0; c < stats.m; ++c) out << ",mean_y" << (c + 1) << ",stderr_y" << (c + 1);
    out << "\n";
    for (long k = 0; k < stats.n_nodes(); ++k) {
        out << fmt_g17(stats.t0 + stats.dt * static_cast<double>(k));
        for (int c = 0; c < stats.m; ++c)
            out << "," << fmt_g17(stats.mean_at(k, c)) << "," << fmt_g17(stats.stderr_at(k, c));
        out << "\n";
    }
    if (!out) throw std::runtime_error("write failed: " + path);
}

EnsembleStats read_ensemble_csv(const std::string& path) {
    CsvData data = read_csv(path);
    if (data.columns.empty() || data.columns[0] != "t")
        throw std::runtime_error(path + ": expected first column 't'");
    if ((data.columns.size() - 1) % 2 != 0)
        throw std::runtime_error(path + ": expected mean/stderr column pairs");
    EnsembleStats stats;
    stats.m = static_cast<int>((data.columns.size() - 1) / 2);
    grid_from_time_column(data, stats.t0, stats.dt);
    for (const auto& row : data.rows) {
        for (int c = 0; c < stats.m; ++c) {
            stats.mean.push_back(row[1 + 2 * static_cast<std::size_t>(c)]);
            stats.stderr_.push_back(row[2 + 2 * static_cast<std::size_t>(c)]);
        }
    }
    return stats;
}

}  // namespace mzop
