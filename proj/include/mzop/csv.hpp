#pragma once

#include <string>
#include <utility>
#include <vector>

#include "mzop/ensemble.hpp"
#include "mzop/integrator.hpp"

namespace mzop {

/// Round-trip double formatting (17 significant digits).
std::string fmt_g17(double x);

using MetaLines = std::vector<std::pair<std::string, std::string>>;

// All writers start the file with '# key=value' comment lines (the run
// configuration echo) followed by a CSV column header.

void write_samples_csv(const std::string& path, const std::vector<PhasePoint>& samples,
                       const MetaLines& meta);

/// Columns t,y1,...,yn.
void write_trajectory_csv(const std::string& path, const Trajectory& traj, const MetaLines& meta);
Trajectory read_trajectory_csv(const std::string& path);

/// Columns t,mean_y1,stderr_y1,...,mean_ym,stderr_ym.
void write_ensemble_csv(const std::string& path, const EnsembleStats& stats, const MetaLines& meta);
EnsembleStats read_ensemble_csv(const std::string& path);

}  // namespace mzop
