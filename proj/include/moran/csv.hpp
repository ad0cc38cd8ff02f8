#pragma once

#include <string>
#include <vector>

#include "moran/experiments.hpp"
#include "moran/trajectory.hpp"

namespace moran {

// 17 significant digits, period decimal separator, locale-independent.
std::string format_real(double v);

// Header: time,mean_fitness,c2,c3,c4,k_c,k_d,k_w,min_class,max_class
// Absent k_c/k_d serialize as empty fields. Rows end with '\n'.
std::string trajectory_csv(const std::vector<TrajectoryRecord>& records);

// Header: N,mu,q,s,replicate,seed,adaptation_rate,rate_sd,mean_c2
// Failed cells leave the last three fields empty.
std::string sweep_csv(const std::vector<SweepCell>& cells);

// Minimal splitter for the unquoted CSV this tool emits; used by tests and
// the plotting layer.
std::vector<std::vector<std::string>> parse_csv(const std::string& text);

void write_text_file(const std::string& path, const std::string& content);

}  // namespace moran
