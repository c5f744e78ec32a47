#pragma once

#include "spde/config.hpp"
#include "spde/lepage.hpp"

#include <functional>

namespace spde {

// max over grid pairs of |v_i - v_j| / |t_i - t_j|^theta, theta in (0,1).
// Exact over all pairs up to 4096 grid points; beyond that only pairs within
// an index window of 4096 are scanned (the maximizing pairs of rough paths
// sit at short lags, so the window is a controlled approximation).
double holder_quotient(const Path& path, double theta);

// Runs body(0..n-1) on `workers` threads. Bodies write only to their own
// index, so results are independent of scheduling; the first exception is
// rethrown after all threads join.
void parallel_for(std::size_t n, std::size_t workers,
                  const std::function<void(std::size_t)>& body);

void cmd_sample_path(const RunConfig& config);
void cmd_charfn(const RunConfig& config);
void cmd_solve(const RunConfig& config);
void cmd_converge(const RunConfig& config);
void cmd_holder(const RunConfig& config);

}  // namespace spde
