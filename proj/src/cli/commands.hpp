#pragma once

#include <string>

#include "config.hpp"
#include "output.hpp"

namespace polariton::cli {

// File stem shared by every output of a run, e.g. "spectrum" or "rabi_flop".
std::string run_stem(const Job& job);

// Whether the verb has anything to draw for a single point.
bool draws_plots(const Job& job);

PointResult compute_point(const RunConfig& config);
PointResult run_verify(const RunConfig& config, int threads);

}  // namespace polariton::cli
