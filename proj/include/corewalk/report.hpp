#pragma once

#include <iosfwd>
#include <span>
#include <string>

#include "corewalk/experiment.hpp"
#include "corewalk/graph.hpp"

namespace corewalk {

// Shortest round-trip formatting, same across platforms.
std::string format_number(double x);

// Per-repeat rows followed by mean and std rows. Columns:
// method,fraction,repeat,f1,decomp_s,embed_s,prop_s,total_s
void write_report_csv(std::span<const ExperimentReport> reports,
                      std::ostream& out);

// One aggregated row per run of a k0 sweep (baseline first, k0 blank).
// Columns: method,k0,fraction,f1_mean,f1_std,decomp_s,embed_s,prop_s,
// total_s,speedup
void write_sweep_csv(std::span<const ExperimentReport> reports,
                     std::ostream& out);

void write_timing_json(const TimingBreakdown& timing, std::ostream& out);

void write_graph_stats_json(const Graph& built, const BuildStats& stats,
                            std::size_t components, const Graph& lcc,
                            std::ostream& out);

}  // namespace corewalk
