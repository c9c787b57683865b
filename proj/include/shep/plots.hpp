#pragma once

#include <filesystem>
#include <vector>

#include "shep/engine.hpp"
#include "shep/scenario.hpp"
#include "shep/trace.hpp"

namespace shep {

/// Radius/chi series recomputed from a trace (one row per sampled time).
struct TraceSeries {
    std::vector<double> t;
    std::vector<double> herder_mean;
    std::vector<double> herder_std;
    std::vector<double> target_mean;
    std::vector<double> target_std;
    std::vector<double> chi;
};

TraceSeries series_from_trace(const SimulationTrace& trace, double goal_radius);

/**
 * Static plot artifacts for one run:
 *   trajectory.svg    agent paths, time-gradient colored
 *   radii.svg         mean distance-to-goal bands + goal radius + chi inset
 *   scene_initial.svg / scene_final.svg   snapshots
 *   radii_series.csv  the plotted series as delimited text (per step)
 */
void emit_plots(const SimulationTrace& trace, const RunMetrics& metrics,
                const ScenarioConfig& cfg, const std::filesystem::path& out_dir);

} // namespace shep
