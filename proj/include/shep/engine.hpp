#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "shep/baseline.hpp"
#include "shep/control.hpp"
#include "shep/scenario.hpp"
#include "shep/trace.hpp"
#include "shep/unicycle.hpp"

namespace shep {

struct HerderAgent {
    Pose pose;
};

struct TargetAgent {
    Pose pose;
    bool captured{false};
};

struct EventCounters {
    long singular_clamps{0};
    long penetrations{0};
    long saturations{0};
    long no_path{0};
};

/// Per-run outputs; the series are sampled every step, index k is time k*dt.
struct RunMetrics {
    double dt{0.0};
    std::vector<double> chi_series;
    std::vector<double> herder_mean;
    std::vector<double> herder_std;
    std::vector<double> target_mean;
    std::vector<double> target_std;
    std::optional<double> t_all_captured;  ///< first time chi reached 1
    double final_chi{0.0};
    bool captured_hold{false};  ///< chi stayed 1 through the trailing hold window
    double min_obstacle_clearance{std::numeric_limits<double>::infinity()};
    double max_wheel_speed{0.0};  ///< embodied/baseline plants only
    EventCounters events;
};

struct RunResult {
    SimulationTrace trace;
    RunMetrics metrics;
};

/**
 * Time-stepped simulation.  One step: freeze a snapshot, select targets,
 * compose every herder command, evaluate every target drift, then advance all
 * agents together (explicit Euler; Euler-Maruyama noise for targets), repair
 * any obstacle penetration, and update capture metrics.  Time is tracked as
 * step_count * dt, never as a floating sum.
 *
 * All per-agent computations read only the pre-step snapshot, so the physics
 * is independent of agent iteration order up to the documented index-based
 * tie-breaks (selection and noise streams are keyed by index, so full
 * permutation invariance holds only under the identity permutation).
 */
class Simulation {
  public:
    /// Realizes generated obstacles, validates the scenario (throws
    /// ValidationError listing violations) and samples initial positions.
    explicit Simulation(ScenarioConfig cfg);

    void step();

    /// Steps until t_max or until chi stayed at 1 for the hold window,
    /// recording the trace at the configured decimation.
    RunResult run();

    double time() const { return static_cast<double>(step_count_) * cfg_.dt; }
    double chi() const;
    const ScenarioConfig& config() const { return cfg_; }
    const std::vector<HerderAgent>& herders() const { return herders_; }
    const std::vector<TargetAgent>& targets() const { return targets_; }
    const std::vector<HerderDecision>& decisions() const { return decisions_; }
    const std::vector<ObstacleField>& fields() const { return fields_; }
    const RunMetrics& metrics() const { return metrics_; }

  private:
    void step_ideal();
    void step_embodied();
    void step_baseline();
    void advance_unicycle(Pose& pose, Vec2 command);
    void resolve_penetrations_and_clearance();
    void record_metrics();
    void append_trace(SimulationTrace& trace) const;
    std::vector<Vec2> herder_positions() const;
    std::vector<TargetState> target_states() const;
    void replan_baseline_path();

    ScenarioConfig cfg_;
    std::vector<ObstacleField> fields_;
    std::vector<HerderAgent> herders_;
    std::vector<TargetAgent> targets_;
    std::vector<HerderDecision> decisions_;
    std::vector<std::mt19937_64> target_streams_;
    long step_count_{0};
    long consecutive_full_{0};  ///< steps with chi == 1 up to now
    RunMetrics metrics_;

    // baseline mode state
    std::optional<OccupancyGrid> grid_;
    std::vector<Vec2> path_;
    long replan_every_{1};
};

/// Structural scenario checks: parameter bounds, disjoint obstacle influence
/// regions (with the embodied orbit allowance), and initial agent placement.
/// Empty result means the scenario may run.
std::vector<std::string> validate_scenario(const ScenarioConfig& cfg);

RunResult run_scenario(const ScenarioConfig& cfg);

struct RunSummary {
    std::uint64_t seed{0};
    double final_chi{0.0};
    std::optional<double> t_all_captured;
    bool captured_hold{false};
    long penetrations{0};
    long singular_clamps{0};
    long no_path{0};
    double max_wheel_speed{0.0};
    double min_obstacle_clearance{0.0};
};

struct BatchResult {
    std::vector<RunSummary> runs;   ///< indexed by run number (seed + k)
    double mean_chi{0.0};
    double std_chi{0.0};            ///< population std
    double capture_rate{0.0};       ///< fraction of runs with captured_hold
    std::optional<double> median_capture_time;
};

RunSummary summarize_run(std::uint64_t seed, const RunMetrics& metrics);

/// Recompute the aggregate fields from the per-run summaries.
void aggregate_batch(BatchResult& result);

/// Independent runs on seeds cfg.seed + k, k = 0..n_runs-1, optionally
/// executed on `jobs` worker threads.  Results are ordered by run index, so
/// the output is identical for every jobs value.
BatchResult run_batch(const ScenarioConfig& cfg, int n_runs, int jobs = 1);

} // namespace shep
