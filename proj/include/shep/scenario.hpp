#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "shep/baseline.hpp"
#include "shep/control.hpp"
#include "shep/potential.hpp"
#include "shep/targets.hpp"
#include "shep/unicycle.hpp"

namespace shep {

enum class Mode { ideal, embodied, baseline };

std::string to_string(Mode mode);
Mode mode_from_string(const std::string& s);

/// One rectangular obstacle as written in config files.
struct RectSpec {
    double cx{0.0};
    double cy{0.0};
    double width{1.0};
    double height{1.0};
    double rotation{0.0};
};

/**
 * Full description of one simulation run: the flat key-value config schema.
 * Unset keys take the stock parameter set of the selected mode (the
 * simulation-scale set for ideal/baseline, the robot-scale set for
 * embodied).  See config_key_help() for the documented key list.
 */
struct ScenarioConfig {
    Mode mode{Mode::ideal};
    int herders{10};
    int targets{100};
    std::uint64_t seed{0};

    double dt{0.01};          ///< s
    double t_max{600.0};      ///< s
    double hold_window{5.0};  ///< s of sustained full capture before stopping
    int trace_every{10};      ///< record every k-th step

    double domain_radius{50.0};  ///< initial-position sampling disc, m
    double goal_radius{10.0};    ///< goal disc radius, m

    // targets
    double lambda{2.5};
    double beta{3.0};
    double diffusion{0.5};

    // obstacles
    double lambda_o{2.5};
    double k_o{10.0};
    double epsilon_o{1.0};

    // herders
    double v_h{7.5};
    double alpha{5.0};
    double delta{1.25};
    double gamma{0.3};

    // orbiting (embodied)
    double alpha_o{4.5};
    double alpha_r{3.0};
    double r_th{0.375};
    double epsilon_h{0.1};
    double beta_orb{0.17453292519943295};  // pi/18
    double beta_th{0.7853981633974483};    // pi/4

    // same-type repulsion (embodied)
    double k_d{1.0};
    double d_th{0.45};

    // differential drive (embodied, baseline)
    double lookahead{1.0};
    double wheelbase{1.0};
    double wheel_v_max{7.5};

    // baseline comparator
    double arc_radius{2.5};
    double arc_span{1.5707963267948966};  // pi/2
    double com_gain{1.0};
    double grid_resolution{1.0};
    double grid_inflation{2.5};

    // obstacle list, or a generator request when `generate_obstacles` > 0
    std::vector<RectSpec> obstacles;
    int generate_obstacles{0};
    double gen_width_min{8.0};
    double gen_width_max{20.0};
    double gen_height_min{2.0};
    double gen_height_max{20.0};

    HerderParams herder_params() const {
        return {v_h, alpha, delta, gamma, goal_radius, epsilon_o};
    }
    OrbitParams orbit_params() const {
        return {alpha_o, alpha_r, r_th, epsilon_h, beta_orb, beta_th};
    }
    TargetParams target_params() const { return {lambda, beta, diffusion}; }
    PairRepulsion pair_params() const { return {k_d, d_th}; }
    UnicycleParams unicycle_params() const { return {lookahead, wheelbase, wheel_v_max, 1e-9}; }
    ArcHerdingParams arc_params() const {
        return {arc_radius, arc_span, com_gain, grid_resolution, grid_inflation, v_h};
    }
};

/// Stock parameter set for a mode.
ScenarioConfig default_config(Mode mode);

/// Parse a flat key-value file.  Unknown keys raise ParseError (with the line
/// number); out-of-bounds values raise ValidationError listing every
/// violation.
ScenarioConfig load_config(const std::filesystem::path& path);

/// Apply one "key=value" override through the same parser and bound checks.
void apply_override(ScenarioConfig& cfg, const std::string& assignment);

/// Re-run the per-key bound checks (used after programmatic edits).
void check_bounds(const ScenarioConfig& cfg);

void write_config(const ScenarioConfig& cfg, const std::filesystem::path& path);

/// Documented key table (key, default per mode, bounds) for --help output.
std::string config_key_help();

/// Obstacle fields realized from the config (explicit list only; run the
/// generator first when `generate_obstacles` is set).
std::vector<ObstacleField> build_fields(const ScenarioConfig& cfg);

/// Sample `generate_obstacles` random rectangles (dimensions uniform in the
/// configured ranges, centers in the domain disc, rotations in [0, pi)) that
/// keep the required clearances; fills cfg.obstacles and clears the request.
/// Throws SimError when a valid draw cannot be found in bounded attempts.
void generate_obstacles(ScenarioConfig& cfg);

} // namespace shep
