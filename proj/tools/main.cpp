#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "shep/engine.hpp"
#include "shep/plots.hpp"
#include "shep/scenario.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace shep;

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitValidation = 2;
constexpr int kExitPhysics = 3;

struct CommonOpts {
    std::string config_path;
    std::string mode = "ideal";
    std::vector<std::string> overrides;
    std::optional<std::uint64_t> seed;
    std::string out_dir = "out";
    int jobs = 0;  // 0 = hardware concurrency
};

void add_common(CLI::App* cmd, CommonOpts& opts, bool with_out = true) {
    cmd->add_option("--config", opts.config_path, "scenario config file (flat key = value)");
    cmd->add_option("--mode", opts.mode,
                    "base parameter set when no --config is given (ideal|embodied|baseline)");
    cmd->add_option("--set", opts.overrides, "config override key=value (repeatable)");
    cmd->add_option("--seed", opts.seed, "override the scenario seed");
    if (with_out) cmd->add_option("--out", opts.out_dir, "output directory");
    cmd->footer(config_key_help());
}

ScenarioConfig resolve_config(const CommonOpts& opts) {
    ScenarioConfig cfg;
    if (!opts.config_path.empty()) {
        if (!fs::exists(opts.config_path)) {
            throw CLI::ValidationError("--config", "config file not found: " + opts.config_path);
        }
        cfg = load_config(opts.config_path);
    } else {
        cfg = default_config(mode_from_string(opts.mode));
    }
    for (const std::string& ov : opts.overrides) apply_override(cfg, ov);
    if (opts.seed) cfg.seed = *opts.seed;
    return cfg;
}

int effective_jobs(int requested, int runs) {
    int hw = static_cast<int>(std::thread::hardware_concurrency());
    if (hw <= 0) hw = 1;
    int jobs = requested > 0 ? requested : hw;
    return std::min(jobs, std::max(1, runs));
}

json metrics_to_json(const RunMetrics& m) {
    json j;
    j["final_chi"] = m.final_chi;
    if (m.t_all_captured) {
        j["t_all_captured"] = *m.t_all_captured;
    } else {
        j["t_all_captured"] = nullptr;
    }
    j["captured_hold"] = m.captured_hold;
    j["min_obstacle_clearance"] = m.min_obstacle_clearance;
    j["max_wheel_speed"] = m.max_wheel_speed;
    j["steps"] = m.chi_series.empty() ? 0 : m.chi_series.size() - 1;
    j["events"] = {{"singular_clamps", m.events.singular_clamps},
                   {"penetrations", m.events.penetrations},
                   {"saturations", m.events.saturations},
                   {"no_path", m.events.no_path}};
    return j;
}

json summary_to_json(const RunSummary& r) {
    json j;
    j["seed"] = r.seed;
    j["final_chi"] = r.final_chi;
    if (r.t_all_captured) {
        j["t_all_captured"] = *r.t_all_captured;
    } else {
        j["t_all_captured"] = nullptr;
    }
    j["captured_hold"] = r.captured_hold;
    j["penetrations"] = r.penetrations;
    j["max_wheel_speed"] = r.max_wheel_speed;
    return j;
}

json batch_to_json(const BatchResult& b) {
    json j;
    j["runs"] = json::array();
    for (const RunSummary& r : b.runs) j["runs"].push_back(summary_to_json(r));
    j["mean_chi"] = b.mean_chi;
    j["std_chi"] = b.std_chi;
    j["capture_rate"] = b.capture_rate;
    if (b.median_capture_time) {
        j["median_capture_time"] = *b.median_capture_time;
    } else {
        j["median_capture_time"] = nullptr;
    }
    return j;
}

void write_json(const json& j, const fs::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw SimError("cannot write " + path.string());
    out << j.dump(2) << "\n";
}

int cmd_run(const CommonOpts& opts) {
    ScenarioConfig cfg = resolve_config(opts);
    if (cfg.generate_obstacles > 0) generate_obstacles(cfg);
    fs::create_directories(opts.out_dir);
    write_config(cfg, fs::path(opts.out_dir) / "config.txt");

    RunResult r = run_scenario(cfg);
    write_trace(r.trace, fs::path(opts.out_dir) / "trace.csv");
    write_json(metrics_to_json(r.metrics), fs::path(opts.out_dir) / "metrics.json");
    emit_plots(r.trace, r.metrics, cfg, fs::path(opts.out_dir) / "plots");

    std::cout << "final chi " << r.metrics.final_chi;
    if (r.metrics.t_all_captured) {
        std::cout << ", all captured at " << *r.metrics.t_all_captured << " s";
    }
    std::cout << (r.metrics.captured_hold ? " (held)" : "") << "\n";
    std::cout << "artifacts in " << opts.out_dir << "\n";
    return 0;
}

int cmd_batch(const CommonOpts& opts, int runs) {
    ScenarioConfig cfg = resolve_config(opts);
    BatchResult b = run_batch(cfg, runs, effective_jobs(opts.jobs, runs));
    fs::create_directories(opts.out_dir);
    write_json(batch_to_json(b), fs::path(opts.out_dir) / "batch.json");

    std::ofstream csv(fs::path(opts.out_dir) / "batch.csv");
    csv << "seed,final_chi,t_all_captured,captured_hold,penetrations\n";
    for (const RunSummary& r : b.runs) {
        csv << r.seed << ',' << r.final_chi << ','
            << (r.t_all_captured ? std::to_string(*r.t_all_captured) : "") << ','
            << (r.captured_hold ? 1 : 0) << ',' << r.penetrations << "\n";
    }

    std::cout << runs << " runs: mean chi " << b.mean_chi << " +- " << b.std_chi
              << ", capture rate " << b.capture_rate;
    if (b.median_capture_time) {
        std::cout << ", median capture time " << *b.median_capture_time << " s";
    }
    std::cout << "\n";
    return 0;
}

int cmd_compare(const CommonOpts& opts, int runs) {
    // Identical seeds and scenario for both methods; only the control mode
    // differs.
    ScenarioConfig proposed = resolve_config(opts);
    if (proposed.obstacles.empty() && proposed.generate_obstacles == 0) {
        // stock single-rectangle comparison scene
        proposed.obstacles = {{15.0, 15.0, 30.0, 10.0, 2.356194490192345}};
    }
    if (proposed.generate_obstacles > 0) generate_obstacles(proposed);
    ScenarioConfig baseline = proposed;
    proposed.mode = Mode::ideal;
    baseline.mode = Mode::baseline;

    int jobs = effective_jobs(opts.jobs, runs);
    BatchResult bp = run_batch(proposed, runs, jobs);
    BatchResult bb = run_batch(baseline, runs, jobs);

    fs::create_directories(opts.out_dir);
    json j;
    j["runs"] = runs;
    j["proposed"] = batch_to_json(bp);
    j["baseline"] = batch_to_json(bb);
    write_json(j, fs::path(opts.out_dir) / "compare.json");

    auto print_row = [](const std::string& name, const BatchResult& b) {
        std::cout << name << ": mean chi " << b.mean_chi << " +- " << b.std_chi
                  << ", capture rate " << b.capture_rate;
        if (b.median_capture_time) {
            std::cout << ", median capture time " << *b.median_capture_time << " s";
        }
        std::cout << "\n";
    };
    std::cout << "method comparison over " << runs << " seeds\n";
    print_row("proposed", bp);
    print_row("baseline", bb);
    return 0;
}

int cmd_plot(const CommonOpts& opts, const std::string& trace_path) {
    ScenarioConfig cfg = resolve_config(opts);
    if (cfg.generate_obstacles > 0) generate_obstacles(cfg);
    SimulationTrace trace = read_trace(trace_path);
    TraceSeries s = series_from_trace(trace, cfg.goal_radius);

    // Rebuild plottable metrics at the trace's sampling rate.
    RunMetrics m;
    m.dt = s.t.size() > 1 ? s.t[1] - s.t[0] : cfg.dt;
    m.chi_series = s.chi;
    m.herder_mean = s.herder_mean;
    m.herder_std = s.herder_std;
    m.target_mean = s.target_mean;
    m.target_std = s.target_std;
    m.final_chi = s.chi.empty() ? 0.0 : s.chi.back();
    emit_plots(trace, m, cfg, opts.out_dir);
    std::cout << "plots in " << opts.out_dir << "\n";
    return 0;
}

int cmd_validate(const CommonOpts& opts) {
    ScenarioConfig cfg = resolve_config(opts);
    auto violations = validate_scenario(cfg);
    if (violations.empty()) {
        std::cout << "scenario ok\n";
        return 0;
    }
    for (const auto& v : violations) std::cout << "violation: " << v << "\n";
    return kExitValidation;
}

int cmd_gen_scenario(const CommonOpts& opts, const std::string& out_file) {
    ScenarioConfig cfg = resolve_config(opts);
    if (cfg.generate_obstacles == 0 && cfg.obstacles.empty()) {
        cfg.generate_obstacles = 7;  // stock multi-obstacle study scene
    }
    generate_obstacles(cfg);
    auto violations = validate_scenario(cfg);
    if (!violations.empty()) {
        for (const auto& v : violations) std::cerr << "violation: " << v << "\n";
        return kExitValidation;
    }
    fs::path target = out_file.empty() ? fs::path(opts.out_dir) / "scenario.txt"
                                       : fs::path(out_file);
    if (target.has_parent_path()) fs::create_directories(target.parent_path());
    write_config(cfg, target);
    std::cout << "wrote " << target.string() << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"shepsim: obstacle-aware multi-agent shepherding simulator"};
    app.require_subcommand(1);

    CommonOpts run_opts, batch_opts, compare_opts, plot_opts, validate_opts, gen_opts;
    int batch_runs = 50;
    int compare_runs = 50;
    std::string trace_path, gen_out;

    CLI::App* run = app.add_subcommand("run", "run one simulation and emit artifacts");
    add_common(run, run_opts);

    CLI::App* batch = app.add_subcommand("batch", "run many seeds and aggregate");
    add_common(batch, batch_opts);
    batch->add_option("--runs", batch_runs, "number of seeds (seed, seed+1, ...)");
    batch->add_option("--jobs", batch_opts.jobs, "worker threads (default: all cores)");

    CLI::App* compare =
        app.add_subcommand("compare", "proposed vs cohesive-herding baseline on shared seeds");
    add_common(compare, compare_opts);
    compare->add_option("--runs", compare_runs, "number of seeds per method");
    compare->add_option("--jobs", compare_opts.jobs, "worker threads (default: all cores)");

    CLI::App* plot = app.add_subcommand("plot", "re-emit plots from a saved trace");
    add_common(plot, plot_opts);
    plot->add_option("--trace", trace_path, "trace.csv produced by run")->required();

    CLI::App* validate = app.add_subcommand("validate", "check a scenario without running");
    add_common(validate, validate_opts, false);

    CLI::App* gen = app.add_subcommand("gen-scenario", "emit a validated random scenario");
    add_common(gen, gen_opts);
    gen->add_option("--out-file", gen_out, "output config path (default <out>/scenario.txt)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help and friends
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (run->parsed()) return cmd_run(run_opts);
        if (batch->parsed()) return cmd_batch(batch_opts, batch_runs);
        if (compare->parsed()) return cmd_compare(compare_opts, compare_runs);
        if (plot->parsed()) return cmd_plot(plot_opts, trace_path);
        if (validate->parsed()) return cmd_validate(validate_opts);
        if (gen->parsed()) return cmd_gen_scenario(gen_opts, gen_out);
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const ParseError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const ValidationError& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const PhysicsViolation& e) {
        std::cerr << "physics error: " << e.what() << "\n";
        return kExitPhysics;
    } catch (const SimError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitPhysics;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
