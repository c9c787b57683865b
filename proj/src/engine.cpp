#include "shep/engine.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <mutex>
#include <thread>

#include "shep/rng.hpp"

namespace shep {

namespace {

constexpr double kPi = 3.141592653589793;
/// Agents are seeded at least this fraction of lambda_o away from obstacle
/// boundaries so the initial barrier force cannot eject them violently.
constexpr double kInitClearanceFactor = 0.2;
constexpr int kMaxPlacementAttempts = 100000;

Vec2 sample_in_disc(std::mt19937_64& rng, double radius) {
    double r = radius * std::sqrt(uniform01(rng));
    double a = 2.0 * kPi * uniform01(rng);
    return {r * std::cos(a), r * std::sin(a)};
}

double min_boundary_distance(Vec2 p, const std::vector<ObstacleField>& fields, bool* inside) {
    double best = std::numeric_limits<double>::infinity();
    for (const ObstacleField& f : fields) {
        if (f.obstacle.contains(p)) {
            if (inside) *inside = true;
            return 0.0;
        }
        best = std::min(best, f.obstacle.project_ex(p).distance);
    }
    return best;
}

/// Initial placement shared by the engine and validate_scenario.
struct InitialWorld {
    std::vector<HerderAgent> herders;
    std::vector<TargetAgent> targets;
};

InitialWorld sample_initial_world(const ScenarioConfig& cfg,
                                  const std::vector<ObstacleField>& fields) {
    auto rng = make_stream(cfg.seed, "init", 0);
    double clearance = kInitClearanceFactor * cfg.lambda_o;
    bool embodied = cfg.mode == Mode::embodied;
    double min_pair = embodied ? 0.5 * cfg.d_th : 0.0;

    std::vector<Vec2> placed;
    auto sample_position = [&](const char* what) {
        for (int attempt = 0; attempt < kMaxPlacementAttempts; ++attempt) {
            Vec2 p = sample_in_disc(rng, cfg.domain_radius);
            bool inside = false;
            if (min_boundary_distance(p, fields, &inside) < clearance || inside) continue;
            if (min_pair > 0.0) {
                bool crowded = false;
                for (Vec2 q : placed) {
                    if ((p - q).norm() < min_pair) {
                        crowded = true;
                        break;
                    }
                }
                if (crowded) continue;
            }
            placed.push_back(p);
            return p;
        }
        throw ValidationError(std::string("could not place ") + what +
                              " clear of obstacles in the sampling disc");
    };

    InitialWorld world;
    bool with_heading = cfg.mode != Mode::ideal;
    world.herders.resize(cfg.herders);
    for (auto& h : world.herders) {
        h.pose.position = sample_position("a herder");
        h.pose.heading = with_heading ? uniform_in(rng, -kPi, kPi) : 0.0;
    }
    world.targets.resize(cfg.targets);
    for (auto& t : world.targets) {
        t.pose.position = sample_position("a target");
        t.pose.heading = with_heading ? uniform_in(rng, -kPi, kPi) : 0.0;
        t.captured = t.pose.position.norm() <= cfg.goal_radius;
    }
    return world;
}

} // namespace

std::vector<std::string> validate_scenario(const ScenarioConfig& cfg) {
    std::vector<std::string> violations;
    try {
        check_bounds(cfg);
    } catch (const ValidationError& e) {
        violations.push_back(e.what());
    }

    ScenarioConfig realized = cfg;
    if (realized.generate_obstacles > 0) {
        try {
            generate_obstacles(realized);
        } catch (const SimError& e) {
            violations.push_back(e.what());
            return violations;
        }
    }

    std::vector<ObstacleField> fields;
    try {
        fields = build_fields(realized);
    } catch (const ValidationError& e) {
        violations.push_back(e.what());
        return violations;
    }

    // Influence regions of different obstacles must not overlap; embodied
    // runs additionally need orbit room (d_th) between them.
    double gap = realized.lambda_o + realized.epsilon_o +
                 (realized.mode == Mode::embodied ? realized.d_th : 0.0);
    for (std::size_t i = 0; i < fields.size(); ++i) {
        for (std::size_t j = i + 1; j < fields.size(); ++j) {
            double d = set_distance(fields[i].obstacle, fields[j].obstacle);
            if (d <= gap) {
                violations.push_back("obstacles " + std::to_string(i) + " and " +
                                     std::to_string(j) + " are separated by " +
                                     std::to_string(d) + " m, need > " + std::to_string(gap));
            }
        }
    }

    if (violations.empty()) {
        try {
            sample_initial_world(realized, fields);
        } catch (const ValidationError& e) {
            violations.push_back(e.what());
        }
    }
    return violations;
}

Simulation::Simulation(ScenarioConfig cfg) : cfg_(std::move(cfg)) {
    if (cfg_.generate_obstacles > 0) generate_obstacles(cfg_);
    auto violations = validate_scenario(cfg_);
    if (!violations.empty()) {
        std::string msg = "scenario validation failed:";
        for (const auto& v : violations) msg += "\n  - " + v;
        throw ValidationError(msg);
    }
    fields_ = build_fields(cfg_);
    InitialWorld world = sample_initial_world(cfg_, fields_);
    herders_ = std::move(world.herders);
    targets_ = std::move(world.targets);
    decisions_.assign(herders_.size(), HerderDecision{});

    target_streams_.reserve(targets_.size());
    for (std::size_t a = 0; a < targets_.size(); ++a) {
        target_streams_.push_back(make_stream(cfg_.seed, "target-noise", a));
    }

    metrics_.dt = cfg_.dt;

    if (cfg_.mode == Mode::baseline) {
        // Planning grid covering the sampling disc and every obstacle.
        double extent = cfg_.domain_radius;
        for (const ObstacleField& f : fields_) {
            for (Vec2 v : f.obstacle.vertices()) {
                extent = std::max({extent, std::abs(v.x), std::abs(v.y)});
            }
        }
        double pad = cfg_.grid_inflation + 2.0 * cfg_.grid_resolution;
        Vec2 lo{-extent - pad, -extent - pad};
        Vec2 hi{extent + pad, extent + pad};
        std::vector<ConvexPolygon> polys;
        for (const ObstacleField& f : fields_) polys.push_back(f.obstacle);
        grid_ = rasterize(polys, lo, hi, cfg_.grid_resolution, cfg_.grid_inflation);
        replan_every_ = std::max<long>(1, std::llround(1.0 / cfg_.dt));
    }

    record_metrics();
}

double Simulation::chi() const {
    if (targets_.empty()) return 1.0;
    std::size_t captured = 0;
    for (const TargetAgent& t : targets_) captured += t.captured ? 1 : 0;
    return static_cast<double>(captured) / static_cast<double>(targets_.size());
}

std::vector<Vec2> Simulation::herder_positions() const {
    std::vector<Vec2> out(herders_.size());
    for (std::size_t i = 0; i < herders_.size(); ++i) out[i] = herders_[i].pose.position;
    return out;
}

std::vector<TargetState> Simulation::target_states() const {
    std::vector<TargetState> out(targets_.size());
    for (std::size_t a = 0; a < targets_.size(); ++a) {
        out[a] = {targets_[a].pose.position, targets_[a].captured};
    }
    return out;
}

void Simulation::advance_unicycle(Pose& pose, Vec2 command) {
    UnicycleParams up = cfg_.unicycle_params();
    VelocityCommand nominal = map_to_unicycle(command, pose, up);
    VelocityCommand scaled = scale_wheels(nominal, up);
    metrics_.max_wheel_speed =
        std::max({metrics_.max_wheel_speed, std::abs(left_wheel_speed(scaled, up)),
                  std::abs(right_wheel_speed(scaled, up))});
    pose = step_unicycle(pose, scaled, cfg_.dt);
}

void Simulation::step_ideal() {
    std::vector<Vec2> hpos = herder_positions();
    std::vector<TargetState> tstates = target_states();
    auto selection = select_targets(hpos, tstates, cfg_.goal_radius);

    ControlContext ctx{hpos,
                       tstates,
                       fields_,
                       cfg_.herder_params(),
                       cfg_.orbit_params(),
                       cfg_.pair_params(),
                       {0.0, 0.0}};
    for (std::size_t i = 0; i < herders_.size(); ++i) {
        decisions_[i] = compose_ideal(i, ctx, selection[i]);
    }

    std::vector<Vec2> displacements(targets_.size());
    for (std::size_t a = 0; a < targets_.size(); ++a) {
        bool clamped = false;
        Vec2 v = drift(tstates[a].position, hpos, fields_, cfg_.target_params(), &clamped);
        if (clamped) ++metrics_.events.singular_clamps;
        displacements[a] = v * cfg_.dt +
                           noise_increment(target_streams_[a], cfg_.diffusion, cfg_.dt);
    }

    for (std::size_t i = 0; i < herders_.size(); ++i) {
        herders_[i].pose.position += decisions_[i].command * cfg_.dt;
    }
    for (std::size_t a = 0; a < targets_.size(); ++a) {
        targets_[a].pose.position += displacements[a];
    }
}

void Simulation::step_embodied() {
    std::vector<Vec2> hpos = herder_positions();
    std::vector<TargetState> tstates = target_states();
    auto selection = select_targets(hpos, tstates, cfg_.goal_radius);

    ControlContext ctx{hpos,
                       tstates,
                       fields_,
                       cfg_.herder_params(),
                       cfg_.orbit_params(),
                       cfg_.pair_params(),
                       {0.0, 0.0}};
    for (std::size_t i = 0; i < herders_.size(); ++i) {
        decisions_[i] = compose_embodied(i, ctx, selection[i]);
    }

    std::vector<Vec2> drifts(targets_.size());
    for (std::size_t a = 0; a < targets_.size(); ++a) {
        bool clamped = false;
        drifts[a] = embodied_drift(a, tstates, hpos, fields_, cfg_.target_params(),
                                   cfg_.pair_params(), &clamped);
        if (clamped) ++metrics_.events.singular_clamps;
    }

    for (std::size_t i = 0; i < herders_.size(); ++i) {
        advance_unicycle(herders_[i].pose, decisions_[i].command);
    }
    for (std::size_t a = 0; a < targets_.size(); ++a) {
        advance_unicycle(targets_[a].pose, drifts[a]);
    }
}

void Simulation::replan_baseline_path() {
    Vec2 com{0.0, 0.0};
    for (const TargetAgent& t : targets_) com += t.pose.position;
    com = com / static_cast<double>(std::max<std::size_t>(1, targets_.size()));
    try {
        Vec2 start = com;
        if (auto cell = grid_->nearest_free_cell(com)) {
            start = grid_->cell_center(cell->first, cell->second);
        }
        Vec2 goal{0.0, 0.0};
        if (auto cell = grid_->nearest_free_cell(goal)) {
            goal = grid_->cell_center(cell->first, cell->second);
        }
        path_ = astar(*grid_, start, goal).waypoints;
    } catch (const NoPath&) {
        ++metrics_.events.no_path;
        path_ = {Vec2{0.0, 0.0}};
    }
}

void Simulation::step_baseline() {
    if (step_count_ % replan_every_ == 0) replan_baseline_path();

    std::vector<Vec2> hpos = herder_positions();
    std::vector<TargetState> tstates = target_states();
    std::vector<Vec2> commands = arc_herding_step(hpos, tstates, path_, cfg_.arc_params(),
                                                  grid_ ? &*grid_ : nullptr);
    for (std::size_t i = 0; i < herders_.size(); ++i) {
        decisions_[i] = HerderDecision{};
        decisions_[i].command = commands[i];
    }

    std::vector<Vec2> displacements(targets_.size());
    for (std::size_t a = 0; a < targets_.size(); ++a) {
        bool clamped = false;
        Vec2 v = drift(tstates[a].position, hpos, fields_, cfg_.target_params(), &clamped);
        if (clamped) ++metrics_.events.singular_clamps;
        displacements[a] = v * cfg_.dt +
                           noise_increment(target_streams_[a], cfg_.diffusion, cfg_.dt);
    }

    // The comparator's herders are differential-drive platforms.
    for (std::size_t i = 0; i < herders_.size(); ++i) {
        advance_unicycle(herders_[i].pose, decisions_[i].command);
    }
    for (std::size_t a = 0; a < targets_.size(); ++a) {
        targets_[a].pose.position += displacements[a];
    }
}

void Simulation::resolve_penetrations_and_clearance() {
    auto resolve = [&](Vec2& p) {
        for (const ObstacleField& f : fields_) {
            BoundaryProjection proj = f.obstacle.project_ex(p);
            if (f.obstacle.contains(p)) {
                Vec2 dir = f.obstacle.strictly_inside(p) ? (proj.point - p).normalized()
                                                         : f.obstacle.edge_outward_normal(proj.edge);
                if (dir.norm_sq() == 0.0) dir = f.obstacle.edge_outward_normal(proj.edge);
                p = proj.point + dir * kMinSeparation;
                if (f.obstacle.contains(p)) {
                    throw PhysicsViolation("failed to project an agent out of an obstacle");
                }
                ++metrics_.events.penetrations;
                proj = f.obstacle.project_ex(p);
            }
            metrics_.min_obstacle_clearance =
                std::min(metrics_.min_obstacle_clearance, proj.distance);
        }
        if (!p.finite()) throw PhysicsViolation("agent position became non-finite");
    };
    for (HerderAgent& h : herders_) resolve(h.pose.position);
    for (TargetAgent& t : targets_) resolve(t.pose.position);
}

void Simulation::record_metrics() {
    for (TargetAgent& t : targets_) t.captured = t.pose.position.norm() <= cfg_.goal_radius;
    double c = chi();
    metrics_.chi_series.push_back(c);
    metrics_.final_chi = c;

    auto mean_std = [](const auto& agents, double& mean, double& sd) {
        if (agents.empty()) {
            mean = 0.0;
            sd = 0.0;
            return;
        }
        double sum = 0.0;
        for (const auto& a : agents) sum += a.pose.position.norm();
        mean = sum / static_cast<double>(agents.size());
        double var = 0.0;
        for (const auto& a : agents) {
            double d = a.pose.position.norm() - mean;
            var += d * d;
        }
        sd = std::sqrt(var / static_cast<double>(agents.size()));
    };
    double m, s;
    mean_std(herders_, m, s);
    metrics_.herder_mean.push_back(m);
    metrics_.herder_std.push_back(s);
    mean_std(targets_, m, s);
    metrics_.target_mean.push_back(m);
    metrics_.target_std.push_back(s);

    if (c == 1.0 && !targets_.empty()) {
        ++consecutive_full_;
        if (!metrics_.t_all_captured) metrics_.t_all_captured = time();
    } else {
        consecutive_full_ = 0;
    }

    for (const HerderDecision& d : decisions_) {
        if (d.saturated) ++metrics_.events.saturations;
        if (d.singular_clamp) ++metrics_.events.singular_clamps;
    }
}

void Simulation::step() {
    switch (cfg_.mode) {
        case Mode::ideal: step_ideal(); break;
        case Mode::embodied: step_embodied(); break;
        case Mode::baseline: step_baseline(); break;
    }
    ++step_count_;
    resolve_penetrations_and_clearance();
    record_metrics();
}

void Simulation::append_trace(SimulationTrace& trace) const {
    double t = time();
    for (std::size_t i = 0; i < herders_.size(); ++i) {
        const HerderDecision& d = decisions_[i];
        trace.records.push_back({t, static_cast<int>(i), 'h', herders_[i].pose.position.x,
                                 herders_[i].pose.position.y, herders_[i].pose.heading,
                                 d.eta ? 1 : 0, d.mu, d.sigma, d.zeta});
    }
    for (std::size_t a = 0; a < targets_.size(); ++a) {
        trace.records.push_back({t, static_cast<int>(a), 't', targets_[a].pose.position.x,
                                 targets_[a].pose.position.y, targets_[a].pose.heading, 0, 0,
                                 0.0, 0.0});
    }
}

RunResult Simulation::run() {
    SimulationTrace trace;
    append_trace(trace);

    const long hold_steps =
        cfg_.hold_window > 0.0 ? std::llround(cfg_.hold_window / cfg_.dt) : 0;
    const long max_steps = std::llround(cfg_.t_max / cfg_.dt);

    // consecutive_full_ counts per-step records, so covering hold_window
    // seconds of sustained chi = 1 needs hold_steps + 1 of them.
    bool recorded_last = true;
    while (step_count_ < max_steps) {
        step();
        recorded_last = (step_count_ % cfg_.trace_every == 0);
        if (recorded_last) append_trace(trace);
        if (!targets_.empty() && consecutive_full_ > hold_steps) break;
    }
    if (!recorded_last) append_trace(trace);

    metrics_.captured_hold = !targets_.empty() && consecutive_full_ > hold_steps;
    return {std::move(trace), metrics_};
}

RunResult run_scenario(const ScenarioConfig& cfg) {
    Simulation sim(cfg);
    return sim.run();
}

RunSummary summarize_run(std::uint64_t seed, const RunMetrics& m) {
    RunSummary s;
    s.seed = seed;
    s.final_chi = m.final_chi;
    s.t_all_captured = m.t_all_captured;
    s.captured_hold = m.captured_hold;
    s.penetrations = m.events.penetrations;
    s.singular_clamps = m.events.singular_clamps;
    s.no_path = m.events.no_path;
    s.max_wheel_speed = m.max_wheel_speed;
    s.min_obstacle_clearance = m.min_obstacle_clearance;
    return s;
}

void aggregate_batch(BatchResult& result) {
    const auto& runs = result.runs;
    if (runs.empty()) return;
    double sum = 0.0;
    for (const RunSummary& r : runs) sum += r.final_chi;
    result.mean_chi = sum / static_cast<double>(runs.size());
    double var = 0.0;
    long held = 0;
    for (const RunSummary& r : runs) {
        double d = r.final_chi - result.mean_chi;
        var += d * d;
        held += r.captured_hold ? 1 : 0;
    }
    result.std_chi = std::sqrt(var / static_cast<double>(runs.size()));
    result.capture_rate = static_cast<double>(held) / static_cast<double>(runs.size());

    std::vector<double> times;
    for (const RunSummary& r : runs) {
        if (r.t_all_captured) times.push_back(*r.t_all_captured);
    }
    if (!times.empty()) {
        std::sort(times.begin(), times.end());
        std::size_t n = times.size();
        result.median_capture_time =
            (n % 2 == 1) ? times[n / 2] : 0.5 * (times[n / 2 - 1] + times[n / 2]);
    }
}

BatchResult run_batch(const ScenarioConfig& cfg, int n_runs, int jobs) {
    BatchResult result;
    result.runs.resize(static_cast<std::size_t>(std::max(0, n_runs)));
    if (n_runs <= 0) return result;
    jobs = std::clamp(jobs, 1, n_runs);

    std::atomic<int> next{0};
    std::atomic<bool> failed{false};
    std::string error;
    std::mutex error_mutex;

    auto worker = [&]() {
        for (;;) {
            int k = next.fetch_add(1);
            if (k >= n_runs || failed.load()) return;
            try {
                ScenarioConfig run_cfg = cfg;
                run_cfg.seed = cfg.seed + static_cast<std::uint64_t>(k);
                RunResult r = run_scenario(run_cfg);
                result.runs[static_cast<std::size_t>(k)] =
                    summarize_run(run_cfg.seed, r.metrics);
            } catch (const std::exception& e) {
                std::lock_guard<std::mutex> lock(error_mutex);
                failed.store(true);
                if (error.empty()) error = e.what();
            }
        }
    };

    if (jobs == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(jobs));
        for (int j = 0; j < jobs; ++j) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    if (failed.load()) throw SimError("batch run failed: " + error);

    aggregate_batch(result);
    return result;
}

} // namespace shep
