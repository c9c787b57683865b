#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "shep/engine.hpp"
#include "shep/plots.hpp"
#include "shep/scenario.hpp"
#include "shep/trace.hpp"

using namespace shep;

namespace {

constexpr double kPi = 3.141592653589793;

std::filesystem::path temp_dir() {
    auto dir = std::filesystem::temp_directory_path() / "shep_scenario_test";
    std::filesystem::create_directories(dir);
    return dir;
}

std::filesystem::path write_text(const std::string& name, const std::string& content) {
    auto p = temp_dir() / name;
    std::ofstream out(p, std::ios::binary);
    out << content;
    return p;
}

std::string file_bytes(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

} // namespace

TEST_SUITE("scenario") {

TEST_CASE("stock simulation-scale parameters") {
    ScenarioConfig c = load_config(write_text("empty_ideal.cfg", ""));
    CHECK(c.mode == Mode::ideal);
    CHECK(c.v_h == 7.5);
    CHECK(c.alpha == 5.0);
    CHECK(c.delta == 1.25);
    CHECK(c.gamma == 0.3);
    CHECK(c.lambda == 2.5);
    CHECK(c.beta == 3.0);
    CHECK(c.epsilon_o == 1.0);
    CHECK(c.diffusion == 0.5);
    CHECK(c.domain_radius == 50.0);
    CHECK(c.goal_radius == 10.0);
    CHECK(c.lambda_o == 2.5);
    CHECK(c.k_o == 10.0);
    CHECK(c.dt == 0.01);
}

TEST_CASE("stock robot-scale parameters") {
    ScenarioConfig c = load_config(write_text("empty_embodied.cfg", "mode = embodied\n"));
    CHECK(c.mode == Mode::embodied);
    CHECK(c.alpha == 3.0);
    CHECK(c.delta == 0.375);
    CHECK(c.gamma == 0.3);
    CHECK(c.alpha_o == 4.5);
    CHECK(c.alpha_r == 3.0);
    CHECK(c.r_th == 0.375);
    CHECK(c.epsilon_h == 0.1);
    CHECK(c.beta_th == kPi / 4.0);
    CHECK(c.beta_orb == kPi / 18.0);
    CHECK(c.k_d == 1.0);
    CHECK(c.d_th == 0.45);
    CHECK(c.lambda == 0.5);
    CHECK(c.beta == 3.0);
    CHECK(c.epsilon_o == 0.1);
    CHECK(c.diffusion == 0.0);
    CHECK(c.lambda_o == 0.2);
    CHECK(c.goal_radius == 0.35);
    CHECK(c.k_o == 10.0);
    CHECK(c.dt == 0.002);
}

TEST_CASE("config parsing errors") {
    SUBCASE("out-of-bounds value lists the violation") {
        auto p = write_text("bad_gamma.cfg", "gamma = 1.5\n");
        CHECK_THROWS_AS(load_config(p), ValidationError);
        try {
            load_config(p);
        } catch (const ValidationError& e) {
            CHECK(std::string(e.what()).find("gamma") != std::string::npos);
        }
    }
    SUBCASE("unknown keys are a hard error with the line number") {
        auto p = write_text("unknown.cfg", "# comment\nspeed = 3\n");
        try {
            load_config(p);
            FAIL("expected ParseError");
        } catch (const ParseError& e) {
            std::string msg = e.what();
            CHECK(msg.find("line 2") != std::string::npos);
            CHECK(msg.find("speed") != std::string::npos);
        }
    }
    SUBCASE("malformed numbers are rejected") {
        auto p = write_text("bad_num.cfg", "v_h = fast\n");
        CHECK_THROWS_AS(load_config(p), ParseError);
    }
    SUBCASE("partial obstacles are rejected") {
        auto p = write_text("partial_obs.cfg",
                            "obstacle.0.cx = 1\nobstacle.0.cy = 2\nobstacle.0.width = 3\n");
        CHECK_THROWS_AS(load_config(p), ValidationError);
    }
    SUBCASE("explicit obstacles exclude the generator") {
        auto p = write_text("both_obs.cfg",
                            "generate_obstacles = 2\n"
                            "obstacle.0.cx = 1\nobstacle.0.cy = 2\nobstacle.0.width = 3\n"
                            "obstacle.0.height = 1\nobstacle.0.rotation = 0\n");
        CHECK_THROWS_AS(load_config(p), ValidationError);
    }
}

TEST_CASE("config round trip and overrides") {
    ScenarioConfig cfg = default_config(Mode::ideal);
    cfg.seed = 99;
    cfg.herders = 4;
    cfg.obstacles = {{15.0, 15.0, 30.0, 10.0, 3.0 * kPi / 4.0}};
    auto p = temp_dir() / "roundtrip.cfg";
    write_config(cfg, p);
    ScenarioConfig back = load_config(p);
    CHECK(back.seed == 99);
    CHECK(back.herders == 4);
    CHECK(back.mode == Mode::ideal);
    CHECK(back.obstacles.size() == 1);
    CHECK(back.obstacles[0].rotation == cfg.obstacles[0].rotation);
    CHECK(back.v_h == cfg.v_h);

    apply_override(back, "seed=123");
    CHECK(back.seed == 123);
    apply_override(back, "gamma = 0.5");
    CHECK(back.gamma == 0.5);
    CHECK_THROWS_AS(apply_override(back, "gamma = 2.0"), ValidationError);
    CHECK_THROWS_AS(apply_override(back, "nonsense = 1"), ParseError);
    CHECK_THROWS_AS(apply_override(back, "no_equals"), ParseError);
}

TEST_CASE("trace round trip") {
    SUBCASE("records survive write/read exactly") {
        SimulationTrace t;
        std::mt19937 rng(101);
        std::uniform_real_distribution<double> u(-1e3, 1e3);
        for (int i = 0; i < 500; ++i) {
            TraceRecord r;
            r.t = u(rng);
            r.id = i % 7;
            r.kind = (i % 2 == 0) ? 'h' : 't';
            r.x = u(rng);
            r.y = u(rng) * 1e-7;
            r.heading = u(rng) * 1e-2;
            r.eta = i % 2;
            r.mu = (i / 2) % 2;
            r.sigma = (i % 10) / 10.0;
            r.zeta = (i % 4) / 4.0;
            t.records.push_back(r);
        }
        auto p = temp_dir() / "trace_roundtrip.csv";
        write_trace(t, p);
        SimulationTrace back = read_trace(p);
        REQUIRE(back.records.size() == t.records.size());
        for (std::size_t i = 0; i < t.records.size(); ++i) {
            CHECK(back.records[i].t == t.records[i].t);
            CHECK(back.records[i].id == t.records[i].id);
            CHECK(back.records[i].kind == t.records[i].kind);
            CHECK(back.records[i].x == t.records[i].x);
            CHECK(back.records[i].y == t.records[i].y);
            CHECK(back.records[i].heading == t.records[i].heading);
            CHECK(back.records[i].eta == t.records[i].eta);
            CHECK(back.records[i].mu == t.records[i].mu);
            CHECK(back.records[i].sigma == t.records[i].sigma);
            CHECK(back.records[i].zeta == t.records[i].zeta);
        }
    }
    SUBCASE("empty trace is a header-only file") {
        auto p = temp_dir() / "empty_trace.csv";
        write_trace(SimulationTrace{}, p);
        SimulationTrace back = read_trace(p);
        CHECK(back.records.empty());
        std::string bytes = file_bytes(p);
        CHECK(bytes.find(trace_header()) != std::string::npos);
    }
    SUBCASE("large trace round trip is byte-stable") {
        SimulationTrace t;
        std::mt19937 rng(103);
        std::uniform_real_distribution<double> u(-50.0, 50.0);
        for (int i = 0; i < 10000; ++i) {
            t.records.push_back(
                {0.01 * i, i % 11, (i % 3 == 0) ? 'h' : 't', u(rng), u(rng), 0.0, 0, 1, 0.0,
                 0.0});
        }
        auto p1 = temp_dir() / "big1.csv";
        auto p2 = temp_dir() / "big2.csv";
        write_trace(t, p1);
        write_trace(read_trace(p1), p2);
        CHECK(std::hash<std::string>{}(file_bytes(p1)) ==
              std::hash<std::string>{}(file_bytes(p2)));
        CHECK(file_bytes(p1) == file_bytes(p2));
    }
}

TEST_CASE("plot artifacts") {
    ScenarioConfig cfg = default_config(Mode::ideal);
    cfg.herders = 1;
    cfg.targets = 2;
    cfg.seed = 4;
    cfg.t_max = 5.0;
    cfg.obstacles = {{15.0, 15.0, 30.0, 10.0, 3.0 * kPi / 4.0}};
    RunResult r = run_scenario(cfg);
    auto dir = temp_dir() / "plots";
    emit_plots(r.trace, r.metrics, cfg, dir);

    CHECK(std::filesystem::exists(dir / "trajectory.svg"));
    CHECK(std::filesystem::exists(dir / "radii.svg"));
    CHECK(std::filesystem::exists(dir / "scene_initial.svg"));
    CHECK(std::filesystem::exists(dir / "scene_final.svg"));
    CHECK(std::filesystem::exists(dir / "radii_series.csv"));

    SUBCASE("emitted series equals the run metrics exactly") {
        std::ifstream in(dir / "radii_series.csv");
        std::string line;
        std::getline(in, line);  // comment
        std::getline(in, line);  // header
        std::size_t k = 0;
        while (std::getline(in, line)) {
            std::istringstream ss(line);
            std::string tok;
            std::vector<double> cols;
            while (std::getline(ss, tok, ',')) cols.push_back(std::stod(tok));
            REQUIRE(cols.size() == 6);
            CHECK(cols[1] == r.metrics.herder_mean[k]);
            CHECK(cols[2] == r.metrics.herder_std[k]);
            CHECK(cols[3] == r.metrics.target_mean[k]);
            CHECK(cols[4] == r.metrics.target_std[k]);
            CHECK(cols[5] == r.metrics.chi_series[k]);
            ++k;
        }
        CHECK(k == r.metrics.chi_series.size());
    }
    SUBCASE("series recomputed from the trace matches at sampled times") {
        TraceSeries s = series_from_trace(r.trace, cfg.goal_radius);
        for (std::size_t k = 0; k < s.t.size(); ++k) {
            auto idx = static_cast<std::size_t>(std::llround(s.t[k] / cfg.dt));
            CHECK(s.chi[k] == r.metrics.chi_series[idx]);
            CHECK(s.herder_mean[k] ==
                  doctest::Approx(r.metrics.herder_mean[idx]).epsilon(1e-12));
            CHECK(s.target_mean[k] ==
                  doctest::Approx(r.metrics.target_mean[idx]).epsilon(1e-12));
        }
    }
}

TEST_CASE("a stationary agent plots a flat radius line") {
    ScenarioConfig cfg = default_config(Mode::ideal);
    cfg.herders = 0;
    cfg.targets = 1;
    cfg.diffusion = 0.0;
    cfg.domain_radius = 5.0;
    cfg.t_max = 3.0;
    cfg.hold_window = 10.0;  // longer than t_max: runs to the end
    RunResult r = run_scenario(cfg);
    for (double v : r.metrics.target_mean) {
        CHECK(v == doctest::Approx(r.metrics.target_mean.front()).epsilon(1e-12));
    }
}

TEST_CASE("generated scenario files reload identically") {
    ScenarioConfig cfg = default_config(Mode::ideal);
    cfg.seed = 17;
    cfg.generate_obstacles = 7;
    generate_obstacles(cfg);
    REQUIRE(cfg.obstacles.size() == 7);
    for (const RectSpec& r : cfg.obstacles) {
        CHECK(r.width >= cfg.gen_width_min);
        CHECK(r.width <= cfg.gen_width_max);
        CHECK(r.height >= cfg.gen_height_min);
        CHECK(r.height <= cfg.gen_height_max);
    }
    auto p = temp_dir() / "generated.cfg";
    write_config(cfg, p);
    ScenarioConfig back = load_config(p);
    REQUIRE(back.obstacles.size() == 7);
    for (std::size_t i = 0; i < 7; ++i) {
        CHECK(back.obstacles[i].cx == cfg.obstacles[i].cx);
        CHECK(back.obstacles[i].cy == cfg.obstacles[i].cy);
        CHECK(back.obstacles[i].width == cfg.obstacles[i].width);
        CHECK(back.obstacles[i].height == cfg.obstacles[i].height);
        CHECK(back.obstacles[i].rotation == cfg.obstacles[i].rotation);
    }

    // same seed, same file
    ScenarioConfig again = default_config(Mode::ideal);
    again.seed = 17;
    again.generate_obstacles = 7;
    generate_obstacles(again);
    for (std::size_t i = 0; i < 7; ++i) {
        CHECK(again.obstacles[i].cx == cfg.obstacles[i].cx);
        CHECK(again.obstacles[i].rotation == cfg.obstacles[i].rotation);
    }
}

} // TEST_SUITE
