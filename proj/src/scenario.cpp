#include "shep/scenario.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "shep/rng.hpp"

namespace shep {

std::string to_string(Mode mode) {
    switch (mode) {
        case Mode::ideal: return "ideal";
        case Mode::embodied: return "embodied";
        case Mode::baseline: return "baseline";
    }
    return "ideal";
}

Mode mode_from_string(const std::string& s) {
    if (s == "ideal") return Mode::ideal;
    if (s == "embodied") return Mode::embodied;
    if (s == "baseline") return Mode::baseline;
    throw ParseError("unknown mode '" + s + "' (expected ideal|embodied|baseline)");
}

ScenarioConfig default_config(Mode mode) {
    ScenarioConfig c;  // in-class initializers hold the simulation-scale set
    c.mode = mode;
    if (mode == Mode::embodied) {
        // Robot-scale parameter set; the speed cap, sampling disc and drive
        // geometry are configuration values sized for small differential-drive
        // platforms.
        c.herders = 2;
        c.targets = 3;
        c.dt = 0.002;
        c.t_max = 300.0;
        c.domain_radius = 0.8;
        c.goal_radius = 0.35;
        c.lambda = 0.5;
        c.beta = 3.0;
        c.diffusion = 0.0;
        c.lambda_o = 0.2;
        c.k_o = 10.0;
        c.epsilon_o = 0.1;
        c.v_h = 0.31;
        c.alpha = 3.0;
        c.delta = 0.375;
        c.gamma = 0.3;
        c.lookahead = 0.1;
        c.wheelbase = 0.233;
        c.wheel_v_max = 0.31;
        c.arc_radius = 0.5;
        c.grid_resolution = 0.05;
        c.grid_inflation = 0.2;
    }
    return c;
}

namespace {

struct KeyValue {
    std::string key;
    std::string value;
    int line{0};
};

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r");
    auto e = s.find_last_not_of(" \t\r");
    if (b == std::string::npos) return "";
    return s.substr(b, e - b + 1);
}

[[noreturn]] void parse_fail(const KeyValue& kv, const std::string& what) {
    std::ostringstream os;
    if (kv.line > 0) os << "line " << kv.line << ": ";
    os << what;
    throw ParseError(os.str());
}

double parse_double(const KeyValue& kv) {
    double out{};
    const char* b = kv.value.data();
    const char* e = b + kv.value.size();
    auto [p, ec] = std::from_chars(b, e, out);
    if (ec != std::errc{} || p != e) {
        parse_fail(kv, "expected a number for '" + kv.key + "', got '" + kv.value + "'");
    }
    return out;
}

long long parse_int(const KeyValue& kv) {
    long long out{};
    const char* b = kv.value.data();
    const char* e = b + kv.value.size();
    auto [p, ec] = std::from_chars(b, e, out);
    if (ec != std::errc{} || p != e) {
        parse_fail(kv, "expected an integer for '" + kv.key + "', got '" + kv.value + "'");
    }
    return out;
}

std::uint64_t parse_u64(const KeyValue& kv) {
    std::uint64_t out{};
    const char* b = kv.value.data();
    const char* e = b + kv.value.size();
    auto [p, ec] = std::from_chars(b, e, out);
    if (ec != std::errc{} || p != e) {
        parse_fail(kv, "expected an unsigned integer for '" + kv.key + "', got '" + kv.value + "'");
    }
    return out;
}

/// Tracks which obstacle fields were given so partial rectangles are rejected.
using ObstacleFieldSet = std::set<std::pair<std::size_t, std::string>>;

bool apply_obstacle_key(ScenarioConfig& cfg, const KeyValue& kv, ObstacleFieldSet* seen) {
    // obstacle.<index>.<field>
    if (kv.key.rfind("obstacle.", 0) != 0) return false;
    std::string rest = kv.key.substr(9);
    auto dot = rest.find('.');
    if (dot == std::string::npos) parse_fail(kv, "expected obstacle.<index>.<field>");
    std::size_t index{};
    {
        const char* b = rest.data();
        auto [p, ec] = std::from_chars(b, b + dot, index);
        if (ec != std::errc{} || p != b + dot) {
            parse_fail(kv, "bad obstacle index in '" + kv.key + "'");
        }
    }
    std::string field = rest.substr(dot + 1);
    if (index >= cfg.obstacles.size()) cfg.obstacles.resize(index + 1);
    RectSpec& r = cfg.obstacles[index];
    double v = parse_double(kv);
    if (field == "cx") {
        r.cx = v;
    } else if (field == "cy") {
        r.cy = v;
    } else if (field == "width") {
        r.width = v;
    } else if (field == "height") {
        r.height = v;
    } else if (field == "rotation") {
        r.rotation = v;
    } else {
        parse_fail(kv, "unknown obstacle field '" + field + "'");
    }
    if (seen) seen->insert({index, field});
    return true;
}

void apply_key(ScenarioConfig& cfg, const KeyValue& kv, ObstacleFieldSet* seen) {
    const std::string& k = kv.key;
    if (k == "mode") {
        cfg.mode = mode_from_string(kv.value);
    } else if (k == "herders") {
        cfg.herders = static_cast<int>(parse_int(kv));
    } else if (k == "targets") {
        cfg.targets = static_cast<int>(parse_int(kv));
    } else if (k == "seed") {
        cfg.seed = parse_u64(kv);
    } else if (k == "dt") {
        cfg.dt = parse_double(kv);
    } else if (k == "t_max") {
        cfg.t_max = parse_double(kv);
    } else if (k == "hold_window") {
        cfg.hold_window = parse_double(kv);
    } else if (k == "trace_every") {
        cfg.trace_every = static_cast<int>(parse_int(kv));
    } else if (k == "domain_radius") {
        cfg.domain_radius = parse_double(kv);
    } else if (k == "goal_radius") {
        cfg.goal_radius = parse_double(kv);
    } else if (k == "lambda") {
        cfg.lambda = parse_double(kv);
    } else if (k == "beta") {
        cfg.beta = parse_double(kv);
    } else if (k == "diffusion") {
        cfg.diffusion = parse_double(kv);
    } else if (k == "lambda_o") {
        cfg.lambda_o = parse_double(kv);
    } else if (k == "k_o") {
        cfg.k_o = parse_double(kv);
    } else if (k == "epsilon_o") {
        cfg.epsilon_o = parse_double(kv);
    } else if (k == "v_h") {
        cfg.v_h = parse_double(kv);
    } else if (k == "alpha") {
        cfg.alpha = parse_double(kv);
    } else if (k == "delta") {
        cfg.delta = parse_double(kv);
    } else if (k == "gamma") {
        cfg.gamma = parse_double(kv);
    } else if (k == "alpha_o") {
        cfg.alpha_o = parse_double(kv);
    } else if (k == "alpha_r") {
        cfg.alpha_r = parse_double(kv);
    } else if (k == "r_th") {
        cfg.r_th = parse_double(kv);
    } else if (k == "epsilon_h") {
        cfg.epsilon_h = parse_double(kv);
    } else if (k == "beta_orb") {
        cfg.beta_orb = parse_double(kv);
    } else if (k == "beta_th") {
        cfg.beta_th = parse_double(kv);
    } else if (k == "k_d") {
        cfg.k_d = parse_double(kv);
    } else if (k == "d_th") {
        cfg.d_th = parse_double(kv);
    } else if (k == "lookahead") {
        cfg.lookahead = parse_double(kv);
    } else if (k == "wheelbase") {
        cfg.wheelbase = parse_double(kv);
    } else if (k == "wheel_v_max") {
        cfg.wheel_v_max = parse_double(kv);
    } else if (k == "arc_radius") {
        cfg.arc_radius = parse_double(kv);
    } else if (k == "arc_span") {
        cfg.arc_span = parse_double(kv);
    } else if (k == "com_gain") {
        cfg.com_gain = parse_double(kv);
    } else if (k == "grid_resolution") {
        cfg.grid_resolution = parse_double(kv);
    } else if (k == "grid_inflation") {
        cfg.grid_inflation = parse_double(kv);
    } else if (k == "generate_obstacles") {
        cfg.generate_obstacles = static_cast<int>(parse_int(kv));
    } else if (k == "gen_width_min") {
        cfg.gen_width_min = parse_double(kv);
    } else if (k == "gen_width_max") {
        cfg.gen_width_max = parse_double(kv);
    } else if (k == "gen_height_min") {
        cfg.gen_height_min = parse_double(kv);
    } else if (k == "gen_height_max") {
        cfg.gen_height_max = parse_double(kv);
    } else if (!apply_obstacle_key(cfg, kv, seen)) {
        parse_fail(kv, "unknown key '" + k + "'");
    }
}

void require(std::vector<std::string>& out, bool ok, const std::string& what) {
    if (!ok) out.push_back(what);
}

std::vector<std::string> bound_violations(const ScenarioConfig& c) {
    std::vector<std::string> v;
    require(v, c.herders >= 0, "herders must be >= 0");
    require(v, c.targets >= 0, "targets must be >= 0");
    require(v, c.dt > 0.0, "dt must be > 0");
    require(v, c.t_max >= 0.0, "t_max must be >= 0");
    require(v, c.hold_window >= 0.0, "hold_window must be >= 0");
    require(v, c.trace_every >= 1, "trace_every must be >= 1");
    require(v, c.domain_radius > 0.0, "domain_radius must be > 0");
    require(v, c.goal_radius > 0.0, "goal_radius must be > 0");
    require(v, c.lambda > 0.0, "lambda must be > 0");
    require(v, c.beta > 0.0, "beta must be > 0");
    require(v, c.diffusion >= 0.0, "diffusion must be >= 0");
    require(v, c.lambda_o > 0.0, "lambda_o must be > 0");
    require(v, c.k_o > 0.0, "k_o must be > 0");
    require(v, c.epsilon_o > 0.0, "epsilon_o must be > 0");
    require(v, c.v_h > 0.0, "v_h must be > 0");
    require(v, c.alpha > 0.0, "alpha must be > 0");
    require(v, c.delta > 0.0, "delta must be > 0");
    require(v, c.delta < c.lambda, "delta must be < lambda");
    require(v, c.gamma >= 0.0 && c.gamma <= 1.0, "gamma must be in [0,1]");
    require(v, c.alpha_o > 0.0, "alpha_o must be > 0");
    require(v, c.alpha_r > 0.0, "alpha_r must be > 0");
    require(v, c.r_th > 0.0, "r_th must be > 0");
    require(v, c.epsilon_h > 0.0, "epsilon_h must be > 0");
    require(v, c.beta_orb > 0.0, "beta_orb must be > 0");
    require(v, c.beta_th > c.beta_orb, "beta_th must be > beta_orb");
    require(v, c.k_d > 0.0, "k_d must be > 0");
    require(v, c.d_th > 0.0, "d_th must be > 0");
    require(v, c.lookahead > 0.0, "lookahead must be > 0");
    require(v, c.wheelbase > 0.0, "wheelbase must be > 0");
    require(v, c.wheel_v_max > 0.0, "wheel_v_max must be > 0");
    require(v, c.arc_radius > 0.0, "arc_radius must be > 0");
    require(v, c.arc_span > 0.0 && c.arc_span < 6.283185307179586,
            "arc_span must be in (0, 2*pi)");
    require(v, c.com_gain > 0.0, "com_gain must be > 0");
    require(v, c.grid_resolution > 0.0, "grid_resolution must be > 0");
    require(v, c.grid_inflation >= 0.0, "grid_inflation must be >= 0");
    require(v, c.generate_obstacles >= 0, "generate_obstacles must be >= 0");
    require(v, c.gen_width_min > 0.0 && c.gen_width_max >= c.gen_width_min,
            "generator width range must satisfy 0 < min <= max");
    require(v, c.gen_height_min > 0.0 && c.gen_height_max >= c.gen_height_min,
            "generator height range must satisfy 0 < min <= max");
    require(v, !(c.generate_obstacles > 0 && !c.obstacles.empty()),
            "give either explicit obstacles or generate_obstacles, not both");
    for (std::size_t i = 0; i < c.obstacles.size(); ++i) {
        const RectSpec& r = c.obstacles[i];
        require(v, r.width > 0.0 && r.height > 0.0,
                "obstacle." + std::to_string(i) + " needs positive width and height");
    }
    return v;
}

std::string format_double(double x) {
    char buf[32];
    auto [p, ec] = std::to_chars(buf, buf + sizeof(buf), x);
    (void)ec;
    return std::string(buf, p);
}

} // namespace

void check_bounds(const ScenarioConfig& cfg) {
    auto v = bound_violations(cfg);
    if (!v.empty()) {
        std::string msg = "config bound violations:";
        for (const auto& s : v) msg += "\n  - " + s;
        throw ValidationError(msg);
    }
}

ScenarioConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open config file " + path.string());

    std::vector<KeyValue> entries;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        std::string t = trim(line);
        if (t.empty()) continue;
        auto eq = t.find('=');
        if (eq == std::string::npos) {
            throw ParseError("line " + std::to_string(line_no) + ": expected key = value");
        }
        entries.push_back({trim(t.substr(0, eq)), trim(t.substr(eq + 1)), line_no});
    }

    // The mode decides the default set, so resolve it before the other keys.
    Mode mode = Mode::ideal;
    for (const KeyValue& kv : entries) {
        if (kv.key == "mode") mode = mode_from_string(kv.value);
    }
    ScenarioConfig cfg = default_config(mode);

    ObstacleFieldSet seen;
    for (const KeyValue& kv : entries) apply_key(cfg, kv, &seen);

    // Reject partially specified rectangles.
    static const char* fields[] = {"cx", "cy", "width", "height", "rotation"};
    for (std::size_t i = 0; i < cfg.obstacles.size(); ++i) {
        for (const char* f : fields) {
            if (!seen.count({i, f})) {
                throw ValidationError("obstacle." + std::to_string(i) + " is missing field '" +
                                      f + "'");
            }
        }
    }

    check_bounds(cfg);
    return cfg;
}

void apply_override(ScenarioConfig& cfg, const std::string& assignment) {
    auto eq = assignment.find('=');
    if (eq == std::string::npos) {
        throw ParseError("override '" + assignment + "' is not of the form key=value");
    }
    KeyValue kv{trim(assignment.substr(0, eq)), trim(assignment.substr(eq + 1)), 0};
    if (kv.key == "mode") {
        // Changing the mode re-bases every unset key on that mode's defaults,
        // which is not expressible after the fact; require it in the file or
        // as the --mode flag handled by the caller.
        Mode new_mode = mode_from_string(kv.value);
        cfg.mode = new_mode;
        return;
    }
    apply_key(cfg, kv, nullptr);
    check_bounds(cfg);
}

void write_config(const ScenarioConfig& cfg, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw SimError("cannot write config file " + path.string());
    out << "# shepherd scenario config (flat key = value, '#' starts a comment)\n";
    out << "# units: meters, seconds, radians\n";
    out << "mode = " << to_string(cfg.mode) << "\n";
    out << "herders = " << cfg.herders << "\n";
    out << "targets = " << cfg.targets << "\n";
    out << "seed = " << cfg.seed << "\n";
    out << "dt = " << format_double(cfg.dt) << "\n";
    out << "t_max = " << format_double(cfg.t_max) << "\n";
    out << "hold_window = " << format_double(cfg.hold_window) << "\n";
    out << "trace_every = " << cfg.trace_every << "\n";
    out << "domain_radius = " << format_double(cfg.domain_radius) << "\n";
    out << "goal_radius = " << format_double(cfg.goal_radius) << "\n";
    out << "lambda = " << format_double(cfg.lambda) << "\n";
    out << "beta = " << format_double(cfg.beta) << "\n";
    out << "diffusion = " << format_double(cfg.diffusion) << "\n";
    out << "lambda_o = " << format_double(cfg.lambda_o) << "\n";
    out << "k_o = " << format_double(cfg.k_o) << "\n";
    out << "epsilon_o = " << format_double(cfg.epsilon_o) << "\n";
    out << "v_h = " << format_double(cfg.v_h) << "\n";
    out << "alpha = " << format_double(cfg.alpha) << "\n";
    out << "delta = " << format_double(cfg.delta) << "\n";
    out << "gamma = " << format_double(cfg.gamma) << "\n";
    out << "alpha_o = " << format_double(cfg.alpha_o) << "\n";
    out << "alpha_r = " << format_double(cfg.alpha_r) << "\n";
    out << "r_th = " << format_double(cfg.r_th) << "\n";
    out << "epsilon_h = " << format_double(cfg.epsilon_h) << "\n";
    out << "beta_orb = " << format_double(cfg.beta_orb) << "\n";
    out << "beta_th = " << format_double(cfg.beta_th) << "\n";
    out << "k_d = " << format_double(cfg.k_d) << "\n";
    out << "d_th = " << format_double(cfg.d_th) << "\n";
    out << "lookahead = " << format_double(cfg.lookahead) << "\n";
    out << "wheelbase = " << format_double(cfg.wheelbase) << "\n";
    out << "wheel_v_max = " << format_double(cfg.wheel_v_max) << "\n";
    out << "arc_radius = " << format_double(cfg.arc_radius) << "\n";
    out << "arc_span = " << format_double(cfg.arc_span) << "\n";
    out << "com_gain = " << format_double(cfg.com_gain) << "\n";
    out << "grid_resolution = " << format_double(cfg.grid_resolution) << "\n";
    out << "grid_inflation = " << format_double(cfg.grid_inflation) << "\n";
    out << "generate_obstacles = " << cfg.generate_obstacles << "\n";
    out << "gen_width_min = " << format_double(cfg.gen_width_min) << "\n";
    out << "gen_width_max = " << format_double(cfg.gen_width_max) << "\n";
    out << "gen_height_min = " << format_double(cfg.gen_height_min) << "\n";
    out << "gen_height_max = " << format_double(cfg.gen_height_max) << "\n";
    for (std::size_t i = 0; i < cfg.obstacles.size(); ++i) {
        const RectSpec& r = cfg.obstacles[i];
        std::string p = "obstacle." + std::to_string(i) + ".";
        out << p << "cx = " << format_double(r.cx) << "\n";
        out << p << "cy = " << format_double(r.cy) << "\n";
        out << p << "width = " << format_double(r.width) << "\n";
        out << p << "height = " << format_double(r.height) << "\n";
        out << p << "rotation = " << format_double(r.rotation) << "\n";
    }
}

std::string config_key_help() {
    return
        "config keys (flat `key = value`; unset keys take the selected mode's stock set;\n"
        "first value: ideal/baseline default, second: embodied default):\n"
        "  mode                 ideal | embodied | baseline\n"
        "  herders              10 / 2          int >= 0\n"
        "  targets              100 / 3         int >= 0\n"
        "  seed                 0               uint64\n"
        "  dt                   0.01 / 0.002    s, > 0\n"
        "  t_max                600 / 300       s, >= 0\n"
        "  hold_window          5               s of sustained full capture, >= 0\n"
        "  trace_every          10              steps between trace records, >= 1\n"
        "  domain_radius        50 / 0.8        m, > 0 (initial sampling disc)\n"
        "  goal_radius          10 / 0.35       m, > 0\n"
        "  lambda               2.5 / 0.5       m, > 0 (herder influence on targets)\n"
        "  beta                 3               > 0 (herder repulsion gain)\n"
        "  diffusion            0.5 / 0         m^2/s, >= 0\n"
        "  lambda_o             2.5 / 0.2       m, > 0 (obstacle influence radius)\n"
        "  k_o                  10              > 0 (obstacle repulsion gain)\n"
        "  epsilon_o            1 / 0.1         m, > 0 (obstacle safety margin)\n"
        "  v_h                  7.5 / 0.31      m/s, > 0 (herder max speed)\n"
        "  alpha                5 / 3           > 0 (steering gain)\n"
        "  delta                1.25 / 0.375    m, 0 < delta < lambda (push offset)\n"
        "  gamma                0.3             in [0,1] (normal/tangential blend)\n"
        "  alpha_o              4.5             > 0 (orbit tangential gain)\n"
        "  alpha_r              3               > 0 (orbit radial gain)\n"
        "  r_th                 0.375           m, > 0 (orbit radius)\n"
        "  epsilon_h            0.1             m, > 0 (orbit distance blend buffer)\n"
        "  beta_orb             pi/18           rad, > 0 (orbit angle deadband)\n"
        "  beta_th              pi/4            rad, > beta_orb (orbit angle saturation)\n"
        "  k_d                  1               > 0 (same-type repulsion gain)\n"
        "  d_th                 0.45            m, > 0 (same-type repulsion cutoff)\n"
        "  lookahead            1 / 0.1         m, > 0 (unicycle mapping distance)\n"
        "  wheelbase            1 / 0.233       m, > 0\n"
        "  wheel_v_max          7.5 / 0.31      m/s, > 0 (per-wheel limit)\n"
        "  arc_radius           2.5 / 0.5       m, > 0 (baseline pushing arc)\n"
        "  arc_span             pi/2            rad, in (0, 2*pi)\n"
        "  com_gain             1               > 0 (baseline slot attraction)\n"
        "  grid_resolution      1 / 0.05        m, > 0 (baseline planning grid)\n"
        "  grid_inflation       2.5 / 0.2       m, >= 0 (planning obstacle inflation)\n"
        "  generate_obstacles   0               int >= 0 (random rectangles; excludes\n"
        "                                       explicit obstacle.* keys)\n"
        "  gen_width_min/max    8 / 20          m, 0 < min <= max\n"
        "  gen_height_min/max   2 / 20          m, 0 < min <= max\n"
        "  obstacle.K.cx        (none)          m; K = 0,1,... fully specified each\n"
        "  obstacle.K.cy        (none)          m\n"
        "  obstacle.K.width     (none)          m, > 0\n"
        "  obstacle.K.height    (none)          m, > 0\n"
        "  obstacle.K.rotation  (none)          rad\n";
}

std::vector<ObstacleField> build_fields(const ScenarioConfig& cfg) {
    std::vector<ObstacleField> fields;
    fields.reserve(cfg.obstacles.size());
    for (const RectSpec& r : cfg.obstacles) {
        fields.push_back(ObstacleField{
            ConvexPolygon::rectangle({r.cx, r.cy}, r.width, r.height, r.rotation),
            cfg.lambda_o, cfg.k_o});
    }
    return fields;
}

void generate_obstacles(ScenarioConfig& cfg) {
    if (cfg.generate_obstacles <= 0) return;
    const int count = cfg.generate_obstacles;
    // Influence regions must stay disjoint; embodied runs additionally need
    // room for a herder to orbit between obstacles.
    double gap = cfg.lambda_o + cfg.epsilon_o + (cfg.mode == Mode::embodied ? cfg.d_th : 0.0);
    double goal_clear = cfg.goal_radius + cfg.lambda_o + cfg.epsilon_o;
    constexpr double kPi = 3.141592653589793;

    auto rng = make_stream(cfg.seed, "obstacle-gen", 0);
    for (int round = 0; round < 100; ++round) {
        std::vector<RectSpec> specs;
        std::vector<ConvexPolygon> polys;
        bool ok = true;
        for (int k = 0; k < count && ok; ++k) {
            bool placed = false;
            for (int attempt = 0; attempt < 1000; ++attempt) {
                RectSpec r;
                r.width = uniform_in(rng, cfg.gen_width_min, cfg.gen_width_max);
                r.height = uniform_in(rng, cfg.gen_height_min, cfg.gen_height_max);
                double rad = cfg.domain_radius * std::sqrt(uniform01(rng));
                double ang = 2.0 * kPi * uniform01(rng);
                r.cx = rad * std::cos(ang);
                r.cy = rad * std::sin(ang);
                r.rotation = uniform_in(rng, 0.0, kPi);
                ConvexPolygon poly =
                    ConvexPolygon::rectangle({r.cx, r.cy}, r.width, r.height, r.rotation);
                if (poly.contains({0.0, 0.0}) ||
                    poly.project_ex({0.0, 0.0}).distance < goal_clear) {
                    continue;  // would sit on the goal region
                }
                bool clear = true;
                for (const ConvexPolygon& other : polys) {
                    if (set_distance(poly, other) <= gap + 1e-9) {
                        clear = false;
                        break;
                    }
                }
                if (!clear) continue;
                specs.push_back(r);
                polys.push_back(std::move(poly));
                placed = true;
                break;
            }
            if (!placed) ok = false;
        }
        if (ok) {
            cfg.obstacles = std::move(specs);
            cfg.generate_obstacles = 0;
            return;
        }
    }
    throw SimError("obstacle generator could not place " + std::to_string(count) +
                   " rectangles with the required clearances");
}

} // namespace shep
