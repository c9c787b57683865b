#include "shep/plots.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

namespace shep {

TraceSeries series_from_trace(const SimulationTrace& trace, double goal_radius) {
    TraceSeries s;
    std::size_t i = 0;
    const auto& recs = trace.records;
    while (i < recs.size()) {
        double t = recs[i].t;
        double h_sum = 0.0, t_sum = 0.0;
        std::vector<double> h_r, t_r;
        std::size_t captured = 0;
        while (i < recs.size() && recs[i].t == t) {
            double r = std::sqrt(recs[i].x * recs[i].x + recs[i].y * recs[i].y);
            if (recs[i].kind == 'h') {
                h_r.push_back(r);
                h_sum += r;
            } else {
                t_r.push_back(r);
                t_sum += r;
                if (r <= goal_radius) ++captured;
            }
            ++i;
        }
        auto std_of = [](const std::vector<double>& xs, double mean) {
            if (xs.empty()) return 0.0;
            double var = 0.0;
            for (double x : xs) var += (x - mean) * (x - mean);
            return std::sqrt(var / static_cast<double>(xs.size()));
        };
        double hm = h_r.empty() ? 0.0 : h_sum / static_cast<double>(h_r.size());
        double tm = t_r.empty() ? 0.0 : t_sum / static_cast<double>(t_r.size());
        s.t.push_back(t);
        s.herder_mean.push_back(hm);
        s.herder_std.push_back(std_of(h_r, hm));
        s.target_mean.push_back(tm);
        s.target_std.push_back(std_of(t_r, tm));
        s.chi.push_back(t_r.empty() ? 1.0
                                    : static_cast<double>(captured) /
                                          static_cast<double>(t_r.size()));
    }
    return s;
}

namespace {

std::string fmt(double x) {
    char buf[32];
    auto [p, ec] = std::to_chars(buf, buf + sizeof(buf), x);
    (void)ec;
    return std::string(buf, p);
}

/// Minimal SVG canvas with a world-to-viewport transform (y up).
class SvgCanvas {
  public:
    SvgCanvas(double x0, double y0, double x1, double y1, int width, int height)
        : x0_(x0), y0_(y0), width_(width), height_(height) {
        sx_ = width / (x1 - x0);
        sy_ = height / (y1 - y0);
        os_ << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
            << height << "\" viewBox=\"0 0 " << width << " " << height << "\">\n";
        os_ << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    }

    double px(double x) const { return (x - x0_) * sx_; }
    double py(double y) const { return height_ - (y - y0_) * sy_; }

    void line(double ax, double ay, double bx, double by, const std::string& stroke,
              double width, const std::string& dash = "") {
        os_ << "<line x1=\"" << px(ax) << "\" y1=\"" << py(ay) << "\" x2=\"" << px(bx)
            << "\" y2=\"" << py(by) << "\" stroke=\"" << stroke << "\" stroke-width=\"" << width
            << "\"";
        if (!dash.empty()) os_ << " stroke-dasharray=\"" << dash << "\"";
        os_ << "/>\n";
    }

    void polygon(const std::vector<Vec2>& pts, const std::string& fill,
                 const std::string& stroke) {
        os_ << "<polygon points=\"";
        for (Vec2 p : pts) os_ << px(p.x) << "," << py(p.y) << " ";
        os_ << "\" fill=\"" << fill << "\" stroke=\"" << stroke << "\"/>\n";
    }

    void circle(double cx, double cy, double world_r, const std::string& fill,
                const std::string& stroke, const std::string& dash = "") {
        os_ << "<circle cx=\"" << px(cx) << "\" cy=\"" << py(cy) << "\" r=\""
            << world_r * sx_ << "\" fill=\"" << fill << "\" stroke=\"" << stroke << "\"";
        if (!dash.empty()) os_ << " stroke-dasharray=\"" << dash << "\"";
        os_ << "/>\n";
    }

    void dot(double cx, double cy, double pixel_r, const std::string& fill) {
        os_ << "<circle cx=\"" << px(cx) << "\" cy=\"" << py(cy) << "\" r=\"" << pixel_r
            << "\" fill=\"" << fill << "\"/>\n";
    }

    void diamond(double cx, double cy, double pixel_r, const std::string& fill) {
        double x = px(cx), y = py(cy);
        os_ << "<polygon points=\"" << x << "," << y - pixel_r << " " << x + pixel_r << "," << y
            << " " << x << "," << y + pixel_r << " " << x - pixel_r << "," << y
            << "\" fill=\"" << fill << "\"/>\n";
    }

    void text(double x_px, double y_px, const std::string& s, int size = 12) {
        os_ << "<text x=\"" << x_px << "\" y=\"" << y_px << "\" font-size=\"" << size
            << "\" font-family=\"sans-serif\">" << s << "</text>\n";
    }

    void raw(const std::string& s) { os_ << s; }

    void save(const std::filesystem::path& path) {
        os_ << "</svg>\n";
        std::ofstream out(path, std::ios::binary);
        if (!out) throw SimError("cannot write plot file " + path.string());
        out << os_.str();
    }

  private:
    double x0_, y0_;
    int width_, height_;
    double sx_, sy_;
    std::ostringstream os_;
};

std::string lerp_color(double t, int r0, int g0, int b0, int r1, int g1, int b1) {
    auto mix = [t](int a, int b) { return static_cast<int>(std::lround(a + (b - a) * t)); };
    std::ostringstream os;
    os << "rgb(" << mix(r0, r1) << "," << mix(g0, g1) << "," << mix(b0, b1) << ")";
    return os.str();
}

std::string herder_color(double t) { return lerp_color(t, 173, 210, 238, 8, 48, 107); }
std::string target_color(double t) { return lerp_color(t, 247, 201, 240, 139, 0, 139); }

struct AgentPath {
    char kind;
    std::vector<double> t;
    std::vector<Vec2> p;
};

std::map<std::pair<char, int>, AgentPath> paths_by_agent(const SimulationTrace& trace) {
    std::map<std::pair<char, int>, AgentPath> paths;
    for (const TraceRecord& r : trace.records) {
        AgentPath& ap = paths[{r.kind, r.id}];
        ap.kind = r.kind;
        ap.t.push_back(r.t);
        ap.p.push_back({r.x, r.y});
    }
    return paths;
}

struct Bounds {
    double x0{-1.0}, y0{-1.0}, x1{1.0}, y1{1.0};
};

Bounds scene_bounds(const SimulationTrace& trace, const ScenarioConfig& cfg) {
    Bounds b;
    b.x0 = b.y0 = -cfg.goal_radius;
    b.x1 = b.y1 = cfg.goal_radius;
    for (const TraceRecord& r : trace.records) {
        b.x0 = std::min(b.x0, r.x);
        b.y0 = std::min(b.y0, r.y);
        b.x1 = std::max(b.x1, r.x);
        b.y1 = std::max(b.y1, r.y);
    }
    for (const RectSpec& o : cfg.obstacles) {
        double half = 0.5 * std::hypot(o.width, o.height);
        b.x0 = std::min(b.x0, o.cx - half);
        b.y0 = std::min(b.y0, o.cy - half);
        b.x1 = std::max(b.x1, o.cx + half);
        b.y1 = std::max(b.y1, o.cy + half);
    }
    double mx = 0.05 * (b.x1 - b.x0 + 1e-9);
    double my = 0.05 * (b.y1 - b.y0 + 1e-9);
    // keep the aspect ratio square
    double cx = 0.5 * (b.x0 + b.x1);
    double cy = 0.5 * (b.y0 + b.y1);
    double half = 0.5 * std::max(b.x1 - b.x0 + 2 * mx, b.y1 - b.y0 + 2 * my);
    return {cx - half, cy - half, cx + half, cy + half};
}

void draw_scene_static(SvgCanvas& svg, const ScenarioConfig& cfg) {
    svg.circle(0.0, 0.0, cfg.goal_radius, "none", "green", "6,4");
    for (const RectSpec& o : cfg.obstacles) {
        ConvexPolygon poly = ConvexPolygon::rectangle({o.cx, o.cy}, o.width, o.height, o.rotation);
        svg.polygon(poly.vertices(), "rgb(120,120,120)", "rgb(60,60,60)");
    }
}

void write_trajectory_svg(const SimulationTrace& trace, const ScenarioConfig& cfg,
                          const std::filesystem::path& path) {
    Bounds b = scene_bounds(trace, cfg);
    SvgCanvas svg(b.x0, b.y0, b.x1, b.y1, 800, 800);
    draw_scene_static(svg, cfg);

    auto paths = paths_by_agent(trace);
    double t_end = trace.records.empty() ? 1.0 : trace.records.back().t;
    if (t_end <= 0.0) t_end = 1.0;
    for (auto& [key, ap] : paths) {
        // cap the drawn segments per agent to keep files small
        std::size_t stride = std::max<std::size_t>(1, ap.p.size() / 400);
        for (std::size_t k = stride; k < ap.p.size(); k += stride) {
            double frac = ap.t[k] / t_end;
            std::string color = ap.kind == 'h' ? herder_color(frac) : target_color(frac);
            svg.line(ap.p[k - stride].x, ap.p[k - stride].y, ap.p[k].x, ap.p[k].y, color,
                     ap.kind == 'h' ? 2.0 : 1.2);
        }
        if (!ap.p.empty()) {
            if (ap.kind == 'h') {
                svg.diamond(ap.p.back().x, ap.p.back().y, 6.0, herder_color(1.0));
            } else {
                svg.dot(ap.p.back().x, ap.p.back().y, 3.0, target_color(1.0));
            }
        }
    }
    svg.text(10, 20, "trajectories (light = start, dark = end); goal dashed");
    svg.save(path);
}

void write_scene_svg(const SimulationTrace& trace, const ScenarioConfig& cfg, bool final_state,
                     const std::filesystem::path& path) {
    Bounds b = scene_bounds(trace, cfg);
    SvgCanvas svg(b.x0, b.y0, b.x1, b.y1, 800, 800);
    draw_scene_static(svg, cfg);
    if (!trace.records.empty()) {
        double t_sel = final_state ? trace.records.back().t : trace.records.front().t;
        for (const TraceRecord& r : trace.records) {
            if (r.t != t_sel) continue;
            if (r.kind == 'h') {
                svg.diamond(r.x, r.y, 6.0, "rgb(8,48,107)");
            } else {
                svg.dot(r.x, r.y, 3.0, "rgb(139,0,139)");
            }
        }
        svg.text(10, 20, final_state ? "t = " + fmt(t_sel) + " s" : "t = 0 s");
    }
    svg.save(path);
}

void write_radii_svg(const RunMetrics& m, const ScenarioConfig& cfg,
                     const std::filesystem::path& path) {
    const std::size_t n = m.chi_series.size();
    const int W = 900, H = 600;
    double t_end = m.dt * static_cast<double>(n > 1 ? n - 1 : 1);
    double r_max = cfg.goal_radius;
    for (std::size_t k = 0; k < n; ++k) {
        r_max = std::max({r_max, m.herder_mean[k] + m.herder_std[k],
                          m.target_mean[k] + m.target_std[k]});
    }
    SvgCanvas svg(-0.08 * t_end, -0.12 * r_max, 1.02 * t_end, 1.1 * r_max, W, H);

    svg.line(0, 0, t_end, 0, "black", 1.0);
    svg.line(0, 0, 0, r_max, "black", 1.0);
    svg.line(0, cfg.goal_radius, t_end, cfg.goal_radius, "green", 1.5, "6,4");

    std::size_t stride = std::max<std::size_t>(1, n / 600);
    auto draw_band = [&](const std::vector<double>& mean, const std::vector<double>& sd,
                         const std::string& line_color, const std::string& band_color) {
        for (std::size_t k = stride; k < n; k += stride) {
            double t0 = m.dt * static_cast<double>(k - stride);
            double t1 = m.dt * static_cast<double>(k);
            svg.line(t0, mean[k - stride] + sd[k - stride], t1, mean[k] + sd[k], band_color, 0.8);
            svg.line(t0, mean[k - stride] - sd[k - stride], t1, mean[k] - sd[k], band_color, 0.8);
            svg.line(t0, mean[k - stride], t1, mean[k], line_color, 2.0);
        }
    };
    if (!m.herder_mean.empty()) {
        draw_band(m.herder_mean, m.herder_std, "rgb(8,48,107)", "rgb(150,180,220)");
    }
    if (!m.target_mean.empty()) {
        draw_band(m.target_mean, m.target_std, "rgb(139,0,139)", "rgb(220,160,220)");
    }
    svg.text(10, 20, "mean distance to goal center vs time (blue herders, magenta targets, "
                     "green dashed goal radius)");

    // chi inset, bottom right
    double ix0 = 0.62 * W, iy0 = 0.70 * H, iw = 0.33 * W, ih = 0.24 * H;
    std::ostringstream inset;
    inset << "<rect x=\"" << ix0 << "\" y=\"" << iy0 << "\" width=\"" << iw << "\" height=\""
          << ih << "\" fill=\"white\" stroke=\"black\"/>\n";
    inset << "<polyline fill=\"none\" stroke=\"rgb(139,0,139)\" stroke-width=\"1.5\" points=\"";
    for (std::size_t k = 0; k < n; k += stride) {
        double xx = ix0 + (static_cast<double>(k) / static_cast<double>(n > 1 ? n - 1 : 1)) * iw;
        double yy = iy0 + ih - m.chi_series[k] * ih;
        inset << xx << "," << yy << " ";
    }
    inset << "\"/>\n";
    inset << "<text x=\"" << ix0 + 4 << "\" y=\"" << iy0 + 14
          << "\" font-size=\"12\" font-family=\"sans-serif\">captured fraction</text>\n";
    svg.raw(inset.str());
    svg.save(path);
}

void write_radii_series(const RunMetrics& m, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw SimError("cannot write series file " + path.string());
    out << "# columns: t [s], herder_mean [m], herder_std [m], target_mean [m], "
           "target_std [m], chi\n";
    out << "t,herder_mean,herder_std,target_mean,target_std,chi\n";
    for (std::size_t k = 0; k < m.chi_series.size(); ++k) {
        out << fmt(m.dt * static_cast<double>(k)) << ',' << fmt(m.herder_mean[k]) << ','
            << fmt(m.herder_std[k]) << ',' << fmt(m.target_mean[k]) << ','
            << fmt(m.target_std[k]) << ',' << fmt(m.chi_series[k]) << '\n';
    }
}

} // namespace

void emit_plots(const SimulationTrace& trace, const RunMetrics& metrics,
                const ScenarioConfig& cfg, const std::filesystem::path& out_dir) {
    std::filesystem::create_directories(out_dir);
    write_trajectory_svg(trace, cfg, out_dir / "trajectory.svg");
    write_scene_svg(trace, cfg, false, out_dir / "scene_initial.svg");
    write_scene_svg(trace, cfg, true, out_dir / "scene_final.svg");
    write_radii_svg(metrics, cfg, out_dir / "radii.svg");
    write_radii_series(metrics, out_dir / "radii_series.csv");
}

} // namespace shep
