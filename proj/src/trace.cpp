#include "shep/trace.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "shep/errors.hpp"

namespace shep {

namespace {

void put_double(std::string& out, double x) {
    char buf[32];
    auto [p, ec] = std::to_chars(buf, buf + sizeof(buf), x);
    (void)ec;
    out.append(buf, p);
}

double get_double(const std::string& tok, int line) {
    double out{};
    auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), out);
    if (ec != std::errc{} || p != tok.data() + tok.size()) {
        throw ParseError("trace line " + std::to_string(line) + ": bad number '" + tok + "'");
    }
    return out;
}

int get_int(const std::string& tok, int line) {
    int out{};
    auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), out);
    if (ec != std::errc{} || p != tok.data() + tok.size()) {
        throw ParseError("trace line " + std::to_string(line) + ": bad integer '" + tok + "'");
    }
    return out;
}

} // namespace

std::string trace_header() {
    return "t,id,kind,x,y,heading,eta,mu,sigma,zeta";
}

void write_trace(const SimulationTrace& trace, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw SimError("cannot write trace file " + path.string());
    out << "# columns: t [s], id, kind (herder|target), x [m], y [m], heading [rad], "
           "eta, mu, sigma, zeta\n";
    out << trace_header() << "\n";
    std::string line;
    for (const TraceRecord& r : trace.records) {
        line.clear();
        put_double(line, r.t);
        line += ',';
        line += std::to_string(r.id);
        line += ',';
        line += (r.kind == 'h') ? "herder" : "target";
        line += ',';
        put_double(line, r.x);
        line += ',';
        put_double(line, r.y);
        line += ',';
        put_double(line, r.heading);
        line += ',';
        line += std::to_string(r.eta);
        line += ',';
        line += std::to_string(r.mu);
        line += ',';
        put_double(line, r.sigma);
        line += ',';
        put_double(line, r.zeta);
        line += '\n';
        out << line;
    }
}

SimulationTrace read_trace(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw SimError("cannot open trace file " + path.string());
    SimulationTrace trace;
    std::string line;
    int line_no = 0;
    bool header_seen = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line[0] == '#') continue;
        if (!header_seen) {
            if (line != trace_header()) {
                throw ParseError("trace line " + std::to_string(line_no) +
                                 ": unexpected header '" + line + "'");
            }
            header_seen = true;
            continue;
        }
        std::istringstream ss(line);
        std::string tok;
        std::vector<std::string> cols;
        while (std::getline(ss, tok, ',')) cols.push_back(tok);
        if (cols.size() != 10) {
            throw ParseError("trace line " + std::to_string(line_no) + ": expected 10 columns");
        }
        TraceRecord r;
        r.t = get_double(cols[0], line_no);
        r.id = get_int(cols[1], line_no);
        if (cols[2] == "herder") {
            r.kind = 'h';
        } else if (cols[2] == "target") {
            r.kind = 't';
        } else {
            throw ParseError("trace line " + std::to_string(line_no) + ": bad kind '" +
                             cols[2] + "'");
        }
        r.x = get_double(cols[3], line_no);
        r.y = get_double(cols[4], line_no);
        r.heading = get_double(cols[5], line_no);
        r.eta = get_int(cols[6], line_no);
        r.mu = get_int(cols[7], line_no);
        r.sigma = get_double(cols[8], line_no);
        r.zeta = get_double(cols[9], line_no);
        trace.records.push_back(r);
    }
    if (!header_seen) throw ParseError("trace file has no header row");
    return trace;
}

} // namespace shep
