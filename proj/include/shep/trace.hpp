#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace shep {

/// One sampled agent state.  Herder-only columns are zero for targets.
struct TraceRecord {
    double t{0.0};
    int id{0};
    char kind{'t'};  // 'h' herder, 't' target
    double x{0.0};
    double y{0.0};
    double heading{0.0};
    int eta{0};
    int mu{0};
    double sigma{0.0};
    double zeta{0.0};
};

struct SimulationTrace {
    std::vector<TraceRecord> records;
};

/// Delimited text, one record per line, header row with column names and
/// units; doubles printed with shortest round-trip precision so write/read
/// is lossless.
void write_trace(const SimulationTrace& trace, const std::filesystem::path& path);
SimulationTrace read_trace(const std::filesystem::path& path);

std::string trace_header();

} // namespace shep
