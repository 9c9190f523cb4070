#include "formtrack/trace_io.hpp"

#include <charconv>

#include "formtrack/errors.hpp"
#include "formtrack/fs_util.hpp"

namespace formtrack {

namespace {

// Shortest decimal that round-trips the exact double.
void append_double(std::string& out, double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    out.append(buf, res.ptr);
}

void append_field(std::string& out, double v) {
    out += ',';
    append_double(out, v);
}

}  // namespace

std::string trace_csv(const Trace& trace, const Scenario& scenario) {
    const std::size_t n = scenario.graph.agent_count();
    const auto edges = scenario.graph.edges();
    if (!trace.samples.empty() && trace.samples.front().positions.size() != n)
        throw ValidationError("trace does not belong to this scenario");

    std::string out;
    out.reserve(80 * (trace.samples.size() + 1));

    out += 't';
    for (std::size_t i = 0; i < n; ++i) {
        const std::string k = std::to_string(i);
        out += ",x" + k + ",y" + k;
    }
    for (std::size_t i = 0; i < n; ++i) {
        const std::string k = std::to_string(i);
        out += ",ux" + k + ",uy" + k;
    }
    for (std::size_t i = 0; i < n; ++i) out += ",dT" + std::to_string(i);
    for (const Edge& e : edges)
        out += ",d" + std::to_string(e.i) + "_" + std::to_string(e.j);
    out += ",W,U,";
    out += scenario.law == ControlLaw::BLF ? 'V' : 'Q';
    out += ",ev_breach,ev_clamp,ev_sat,ev_reorder\n";

    for (const TraceSample& s : trace.samples) {
        append_double(out, s.t);
        for (const Vec2& p : s.positions) {
            append_field(out, p.x);
            append_field(out, p.y);
        }
        for (const Vec2& u : s.controls) {
            append_field(out, u.x);
            append_field(out, u.y);
        }
        for (double d : s.target_distances) append_field(out, d);
        for (double d : s.edge_distances) append_field(out, d);
        append_field(out, s.active_potential);
        append_field(out, s.potentials.target);
        append_field(out, scenario.law == ControlLaw::BLF ? s.potentials.barrier
                                                          : s.potentials.quadratic);
        out += s.breach ? ",1," : ",0,";
        out += std::to_string(s.clamps);
        out += s.saturated ? ",1," : ",0,";
        out += s.reorder ? '1' : '0';
        out += '\n';
    }
    return out;
}

void write_trace_csv(const Trace& trace, const Scenario& scenario,
                     const std::filesystem::path& path) {
    write_text_atomic(path, trace_csv(trace, scenario));
}

}  // namespace formtrack
