#pragma once

#include <filesystem>
#include <string>

#include "formtrack/engine.hpp"

namespace formtrack {

/// Render a trace as CSV. Columns, in order: t; per-agent x/y; per-agent
/// ux/uy (post-saturation); per-agent target distance dT{k}; per-edge
/// distance d{i}_{j} in canonical edge order; W (active potential), U
/// (target sum), V or Q (formation sum, named by the law); ev_breach,
/// ev_clamp (count), ev_sat, ev_reorder. Numbers are shortest
/// round-trip decimal; byte-identical for identical runs.
std::string trace_csv(const Trace& trace, const Scenario& scenario);

/// trace_csv written atomically. Throws IoError.
void write_trace_csv(const Trace& trace, const Scenario& scenario,
                     const std::filesystem::path& path);

}  // namespace formtrack
