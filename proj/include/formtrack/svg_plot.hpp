#pragma once

#include <filesystem>
#include <string_view>

#include "formtrack/engine.hpp"

namespace formtrack {

struct PlotPaths {
    std::filesystem::path distances;
    std::filesystem::path trajectories;
    std::filesystem::path controls;
};

/// Emit the three standard run plots as self-contained SVG files into dir:
/// <stem>_distances.svg (edge and agent-target distances with bound lines),
/// <stem>_trajectories.svg (planar paths, initial/final formation polygons,
/// standoff circle), <stem>_controls.svg (command magnitudes with the u_max
/// line). Long traces are downsampled for plotting only. Throws IoError.
PlotPaths emit_plots(const Trace& trace, const Scenario& scenario,
                     const std::filesystem::path& dir, std::string_view stem);

}  // namespace formtrack
