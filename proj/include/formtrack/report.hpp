#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "formtrack/engine.hpp"

namespace formtrack {

/// Human-readable metrics block for one finished run.
std::string format_metrics(const MetricsReport& report, const Scenario& scenario);

struct LawRun {
    Scenario scenario;
    Trace trace;
    MetricsReport metrics;
};

/// The same scenario executed under both laws with identical parameters and
/// seed; only the law differs.
struct Comparison {
    LawRun blf;
    LawRun qlf;
};

Comparison compare_laws(Scenario scenario);

/// Side-by-side text highlighting bound violations and reorder times.
std::string format_comparison(const Comparison& comparison);

struct SeedOutcome {
    std::uint64_t seed = 0;
    MetricsReport metrics;
};

/// Run `count` consecutive seeds starting at scenario.noise.seed. Throws
/// ValidationError for count < 1.
std::vector<SeedOutcome> run_seed_panel(const Scenario& scenario, int count);

/// Per-seed table plus aggregate violation/reorder statistics.
std::string format_seed_panel(const std::vector<SeedOutcome>& panel, const Scenario& scenario);

}  // namespace formtrack
