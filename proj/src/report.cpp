#include "formtrack/report.hpp"

#include <cmath>
#include <cstdio>

#include "formtrack/errors.hpp"

namespace formtrack {

namespace {

std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

std::string opt_time(const std::optional<double>& t) {
    return t ? num(*t) + " s" : std::string("none");
}

const char* law_name(ControlLaw law) { return law == ControlLaw::BLF ? "BLF" : "QLF"; }

}  // namespace

std::string format_metrics(const MetricsReport& r, const Scenario& sc) {
    std::string out;
    out += "run: " + (sc.name.empty() ? std::string("(unnamed)") : sc.name) + " [" +
           law_name(sc.law) + "]\n";
    out += "duration: " + num(sc.duration) + " s, dt: " + num(sc.integration.dt) + "\n";
    out += "edge distance ranges:\n";
    const auto edges = sc.graph.edges();
    for (std::size_t e = 0; e < r.edge_ranges.size(); ++e) {
        const EdgeRange& er = r.edge_ranges[e];
        out += "  d" + std::to_string(er.i) + "_" + std::to_string(er.j) + ": [" +
               num(er.min_distance) + ", " + num(er.max_distance) + "]";
        if (e < edges.size())
            out += "  bounds (" + num(edges[e].bounds.r_lo) + ", " + num(edges[e].bounds.r_hi) + ")";
        out += "\n";
    }
    out += "bound violation samples: " + std::to_string(r.bound_violation_samples) + "\n";
    out += "bound breach events: " + std::to_string(r.breach_events) + "\n";
    out += "measurement clamps: " + std::to_string(r.clamp_events) + "\n";
    out += "saturated samples: " + std::to_string(r.saturated_samples) + "\n";
    out += "reorder time: " + opt_time(r.reorder_time) + "\n";
    out += "settling time (tol " + num(r.settling_tolerance) + " m/s): " +
           opt_time(r.settling_time) + "\n";
    out += "final velocity error: " + num(r.final_velocity_error) + " m/s\n";
    out += "max command magnitude: " + num(r.max_control_magnitude) + " m/s\n";
    out += "gamma: " + (r.gamma ? num(*r.gamma) : std::string("n/a (no distance noise)")) + "\n";
    out += "potential increases flagged: " + std::to_string(r.w_increase_intervals.size()) + "\n";
    return out;
}

Comparison compare_laws(Scenario scenario) {
    Comparison c;
    scenario.law = ControlLaw::BLF;
    c.blf.scenario = scenario;
    c.blf.trace = run(scenario);
    c.blf.metrics = summarize(c.blf.trace, scenario);
    scenario.law = ControlLaw::QLF;
    c.qlf.scenario = scenario;
    c.qlf.trace = run(scenario);
    c.qlf.metrics = summarize(c.qlf.trace, scenario);
    return c;
}

std::string format_comparison(const Comparison& c) {
    const MetricsReport& b = c.blf.metrics;
    const MetricsReport& q = c.qlf.metrics;
    char buf[160];
    std::string out;
    const std::string name = c.blf.scenario.name.empty() ? "(unnamed)" : c.blf.scenario.name;
    out += "comparison: " + name + "\n";
    const auto row = [&](const char* label, const std::string& bv, const std::string& qv) {
        std::snprintf(buf, sizeof(buf), "  %-26s %-16s %s\n", label, bv.c_str(), qv.c_str());
        out += buf;
    };
    row("", "BLF", "QLF");
    row("bound violation samples", std::to_string(b.bound_violation_samples),
        std::to_string(q.bound_violation_samples));
    row("bound breach events", std::to_string(b.breach_events), std::to_string(q.breach_events));
    row("reorder time", opt_time(b.reorder_time), opt_time(q.reorder_time));
    row("settling time", opt_time(b.settling_time), opt_time(q.settling_time));
    row("final velocity error", num(b.final_velocity_error), num(q.final_velocity_error));
    row("max command magnitude", num(b.max_control_magnitude), num(q.max_control_magnitude));
    return out;
}

std::vector<SeedOutcome> run_seed_panel(const Scenario& scenario, int count) {
    if (count < 1) throw ValidationError("seed panel needs at least one seed");
    std::vector<SeedOutcome> panel;
    panel.reserve(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) {
        Scenario sc = scenario;
        sc.noise.seed = scenario.noise.seed + static_cast<std::uint64_t>(i);
        const Trace trace = run(sc);
        panel.push_back({sc.noise.seed, summarize(trace, sc)});
    }
    return panel;
}

std::string format_seed_panel(const std::vector<SeedOutcome>& panel, const Scenario& sc) {
    std::string out;
    out += "seed panel: " + (sc.name.empty() ? std::string("(unnamed)") : sc.name) + " [" +
           law_name(sc.law) + "], " + std::to_string(panel.size()) + " seeds from " +
           std::to_string(sc.noise.seed) + "\n";
    char buf[160];
    std::snprintf(buf, sizeof(buf), "  %-10s %-11s %-9s %-7s %-10s %s\n", "seed", "violations",
                  "breaches", "clamps", "reorder", "max|u|");
    out += buf;
    std::size_t violations = 0, breaches = 0, reorders = 0;
    for (const SeedOutcome& s : panel) {
        std::snprintf(buf, sizeof(buf), "  %-10llu %-11zu %-9zu %-7zu %-10s %s\n",
                      static_cast<unsigned long long>(s.seed), s.metrics.bound_violation_samples,
                      s.metrics.breach_events, s.metrics.clamp_events,
                      opt_time(s.metrics.reorder_time).c_str(),
                      num(s.metrics.max_control_magnitude).c_str());
        out += buf;
        violations += s.metrics.bound_violation_samples;
        breaches += s.metrics.breach_events;
        reorders += s.metrics.reorder_time ? 1 : 0;
    }
    out += "  aggregate: " + std::to_string(violations) + " violation samples, " +
           std::to_string(breaches) + " breaches, " + std::to_string(reorders) + "/" +
           std::to_string(panel.size()) + " runs reordered\n";
    return out;
}

}  // namespace formtrack
