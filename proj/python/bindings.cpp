#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <optional>

#include "formtrack/engine.hpp"
#include "formtrack/errors.hpp"
#include "formtrack/report.hpp"
#include "formtrack/rng.hpp"
#include "formtrack/scenario_io.hpp"
#include "formtrack/svg_plot.hpp"
#include "formtrack/trace_io.hpp"

namespace py = pybind11;

using namespace formtrack;

PYBIND11_MODULE(_core, m) {
    m.doc() = "Formation-preserving collaborative target tracking";

    // Exception hierarchy. Subclasses registered after the base so their
    // translators are tried first.
    const auto base = py::register_exception<Error>(m, "Error");
    py::register_exception<SelfEdge>(m, "SelfEdge", base);
    py::register_exception<DuplicateEdge>(m, "DuplicateEdge", base);
    py::register_exception<InvalidBounds>(m, "InvalidBounds", base);
    py::register_exception<DisconnectedGraph>(m, "DisconnectedGraph", base);
    py::register_exception<UnknownAgent>(m, "UnknownAgent", base);
    py::register_exception<OutOfDomain>(m, "OutOfDomain", base);
    py::register_exception<ZeroNoise>(m, "ZeroNoise", base);
    py::register_exception<NonFiniteState>(m, "NonFiniteState", base);
    py::register_exception<ParseError>(m, "ParseError", base);
    py::register_exception<ValidationError>(m, "ValidationError", base);
    py::register_exception<IoError>(m, "IoError", base);

    py::class_<Vec2>(m, "Vec2")
        .def(py::init<>())
        .def(py::init<double, double>(), py::arg("x"), py::arg("y"))
        .def(py::init([](std::pair<double, double> p) { return Vec2{p.first, p.second}; }))
        .def_readwrite("x", &Vec2::x)
        .def_readwrite("y", &Vec2::y)
        .def("norm", &Vec2::norm)
        .def("norm_sq", &Vec2::norm_sq)
        .def("__iter__",
             [](const Vec2& v) { return py::iter(py::make_tuple(v.x, v.y)); })
        .def("__eq__", [](const Vec2& a, const Vec2& b) { return a == b; })
        .def("__repr__", [](const Vec2& v) {
            return "Vec2(" + std::to_string(v.x) + ", " + std::to_string(v.y) + ")";
        });
    py::implicitly_convertible<py::tuple, Vec2>();

    py::class_<EdgeBounds>(m, "EdgeBounds")
        .def(py::init<>())
        .def(py::init([](double r, double r_lo, double r_hi) {
                 return EdgeBounds{r, r_lo, r_hi};
             }),
             py::arg("r"), py::arg("r_lo"), py::arg("r_hi"))
        .def_readwrite("r", &EdgeBounds::r)
        .def_readwrite("r_lo", &EdgeBounds::r_lo)
        .def_readwrite("r_hi", &EdgeBounds::r_hi)
        .def("valid", &EdgeBounds::valid)
        .def("contains", &EdgeBounds::contains)
        .def("margin", &EdgeBounds::margin);

    py::class_<Edge>(m, "Edge")
        .def(py::init<>())
        .def(py::init([](AgentId i, AgentId j, EdgeBounds b) { return Edge{i, j, b}; }),
             py::arg("i"), py::arg("j"), py::arg("bounds"))
        .def_readwrite("i", &Edge::i)
        .def_readwrite("j", &Edge::j)
        .def_readwrite("bounds", &Edge::bounds);

    py::class_<Neighbor>(m, "Neighbor")
        .def_readonly("id", &Neighbor::id)
        .def_readonly("bounds", &Neighbor::bounds);

    py::class_<StandoffSpec>(m, "StandoffSpec")
        .def(py::init<>())
        .def(py::init([](std::vector<double> radii) { return StandoffSpec{std::move(radii)}; }),
             py::arg("radii"))
        .def_readwrite("radii", &StandoffSpec::radii);

    py::class_<FormationGraph>(m, "FormationGraph")
        .def("agent_count", &FormationGraph::agent_count)
        .def("edges",
             [](const FormationGraph& g) {
                 return std::vector<Edge>(g.edges().begin(), g.edges().end());
             })
        .def("neighbors", [](const FormationGraph& g, AgentId k) {
            const auto ns = g.neighbors(k);
            return std::vector<Neighbor>(ns.begin(), ns.end());
        });

    m.def("validate_graph", &validate_graph, py::arg("agent_count"), py::arg("edges"));
    m.def(
        "in_admissible_set",
        [](const FormationGraph& g, const std::vector<Vec2>& p) { return in_admissible_set(g, p); },
        py::arg("graph"), py::arg("positions"));

    py::class_<Gains>(m, "Gains")
        .def(py::init<>())
        .def(py::init([](double kt, double kf) { return Gains{kt, kf}; }), py::arg("k_target"),
             py::arg("k_formation"))
        .def_readwrite("k_target", &Gains::k_target)
        .def_readwrite("k_formation", &Gains::k_formation);

    py::class_<PotentialReport>(m, "PotentialReport")
        .def_readonly("target", &PotentialReport::target)
        .def_readonly("barrier", &PotentialReport::barrier)
        .def_readonly("quadratic", &PotentialReport::quadratic)
        .def_readonly("combined", &PotentialReport::combined);

    m.def("target_potential", &target_potential, py::arg("rel"), py::arg("standoff_radius"));
    m.def("target_gradient", &target_gradient, py::arg("rel"), py::arg("standoff_radius"));
    m.def("barrier_potential", &barrier_potential, py::arg("rel"), py::arg("bounds"));
    m.def("barrier_gradient", &barrier_gradient, py::arg("rel"), py::arg("bounds"));
    m.def("quadratic_potential", &quadratic_potential, py::arg("rel"), py::arg("rest_length"));
    m.def("quadratic_gradient", &quadratic_gradient, py::arg("rel"), py::arg("rest_length"));
    m.def(
        "combined_potential",
        [](const std::vector<Vec2>& positions, Vec2 target_position, const FormationGraph& graph,
           const StandoffSpec& standoffs, const Gains& gains) {
            return combined_potential(positions, target_position, graph, standoffs, gains);
        },
        py::arg("positions"), py::arg("target_position"), py::arg("graph"), py::arg("standoffs"),
        py::arg("gains"));

    py::class_<SaturationSpec>(m, "SaturationSpec")
        .def(py::init<>())
        .def(py::init([](double u) { return SaturationSpec{u}; }), py::arg("u_max"))
        .def_readwrite("u_max", &SaturationSpec::u_max);

    py::class_<NeighborMeasurement>(m, "NeighborMeasurement")
        .def(py::init<>())
        .def(py::init([](RelVec rel, EdgeBounds b) { return NeighborMeasurement{rel, b}; }),
             py::arg("rel"), py::arg("bounds"))
        .def_readwrite("rel", &NeighborMeasurement::rel)
        .def_readwrite("bounds", &NeighborMeasurement::bounds);

    py::class_<LocalView>(m, "LocalView")
        .def(py::init<>())
        .def_readwrite("rel_target", &LocalView::rel_target)
        .def_readwrite("target_velocity", &LocalView::target_velocity)
        .def_readwrite("standoff_radius", &LocalView::standoff_radius)
        .def_readwrite("neighbors", &LocalView::neighbors);

    py::class_<ControlResult>(m, "ControlResult")
        .def_readonly("command", &ControlResult::command)
        .def_readonly("raw", &ControlResult::raw)
        .def_readonly("saturated", &ControlResult::saturated)
        .def_readonly("clamped_measurements", &ControlResult::clamped_measurements);

    m.def("saturate", &saturate, py::arg("u"), py::arg("spec"));
    m.def("blf_control", &blf_control, py::arg("view"), py::arg("gains"), py::arg("saturation"));
    m.def("qlf_control", &qlf_control, py::arg("view"), py::arg("gains"), py::arg("saturation"));

    m.def("philox4x64", &philox4x64, py::arg("counter"), py::arg("key"));
    m.def("uniform_from_bits", &uniform_from_bits, py::arg("word"));
    py::enum_<NoisePurpose>(m, "NoisePurpose")
        .value("TargetVelocity", NoisePurpose::TargetVelocity)
        .value("TargetRange", NoisePurpose::TargetRange)
        .value("NeighborRange", NoisePurpose::NeighborRange);
    py::class_<GaussianPair>(m, "GaussianPair")
        .def_readonly("a", &GaussianPair::a)
        .def_readonly("b", &GaussianPair::b);
    m.def("gaussian_pair", &gaussian_pair, py::arg("seed"), py::arg("agent"), py::arg("purpose"),
          py::arg("sub"), py::arg("step"), py::arg("substep"));

    py::enum_<TargetKind>(m, "TargetKind")
        .value("Stationary", TargetKind::Stationary)
        .value("Linear", TargetKind::Linear)
        .value("Circular", TargetKind::Circular)
        .value("Chained", TargetKind::Chained);

    py::class_<TargetSpec>(m, "TargetSpec")
        .def(py::init<>())
        .def_readwrite("kind", &TargetSpec::kind)
        .def_readwrite("position", &TargetSpec::position)
        .def_readwrite("velocity", &TargetSpec::velocity)
        .def_readwrite("center", &TargetSpec::center)
        .def_readwrite("radius", &TargetSpec::radius)
        .def_readwrite("angular_rate", &TargetSpec::angular_rate)
        .def_readwrite("phase", &TargetSpec::phase)
        .def_property(
            "inner",
            [](const TargetSpec& t) -> std::optional<TargetSpec> {
                if (!t.inner) return std::nullopt;
                return *t.inner;
            },
            [](TargetSpec& t, std::optional<TargetSpec> v) {
                t.inner = v ? std::make_shared<const TargetSpec>(*v) : nullptr;
            })
        .def_readwrite("standoff", &TargetSpec::standoff)
        .def_readwrite("gain", &TargetSpec::gain)
        .def_readwrite("u_max", &TargetSpec::u_max)
        .def_readwrite("dt", &TargetSpec::dt)
        .def("max_speed", &TargetSpec::max_speed)
        .def("validate", &TargetSpec::validate);

    py::class_<TargetState>(m, "TargetState")
        .def_readonly("position", &TargetState::position)
        .def_readonly("velocity", &TargetState::velocity);

    py::class_<TargetModel>(m, "TargetModel").def("sample", &TargetModel::sample, py::arg("t"));
    m.def("make_target", &make_target, py::arg("spec"));

    py::class_<NoiseSpec>(m, "NoiseSpec")
        .def(py::init<>())
        .def_readwrite("sd_velocity", &NoiseSpec::sd_velocity)
        .def_readwrite("sd_distance", &NoiseSpec::sd_distance)
        .def_readwrite("seed", &NoiseSpec::seed)
        .def("any", &NoiseSpec::any);

    py::enum_<Integrator>(m, "Integrator")
        .value("ExplicitEuler", Integrator::ExplicitEuler)
        .value("RK4HeldControl", Integrator::RK4HeldControl);

    py::class_<IntegrationSpec>(m, "IntegrationSpec")
        .def(py::init<>())
        .def_readwrite("dt", &IntegrationSpec::dt)
        .def_readwrite("scheme", &IntegrationSpec::scheme)
        .def_readwrite("max_substeps", &IntegrationSpec::max_substeps);

    py::enum_<ControlLaw>(m, "ControlLaw")
        .value("BLF", ControlLaw::BLF)
        .value("QLF", ControlLaw::QLF);

    py::class_<Scenario>(m, "Scenario")
        .def(py::init<>())
        .def_readwrite("name", &Scenario::name)
        .def_readwrite("graph", &Scenario::graph)
        .def_readwrite("standoffs", &Scenario::standoffs)
        .def_readwrite("gains", &Scenario::gains)
        .def_readwrite("saturation", &Scenario::saturation)
        .def_readwrite("target", &Scenario::target)
        .def_readwrite("noise", &Scenario::noise)
        .def_readwrite("integration", &Scenario::integration)
        .def_readwrite("initial_positions", &Scenario::initial_positions)
        .def_readwrite("law", &Scenario::law)
        .def_readwrite("duration", &Scenario::duration)
        .def("validate", &Scenario::validate);

    py::class_<TraceSample>(m, "TraceSample")
        .def_readonly("t", &TraceSample::t)
        .def_readonly("target_position", &TraceSample::target_position)
        .def_readonly("target_velocity", &TraceSample::target_velocity)
        .def_readonly("positions", &TraceSample::positions)
        .def_readonly("raw_controls", &TraceSample::raw_controls)
        .def_readonly("controls", &TraceSample::controls)
        .def_readonly("target_distances", &TraceSample::target_distances)
        .def_readonly("edge_distances", &TraceSample::edge_distances)
        .def_readonly("potentials", &TraceSample::potentials)
        .def_readonly("active_potential", &TraceSample::active_potential)
        .def_readonly("breach", &TraceSample::breach)
        .def_readonly("clamps", &TraceSample::clamps)
        .def_readonly("saturated", &TraceSample::saturated)
        .def_readonly("reorder", &TraceSample::reorder);

    py::class_<Trace>(m, "Trace").def_readonly("samples", &Trace::samples);

    m.def("run", &run, py::arg("scenario"), py::call_guard<py::gil_scoped_release>());
    m.def("cyclic_order",
          [](const std::vector<Vec2>& p) { return cyclic_order(p); }, py::arg("positions"));
    m.def("detect_reorder", &detect_reorder, py::arg("trace"));
    m.def("lyapunov_monitor", &lyapunov_monitor, py::arg("trace"), py::arg("scenario"));
    m.def("gamma_metric", &gamma_metric, py::arg("graph"), py::arg("noise"));

    py::class_<WIncreaseInterval>(m, "WIncreaseInterval")
        .def_readonly("index", &WIncreaseInterval::index)
        .def_readonly("t0", &WIncreaseInterval::t0)
        .def_readonly("t1", &WIncreaseInterval::t1)
        .def_readonly("delta", &WIncreaseInterval::delta);

    py::class_<EdgeRange>(m, "EdgeRange")
        .def_readonly("i", &EdgeRange::i)
        .def_readonly("j", &EdgeRange::j)
        .def_readonly("min_distance", &EdgeRange::min_distance)
        .def_readonly("max_distance", &EdgeRange::max_distance);

    py::class_<MetricsReport>(m, "MetricsReport")
        .def_readonly("edge_ranges", &MetricsReport::edge_ranges)
        .def_readonly("bound_violation_samples", &MetricsReport::bound_violation_samples)
        .def_readonly("breach_events", &MetricsReport::breach_events)
        .def_readonly("clamp_events", &MetricsReport::clamp_events)
        .def_readonly("saturated_samples", &MetricsReport::saturated_samples)
        .def_readonly("reorder_time", &MetricsReport::reorder_time)
        .def_readonly("settling_time", &MetricsReport::settling_time)
        .def_readonly("settling_tolerance", &MetricsReport::settling_tolerance)
        .def_readonly("final_velocity_error", &MetricsReport::final_velocity_error)
        .def_readonly("max_control_magnitude", &MetricsReport::max_control_magnitude)
        .def_readonly("gamma", &MetricsReport::gamma)
        .def_readonly("w_increase_intervals", &MetricsReport::w_increase_intervals);

    m.def("summarize", &summarize, py::arg("trace"), py::arg("scenario"),
          py::arg("settling_tolerance") = 1e-2);

    m.def("parse_scenario", &parse_scenario, py::arg("text"), py::arg("origin") = "<memory>");
    m.def("load_scenario", &load_scenario, py::arg("path"));
    m.def("write_scenario", &write_scenario, py::arg("scenario"));
    m.def("save_scenario", &save_scenario, py::arg("scenario"), py::arg("path"));
    m.def("preset_names", &preset_names);
    m.def("load_preset", &load_preset, py::arg("name"));
    m.def("preset_text", &preset_text, py::arg("name"));

    m.def("trace_csv", &trace_csv, py::arg("trace"), py::arg("scenario"));
    m.def("write_trace_csv", &write_trace_csv, py::arg("trace"), py::arg("scenario"),
          py::arg("path"));

    py::class_<PlotPaths>(m, "PlotPaths")
        .def_readonly("distances", &PlotPaths::distances)
        .def_readonly("trajectories", &PlotPaths::trajectories)
        .def_readonly("controls", &PlotPaths::controls);
    m.def("emit_plots", &emit_plots, py::arg("trace"), py::arg("scenario"), py::arg("dir"),
          py::arg("stem"));

    m.def("format_metrics", &format_metrics, py::arg("report"), py::arg("scenario"));

    py::class_<LawRun>(m, "LawRun")
        .def_readonly("scenario", &LawRun::scenario)
        .def_readonly("trace", &LawRun::trace)
        .def_readonly("metrics", &LawRun::metrics);
    py::class_<Comparison>(m, "Comparison")
        .def_readonly("blf", &Comparison::blf)
        .def_readonly("qlf", &Comparison::qlf);
    m.def("compare_laws", &compare_laws, py::arg("scenario"),
          py::call_guard<py::gil_scoped_release>());
    m.def("format_comparison", &format_comparison, py::arg("comparison"));

    py::class_<SeedOutcome>(m, "SeedOutcome")
        .def_readonly("seed", &SeedOutcome::seed)
        .def_readonly("metrics", &SeedOutcome::metrics);
    m.def("run_seed_panel", &run_seed_panel, py::arg("scenario"), py::arg("count"),
          py::call_guard<py::gil_scoped_release>());
    m.def("format_seed_panel", &format_seed_panel, py::arg("panel"), py::arg("scenario"));
}
