#include "formtrack/scenario_io.hpp"

#include <fstream>
#include <initializer_list>
#include <utility>

#include <json.hpp>

#include "formtrack/errors.hpp"
#include "formtrack/fs_util.hpp"

namespace formtrack {

namespace {

using nlohmann::json;

[[noreturn]] void fail_parse(const std::string& origin, const std::string& what) {
    throw ParseError(origin + ": " + what);
}

void expect_object(const json& v, const std::string& origin, const std::string& where) {
    if (!v.is_object()) fail_parse(origin, where + " must be an object");
}

// Strict mode: a key outside the allowed list is an error, never ignored.
void expect_keys(const json& obj, const std::string& origin, const std::string& section,
                 std::initializer_list<std::string_view> allowed) {
    for (const auto& item : obj.items()) {
        bool known = false;
        for (std::string_view k : allowed) known = known || item.key() == k;
        if (!known) fail_parse(origin, "unknown key '" + item.key() + "' in " + section);
    }
}

const json& need(const json& obj, const std::string& origin, const std::string& section,
                 const char* key) {
    const auto it = obj.find(key);
    if (it == obj.end()) fail_parse(origin, section + " is missing required key '" + key + "'");
    return *it;
}

double as_number(const json& v, const std::string& origin, const std::string& where) {
    if (!v.is_number()) fail_parse(origin, where + " must be a number");
    return v.get<double>();
}

double need_number(const json& obj, const std::string& origin, const std::string& section,
                   const char* key) {
    return as_number(need(obj, origin, section, key), origin, section + "." + key);
}

std::uint64_t need_unsigned(const json& obj, const std::string& origin, const std::string& section,
                            const char* key) {
    const json& v = need(obj, origin, section, key);
    if (!v.is_number_unsigned())
        fail_parse(origin, section + "." + key + " must be a non-negative integer");
    return v.get<std::uint64_t>();
}

std::string need_string(const json& obj, const std::string& origin, const std::string& section,
                        const char* key) {
    const json& v = need(obj, origin, section, key);
    if (!v.is_string()) fail_parse(origin, section + "." + key + " must be a string");
    return v.get<std::string>();
}

Vec2 as_vec2(const json& v, const std::string& origin, const std::string& where) {
    if (!v.is_array() || v.size() != 2) fail_parse(origin, where + " must be an [x, y] pair");
    return {as_number(v[0], origin, where + "[0]"), as_number(v[1], origin, where + "[1]")};
}

Vec2 need_vec2(const json& obj, const std::string& origin, const std::string& section,
               const char* key) {
    return as_vec2(need(obj, origin, section, key), origin, section + "." + key);
}

TargetSpec parse_target(const json& obj, const std::string& origin, const std::string& section) {
    expect_object(obj, origin, section);
    const std::string kind = need_string(obj, origin, section, "kind");
    TargetSpec spec;
    if (kind == "stationary") {
        expect_keys(obj, origin, section, {"kind", "position"});
        spec.kind = TargetKind::Stationary;
        spec.position = need_vec2(obj, origin, section, "position");
    } else if (kind == "linear") {
        expect_keys(obj, origin, section, {"kind", "position", "velocity"});
        spec.kind = TargetKind::Linear;
        spec.position = need_vec2(obj, origin, section, "position");
        spec.velocity = need_vec2(obj, origin, section, "velocity");
    } else if (kind == "circular") {
        expect_keys(obj, origin, section, {"kind", "center", "radius", "angular_rate", "phase"});
        spec.kind = TargetKind::Circular;
        spec.center = need_vec2(obj, origin, section, "center");
        spec.radius = need_number(obj, origin, section, "radius");
        spec.angular_rate = need_number(obj, origin, section, "angular_rate");
        spec.phase =
            obj.contains("phase") ? need_number(obj, origin, section, "phase") : 0.0;
    } else if (kind == "chained") {
        expect_keys(obj, origin, section,
                    {"kind", "position", "standoff", "gain", "u_max", "dt", "inner"});
        spec.kind = TargetKind::Chained;
        spec.position = need_vec2(obj, origin, section, "position");
        spec.standoff = need_number(obj, origin, section, "standoff");
        spec.gain = need_number(obj, origin, section, "gain");
        spec.u_max = need_number(obj, origin, section, "u_max");
        spec.dt = need_number(obj, origin, section, "dt");
        spec.inner = std::make_shared<const TargetSpec>(
            parse_target(need(obj, origin, section, "inner"), origin, section + ".inner"));
    } else {
        fail_parse(origin, section + ".kind '" + kind + "' is not a target kind");
    }
    return spec;
}

json target_to_json(const TargetSpec& t) {
    json o;
    switch (t.kind) {
        case TargetKind::Stationary:
            o["kind"] = "stationary";
            o["position"] = {t.position.x, t.position.y};
            break;
        case TargetKind::Linear:
            o["kind"] = "linear";
            o["position"] = {t.position.x, t.position.y};
            o["velocity"] = {t.velocity.x, t.velocity.y};
            break;
        case TargetKind::Circular:
            o["kind"] = "circular";
            o["center"] = {t.center.x, t.center.y};
            o["radius"] = t.radius;
            o["angular_rate"] = t.angular_rate;
            o["phase"] = t.phase;
            break;
        case TargetKind::Chained:
            o["kind"] = "chained";
            o["position"] = {t.position.x, t.position.y};
            o["standoff"] = t.standoff;
            o["gain"] = t.gain;
            o["u_max"] = t.u_max;
            o["dt"] = t.dt;
            o["inner"] = target_to_json(*t.inner);
            break;
    }
    return o;
}

Scenario from_json(const json& doc, const std::string& origin) {
    expect_object(doc, origin, "document root");
    expect_keys(doc, origin, "document root",
                {"agents", "formation", "target", "control", "noise", "integration", "run"});

    Scenario sc;

    const json& agents = need(doc, origin, "document root", "agents");
    expect_object(agents, origin, "agents");
    expect_keys(agents, origin, "agents", {"count", "initial_positions"});
    const auto count = static_cast<std::size_t>(need_unsigned(agents, origin, "agents", "count"));
    const json& init = need(agents, origin, "agents", "initial_positions");
    if (!init.is_array()) fail_parse(origin, "agents.initial_positions must be an array");
    for (std::size_t i = 0; i < init.size(); ++i)
        sc.initial_positions.push_back(
            as_vec2(init[i], origin, "agents.initial_positions[" + std::to_string(i) + "]"));
    if (sc.initial_positions.size() != count)
        fail_parse(origin, "agents.count does not match the initial_positions length");

    const json& formation = need(doc, origin, "document root", "formation");
    expect_object(formation, origin, "formation");
    expect_keys(formation, origin, "formation", {"edges"});
    const json& edges_v = need(formation, origin, "formation", "edges");
    if (!edges_v.is_array()) fail_parse(origin, "formation.edges must be an array");
    std::vector<Edge> edges;
    for (std::size_t i = 0; i < edges_v.size(); ++i) {
        const std::string where = "formation.edges[" + std::to_string(i) + "]";
        const json& e = edges_v[i];
        expect_object(e, origin, where);
        expect_keys(e, origin, where, {"i", "j", "r", "r_lo", "r_hi"});
        Edge edge;
        edge.i = static_cast<AgentId>(need_unsigned(e, origin, where, "i"));
        edge.j = static_cast<AgentId>(need_unsigned(e, origin, where, "j"));
        edge.bounds.r = need_number(e, origin, where, "r");
        edge.bounds.r_lo = need_number(e, origin, where, "r_lo");
        edge.bounds.r_hi = need_number(e, origin, where, "r_hi");
        edges.push_back(edge);
    }
    sc.graph = validate_graph(count, std::move(edges));

    sc.target = parse_target(need(doc, origin, "document root", "target"), origin, "target");

    const json& control = need(doc, origin, "document root", "control");
    expect_object(control, origin, "control");
    expect_keys(control, origin, "control", {"law", "K_T", "K", "u_max", "standoffs"});
    const std::string law = need_string(control, origin, "control", "law");
    if (law == "blf")
        sc.law = ControlLaw::BLF;
    else if (law == "qlf")
        sc.law = ControlLaw::QLF;
    else
        fail_parse(origin, "control.law must be 'blf' or 'qlf'");
    sc.gains.k_target = need_number(control, origin, "control", "K_T");
    sc.gains.k_formation = need_number(control, origin, "control", "K");
    sc.saturation.u_max = need_number(control, origin, "control", "u_max");
    const json& standoffs = need(control, origin, "control", "standoffs");
    if (!standoffs.is_array()) fail_parse(origin, "control.standoffs must be an array");
    for (std::size_t i = 0; i < standoffs.size(); ++i)
        sc.standoffs.radii.push_back(
            as_number(standoffs[i], origin, "control.standoffs[" + std::to_string(i) + "]"));

    const json& noise = need(doc, origin, "document root", "noise");
    expect_object(noise, origin, "noise");
    expect_keys(noise, origin, "noise", {"sd_velocity", "sd_distance", "seed"});
    sc.noise.sd_velocity =
        noise.contains("sd_velocity") ? need_number(noise, origin, "noise", "sd_velocity") : 0.0;
    sc.noise.sd_distance =
        noise.contains("sd_distance") ? need_number(noise, origin, "noise", "sd_distance") : 0.0;
    sc.noise.seed = noise.contains("seed") ? need_unsigned(noise, origin, "noise", "seed") : 0;

    const json& integration = need(doc, origin, "document root", "integration");
    expect_object(integration, origin, "integration");
    expect_keys(integration, origin, "integration", {"dt", "scheme", "max_substeps"});
    sc.integration.dt = need_number(integration, origin, "integration", "dt");
    if (integration.contains("scheme")) {
        const std::string scheme = need_string(integration, origin, "integration", "scheme");
        if (scheme == "euler")
            sc.integration.scheme = Integrator::ExplicitEuler;
        else if (scheme == "rk4_held")
            sc.integration.scheme = Integrator::RK4HeldControl;
        else
            fail_parse(origin, "integration.scheme must be 'euler' or 'rk4_held'");
    }
    if (integration.contains("max_substeps"))
        sc.integration.max_substeps =
            static_cast<int>(need_unsigned(integration, origin, "integration", "max_substeps"));

    const json& run_section = need(doc, origin, "document root", "run");
    expect_object(run_section, origin, "run");
    expect_keys(run_section, origin, "run", {"duration", "name"});
    sc.duration = need_number(run_section, origin, "run", "duration");
    if (run_section.contains("name")) sc.name = need_string(run_section, origin, "run", "name");

    sc.validate();
    return sc;
}

}  // namespace

Scenario parse_scenario(const std::string& text, std::string_view origin) {
    const std::string label(origin);
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        fail_parse(label, e.what());
    }
    return from_json(doc, label);
}

Scenario load_scenario(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot read " + path.string());
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    if (in.bad()) throw IoError("error while reading " + path.string());
    return parse_scenario(text, path.string());
}

std::string write_scenario(const Scenario& sc) {
    json doc;
    doc["agents"]["count"] = sc.graph.agent_count();
    json init = json::array();
    for (const Vec2& p : sc.initial_positions) init.push_back({p.x, p.y});
    doc["agents"]["initial_positions"] = std::move(init);

    json edges = json::array();
    for (const Edge& e : sc.graph.edges())
        edges.push_back({{"i", e.i},
                         {"j", e.j},
                         {"r", e.bounds.r},
                         {"r_lo", e.bounds.r_lo},
                         {"r_hi", e.bounds.r_hi}});
    doc["formation"]["edges"] = std::move(edges);

    doc["target"] = target_to_json(sc.target);

    doc["control"]["law"] = sc.law == ControlLaw::BLF ? "blf" : "qlf";
    doc["control"]["K_T"] = sc.gains.k_target;
    doc["control"]["K"] = sc.gains.k_formation;
    doc["control"]["u_max"] = sc.saturation.u_max;
    doc["control"]["standoffs"] = sc.standoffs.radii;

    doc["noise"]["sd_velocity"] = sc.noise.sd_velocity;
    doc["noise"]["sd_distance"] = sc.noise.sd_distance;
    doc["noise"]["seed"] = sc.noise.seed;

    doc["integration"]["dt"] = sc.integration.dt;
    doc["integration"]["scheme"] =
        sc.integration.scheme == Integrator::ExplicitEuler ? "euler" : "rk4_held";
    doc["integration"]["max_substeps"] = sc.integration.max_substeps;

    doc["run"]["duration"] = sc.duration;
    if (!sc.name.empty()) doc["run"]["name"] = sc.name;

    return doc.dump(2) + "\n";
}

void save_scenario(const Scenario& scenario, const std::filesystem::path& path) {
    write_text_atomic(path, write_scenario(scenario));
}

}  // namespace formtrack
