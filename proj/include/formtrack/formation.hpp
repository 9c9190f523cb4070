#pragma once

#include <algorithm>
#include <cstdint>
#include <span>
#include <vector>

#include "formtrack/errors.hpp"
#include "formtrack/vec2.hpp"

namespace formtrack {

using AgentId = std::uint32_t;

/// Desired separation and strict open bounds for one formation edge.
/// Invariant: 0 < r_lo < r < r_hi.
struct EdgeBounds {
    double r = 0.0;
    double r_lo = 0.0;
    double r_hi = 0.0;

    bool valid() const { return 0.0 < r_lo && r_lo < r && r < r_hi; }
    bool contains(double d) const { return r_lo < d && d < r_hi; }
    double margin() const { return std::min(r - r_lo, r_hi - r); }
};

struct Edge {
    AgentId i = 0;  // i < j after canonicalization
    AgentId j = 0;
    EdgeBounds bounds;
};

struct Neighbor {
    AgentId id = 0;
    EdgeBounds bounds;
};

/// Per-agent standoff circle radii around the target.
struct StandoffSpec {
    std::vector<double> radii;
};

/// Undirected connected formation graph with per-edge distance bounds.
/// Instances are immutable after validate_graph(); safe to share across
/// concurrent readers. Edges are canonicalized to i < j and sorted.
class FormationGraph {
public:
    FormationGraph() = default;

    std::size_t agent_count() const { return agent_count_; }
    std::span<const Edge> edges() const { return edges_; }

    /// Adjacency of agent k, sorted by neighbor id. Throws UnknownAgent.
    std::span<const Neighbor> neighbors(AgentId k) const;

private:
    friend FormationGraph validate_graph(std::size_t agent_count, std::vector<Edge> raw_edges);

    std::size_t agent_count_ = 0;
    std::vector<Edge> edges_;
    std::vector<std::vector<Neighbor>> adjacency_;
};

/// Canonicalizes and validates a formation graph.
/// Throws SelfEdge, DuplicateEdge, InvalidBounds or DisconnectedGraph.
FormationGraph validate_graph(std::size_t agent_count, std::vector<Edge> raw_edges);

/// True iff every edge distance lies strictly inside its (r_lo, r_hi)
/// interval. Boundary contact counts as a violation.
bool in_admissible_set(const FormationGraph& graph, std::span<const Vec2> positions);

}  // namespace formtrack
