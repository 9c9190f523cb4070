#include "formtrack/formation.hpp"

#include <string>

namespace formtrack {

namespace {

std::string edge_label(AgentId i, AgentId j) {
    return "(" + std::to_string(i) + "," + std::to_string(j) + ")";
}

}  // namespace

std::span<const Neighbor> FormationGraph::neighbors(AgentId k) const {
    if (k >= agent_count_) {
        throw UnknownAgent("agent " + std::to_string(k) + " not in graph of " +
                           std::to_string(agent_count_));
    }
    return adjacency_[k];
}

FormationGraph validate_graph(std::size_t agent_count, std::vector<Edge> raw_edges) {
    if (agent_count < 1) {
        throw ValidationError("graph needs at least one agent");
    }

    for (Edge& e : raw_edges) {
        if (e.i == e.j) {
            throw SelfEdge("self edge at agent " + std::to_string(e.i));
        }
        if (e.i >= agent_count || e.j >= agent_count) {
            throw UnknownAgent("edge " + edge_label(e.i, e.j) + " references agent >= " +
                               std::to_string(agent_count));
        }
        if (!e.bounds.valid()) {
            throw InvalidBounds("edge " + edge_label(e.i, e.j) +
                                " violates 0 < r_lo < r < r_hi");
        }
        if (e.i > e.j) {
            std::swap(e.i, e.j);
        }
    }

    std::sort(raw_edges.begin(), raw_edges.end(), [](const Edge& a, const Edge& b) {
        return a.i != b.i ? a.i < b.i : a.j < b.j;
    });
    for (std::size_t n = 1; n < raw_edges.size(); ++n) {
        if (raw_edges[n].i == raw_edges[n - 1].i && raw_edges[n].j == raw_edges[n - 1].j) {
            throw DuplicateEdge("duplicate edge " +
                                edge_label(raw_edges[n].i, raw_edges[n].j));
        }
    }

    FormationGraph graph;
    graph.agent_count_ = agent_count;
    graph.edges_ = std::move(raw_edges);
    graph.adjacency_.resize(agent_count);
    for (const Edge& e : graph.edges_) {
        graph.adjacency_[e.i].push_back({e.j, e.bounds});
        graph.adjacency_[e.j].push_back({e.i, e.bounds});
    }
    for (auto& adj : graph.adjacency_) {
        std::sort(adj.begin(), adj.end(),
                  [](const Neighbor& a, const Neighbor& b) { return a.id < b.id; });
    }

    // Connectivity over all agents (union-find).
    std::vector<std::size_t> parent(agent_count);
    for (std::size_t k = 0; k < agent_count; ++k) parent[k] = k;
    auto find = [&parent](std::size_t k) {
        while (parent[k] != k) {
            parent[k] = parent[parent[k]];
            k = parent[k];
        }
        return k;
    };
    for (const Edge& e : graph.edges_) {
        parent[find(e.i)] = find(e.j);
    }
    const std::size_t root = find(0);
    for (std::size_t k = 1; k < agent_count; ++k) {
        if (find(k) != root) {
            throw DisconnectedGraph("agent " + std::to_string(k) +
                                    " is not connected to agent 0");
        }
    }

    return graph;
}

bool in_admissible_set(const FormationGraph& graph, std::span<const Vec2> positions) {
    for (const Edge& e : graph.edges()) {
        const double d = (positions[e.i] - positions[e.j]).norm();
        if (!e.bounds.contains(d)) {
            return false;
        }
    }
    return true;
}

}  // namespace formtrack
