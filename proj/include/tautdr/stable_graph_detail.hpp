#pragma once

// Internal helpers shared by the graph, class and kernel translation units.

#include "tautdr/canonical.hpp"
#include "tautdr/stable_graph.hpp"

#include <vector>

namespace tautdr::detail {

/// Normal-form graph decoded from a canonical encoding, with the extra
/// vertex color entries (after genus) and half-edge colors carried along.
struct NormalForm {
    StableGraph graph;
    std::vector<canon::Color> vertex_extra;
    std::vector<canon::Color> half_edge_color;
};

NormalForm normal_form_from_encoding(const canon::Encoding& enc);

/// BFS spanning tree; edges outside the tree (loops included) are free.
struct SpanningPlan {
    std::vector<int> order;        // BFS order, root first
    std::vector<int> parent_half;  // per vertex: its half-edge on the tree edge to the parent
    std::vector<int> free_edges;   // indices into g.edges()
    std::vector<std::pair<int, int>> edges;  // g.edges(), cached

    static SpanningPlan build(const StableGraph& g);

    /// Fill w from leg residues and free edge values (value on the first
    /// half-edge of each free edge). Returns false if the root congruence fails.
    bool solve(const StableGraph& g, const std::vector<int>& a, int r, const std::vector<int>& free_values,
               std::vector<int>& w) const;
};

}  // namespace tautdr::detail
