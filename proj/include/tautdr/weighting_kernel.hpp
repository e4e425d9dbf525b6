#pragma once

// Weighting moments  M(m) = sum_{w in W_{Phi,r}} prod_e (w_e (r - w_e))^{m_e},
// with w_e in [0, r) the weight on an edge's first half-edge.
//
// Loops are summed in closed form, tree edges are solved from the vertex
// congruences, and only the remaining cycle space of the loop-free core is
// enumerated (OpenMP).  The serial reference enumerates all r^|E| edge
// assignments and filters, with no structure used at all.

#include "tautdr/rational.hpp"
#include "tautdr/stable_graph.hpp"
#include "tautdr/stable_graph_detail.hpp"

#include <vector>

namespace tautdr {

class WeightingKernel {
public:
    explicit WeightingKernel(const StableGraph& g);

    /// One moment per exponent vector (indexed by g.edges()).
    std::vector<Integer> moments(const std::vector<int>& a, int r, const std::vector<std::vector<int>>& ms) const;

    int free_dimension() const { return static_cast<int>(plan_.free_edges.size()); }

private:
    StableGraph graph_;
    StableGraph core_;               // loops removed
    std::vector<int> core_to_edge_;  // core edge -> edge of graph_
    std::vector<int> loops_;         // edges of graph_ that are loops
    detail::SpanningPlan plan_;
};

/// Convenience wrapper; builds a kernel for each call.
std::vector<Integer> weighting_moments(const StableGraph& g, const std::vector<int>& a, int r,
                                       const std::vector<std::vector<int>>& ms);

/// Brute force over all r^|E| edge assignments.
Integer weighting_moment_reference(const StableGraph& g, const std::vector<int>& a, int r, const std::vector<int>& m);

}  // namespace tautdr
