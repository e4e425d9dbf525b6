#pragma once

#include "tautdr/canonical.hpp"

#include <compare>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace tautdr {

/// Dual graph of a stable curve with n ordered markings (point target).
///
/// Half-edges are 0..H-1. `vertex_of[h]` is the vertex carrying h and
/// `involution[h]` its partner; fixed points of the involution are legs,
/// `legs[i]` being the half-edge of marking i+1.
///
/// Graphs produced by enumeration and canonicalization are in normal form:
/// legs occupy half-edges 0..n-1 and edge e is the pair (n+2e, n+2e+1).
class StableGraph {
public:
    StableGraph() = default;
    StableGraph(std::vector<int> genus, std::vector<int> vertex_of, std::vector<int> involution,
                std::vector<int> legs);

    /// Single vertex of genus g carrying all n legs.
    static StableGraph trivial(int g, int n);

    int num_vertices() const { return static_cast<int>(genus_.size()); }
    int num_half_edges() const { return static_cast<int>(vertex_of_.size()); }
    int num_legs() const { return static_cast<int>(legs_.size()); }
    int num_edges() const { return (num_half_edges() - num_legs()) / 2; }

    int genus(int v) const { return genus_[static_cast<std::size_t>(v)]; }
    const std::vector<int>& genera() const { return genus_; }
    int vertex_of(int h) const { return vertex_of_[static_cast<std::size_t>(h)]; }
    const std::vector<int>& vertex_map() const { return vertex_of_; }
    int involution(int h) const { return involution_[static_cast<std::size_t>(h)]; }
    const std::vector<int>& involution_map() const { return involution_; }
    bool is_leg(int h) const { return involution(h) == h; }
    const std::vector<int>& legs() const { return legs_; }
    int leg(int marking) const { return legs_[static_cast<std::size_t>(marking)]; }

    /// Edges as (h, h') with h < h', ordered by h.
    std::vector<std::pair<int, int>> edges() const;
    std::vector<int> half_edges_at(int v) const;
    int valence(int v) const;
    int h1() const { return num_edges() - num_vertices() + 1; }
    int total_genus() const;
    int dimension() const { return 3 * total_genus() - 3 + num_legs(); }
    bool is_trivial() const { return num_edges() == 0; }
    bool is_connected() const;

    /// Throws InvalidInput if the involution, genus or stability conditions fail.
    void validate() const;

    friend auto operator<=>(const StableGraph&, const StableGraph&) = default;
    friend bool operator==(const StableGraph&, const StableGraph&) = default;

    std::string to_string() const;

private:
    std::vector<int> genus_;
    std::vector<int> vertex_of_;
    std::vector<int> involution_;
    std::vector<int> legs_;
};

/// Colored view used for canonical labeling; `half_edge_of[i]` maps the
/// colored half-edge index (legs first, then edge ends) back to the graph.
struct ColoredView {
    canon::ColoredGraph colored;
    std::vector<int> half_edge_of;
};

/// `vertex_colors` and `half_edge_colors` may be empty (plain genus coloring).
ColoredView colored_view(const StableGraph& g, const std::vector<canon::Color>& vertex_colors = {},
                         const std::vector<canon::Color>& half_edge_colors = {});

StableGraph canonical_form(const StableGraph& g);

/// Order of the automorphism group fixing every leg.
std::uint64_t automorphism_count(const StableGraph& g);

/// All isomorphisms a -> b as half-edge maps (a's half-edge -> b's half-edge),
/// legs fixed.
std::vector<std::vector<int>> graph_isomorphisms(const StableGraph& a, const StableGraph& b);

struct EnumerationOptions {
    int max_dimension = 8;
};

/// One representative per isomorphism class, in normal form, ordered by
/// edge count and then canonical order. Results are cached.
const std::vector<StableGraph>& enumerate_stable_graphs(int g, int n, EnumerationOptions options = {});

/// Contract the listed edges (indices into g.edges()).
struct Contraction {
    StableGraph graph;
    std::vector<int> half_edge_map;  // old half-edge -> new half-edge, -1 if contracted
    std::vector<int> vertex_map;     // old vertex -> new vertex
};
Contraction contract_edges(const StableGraph& g, const std::vector<int>& edge_indices);

/// Weighting mod r: w[h] in {0..r-1} per half-edge.
struct WeightingModR {
    int r = 0;
    std::vector<int> w;
};

bool is_valid_weighting(const StableGraph& g, const std::vector<int>& a, const WeightingModR& w);

/// All weightings mod r with leg residues a_i mod r.
std::vector<WeightingModR> enumerate_weightings(const StableGraph& g, const std::vector<int>& a, int r);

inline int mod_r(long long x, int r)
{
    long long m = x % r;
    return static_cast<int>(m < 0 ? m + r : m);
}

}  // namespace tautdr
