#pragma once

// Admissible bipartite graphs for the pair (X, D) = (P^1, pt).
//
// 0-side vertices are rubber pieces over D (degree 0 since H_2(pt) = 0);
// infinity-side vertices are relative maps to (P^1, pt) of integer degree b.
// There are no edges inside a side, so every cycle alternates sides.

#include "tautdr/errors.hpp"
#include "tautdr/rational.hpp"

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

namespace tautdr {

enum class Side { Zero, Infinity };

enum class HalfEdgeKind {
    Leg,
    ZeroRoot,         // 0-side, positive weight, labeled
    InfinityNode,     // 0-side, negative weight, glued to an edge
    InfinityMarking,  // 0-side, negative weight, labeled
    Node,             // infinity side, positive weight, glued to an edge
    Marking,          // infinity side, positive weight, labeled
};

std::string to_string(HalfEdgeKind k);

struct BVertex {
    Side side = Side::Zero;
    int genus = 0;
    int degree = 0;  // b(v); always 0 on the 0-side

    friend auto operator<=>(const BVertex&, const BVertex&) = default;
};

struct BHalfEdge {
    int vertex = 0;
    HalfEdgeKind kind = HalfEdgeKind::Leg;
    int weight = 0;  // 0 for legs

    friend auto operator<=>(const BHalfEdge&, const BHalfEdge&) = default;
};

/// Topological type (g, n, beta, rho, mu).
struct BipartiteType {
    int g = 0;
    int n = 0;
    int beta = 0;
    std::vector<int> mu;

    int rho() const { return static_cast<int>(mu.size()); }
    /// Throws InvalidInput on negative g/n/beta, zero weights or sum mu != beta.
    void validate() const;

    friend auto operator<=>(const BipartiteType&, const BipartiteType&) = default;
};

/// Normal form: half-edges 0..n-1 are the legs, n..n+rho-1 the labeled roots
/// in the order of mu (the labeling I), and edge e is the pair
/// (n+rho+2e on the 0-side, n+rho+2e+1 on the infinity side).
struct BipartiteGraph {
    std::vector<BVertex> vertices;
    std::vector<BHalfEdge> half_edges;
    int num_legs = 0;
    int num_roots = 0;

    int num_labeled() const { return num_legs + num_roots; }
    int num_edges() const { return (static_cast<int>(half_edges.size()) - num_labeled()) / 2; }
    int num_vertices() const { return static_cast<int>(vertices.size()); }
    /// (0-side half-edge, infinity-side half-edge) of edge e.
    std::pair<int, int> edge(int e) const { return {num_labeled() + 2 * e, num_labeled() + 2 * e + 1}; }
    std::vector<int> half_edges_at(int v) const;
    /// Number of infinity-roots (both types) at a 0-side vertex.
    int rho_infinity(int v) const;

    BipartiteType type() const;
    /// Throws InvalidInput naming the first violated condition.
    void validate() const;
    std::string to_string() const;

    friend auto operator<=>(const BipartiteGraph&, const BipartiteGraph&) = default;
};

/// sum of vertex genera + h^1.
int genus_of(const BipartiteGraph& G);

/// Canonical representative (vertices and edges relabeled, I-labels fixed).
BipartiteGraph canonical_form(const BipartiteGraph& G);
/// Automorphisms fixing every I-labeled half-edge.
std::uint64_t automorphism_count(const BipartiteGraph& G);

struct BipartiteBounds {
    int max_zero_vertices = 3;
    int max_infinity_vertices = 3;
    int max_edges = 4;
};

struct EnumeratedBipartite {
    BipartiteGraph graph;
    std::uint64_t automorphisms = 1;
};

/// All isomorphism classes of the given type within bounds, canonical and
/// sorted.
std::vector<EnumeratedBipartite> enumerate_bipartite(const BipartiteType& type, BipartiteBounds bounds = {});

/// sum_{mu>0} mu/r + sum_{mu<0} (r+mu)/r - (sum mu)/r; requires r > max|mu|.
int rho_minus(const std::vector<int>& mu, int r);

}  // namespace tautdr
