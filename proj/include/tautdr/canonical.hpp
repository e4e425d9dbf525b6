#pragma once

// Canonical labeling of small vertex-colored multigraphs with labeled legs.
// Used for stable graphs, decorated strata and bipartite graphs alike:
// vertex colors carry genus/degree/kappa data, half-edge colors carry psi
// exponents or root weights.

#include <compare>
#include <cstdint>
#include <tuple>
#include <vector>

namespace tautdr::canon {

using Color = std::vector<int>;

struct Edge {
    int u = 0;
    Color cu;
    int v = 0;
    Color cv;
};

struct ColoredGraph {
    std::vector<Color> vertex_color;
    std::vector<std::pair<int, Color>> legs;  // leg i -> (vertex, color)
    std::vector<Edge> edges;
};

using EdgeKey = std::tuple<int, Color, int, Color>;  // normalized: (u,cu) <= (v,cv)

struct Encoding {
    std::vector<Color> vertex_color;
    std::vector<std::pair<int, Color>> legs;
    std::vector<EdgeKey> edges;  // sorted

    friend auto operator<=>(const Encoding&, const Encoding&) = default;
    friend bool operator==(const Encoding&, const Encoding&) = default;
};

struct Result {
    Encoding encoding;
    /// Every relabeling (old vertex -> new index) that attains the encoding.
    std::vector<std::vector<int>> optimal;
    std::uint64_t vertex_automorphisms = 0;
    std::uint64_t automorphisms = 0;  // includes parallel-edge and loop-flip factors
};

Encoding encode(const ColoredGraph& g, const std::vector<int>& relabel);
Result canonicalize(const ColoredGraph& g);

/// All half-edge level isomorphisms from `a` to `b`. Half-edges are numbered
/// legs first (0..n-1) then edge e contributes (n+2e: the `u` end, n+2e+1).
/// Each map is indexed by a's half-edges and returns b's half-edge.
std::vector<std::vector<int>> isomorphisms(const ColoredGraph& a, const ColoredGraph& b);

}  // namespace tautdr::canon
