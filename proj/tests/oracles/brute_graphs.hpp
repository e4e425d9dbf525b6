#pragma once

// Independent brute-force generators used as oracles.  Nothing here touches
// the library's canonical labeling: isomorphism is decided by trying every
// vertex permutation.

#include "tautdr/bipartite.hpp"
#include "tautdr/stable_graph.hpp"

#include <cstdint>
#include <set>
#include <tuple>
#include <vector>

namespace oracle {

// ---- stable graphs ----

struct PlainGraph {
    std::vector<int> genus;
    std::vector<int> leg_vertex;
    std::vector<std::pair<int, int>> edges;  // u <= v
};

using PlainKey = std::tuple<std::vector<int>, std::vector<int>, std::vector<std::pair<int, int>>>;

PlainGraph plain(const tautdr::StableGraph& g);
PlainKey brute_canonical(const PlainGraph& g);
std::uint64_t brute_automorphisms(const PlainGraph& g);

/// Every stable graph of M̄_{g,n}, as brute canonical keys.
std::set<PlainKey> brute_stable_graphs(int g, int n);

// ---- bipartite graphs ----

struct PlainBipartite {
    std::vector<std::pair<int, int>> zero;      // (genus, degree) per 0-side vertex
    std::vector<std::pair<int, int>> infinity;  // (genus, degree) per infinity vertex
    std::vector<int> label_vertex;              // legs then roots; infinity vertices offset by |zero|
    std::vector<std::tuple<int, int, int>> edges;  // (0-side vertex, infinity vertex, weight)
};

using BipartiteKey = std::tuple<std::vector<std::pair<int, int>>, std::vector<std::pair<int, int>>, std::vector<int>,
                                std::vector<std::tuple<int, int, int>>>;

PlainBipartite plain(const tautdr::BipartiteGraph& G);
BipartiteKey brute_canonical(const PlainBipartite& b);
std::uint64_t brute_automorphisms(const PlainBipartite& b);

std::set<BipartiteKey> brute_bipartite(const tautdr::BipartiteType& type, const tautdr::BipartiteBounds& bounds);

}  // namespace oracle
