#include "doctest.h"

#include "oracles/brute_graphs.hpp"
#include "oracles/builders.hpp"

#include "tautdr/errors.hpp"
#include "tautdr/stable_graph.hpp"
#include "tautdr/weighting_kernel.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

using namespace tautdr;

namespace {

std::uint64_t ipow(int b, int e)
{
    std::uint64_t x = 1;
    while (e-- > 0) x *= static_cast<std::uint64_t>(b);
    return x;
}

// Number of distinct labeled presentations: relabel vertices, reorder and
// reorient edges, and count distinct results.
std::size_t labeled_presentations(const oracle::PlainGraph& g)
{
    using Pres = std::tuple<std::vector<int>, std::vector<int>, std::vector<std::pair<int, int>>>;
    std::set<Pres> seen;
    const std::size_t nv = g.genus.size(), ne = g.edges.size();
    std::vector<int> vp(nv), ep(ne);
    std::iota(vp.begin(), vp.end(), 0);
    do {
        std::iota(ep.begin(), ep.end(), 0);
        do {
            for (unsigned flips = 0; flips < (1u << ne); ++flips) {
                std::vector<int> genus(nv);
                for (std::size_t v = 0; v < nv; ++v) genus[static_cast<std::size_t>(vp[v])] = g.genus[v];
                std::vector<int> legs;
                for (int v : g.leg_vertex) legs.push_back(vp[static_cast<std::size_t>(v)]);
                std::vector<std::pair<int, int>> edges(ne);
                for (std::size_t e = 0; e < ne; ++e) {
                    auto [u, v] = g.edges[e];
                    std::pair<int, int> x{vp[static_cast<std::size_t>(u)], vp[static_cast<std::size_t>(v)]};
                    if (flips >> e & 1u) std::swap(x.first, x.second);
                    edges[static_cast<std::size_t>(ep[e])] = x;
                }
                seen.emplace(genus, legs, edges);
            }
        } while (std::next_permutation(ep.begin(), ep.end()));
    } while (std::next_permutation(vp.begin(), vp.end()));
    return seen.size();
}

}  // namespace

TEST_CASE("census counts")
{
    const std::map<std::pair<int, int>, std::size_t> expected{
        {{0, 3}, 1}, {{0, 4}, 4}, {{0, 5}, 26}, {{0, 6}, 236}, {{1, 1}, 2},
        {{1, 2}, 5}, {{1, 3}, 23}, {{2, 0}, 7}, {{2, 1}, 16}, {{3, 0}, 42},
    };
    for (auto [gn, count] : expected) {
        CAPTURE(gn.first);
        CAPTURE(gn.second);
        CHECK(enumerate_stable_graphs(gn.first, gn.second).size() == count);
    }
}

TEST_CASE("unstable ambient is rejected")
{
    CHECK_THROWS_AS(enumerate_stable_graphs(0, 2), InvalidInput);
    CHECK_THROWS_AS(enumerate_stable_graphs(1, 0), InvalidInput);
    CHECK_THROWS_AS(enumerate_stable_graphs(-1, 4), InvalidInput);
}

TEST_CASE("enumeration equals brute force for 3g-3+n <= 4")
{
    for (int g = 0; g <= 2; ++g)
        for (int n = 0; n <= 7; ++n) {
            if (2 * g - 2 + n <= 0 || 3 * g - 3 + n > 4) continue;
            CAPTURE(g);
            CAPTURE(n);
            const auto& lib = enumerate_stable_graphs(g, n);
            std::set<oracle::PlainKey> mine;
            for (const auto& G : lib) {
                G.validate();
                CHECK(G.total_genus() == g);
                CHECK(G.is_connected());
                mine.insert(oracle::brute_canonical(oracle::plain(G)));
            }
            CHECK(mine.size() == lib.size());
            CHECK(mine == oracle::brute_stable_graphs(g, n));
        }
}

TEST_CASE("automorphism examples")
{
    CHECK(automorphism_count(StableGraph::trivial(2, 3)) == 1);
    CHECK(automorphism_count(oracle::loop_graph()) == 2);
    CHECK(automorphism_count(oracle::theta_graph()) == 12);
    CHECK(automorphism_count(oracle::build({1, 1}, {}, {{0, 1}})) == 2);
    CHECK(automorphism_count(oracle::build({0}, {}, {{0, 0}, {0, 0}})) == 8);
}

TEST_CASE("automorphisms agree with brute force and divide the labeled count")
{
    for (auto [g, n] : std::vector<std::pair<int, int>>{{0, 5}, {1, 2}, {1, 3}, {2, 0}, {2, 1}, {3, 0}}) {
        for (const auto& G : enumerate_stable_graphs(g, n)) {
            const auto p = oracle::plain(G);
            const auto aut = automorphism_count(G);
            CHECK(aut == oracle::brute_automorphisms(p));
            if (G.num_vertices() > 4 || G.num_edges() > 4) continue;
            std::uint64_t group = ipow(2, G.num_edges());
            for (int k = 2; k <= G.num_vertices(); ++k) group *= static_cast<std::uint64_t>(k);
            for (int k = 2; k <= G.num_edges(); ++k) group *= static_cast<std::uint64_t>(k);
            const auto orbit = labeled_presentations(p);
            CHECK(group % aut == 0);
            CHECK(orbit * aut == group);
        }
    }
}

TEST_CASE("canonical form is a class invariant")
{
    // relabel vertices of every (2,1) graph and compare normal forms
    for (const auto& G : enumerate_stable_graphs(2, 1)) {
        auto p = oracle::plain(G);
        std::vector<int> perm(p.genus.size());
        std::iota(perm.rbegin(), perm.rend(), 0);
        std::vector<int> genus(p.genus.size());
        for (std::size_t v = 0; v < perm.size(); ++v) genus[static_cast<std::size_t>(perm[v])] = p.genus[v];
        std::vector<int> legs;
        for (int v : p.leg_vertex) legs.push_back(perm[static_cast<std::size_t>(v)]);
        std::vector<std::pair<int, int>> edges;
        for (auto [u, v] : p.edges) edges.emplace_back(perm[static_cast<std::size_t>(v)], perm[static_cast<std::size_t>(u)]);
        std::reverse(edges.begin(), edges.end());
        CHECK(canonical_form(oracle::build(genus, legs, edges)) == canonical_form(G));
    }
}

TEST_CASE("weighting examples")
{
    CHECK(enumerate_weightings(StableGraph::trivial(0, 2 + 1), {2, -2, 0}, 7).size() == 1);
    CHECK(enumerate_weightings(oracle::loop_graph(), {0}, 5).size() == 5);
    for (int r : {2, 3, 9})
        CHECK(enumerate_weightings(oracle::build({1, 1}, {}, {{0, 1}}), {}, r).size() == 1);
    for (const auto& w : enumerate_weightings(oracle::loop_graph(), {0}, 5)) {
        CHECK(w.w[1] == mod_r(-w.w[2], 5));
        CHECK(is_valid_weighting(oracle::loop_graph(), {0}, w));
    }
}

TEST_CASE("weighting count is r^h1 when the residues sum to zero")
{
    for (auto [g, n] : std::vector<std::pair<int, int>>{{0, 4}, {1, 2}, {2, 0}, {2, 1}}) {
        for (const auto& G : enumerate_stable_graphs(g, n)) {
            for (int r : {2, 3, 5}) {
                std::vector<int> a(static_cast<std::size_t>(n), 0);
                if (n >= 2) {
                    a[0] = 1;
                    a[1] = -1;
                }
                CHECK(enumerate_weightings(G, a, r).size() == ipow(r, G.h1()));
                if (n >= 1) {
                    a[0] += 1;  // residues no longer sum to 0 mod r
                    CHECK(enumerate_weightings(G, a, r).empty());
                }
            }
        }
    }
}

TEST_CASE("weighting kernel matches the serial reference")
{
    for (auto [g, n] : std::vector<std::pair<int, int>>{{0, 4}, {1, 1}, {1, 2}, {2, 0}, {2, 1}}) {
        for (const auto& G : enumerate_stable_graphs(g, n)) {
            if (G.h1() > 2 || G.num_edges() > 4) continue;
            std::vector<int> a(static_cast<std::size_t>(n), 0);
            if (n >= 2) {
                a[0] = 2;
                a[1] = -2;
            }
            std::vector<std::vector<int>> ms;
            ms.emplace_back(static_cast<std::size_t>(G.num_edges()), 0);
            ms.emplace_back(static_cast<std::size_t>(G.num_edges()), 1);
            if (G.num_edges() > 0) {
                auto m = ms.back();
                m[0] = 2;
                ms.push_back(m);
            }
            WeightingKernel kernel(G);
            for (int r = 2; r <= 12; ++r) {
                const auto got = kernel.moments(a, r, ms);
                for (std::size_t k = 0; k < ms.size(); ++k) {
                    CAPTURE(G.to_string());
                    CAPTURE(r);
                    CHECK(got[k] == weighting_moment_reference(G, a, r, ms[k]));
                }
            }
        }
    }
}
