#include "brute_graphs.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>

namespace oracle {

namespace {

std::uint64_t fact(int k)
{
    std::uint64_t f = 1;
    for (int i = 2; i <= k; ++i) f *= static_cast<std::uint64_t>(i);
    return f;
}

bool connected(int nv, const std::vector<std::pair<int, int>>& edges)
{
    std::vector<std::vector<int>> adj(static_cast<std::size_t>(nv));
    for (auto [u, v] : edges) {
        adj[static_cast<std::size_t>(u)].push_back(v);
        adj[static_cast<std::size_t>(v)].push_back(u);
    }
    std::vector<bool> seen(static_cast<std::size_t>(nv), false);
    std::vector<int> stack{0};
    seen[0] = true;
    int count = 1;
    while (!stack.empty()) {
        int u = stack.back();
        stack.pop_back();
        for (int w : adj[static_cast<std::size_t>(u)])
            if (!seen[static_cast<std::size_t>(w)]) {
                seen[static_cast<std::size_t>(w)] = true;
                ++count;
                stack.push_back(w);
            }
    }
    return count == nv;
}

PlainKey relabel(const PlainGraph& g, const std::vector<int>& p)
{
    std::vector<int> genus(g.genus.size());
    for (std::size_t v = 0; v < g.genus.size(); ++v) genus[static_cast<std::size_t>(p[v])] = g.genus[v];
    std::vector<int> legs;
    for (int v : g.leg_vertex) legs.push_back(p[static_cast<std::size_t>(v)]);
    std::vector<std::pair<int, int>> edges;
    for (auto [u, v] : g.edges) {
        int a = p[static_cast<std::size_t>(u)], b = p[static_cast<std::size_t>(v)];
        edges.emplace_back(std::min(a, b), std::max(a, b));
    }
    std::sort(edges.begin(), edges.end());
    return {genus, legs, edges};
}

}  // namespace

PlainGraph plain(const tautdr::StableGraph& g)
{
    PlainGraph p;
    p.genus = g.genera();
    for (int i = 0; i < g.num_legs(); ++i) p.leg_vertex.push_back(g.vertex_of(g.leg(i)));
    for (auto [a, b] : g.edges()) {
        int u = g.vertex_of(a), v = g.vertex_of(b);
        p.edges.emplace_back(std::min(u, v), std::max(u, v));
    }
    return p;
}

PlainKey brute_canonical(const PlainGraph& g)
{
    std::vector<int> p(g.genus.size());
    std::iota(p.begin(), p.end(), 0);
    PlainKey best = relabel(g, p);
    while (std::next_permutation(p.begin(), p.end())) best = std::min(best, relabel(g, p));
    return best;
}

std::uint64_t brute_automorphisms(const PlainGraph& g)
{
    std::vector<int> p(g.genus.size());
    std::iota(p.begin(), p.end(), 0);
    const PlainKey self = relabel(g, p);
    std::uint64_t vertex_maps = 0;
    do {
        if (relabel(g, p) == self) ++vertex_maps;
    } while (std::next_permutation(p.begin(), p.end()));
    std::map<std::pair<int, int>, int> mult;
    for (const auto& e : g.edges) ++mult[e];
    std::uint64_t f = vertex_maps;
    for (auto [e, m] : mult) {
        f *= fact(m);
        if (e.first == e.second) f <<= m;  // each loop can be flipped
    }
    return f;
}

std::set<PlainKey> brute_stable_graphs(int g, int n)
{
    std::set<PlainKey> out;
    const int max_vertices = 2 * g - 2 + n;
    for (int nv = 1; nv <= max_vertices; ++nv) {
        // all vertex pairs (loops included)
        std::vector<std::pair<int, int>> pairs;
        for (int u = 0; u < nv; ++u)
            for (int v = u; v < nv; ++v) pairs.emplace_back(u, v);
        std::vector<int> genus(static_cast<std::size_t>(nv), 0);

        std::function<void(int, int)> genus_rec = [&](int v, int left) {
            if (v == nv) {
                const int ne = g - std::accumulate(genus.begin(), genus.end(), 0) + nv - 1;
                if (ne < nv - 1) return;
                std::vector<std::pair<int, int>> edges;
                std::function<void(std::size_t)> edge_rec = [&](std::size_t from) {
                    if (static_cast<int>(edges.size()) == ne) {
                        if (!connected(nv, edges)) return;
                        std::vector<int> valence(static_cast<std::size_t>(nv), 0);
                        for (auto [a, b] : edges) {
                            ++valence[static_cast<std::size_t>(a)];
                            ++valence[static_cast<std::size_t>(b)];
                        }
                        // a vertex needs 2g-2+val > 0; legs make up the deficit
                        int deficit = 0;
                        for (int u = 0; u < nv; ++u)
                            deficit += std::max(0, 3 - 2 * genus[static_cast<std::size_t>(u)] - valence[static_cast<std::size_t>(u)]);
                        if (deficit > n) return;
                        std::vector<int> legs(static_cast<std::size_t>(n), 0);
                        std::function<void(int)> leg_rec = [&](int i) {
                            if (i == n) {
                                auto val = valence;
                                for (int v2 : legs) ++val[static_cast<std::size_t>(v2)];
                                for (int u = 0; u < nv; ++u)
                                    if (2 * genus[static_cast<std::size_t>(u)] - 2 + val[static_cast<std::size_t>(u)] <= 0) return;
                                out.insert(brute_canonical(PlainGraph{genus, legs, edges}));
                                return;
                            }
                            for (int u = 0; u < nv; ++u) {
                                legs[static_cast<std::size_t>(i)] = u;
                                leg_rec(i + 1);
                            }
                        };
                        leg_rec(0);
                        return;
                    }
                    for (std::size_t k = from; k < pairs.size(); ++k) {
                        edges.push_back(pairs[k]);
                        edge_rec(k);
                        edges.pop_back();
                    }
                };
                edge_rec(0);
                return;
            }
            for (int k = 0; k <= left; ++k) {
                genus[static_cast<std::size_t>(v)] = k;
                genus_rec(v + 1, left - k);
            }
        };
        genus_rec(0, g);
    }
    return out;
}

// ---- bipartite ----

namespace {

BipartiteKey relabel(const PlainBipartite& b, const std::vector<int>& pz, const std::vector<int>& pi)
{
    const int s = static_cast<int>(b.zero.size());
    std::vector<std::pair<int, int>> zero(b.zero.size()), inf(b.infinity.size());
    for (std::size_t i = 0; i < b.zero.size(); ++i) zero[static_cast<std::size_t>(pz[i])] = b.zero[i];
    for (std::size_t i = 0; i < b.infinity.size(); ++i) inf[static_cast<std::size_t>(pi[i])] = b.infinity[i];
    auto map_vertex = [&](int v) {
        return v < s ? pz[static_cast<std::size_t>(v)] : s + pi[static_cast<std::size_t>(v - s)];
    };
    std::vector<int> labels;
    for (int v : b.label_vertex) labels.push_back(map_vertex(v));
    std::vector<std::tuple<int, int, int>> edges;
    for (auto [z, i, w] : b.edges) edges.emplace_back(pz[static_cast<std::size_t>(z)], pi[static_cast<std::size_t>(i)], w);
    std::sort(edges.begin(), edges.end());
    return {zero, inf, labels, edges};
}

template <class F>
void for_each_perm_pair(std::size_t s, std::size_t m, F&& f)
{
    std::vector<int> pz(s), pi(m);
    std::iota(pz.begin(), pz.end(), 0);
    do {
        std::iota(pi.begin(), pi.end(), 0);
        do {
            f(pz, pi);
        } while (std::next_permutation(pi.begin(), pi.end()));
    } while (std::next_permutation(pz.begin(), pz.end()));
}

}  // namespace

PlainBipartite plain(const tautdr::BipartiteGraph& G)
{
    PlainBipartite b;
    std::vector<int> index(G.vertices.size());
    int s = 0;
    for (const auto& v : G.vertices)
        if (v.side == tautdr::Side::Zero) ++s;
    int zi = 0, ii = 0;
    for (std::size_t v = 0; v < G.vertices.size(); ++v) {
        const auto& vx = G.vertices[v];
        if (vx.side == tautdr::Side::Zero) {
            index[v] = zi++;
            b.zero.emplace_back(vx.genus, vx.degree);
        } else {
            index[v] = s + ii++;
            b.infinity.emplace_back(vx.genus, vx.degree);
        }
    }
    for (int h = 0; h < G.num_labeled(); ++h)
        b.label_vertex.push_back(index[static_cast<std::size_t>(G.half_edges[static_cast<std::size_t>(h)].vertex)]);
    for (int e = 0; e < G.num_edges(); ++e) {
        auto [a, c] = G.edge(e);
        const auto& ha = G.half_edges[static_cast<std::size_t>(a)];
        const auto& hc = G.half_edges[static_cast<std::size_t>(c)];
        b.edges.emplace_back(index[static_cast<std::size_t>(ha.vertex)], index[static_cast<std::size_t>(hc.vertex)] - s,
                             hc.weight);
    }
    return b;
}

BipartiteKey brute_canonical(const PlainBipartite& b)
{
    bool have = false;
    BipartiteKey best;
    for_each_perm_pair(b.zero.size(), b.infinity.size(), [&](const auto& pz, const auto& pi) {
        auto k = relabel(b, pz, pi);
        if (!have || k < best) {
            best = std::move(k);
            have = true;
        }
    });
    return best;
}

std::uint64_t brute_automorphisms(const PlainBipartite& b)
{
    std::vector<int> idz(b.zero.size()), idi(b.infinity.size());
    std::iota(idz.begin(), idz.end(), 0);
    std::iota(idi.begin(), idi.end(), 0);
    const auto self = relabel(b, idz, idi);
    std::uint64_t count = 0;
    for_each_perm_pair(b.zero.size(), b.infinity.size(), [&](const auto& pz, const auto& pi) {
        if (relabel(b, pz, pi) == self) ++count;
    });
    std::map<std::tuple<int, int, int>, int> mult;
    for (const auto& e : b.edges) ++mult[e];
    for (const auto& [e, k] : mult) count *= fact(k);
    return count;
}

std::set<BipartiteKey> brute_bipartite(const tautdr::BipartiteType& type, const tautdr::BipartiteBounds& bounds)
{
    std::set<BipartiteKey> out;
    const int labeled = type.n + type.rho();
    for (int s = 0; s <= bounds.max_zero_vertices; ++s)
        for (int m = 0; m <= bounds.max_infinity_vertices; ++m) {
            const int nv = s + m;
            if (nv == 0) continue;
            // multiplicity of every (0-vertex, infinity-vertex, weight) slot
            std::vector<std::tuple<int, int, int>> slots;
            for (int i = 0; i < s; ++i)
                for (int v = 0; v < m; ++v)
                    for (int w = 1; w <= type.beta; ++w) slots.emplace_back(i, v, w);
            std::vector<int> mult(slots.size(), 0);

            std::function<void(std::size_t, int, int)> slot_rec = [&](std::size_t k, int weight_left, int edges_left) {
                if (k < slots.size()) {
                    const int w = std::get<2>(slots[k]);
                    for (int c = 0; c * w <= weight_left && c <= edges_left; ++c) {
                        mult[k] = c;
                        slot_rec(k + 1, weight_left - c * w, edges_left - c);
                    }
                    mult[k] = 0;
                    return;
                }
                std::vector<std::tuple<int, int, int>> edges;
                std::vector<std::pair<int, int>> links;
                for (std::size_t q = 0; q < slots.size(); ++q)
                    for (int c = 0; c < mult[q]; ++c) {
                        edges.push_back(slots[q]);
                        links.emplace_back(std::get<0>(slots[q]), s + std::get<1>(slots[q]));
                    }
                if (!connected(nv, links)) return;
                const int h1 = static_cast<int>(edges.size()) - nv + 1;
                if (h1 > type.g) return;

                std::vector<int> where(static_cast<std::size_t>(labeled), 0);
                std::function<void(int)> label_rec = [&](int j) {
                    if (j < labeled) {
                        for (int v = 0; v < nv; ++v) {
                            where[static_cast<std::size_t>(j)] = v;
                            label_rec(j + 1);
                        }
                        return;
                    }
                    // weight bookkeeping from scratch
                    std::vector<int> sum(static_cast<std::size_t>(nv), 0), val(static_cast<std::size_t>(nv), 0),
                        inf_roots(static_cast<std::size_t>(nv), 0);
                    for (int h = 0; h < labeled; ++h) {
                        const int v = where[static_cast<std::size_t>(h)];
                        ++val[static_cast<std::size_t>(v)];
                        if (h < type.n) continue;
                        const int w = type.mu[static_cast<std::size_t>(h - type.n)];
                        if (v >= s && w < 0) return;  // relative side has positive contact only
                        sum[static_cast<std::size_t>(v)] += w;
                        if (v < s && w < 0) ++inf_roots[static_cast<std::size_t>(v)];
                    }
                    for (auto [z, i, w] : edges) {
                        sum[static_cast<std::size_t>(z)] -= w;
                        sum[static_cast<std::size_t>(s + i)] += w;
                        ++val[static_cast<std::size_t>(z)];
                        ++val[static_cast<std::size_t>(s + i)];
                        ++inf_roots[static_cast<std::size_t>(z)];
                    }
                    for (int v = 0; v < s; ++v)
                        if (sum[static_cast<std::size_t>(v)] != 0 || inf_roots[static_cast<std::size_t>(v)] == 0) return;
                    PlainBipartite b;
                    b.zero.assign(static_cast<std::size_t>(s), {0, 0});
                    b.infinity.assign(static_cast<std::size_t>(m), {0, 0});
                    for (int v = 0; v < m; ++v) b.infinity[static_cast<std::size_t>(v)].second = sum[static_cast<std::size_t>(s + v)];
                    b.label_vertex = where;
                    b.edges = edges;
                    std::vector<int> genus(static_cast<std::size_t>(nv), 0);
                    std::function<void(int, int)> genus_rec = [&](int v, int left) {
                        if (v < nv) {
                            for (int k = 0; k <= left; ++k) {
                                genus[static_cast<std::size_t>(v)] = k;
                                genus_rec(v + 1, left - k);
                            }
                            return;
                        }
                        if (left != 0) return;
                        for (int u = 0; u < nv; ++u) {
                            const int deg = u < s ? 0 : sum[static_cast<std::size_t>(u)];
                            if (deg == 0 && val[static_cast<std::size_t>(u)] <= 2 - 2 * genus[static_cast<std::size_t>(u)]) return;
                        }
                        for (int u = 0; u < s; ++u) b.zero[static_cast<std::size_t>(u)].first = genus[static_cast<std::size_t>(u)];
                        for (int u = 0; u < m; ++u) b.infinity[static_cast<std::size_t>(u)].first = genus[static_cast<std::size_t>(s + u)];
                        out.insert(brute_canonical(b));
                    };
                    genus_rec(0, type.g - h1);
                };
                label_rec(0);
            };
            slot_rec(0, type.beta, bounds.max_edges);
        }
    return out;
}

}  // namespace oracle
