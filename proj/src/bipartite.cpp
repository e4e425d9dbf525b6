#include "tautdr/bipartite.hpp"

#include "tautdr/canonical.hpp"

#include <algorithm>
#include <array>
#include <cstdlib>
#include <functional>
#include <map>
#include <numeric>
#include <sstream>

namespace tautdr {

namespace {

template <class T>
std::size_t at(T i)
{
    return static_cast<std::size_t>(i);
}

HalfEdgeKind labeled_root_kind(Side side, int weight)
{
    if (side == Side::Infinity) return HalfEdgeKind::Marking;
    return weight > 0 ? HalfEdgeKind::ZeroRoot : HalfEdgeKind::InfinityMarking;
}

canon::ColoredGraph colored(const BipartiteGraph& G)
{
    canon::ColoredGraph c;
    for (const auto& v : G.vertices) c.vertex_color.push_back({static_cast<int>(v.side), v.genus, v.degree});
    for (int h = 0; h < G.num_labeled(); ++h) {
        const auto& he = G.half_edges[at(h)];
        c.legs.emplace_back(he.vertex, canon::Color{static_cast<int>(he.kind), he.weight});
    }
    for (int e = 0; e < G.num_edges(); ++e) {
        auto [h0, hi] = G.edge(e);
        const auto& a = G.half_edges[at(h0)];
        const auto& b = G.half_edges[at(hi)];
        c.edges.push_back({a.vertex, {a.weight}, b.vertex, {b.weight}});
    }
    return c;
}

BipartiteGraph from_encoding(const canon::Encoding& enc, int num_legs)
{
    BipartiteGraph G;
    for (const auto& c : enc.vertex_color) G.vertices.push_back({static_cast<Side>(c[0]), c[1], c[2]});
    G.num_legs = num_legs;
    G.num_roots = static_cast<int>(enc.legs.size()) - num_legs;
    for (const auto& [v, c] : enc.legs) G.half_edges.push_back({v, static_cast<HalfEdgeKind>(c[0]), c[1]});
    for (const auto& [u, cu, v, cv] : enc.edges) {
        int z = u, zw = cu[0], i = v, iw = cv[0];
        if (G.vertices[at(u)].side == Side::Infinity) {
            std::swap(z, i);
            std::swap(zw, iw);
        }
        G.half_edges.push_back({z, HalfEdgeKind::InfinityNode, zw});
        G.half_edges.push_back({i, HalfEdgeKind::Node, iw});
    }
    return G;
}

int count_components(int nv, const std::vector<std::pair<int, int>>& links)
{
    std::vector<int> parent(at(nv));
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int x) { return parent[at(x)] == x ? x : parent[at(x)] = find(parent[at(x)]); };
    int comps = nv;
    for (auto [a, b] : links) {
        int ra = find(a), rb = find(b);
        if (ra != rb) {
            parent[at(ra)] = rb;
            --comps;
        }
    }
    return comps;
}

}  // namespace

std::string to_string(HalfEdgeKind k)
{
    switch (k) {
    case HalfEdgeKind::Leg: return "leg";
    case HalfEdgeKind::ZeroRoot: return "zero-root";
    case HalfEdgeKind::InfinityNode: return "infinity-node";
    case HalfEdgeKind::InfinityMarking: return "infinity-marking";
    case HalfEdgeKind::Node: return "node";
    case HalfEdgeKind::Marking: return "marking";
    }
    return "?";
}

void BipartiteType::validate() const
{
    if (g < 0 || n < 0) throw InvalidInput("genus and number of legs must be non-negative");
    if (beta < 0) throw InvalidInput("beta must be effective (>= 0) on P^1");
    long long s = 0;
    for (int m : mu) {
        if (m == 0) throw InvalidInput("contact orders must be nonzero");
        s += m;
    }
    if (s != beta) throw InvalidInput("sum of contact orders " + std::to_string(s) + " differs from beta " + std::to_string(beta));
}

std::vector<int> BipartiteGraph::half_edges_at(int v) const
{
    std::vector<int> out;
    for (int h = 0; h < static_cast<int>(half_edges.size()); ++h)
        if (half_edges[at(h)].vertex == v) out.push_back(h);
    return out;
}

int BipartiteGraph::rho_infinity(int v) const
{
    int k = 0;
    for (const auto& he : half_edges)
        if (he.vertex == v && (he.kind == HalfEdgeKind::InfinityNode || he.kind == HalfEdgeKind::InfinityMarking)) ++k;
    return k;
}

BipartiteType BipartiteGraph::type() const
{
    BipartiteType t;
    t.g = genus_of(*this);
    t.n = num_legs;
    for (const auto& v : vertices) t.beta += v.degree;
    for (int h = num_legs; h < num_labeled(); ++h) t.mu.push_back(half_edges[at(h)].weight);
    return t;
}

void BipartiteGraph::validate() const
{
    const int nv = num_vertices();
    if (nv == 0) throw InvalidInput("bipartite graph has no vertices");
    if (static_cast<int>(half_edges.size()) < num_labeled() || (half_edges.size() - at(num_labeled())) % 2 != 0)
        throw InvalidInput("half-edge list is not in normal form");
    for (const auto& v : vertices) {
        if (v.genus < 0) throw InvalidInput("negative vertex genus");
        if (v.side == Side::Zero && v.degree != 0) throw InvalidInput("0-side vertices have degree 0 over a point");
        if (v.side == Side::Infinity && v.degree < 0) throw InvalidInput("negative degree on the infinity side");
    }
    for (int h = 0; h < static_cast<int>(half_edges.size()); ++h) {
        const auto& he = half_edges[at(h)];
        if (he.vertex < 0 || he.vertex >= nv) throw InvalidInput("half-edge on a missing vertex");
        const Side side = vertices[at(he.vertex)].side;
        if (h < num_legs) {
            if (he.kind != HalfEdgeKind::Leg || he.weight != 0) throw InvalidInput("labels 1..n must be legs");
        } else if (h < num_labeled()) {
            if (he.weight == 0 || he.kind != labeled_root_kind(side, he.weight))
                throw InvalidInput("labeled root of the wrong type for its side");
            if (side == Side::Infinity && he.weight < 0)
                throw InvalidInput("infinity-side roots carry positive contact");
        } else {
            const bool zero_end = (h - num_labeled()) % 2 == 0;
            const HalfEdgeKind want = zero_end ? HalfEdgeKind::InfinityNode : HalfEdgeKind::Node;
            if (he.kind != want || side != (zero_end ? Side::Zero : Side::Infinity))
                throw InvalidInput("edges must join an infinity-root of node type to an infinity-side node root");
            if (zero_end ? he.weight >= 0 : he.weight <= 0) throw InvalidInput("node root weight has the wrong sign");
        }
    }
    for (int e = 0; e < num_edges(); ++e) {
        auto [a, b] = edge(e);
        if (half_edges[at(a)].weight + half_edges[at(b)].weight != 0)
            throw InvalidInput("edge weights do not add up to 0");
    }
    for (int v = 0; v < nv; ++v) {
        long long sum = 0;
        int valence = 0;
        for (const auto& he : half_edges) {
            if (he.vertex != v) continue;
            ++valence;
            if (he.kind != HalfEdgeKind::Leg) sum += he.weight;
        }
        const auto& vx = vertices[at(v)];
        if (sum != vx.degree) throw InvalidInput("root weights at a vertex do not sum to its degree");
        if (vx.degree == 0 && valence <= 2 - 2 * vx.genus) throw InvalidInput("unstable vertex");
        if (vx.side == Side::Zero && rho_infinity(v) == 0)
            throw InvalidInput("0-side vertex without infinity-roots");
    }
    std::vector<std::pair<int, int>> links;
    for (int e = 0; e < num_edges(); ++e) {
        auto [a, b] = edge(e);
        links.emplace_back(half_edges[at(a)].vertex, half_edges[at(b)].vertex);
    }
    if (count_components(nv, links) != 1) throw InvalidInput("bipartite graph is disconnected");
}

std::string BipartiteGraph::to_string() const
{
    std::ostringstream os;
    os << "[";
    for (int v = 0; v < num_vertices(); ++v) {
        const auto& vx = vertices[at(v)];
        if (v) os << " ";
        os << (vx.side == Side::Zero ? "Z" : "I") << v << "(g" << vx.genus << ",b" << vx.degree << ":";
        bool first = true;
        for (int h : half_edges_at(v)) {
            const auto& he = half_edges[at(h)];
            os << (first ? "" : ",");
            first = false;
            if (he.kind == HalfEdgeKind::Leg)
                os << "L" << h + 1;
            else if (h < num_labeled())
                os << "R" << h - num_legs + 1 << "=" << he.weight;
            else
                os << "e" << (h - num_labeled()) / 2 << "=" << he.weight;
        }
        os << ")";
    }
    os << "]";
    return os.str();
}

int genus_of(const BipartiteGraph& G)
{
    std::vector<std::pair<int, int>> links;
    for (int e = 0; e < G.num_edges(); ++e) {
        auto [a, b] = G.edge(e);
        links.emplace_back(G.half_edges[at(a)].vertex, G.half_edges[at(b)].vertex);
    }
    int g = G.num_edges() - G.num_vertices() + count_components(G.num_vertices(), links);
    for (const auto& v : G.vertices) g += v.genus;
    return g;
}

BipartiteGraph canonical_form(const BipartiteGraph& G)
{
    return from_encoding(canon::canonicalize(colored(G)).encoding, G.num_legs);
}

std::uint64_t automorphism_count(const BipartiteGraph& G)
{
    return canon::canonicalize(colored(G)).automorphisms;
}

std::vector<EnumeratedBipartite> enumerate_bipartite(const BipartiteType& type, BipartiteBounds bounds)
{
    type.validate();
    const int n = type.n, rho = type.rho(), labeled = n + rho;
    std::map<canon::Encoding, std::uint64_t> found;

    for (int s = 0; s <= bounds.max_zero_vertices; ++s) {
        for (int m = 0; m <= bounds.max_infinity_vertices; ++m) {
            const int nv = s + m;
            if (nv == 0) continue;

            // Candidate edges (0-side vertex, infinity vertex, weight).  Every
            // infinity-side root is positive, so the edge weights add up to at
            // most beta.
            std::vector<std::array<int, 3>> slots;
            for (int i = 0; i < s; ++i)
                for (int v = 0; v < m; ++v)
                    for (int w = 1; w <= type.beta; ++w) slots.push_back({i, s + v, w});

            std::vector<int> chosen;  // non-decreasing slot indices
            std::function<void(std::size_t, int)> edges_rec;

            auto with_edges = [&]() {
                std::vector<std::pair<int, int>> links;
                for (int k : chosen) links.emplace_back(slots[at(k)][0], slots[at(k)][1]);
                if (count_components(nv, links) != 1) return;
                const int ne = static_cast<int>(chosen.size());
                const int h1 = ne - nv + 1;
                if (h1 > type.g) return;

                std::vector<int> place(at(labeled), 0);
                std::function<void(int)> label_rec = [&](int j) {
                    if (j < labeled) {
                        const bool negative = j >= n && type.mu[at(j - n)] < 0;
                        const int limit = negative ? s : nv;
                        for (int v = 0; v < limit; ++v) {
                            place[at(j)] = v;
                            label_rec(j + 1);
                        }
                        return;
                    }
                    BipartiteGraph G;
                    G.num_legs = n;
                    G.num_roots = rho;
                    for (int v = 0; v < nv; ++v) G.vertices.push_back({v < s ? Side::Zero : Side::Infinity, 0, 0});
                    for (int h = 0; h < labeled; ++h) {
                        const int v = place[at(h)];
                        if (h < n) {
                            G.half_edges.push_back({v, HalfEdgeKind::Leg, 0});
                        } else {
                            const int w = type.mu[at(h - n)];
                            G.half_edges.push_back({v, labeled_root_kind(G.vertices[at(v)].side, w), w});
                        }
                    }
                    for (int k : chosen) {
                        const auto& [i, v, w] = slots[at(k)];
                        G.half_edges.push_back({i, HalfEdgeKind::InfinityNode, -w});
                        G.half_edges.push_back({v, HalfEdgeKind::Node, w});
                    }
                    std::vector<int> sum(at(nv), 0), valence(at(nv), 0);
                    for (const auto& he : G.half_edges) {
                        sum[at(he.vertex)] += he.weight;
                        ++valence[at(he.vertex)];
                    }
                    for (int v = 0; v < nv; ++v) {
                        if (v < s) {
                            if (sum[at(v)] != 0 || G.rho_infinity(v) == 0) return;
                        } else {
                            G.vertices[at(v)].degree = sum[at(v)];
                        }
                    }
                    // distribute the remaining genus
                    std::function<void(int, int)> genus_rec = [&](int v, int left) {
                        if (v == nv - 1) {
                            G.vertices[at(v)].genus = left;
                        } else {
                            for (int k = 0; k <= left; ++k) {
                                G.vertices[at(v)].genus = k;
                                genus_rec(v + 1, left - k);
                            }
                            return;
                        }
                        for (int u = 0; u < nv; ++u) {
                            const auto& vx = G.vertices[at(u)];
                            if (vx.degree == 0 && valence[at(u)] <= 2 - 2 * vx.genus) return;
                        }
                        auto res = canon::canonicalize(colored(G));
                        found.emplace(std::move(res.encoding), res.automorphisms);
                    };
                    genus_rec(0, type.g - h1);
                };
                label_rec(0);
            };

            edges_rec = [&](std::size_t from, int weight_left) {
                with_edges();
                if (static_cast<int>(chosen.size()) >= bounds.max_edges) return;
                for (std::size_t k = from; k < slots.size(); ++k) {
                    const int w = slots[k][2];
                    if (w > weight_left) continue;
                    chosen.push_back(static_cast<int>(k));
                    edges_rec(k, weight_left - w);
                    chosen.pop_back();
                }
            };
            edges_rec(0, type.beta);
        }
    }

    std::vector<EnumeratedBipartite> out;
    out.reserve(found.size());
    for (const auto& [enc, aut] : found) out.push_back({from_encoding(enc, n), aut});
    return out;
}

int rho_minus(const std::vector<int>& mu, int r)
{
    int max_abs = 0;
    for (int m : mu) max_abs = std::max(max_abs, std::abs(m));
    if (r <= max_abs) throw InvalidInput("rho_minus needs r > max|mu_i|");
    Rational total = 0, sum = 0;
    for (int m : mu) {
        total += Rational(m > 0 ? m : r + m) / r;
        sum += m;
    }
    total -= sum / r;
    if (total.get_den() != 1) throw InvalidInput("rho_minus is not integral");
    return static_cast<int>(total.get_num().get_si());
}

}  // namespace tautdr
