#include "tautdr/stable_graph.hpp"

#include "tautdr/errors.hpp"
#include "tautdr/stable_graph_detail.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <mutex>
#include <numeric>
#include <set>
#include <shared_mutex>
#include <sstream>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace tautdr {

StableGraph::StableGraph(std::vector<int> genus, std::vector<int> vertex_of, std::vector<int> involution,
                         std::vector<int> legs)
    : genus_(std::move(genus)), vertex_of_(std::move(vertex_of)), involution_(std::move(involution)),
      legs_(std::move(legs))
{
}

StableGraph StableGraph::trivial(int g, int n)
{
    std::vector<int> half(static_cast<std::size_t>(n));
    std::iota(half.begin(), half.end(), 0);
    return StableGraph({g}, std::vector<int>(static_cast<std::size_t>(n), 0), half, half);
}

std::vector<std::pair<int, int>> StableGraph::edges() const
{
    std::vector<std::pair<int, int>> out;
    for (int h = 0; h < num_half_edges(); ++h) {
        int k = involution(h);
        if (k > h) out.emplace_back(h, k);
    }
    return out;
}

std::vector<int> StableGraph::half_edges_at(int v) const
{
    std::vector<int> out;
    for (int h = 0; h < num_half_edges(); ++h)
        if (vertex_of(h) == v) out.push_back(h);
    return out;
}

int StableGraph::valence(int v) const
{
    return static_cast<int>(std::count(vertex_of_.begin(), vertex_of_.end(), v));
}

int StableGraph::total_genus() const
{
    return std::accumulate(genus_.begin(), genus_.end(), 0) + h1();
}

bool StableGraph::is_connected() const
{
    if (genus_.empty()) return false;
    std::vector<int> parent(genus_.size());
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
    for (auto [h, k] : edges()) parent[find(vertex_of(h))] = find(vertex_of(k));
    for (std::size_t v = 0; v < genus_.size(); ++v)
        if (find(static_cast<int>(v)) != find(0)) return false;
    return true;
}

void StableGraph::validate() const
{
    const int nh = num_half_edges();
    if (static_cast<int>(involution_.size()) != nh) throw InvalidInput("involution size mismatch");
    for (int h = 0; h < nh; ++h) {
        int k = involution(h);
        if (k < 0 || k >= nh || involution(k) != h) throw InvalidInput("involution is not an involution");
        if (vertex_of(h) < 0 || vertex_of(h) >= num_vertices()) throw InvalidInput("half-edge on missing vertex");
    }
    std::set<int> seen;
    for (int l : legs_) {
        if (l < 0 || l >= nh || !is_leg(l)) throw InvalidInput("leg is not a fixed point of the involution");
        if (!seen.insert(l).second) throw InvalidInput("repeated leg");
    }
    int fixed = 0;
    for (int h = 0; h < nh; ++h) fixed += is_leg(h) ? 1 : 0;
    if (fixed != num_legs()) throw InvalidInput("unlisted fixed point of the involution");
    for (int g : genus_)
        if (g < 0) throw InvalidInput("negative vertex genus");
    if (!is_connected()) throw InvalidInput("graph is not connected");
    for (int v = 0; v < num_vertices(); ++v)
        if (2 * genus(v) - 2 + valence(v) <= 0) throw InvalidInput("unstable vertex " + std::to_string(v));
}

std::string StableGraph::to_string() const
{
    std::ostringstream os;
    os << "g[";
    for (int v = 0; v < num_vertices(); ++v) os << (v ? "," : "") << genus(v);
    os << "] legs[";
    for (int i = 0; i < num_legs(); ++i) os << (i ? "," : "") << vertex_of(leg(i));
    os << "] edges[";
    bool first = true;
    for (auto [h, k] : edges()) {
        os << (first ? "" : ",") << vertex_of(h) << "-" << vertex_of(k);
        first = false;
    }
    os << "]";
    return os.str();
}

ColoredView colored_view(const StableGraph& g, const std::vector<canon::Color>& vertex_colors,
                         const std::vector<canon::Color>& half_edge_colors)
{
    ColoredView view;
    auto& cg = view.colored;
    cg.vertex_color.resize(static_cast<std::size_t>(g.num_vertices()));
    for (int v = 0; v < g.num_vertices(); ++v) {
        canon::Color c{g.genus(v)};
        if (!vertex_colors.empty()) {
            const auto& extra = vertex_colors[static_cast<std::size_t>(v)];
            c.insert(c.end(), extra.begin(), extra.end());
        }
        cg.vertex_color[static_cast<std::size_t>(v)] = std::move(c);
    }
    auto half_color = [&](int h) {
        return half_edge_colors.empty() ? canon::Color{} : half_edge_colors[static_cast<std::size_t>(h)];
    };
    for (int l : g.legs()) {
        cg.legs.emplace_back(g.vertex_of(l), half_color(l));
        view.half_edge_of.push_back(l);
    }
    for (auto [h, k] : g.edges()) {
        cg.edges.push_back({g.vertex_of(h), half_color(h), g.vertex_of(k), half_color(k)});
        view.half_edge_of.push_back(h);
        view.half_edge_of.push_back(k);
    }
    return view;
}

namespace detail {

NormalForm normal_form_from_encoding(const canon::Encoding& enc)
{
    NormalForm nf;
    const int nv = static_cast<int>(enc.vertex_color.size());
    const int nl = static_cast<int>(enc.legs.size());
    const int ne = static_cast<int>(enc.edges.size());
    std::vector<int> genus(static_cast<std::size_t>(nv));
    for (int v = 0; v < nv; ++v) {
        const auto& c = enc.vertex_color[static_cast<std::size_t>(v)];
        genus[static_cast<std::size_t>(v)] = c.front();
        nf.vertex_extra.emplace_back(c.begin() + 1, c.end());
    }
    const int nh = nl + 2 * ne;
    std::vector<int> vertex_of(static_cast<std::size_t>(nh)), involution(static_cast<std::size_t>(nh)),
        legs(static_cast<std::size_t>(nl));
    nf.half_edge_color.resize(static_cast<std::size_t>(nh));
    for (int i = 0; i < nl; ++i) {
        vertex_of[static_cast<std::size_t>(i)] = enc.legs[static_cast<std::size_t>(i)].first;
        involution[static_cast<std::size_t>(i)] = i;
        legs[static_cast<std::size_t>(i)] = i;
        nf.half_edge_color[static_cast<std::size_t>(i)] = enc.legs[static_cast<std::size_t>(i)].second;
    }
    for (int e = 0; e < ne; ++e) {
        const auto& [u, cu, v, cv] = enc.edges[static_cast<std::size_t>(e)];
        const int h = nl + 2 * e;
        vertex_of[static_cast<std::size_t>(h)] = u;
        vertex_of[static_cast<std::size_t>(h + 1)] = v;
        involution[static_cast<std::size_t>(h)] = h + 1;
        involution[static_cast<std::size_t>(h + 1)] = h;
        nf.half_edge_color[static_cast<std::size_t>(h)] = cu;
        nf.half_edge_color[static_cast<std::size_t>(h + 1)] = cv;
    }
    nf.graph = StableGraph(std::move(genus), std::move(vertex_of), std::move(involution), std::move(legs));
    return nf;
}

}  // namespace detail

StableGraph canonical_form(const StableGraph& g)
{
    auto view = colored_view(g);
    return detail::normal_form_from_encoding(canon::canonicalize(view.colored).encoding).graph;
}

std::uint64_t automorphism_count(const StableGraph& g)
{
    return canon::canonicalize(colored_view(g).colored).automorphisms;
}

std::vector<std::vector<int>> graph_isomorphisms(const StableGraph& a, const StableGraph& b)
{
    auto va = colored_view(a);
    auto vb = colored_view(b);
    auto maps = canon::isomorphisms(va.colored, vb.colored);
    std::vector<std::vector<int>> out;
    out.reserve(maps.size());
    for (const auto& m : maps) {
        std::vector<int> hm(static_cast<std::size_t>(a.num_half_edges()), -1);
        for (std::size_t i = 0; i < m.size(); ++i)
            hm[static_cast<std::size_t>(va.half_edge_of[i])] = vb.half_edge_of[static_cast<std::size_t>(m[i])];
        out.push_back(std::move(hm));
    }
    return out;
}

namespace {

bool vertex_stable(int g, int valence) { return 2 * g - 2 + valence > 0; }

// Graphs with one more edge, obtained by degenerating one vertex.
std::vector<StableGraph> degenerations(const StableGraph& g)
{
    std::vector<StableGraph> out;
    const int nh = g.num_half_edges();
    for (int v = 0; v < g.num_vertices(); ++v) {
        auto genus = g.genera();
        auto vertex_of = g.vertex_map();
        auto involution = g.involution_map();
        if (g.genus(v) >= 1) {
            auto gg = genus;
            gg[static_cast<std::size_t>(v)] -= 1;
            auto vo = vertex_of;
            auto inv = involution;
            vo.push_back(v);
            vo.push_back(v);
            inv.push_back(nh + 1);
            inv.push_back(nh);
            out.push_back(canonical_form(StableGraph(gg, vo, inv, g.legs())));
        }
        const auto at_v = g.half_edges_at(v);
        const int k = static_cast<int>(at_v.size());
        const int new_vertex = g.num_vertices();
        for (int g1 = 0; g1 <= g.genus(v); ++g1) {
            const int g2 = g.genus(v) - g1;
            for (unsigned mask = 0; mask < (1u << k); ++mask) {
                const int n1 = __builtin_popcount(mask);
                if (!vertex_stable(g1, n1 + 1) || !vertex_stable(g2, k - n1 + 1)) continue;
                auto gg = genus;
                gg[static_cast<std::size_t>(v)] = g1;
                gg.push_back(g2);
                auto vo = vertex_of;
                for (int i = 0; i < k; ++i)
                    if (!((mask >> i) & 1u)) vo[static_cast<std::size_t>(at_v[static_cast<std::size_t>(i)])] = new_vertex;
                auto inv = involution;
                vo.push_back(v);
                vo.push_back(new_vertex);
                inv.push_back(nh + 1);
                inv.push_back(nh);
                out.push_back(canonical_form(StableGraph(gg, vo, inv, g.legs())));
            }
        }
    }
    return out;
}

struct GraphOrder {
    bool operator()(const StableGraph& a, const StableGraph& b) const
    {
        if (a.num_edges() != b.num_edges()) return a.num_edges() < b.num_edges();
        return a < b;
    }
};

}  // namespace

const std::vector<StableGraph>& enumerate_stable_graphs(int g, int n, EnumerationOptions options)
{
    if (g < 0 || n < 0 || 2 * g - 2 + n <= 0)
        throw InvalidInput("unstable (g,n) = (" + std::to_string(g) + "," + std::to_string(n) + ")");
    if (3 * g - 3 + n > options.max_dimension)
        throw InvalidInput("3g-3+n = " + std::to_string(3 * g - 3 + n) + " exceeds the enumeration bound " +
                           std::to_string(options.max_dimension));

    static std::shared_mutex mutex;
    static std::map<std::pair<int, int>, std::vector<StableGraph>> cache;
    {
        std::shared_lock lock(mutex);
        if (auto it = cache.find({g, n}); it != cache.end()) return it->second;
    }

    std::set<StableGraph, GraphOrder> all;
    std::vector<StableGraph> level{canonical_form(StableGraph::trivial(g, n))};
    all.insert(level.front());
    while (!level.empty()) {
        std::vector<std::vector<StableGraph>> produced(level.size());
#pragma omp parallel for schedule(dynamic)
        for (std::size_t i = 0; i < level.size(); ++i) produced[i] = degenerations(level[i]);
        std::set<StableGraph> next;
        for (auto& batch : produced)
            for (auto& x : batch) next.insert(std::move(x));
        level.assign(next.begin(), next.end());
        all.insert(next.begin(), next.end());
    }

    std::unique_lock lock(mutex);
    auto [it, inserted] = cache.emplace(std::make_pair(g, n), std::vector<StableGraph>(all.begin(), all.end()));
    return it->second;
}

Contraction contract_edges(const StableGraph& g, const std::vector<int>& edge_indices)
{
    const auto edges = g.edges();
    std::vector<int> parent(static_cast<std::size_t>(g.num_vertices()));
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
    std::vector<bool> contracted_half(static_cast<std::size_t>(g.num_half_edges()), false);
    for (int e : edge_indices) {
        auto [h, k] = edges[static_cast<std::size_t>(e)];
        contracted_half[static_cast<std::size_t>(h)] = contracted_half[static_cast<std::size_t>(k)] = true;
        parent[find(g.vertex_of(h))] = find(g.vertex_of(k));
    }
    Contraction c;
    c.vertex_map.assign(static_cast<std::size_t>(g.num_vertices()), -1);
    std::map<int, int> root_index;
    for (int v = 0; v < g.num_vertices(); ++v) {
        int root = find(v);
        auto [it, inserted] = root_index.emplace(root, static_cast<int>(root_index.size()));
        c.vertex_map[static_cast<std::size_t>(v)] = it->second;
    }
    const int nv = static_cast<int>(root_index.size());
    std::vector<int> genus(static_cast<std::size_t>(nv), 0), verts(static_cast<std::size_t>(nv), 0),
        inner(static_cast<std::size_t>(nv), 0);
    for (int v = 0; v < g.num_vertices(); ++v) {
        genus[static_cast<std::size_t>(c.vertex_map[static_cast<std::size_t>(v)])] += g.genus(v);
        verts[static_cast<std::size_t>(c.vertex_map[static_cast<std::size_t>(v)])] += 1;
    }
    for (int e : edge_indices)
        inner[static_cast<std::size_t>(c.vertex_map[static_cast<std::size_t>(g.vertex_of(edges[static_cast<std::size_t>(e)].first))])] += 1;
    for (int v = 0; v < nv; ++v)
        genus[static_cast<std::size_t>(v)] += inner[static_cast<std::size_t>(v)] - verts[static_cast<std::size_t>(v)] + 1;

    c.half_edge_map.assign(static_cast<std::size_t>(g.num_half_edges()), -1);
    int next = 0;
    for (int h = 0; h < g.num_half_edges(); ++h)
        if (!contracted_half[static_cast<std::size_t>(h)]) c.half_edge_map[static_cast<std::size_t>(h)] = next++;
    std::vector<int> vertex_of(static_cast<std::size_t>(next)), involution(static_cast<std::size_t>(next));
    for (int h = 0; h < g.num_half_edges(); ++h) {
        int nh = c.half_edge_map[static_cast<std::size_t>(h)];
        if (nh < 0) continue;
        vertex_of[static_cast<std::size_t>(nh)] = c.vertex_map[static_cast<std::size_t>(g.vertex_of(h))];
        involution[static_cast<std::size_t>(nh)] = c.half_edge_map[static_cast<std::size_t>(g.involution(h))];
    }
    std::vector<int> legs;
    for (int l : g.legs()) legs.push_back(c.half_edge_map[static_cast<std::size_t>(l)]);
    c.graph = StableGraph(std::move(genus), std::move(vertex_of), std::move(involution), std::move(legs));
    return c;
}

bool is_valid_weighting(const StableGraph& g, const std::vector<int>& a, const WeightingModR& w)
{
    const int r = w.r;
    if (static_cast<int>(w.w.size()) != g.num_half_edges()) return false;
    for (int x : w.w)
        if (x < 0 || x >= r) return false;
    for (int i = 0; i < g.num_legs(); ++i)
        if (w.w[static_cast<std::size_t>(g.leg(i))] != mod_r(a[static_cast<std::size_t>(i)], r)) return false;
    for (auto [h, k] : g.edges())
        if (mod_r(w.w[static_cast<std::size_t>(h)] + w.w[static_cast<std::size_t>(k)], r) != 0) return false;
    std::vector<long long> sums(static_cast<std::size_t>(g.num_vertices()), 0);
    for (int h = 0; h < g.num_half_edges(); ++h) sums[static_cast<std::size_t>(g.vertex_of(h))] += w.w[static_cast<std::size_t>(h)];
    for (auto s : sums)
        if (mod_r(s, r) != 0) return false;
    return true;
}

std::vector<WeightingModR> enumerate_weightings(const StableGraph& g, const std::vector<int>& a, int r)
{
    if (r < 2) throw InvalidInput("weighting modulus must be at least 2");
    if (static_cast<int>(a.size()) != g.num_legs()) throw InvalidInput("a-vector length differs from leg count");
    auto plan = detail::SpanningPlan::build(g);
    std::vector<WeightingModR> out;
    const int nfree = static_cast<int>(plan.free_edges.size());
    std::vector<int> x(static_cast<std::size_t>(nfree), 0);
    while (true) {
        WeightingModR w{r, std::vector<int>(static_cast<std::size_t>(g.num_half_edges()), 0)};
        if (plan.solve(g, a, r, x, w.w)) out.push_back(std::move(w));
        int i = 0;
        while (i < nfree && ++x[static_cast<std::size_t>(i)] == r) x[static_cast<std::size_t>(i++)] = 0;
        if (i == nfree) break;
    }
    return out;
}

namespace detail {

SpanningPlan SpanningPlan::build(const StableGraph& g)
{
    SpanningPlan plan;
    const int nv = g.num_vertices();
    plan.edges = g.edges();
    const auto& edges = plan.edges;
    plan.parent_half.assign(static_cast<std::size_t>(nv), -1);
    std::vector<bool> visited(static_cast<std::size_t>(nv), false);
    std::vector<bool> tree_edge(edges.size(), false);
    visited[0] = true;
    plan.order.push_back(0);
    for (std::size_t head = 0; head < plan.order.size(); ++head) {
        int v = plan.order[head];
        for (std::size_t e = 0; e < edges.size(); ++e) {
            auto [h, k] = edges[e];
            int other = -1, own_half = -1;
            if (g.vertex_of(h) == v && !visited[static_cast<std::size_t>(g.vertex_of(k))]) {
                other = g.vertex_of(k);
                own_half = k;
            } else if (g.vertex_of(k) == v && !visited[static_cast<std::size_t>(g.vertex_of(h))]) {
                other = g.vertex_of(h);
                own_half = h;
            }
            if (other < 0) continue;
            visited[static_cast<std::size_t>(other)] = true;
            tree_edge[e] = true;
            plan.parent_half[static_cast<std::size_t>(other)] = own_half;
            plan.order.push_back(other);
        }
    }
    for (std::size_t e = 0; e < edges.size(); ++e)
        if (!tree_edge[e]) plan.free_edges.push_back(static_cast<int>(e));
    return plan;
}

bool SpanningPlan::solve(const StableGraph& g, const std::vector<int>& a, int r, const std::vector<int>& free_values,
                         std::vector<int>& w) const
{
    std::vector<bool> assigned(static_cast<std::size_t>(g.num_half_edges()), false);
    for (int i = 0; i < g.num_legs(); ++i) {
        w[static_cast<std::size_t>(g.leg(i))] = mod_r(a[static_cast<std::size_t>(i)], r);
        assigned[static_cast<std::size_t>(g.leg(i))] = true;
    }
    for (std::size_t i = 0; i < free_edges.size(); ++i) {
        auto [h, k] = edges[static_cast<std::size_t>(free_edges[i])];
        w[static_cast<std::size_t>(h)] = free_values[i];
        w[static_cast<std::size_t>(k)] = mod_r(-free_values[i], r);
        assigned[static_cast<std::size_t>(h)] = assigned[static_cast<std::size_t>(k)] = true;
    }
    std::vector<long long> sums(static_cast<std::size_t>(g.num_vertices()), 0);
    for (int h = 0; h < g.num_half_edges(); ++h)
        if (assigned[static_cast<std::size_t>(h)]) sums[static_cast<std::size_t>(g.vertex_of(h))] += w[static_cast<std::size_t>(h)];
    for (std::size_t i = order.size(); i-- > 1;) {
        int v = order[i];
        int own = parent_half[static_cast<std::size_t>(v)];
        int up = g.involution(own);
        int value = mod_r(-sums[static_cast<std::size_t>(v)], r);
        w[static_cast<std::size_t>(own)] = value;
        w[static_cast<std::size_t>(up)] = mod_r(-value, r);
        sums[static_cast<std::size_t>(g.vertex_of(up))] += w[static_cast<std::size_t>(up)];
    }
    return mod_r(sums[0], r) == 0;
}

}  // namespace detail

}  // namespace tautdr
