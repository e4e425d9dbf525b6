#include "tautdr/canonical.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>

namespace tautdr::canon {

namespace {

using Flat = std::vector<int>;

void append_color(Flat& out, const Color& c)
{
    out.push_back(static_cast<int>(c.size()));
    out.insert(out.end(), c.begin(), c.end());
}

// Color refinement; returns a class rank per vertex. Ranks are ordered by
// isomorphism-invariant signatures, so they can seed a canonical search.
std::vector<int> refine(const ColoredGraph& g)
{
    const int n = static_cast<int>(g.vertex_color.size());
    std::vector<Flat> sig(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v) append_color(sig[v], g.vertex_color[v]);
    for (std::size_t i = 0; i < g.legs.size(); ++i) {
        auto& s = sig[static_cast<std::size_t>(g.legs[i].first)];
        s.push_back(-1);
        s.push_back(static_cast<int>(i));
        append_color(s, g.legs[i].second);
    }

    auto rank = [&](const std::vector<Flat>& s) {
        std::map<Flat, int> ids;
        for (const auto& x : s) ids.emplace(x, 0);
        int next = 0;
        for (auto& [k, id] : ids) id = next++;
        std::vector<int> out(s.size());
        for (std::size_t v = 0; v < s.size(); ++v) out[v] = ids.at(s[v]);
        return std::make_pair(out, next);
    };

    auto [cls, count] = rank(sig);
    while (true) {
        std::vector<std::vector<Flat>> nbr(static_cast<std::size_t>(n));
        for (const auto& e : g.edges) {
            Flat a;
            append_color(a, e.cu);
            a.push_back(cls[static_cast<std::size_t>(e.v)]);
            append_color(a, e.cv);
            nbr[static_cast<std::size_t>(e.u)].push_back(a);
            Flat b;
            append_color(b, e.cv);
            b.push_back(cls[static_cast<std::size_t>(e.u)]);
            append_color(b, e.cu);
            nbr[static_cast<std::size_t>(e.v)].push_back(b);
        }
        std::vector<Flat> next_sig(static_cast<std::size_t>(n));
        for (int v = 0; v < n; ++v) {
            auto& list = nbr[static_cast<std::size_t>(v)];
            std::sort(list.begin(), list.end());
            Flat s{cls[static_cast<std::size_t>(v)]};
            for (const auto& x : list) {
                s.push_back(static_cast<int>(x.size()));
                s.insert(s.end(), x.begin(), x.end());
            }
            next_sig[static_cast<std::size_t>(v)] = std::move(s);
        }
        auto [next_cls, next_count] = rank(next_sig);
        if (next_count == count) return cls;
        cls = std::move(next_cls);
        count = next_count;
    }
}

std::uint64_t factorial_u64(std::size_t k)
{
    std::uint64_t f = 1;
    for (std::size_t i = 2; i <= k; ++i) f *= i;
    return f;
}

EdgeKey edge_key(const Edge& e, const std::vector<int>& relabel, bool& swapped)
{
    auto a = std::make_pair(relabel[static_cast<std::size_t>(e.u)], e.cu);
    auto b = std::make_pair(relabel[static_cast<std::size_t>(e.v)], e.cv);
    swapped = b < a;
    if (swapped) std::swap(a, b);
    return {a.first, a.second, b.first, b.second};
}

}  // namespace

Encoding encode(const ColoredGraph& g, const std::vector<int>& relabel)
{
    Encoding enc;
    enc.vertex_color.resize(g.vertex_color.size());
    for (std::size_t v = 0; v < g.vertex_color.size(); ++v)
        enc.vertex_color[static_cast<std::size_t>(relabel[v])] = g.vertex_color[v];
    enc.legs.reserve(g.legs.size());
    for (const auto& [v, c] : g.legs) enc.legs.emplace_back(relabel[static_cast<std::size_t>(v)], c);
    enc.edges.reserve(g.edges.size());
    bool swapped = false;
    for (const auto& e : g.edges) enc.edges.push_back(edge_key(e, relabel, swapped));
    std::sort(enc.edges.begin(), enc.edges.end());
    return enc;
}

Result canonicalize(const ColoredGraph& g)
{
    const auto cls = refine(g);
    const int n = static_cast<int>(cls.size());
    std::map<int, std::vector<int>> cells;
    for (int v = 0; v < n; ++v) cells[cls[static_cast<std::size_t>(v)]].push_back(v);
    std::vector<std::vector<int>> cell_list;
    for (auto& [k, c] : cells) cell_list.push_back(c);

    Result result;
    bool have_best = false;
    std::vector<int> relabel(static_cast<std::size_t>(n), -1);

    std::function<void(std::size_t, int)> search = [&](std::size_t cell_index, int offset) {
        if (cell_index == cell_list.size()) {
            Encoding enc = encode(g, relabel);
            if (!have_best || enc < result.encoding) {
                result.encoding = std::move(enc);
                result.optimal.assign(1, relabel);
                have_best = true;
            } else if (enc == result.encoding) {
                result.optimal.push_back(relabel);
            }
            return;
        }
        auto cell = cell_list[cell_index];
        std::sort(cell.begin(), cell.end());
        do {
            for (std::size_t i = 0; i < cell.size(); ++i)
                relabel[static_cast<std::size_t>(cell[i])] = offset + static_cast<int>(i);
            search(cell_index + 1, offset + static_cast<int>(cell.size()));
        } while (std::next_permutation(cell.begin(), cell.end()));
    };
    search(0, 0);

    result.vertex_automorphisms = result.optimal.size();
    std::uint64_t edge_factor = 1;
    const auto& edges = result.encoding.edges;
    for (std::size_t i = 0; i < edges.size();) {
        std::size_t j = i;
        while (j < edges.size() && edges[j] == edges[i]) ++j;
        edge_factor *= factorial_u64(j - i);
        const auto& [u, cu, v, cv] = edges[i];
        if (u == v && cu == cv) edge_factor <<= (j - i);
        i = j;
    }
    result.automorphisms = result.vertex_automorphisms * edge_factor;
    return result;
}

std::vector<std::vector<int>> isomorphisms(const ColoredGraph& a, const ColoredGraph& b)
{
    std::vector<std::vector<int>> out;
    if (a.vertex_color.size() != b.vertex_color.size() || a.legs.size() != b.legs.size() ||
        a.edges.size() != b.edges.size())
        return out;
    const Result ra = canonicalize(a);
    const Result rb = canonicalize(b);
    if (!(ra.encoding == rb.encoding)) return out;

    const int nlegs = static_cast<int>(a.legs.size());
    const auto& pib = rb.optimal.front();

    // b's edges grouped by key; (edge index, swapped).
    std::map<EdgeKey, std::vector<std::pair<int, bool>>> b_groups;
    for (std::size_t e = 0; e < b.edges.size(); ++e) {
        bool sw = false;
        auto key = edge_key(b.edges[e], pib, sw);
        b_groups[key].emplace_back(static_cast<int>(e), sw);
    }

    const int total_half = nlegs + 2 * static_cast<int>(a.edges.size());
    for (const auto& pia : ra.optimal) {
        std::map<EdgeKey, std::vector<std::pair<int, bool>>> a_groups;
        for (std::size_t e = 0; e < a.edges.size(); ++e) {
            bool sw = false;
            auto key = edge_key(a.edges[e], pia, sw);
            a_groups[key].emplace_back(static_cast<int>(e), sw);
        }
        std::vector<const std::vector<std::pair<int, bool>>*> ga, gb;
        std::vector<bool> symmetric;
        for (const auto& [key, list] : a_groups) {
            ga.push_back(&list);
            gb.push_back(&b_groups.at(key));
            const auto& [u, cu, v, cv] = key;
            symmetric.push_back(u == v && cu == cv);
        }

        std::vector<int> map(static_cast<std::size_t>(total_half), -1);
        for (int i = 0; i < nlegs; ++i) map[static_cast<std::size_t>(i)] = i;

        std::function<void(std::size_t)> assign_group = [&](std::size_t gi) {
            if (gi == ga.size()) {
                out.push_back(map);
                return;
            }
            const auto& la = *ga[gi];
            const auto& lb = *gb[gi];
            std::vector<int> perm(lb.size());
            std::iota(perm.begin(), perm.end(), 0);
            const std::size_t flips = symmetric[gi] ? (std::size_t{1} << la.size()) : 1;
            do {
                for (std::size_t mask = 0; mask < flips; ++mask) {
                    for (std::size_t i = 0; i < la.size(); ++i) {
                        const auto [ea, sa] = la[i];
                        const auto [eb, sb] = lb[static_cast<std::size_t>(perm[i])];
                        int a_first = nlegs + 2 * ea + (sa ? 1 : 0);
                        int a_second = nlegs + 2 * ea + (sa ? 0 : 1);
                        int b_first = nlegs + 2 * eb + (sb ? 1 : 0);
                        int b_second = nlegs + 2 * eb + (sb ? 0 : 1);
                        if ((mask >> i) & 1) std::swap(b_first, b_second);
                        map[static_cast<std::size_t>(a_first)] = b_first;
                        map[static_cast<std::size_t>(a_second)] = b_second;
                    }
                    assign_group(gi + 1);
                }
            } while (std::next_permutation(perm.begin(), perm.end()));
        };
        assign_group(0);
    }
    return out;
}

}  // namespace tautdr::canon
