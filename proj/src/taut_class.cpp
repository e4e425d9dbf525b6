#include "tautdr/taut_class.hpp"

#include "tautdr/intersection.hpp"
#include "tautdr/stable_graph_detail.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>
#include <sstream>

namespace tautdr {

namespace {

std::size_t at(int i) { return static_cast<std::size_t>(i); }

int vertex_dimension(const StableGraph& g, int v) { return 3 * g.genus(v) - 3 + g.valence(v); }

}  // namespace

DecoratedStratum DecoratedStratum::plain(StableGraph g)
{
    DecoratedStratum s;
    s.psi.assign(at(g.num_half_edges()), 0);
    s.kappa.assign(at(g.num_vertices()), {});
    s.graph = std::move(g);
    return s;
}

int DecoratedStratum::decoration_degree(int v) const
{
    int d = std::accumulate(kappa[at(v)].begin(), kappa[at(v)].end(), 0);
    for (int h = 0; h < graph.num_half_edges(); ++h)
        if (graph.vertex_of(h) == v) d += psi[at(h)];
    return d;
}

int DecoratedStratum::degree() const
{
    int d = graph.num_edges() + std::accumulate(psi.begin(), psi.end(), 0);
    for (const auto& k : kappa) d += std::accumulate(k.begin(), k.end(), 0);
    return d;
}

bool DecoratedStratum::fits() const
{
    for (int v = 0; v < graph.num_vertices(); ++v)
        if (decoration_degree(v) > vertex_dimension(graph, v)) return false;
    return true;
}

std::string DecoratedStratum::to_string() const
{
    std::ostringstream os;
    os << graph.to_string();
    if (std::any_of(psi.begin(), psi.end(), [](int x) { return x != 0; })) {
        os << " psi[";
        for (std::size_t h = 0; h < psi.size(); ++h) os << (h ? "," : "") << psi[h];
        os << "]";
    }
    if (std::any_of(kappa.begin(), kappa.end(), [](const auto& k) { return !k.empty(); })) {
        os << " kappa[";
        for (std::size_t v = 0; v < kappa.size(); ++v) {
            os << (v ? ";" : "");
            for (std::size_t i = 0; i < kappa[v].size(); ++i) os << (i ? "," : "") << kappa[v][i];
        }
        os << "]";
    }
    return os.str();
}

DecoratedStratum canonical_form(const DecoratedStratum& s)
{
    std::vector<canon::Color> vc(s.kappa.begin(), s.kappa.end());
    for (auto& c : vc) std::sort(c.begin(), c.end());
    std::vector<canon::Color> hc;
    hc.reserve(s.psi.size());
    for (int p : s.psi) hc.push_back({p});
    auto view = colored_view(s.graph, vc, hc);
    auto nf = detail::normal_form_from_encoding(canon::canonicalize(view.colored).encoding);
    DecoratedStratum out;
    out.graph = std::move(nf.graph);
    out.kappa = std::move(nf.vertex_extra);
    out.psi.reserve(nf.half_edge_color.size());
    for (const auto& c : nf.half_edge_color) out.psi.push_back(c.front());
    return out;
}

Rational integrate(const DecoratedStratum& s)
{
    if (s.degree() != s.graph.dimension()) return 0;
    Rational total = 1;
    for (int v = 0; v < s.graph.num_vertices(); ++v) {
        std::vector<int> local;
        for (int h : s.graph.half_edges_at(v)) local.push_back(s.psi[at(h)]);
        total *= kappa_psi_integral(s.graph.genus(v), local, s.kappa[at(v)]);
        if (sgn(total) == 0) break;
    }
    return total;
}

template <class Coeff>
std::string BasicTautClass<Coeff>::to_string() const
{
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [s, c] : terms_) {
        os << (first ? "" : "\n");
        if constexpr (std::is_same_v<Coeff, Rational>)
            os << tautdr::to_string(c);
        else
            os << "(" << c.to_string() << ")";
        os << " * " << s.to_string();
        first = false;
    }
    return os.str();
}

template class BasicTautClass<Rational>;
template class BasicTautClass<RPolynomial>;

TautClass psi_monomial(int g, const std::vector<int>& exponents) { return kappa_psi_monomial(g, exponents, {}); }

TautClass kappa_psi_monomial(int g, const std::vector<int>& psi, std::vector<int> kappa)
{
    const int n = static_cast<int>(psi.size());
    TautClass c(g, n);
    auto s = DecoratedStratum::plain(StableGraph::trivial(g, n));
    s.psi = psi;
    std::sort(kappa.begin(), kappa.end());
    s.kappa[0] = std::move(kappa);
    c.add(s, 1);
    return c;
}

TautClass stratum_class(const DecoratedStratum& s, const Rational& c)
{
    TautClass out(s.graph.total_genus(), s.graph.num_legs());
    out.add(s, c);
    return out;
}

TautClass boundary_divisor(const StableGraph& one_edge_graph)
{
    if (one_edge_graph.num_edges() != 1) throw InvalidInput("boundary divisor needs a one-edge graph");
    one_edge_graph.validate();
    return stratum_class(DecoratedStratum::plain(one_edge_graph),
                         Rational(1, static_cast<unsigned long>(automorphism_count(one_edge_graph))));
}

Rational integrate(const TautClass& x)
{
    Rational total = 0;
    if (x.degree() != x.dimension()) return total;
    for (const auto& [s, c] : x.terms()) total += c * integrate(s);
    return total;
}

RPolynomial integrate(const RTautClass& x)
{
    RPolynomial total;
    if (x.degree() != x.dimension()) return total;
    for (const auto& [s, c] : x.terms()) {
        RPolynomial t = c;
        t *= integrate(s);
        total += t;
    }
    return total;
}

TautClass evaluate(const RTautClass& x, const Rational& r)
{
    TautClass out(x.genus(), x.num_legs());
    for (const auto& [s, c] : x.terms()) out.add_canonical(s, c(r));  // keys are already canonical
    return out;
}

TautClass constant_term(const RTautClass& x) { return evaluate(x, 0); }

// ---------------------------------------------------------------------------
// Pullback along a gluing map.

namespace {

struct Deco {
    std::vector<int> psi;
    std::vector<std::vector<int>> kappa;
    friend auto operator<=>(const Deco&, const Deco&) = default;
};
using DecoPoly = std::map<Deco, Rational>;

// B with each vertex v replaced by the graph local[v]. B's half-edges keep
// their ids; internal edges of the local graphs are appended after them.
struct Substitution {
    StableGraph graph;
    std::vector<int> b_vertex;                      // Gamma vertex -> B vertex
    std::vector<std::vector<int>> local_half;       // per B vertex: local half-edge -> Gamma half-edge
    std::vector<std::vector<int>> local_vertex;     // per B vertex: local vertex -> Gamma vertex
    std::vector<const StableGraph*> local;
};

Substitution substitute(const StableGraph& B, const std::vector<const StableGraph*>& local)
{
    Substitution sub;
    sub.local = local;
    const int hb = B.num_half_edges();
    std::vector<int> genus, vertex_of(at(hb)), involution = B.involution_map();
    int next_half = hb;
    for (int v = 0; v < B.num_vertices(); ++v) {
        const StableGraph& L = *local[at(v)];
        const auto hv = B.half_edges_at(v);
        std::vector<int> lv(at(L.num_vertices()));
        for (int w = 0; w < L.num_vertices(); ++w) {
            lv[at(w)] = static_cast<int>(genus.size());
            genus.push_back(L.genus(w));
            sub.b_vertex.push_back(v);
        }
        std::vector<int> lh(at(L.num_half_edges()), -1);
        for (int i = 0; i < L.num_legs(); ++i) lh[at(L.leg(i))] = hv[at(i)];
        for (int h = 0; h < L.num_half_edges(); ++h)
            if (lh[at(h)] < 0) lh[at(h)] = next_half++;
        vertex_of.resize(at(next_half));
        involution.resize(at(next_half));
        for (int h = 0; h < L.num_half_edges(); ++h) {
            vertex_of[at(lh[at(h)])] = lv[at(L.vertex_of(h))];
            if (!L.is_leg(h)) involution[at(lh[at(h)])] = lh[at(L.involution(h))];
        }
        sub.local_half.push_back(std::move(lh));
        sub.local_vertex.push_back(std::move(lv));
    }
    sub.graph = StableGraph(std::move(genus), std::move(vertex_of), std::move(involution), B.legs());
    return sub;
}

bool fits(const StableGraph& g, const Deco& d)
{
    std::vector<int> deg(at(g.num_vertices()), 0);
    for (int h = 0; h < g.num_half_edges(); ++h) deg[at(g.vertex_of(h))] += d.psi[at(h)];
    for (int v = 0; v < g.num_vertices(); ++v) {
        deg[at(v)] += std::accumulate(d.kappa[at(v)].begin(), d.kappa[at(v)].end(), 0);
        if (deg[at(v)] > vertex_dimension(g, v)) return false;
    }
    return true;
}

void add_term(DecoPoly& p, Deco d, const Rational& c)
{
    if (sgn(c) == 0) return;
    auto [it, inserted] = p.emplace(std::move(d), c);
    if (!inserted) {
        it->second += c;
        if (sgn(it->second) == 0) p.erase(it);
    }
}

// p * sum_i c_i psi_{h_i}^{k}
DecoPoly times_psi(const StableGraph& g, const DecoPoly& p, const std::vector<std::pair<int, Rational>>& lin, int k)
{
    DecoPoly out;
    for (const auto& [d, c] : p)
        for (const auto& [h, x] : lin) {
            Deco e = d;
            e.psi[at(h)] += k;
            if (fits(g, e)) add_term(out, std::move(e), c * x);
        }
    return out;
}

// p * sum_{w in vertices} kappa_a(w)
DecoPoly times_kappa(const StableGraph& g, const DecoPoly& p, const std::vector<int>& vertices, int a)
{
    DecoPoly out;
    for (const auto& [d, c] : p)
        for (int w : vertices) {
            Deco e = d;
            auto& k = e.kappa[at(w)];
            k.insert(std::upper_bound(k.begin(), k.end(), a), a);
            if (fits(g, e)) add_term(out, std::move(e), c);
        }
    return out;
}

template <class Emit>
void for_each_pullback(const StableGraph& B, const DecoratedStratum& A, Emit&& emit)
{
    const int na = A.graph.num_edges();
    const int nbv = B.num_vertices();
    const int nbe = B.num_edges();
    std::vector<std::vector<const StableGraph*>> cand(at(nbv));
    std::vector<StableGraph> trivials;
    trivials.reserve(at(nbv));
    for (int v = 0; v < nbv; ++v) {
        const int gv = B.genus(v), nv = B.valence(v);
        if (na == 0) {
            trivials.push_back(StableGraph::trivial(gv, nv));
            continue;
        }
        for (const auto& L : enumerate_stable_graphs(gv, nv, {3 * gv - 3 + nv}))
            if (L.num_edges() <= na) cand[at(v)].push_back(&L);
    }
    if (na == 0)
        for (int v = 0; v < nbv; ++v) cand[at(v)].push_back(&trivials[at(v)]);

    std::vector<const StableGraph*> choice(at(nbv));
    std::function<void(int, int)> pick = [&](int v, int internal) {
        if (v == nbv) {
            const int extra = na - internal;  // B-edges kept by the A-structure
            if (extra < 0 || extra > nbe) return;
            Substitution sub = substitute(B, choice);
            Integer aut = 1;
            for (const auto* L : choice) aut *= static_cast<unsigned long>(automorphism_count(*L));
            const Rational weight(Integer(1), aut);
            // Gamma.edges() lists B's edges first, in B.edges() order.
            const auto gedges = sub.graph.edges();
            std::vector<int> mask(at(nbe), 0);
            std::fill(mask.end() - extra, mask.end(), 1);
            do {
                std::vector<int> contract;
                for (int e = 0; e < nbe; ++e)
                    if (!mask[at(e)]) contract.push_back(e);
                auto c = contract_edges(sub.graph, contract);
                const auto isos = graph_isomorphisms(c.graph, A.graph);
                if (isos.empty()) continue;
                std::vector<int> cv_to_a(at(c.graph.num_vertices()), 0);
                for (const auto& phi : isos) {
                    for (int x = 0; x < c.graph.num_half_edges(); ++x)
                        cv_to_a[at(c.graph.vertex_of(x))] = A.graph.vertex_of(phi[at(x)]);
                    Deco zero{std::vector<int>(at(sub.graph.num_half_edges()), 0),
                              std::vector<std::vector<int>>(at(sub.graph.num_vertices()))};
                    DecoPoly poly{{zero, weight}};
                    for (int h = 0; h < sub.graph.num_half_edges() && !poly.empty(); ++h) {
                        const int ch = c.half_edge_map[at(h)];
                        if (ch < 0) continue;
                        const int k = A.psi[at(phi[at(ch)])];
                        if (k > 0) poly = times_psi(sub.graph, poly, {{h, Rational(1)}}, k);
                    }
                    for (int u = 0; u < A.graph.num_vertices() && !poly.empty(); ++u) {
                        if (A.kappa[at(u)].empty()) continue;
                        std::vector<int> pre;
                        for (int w = 0; w < sub.graph.num_vertices(); ++w)
                            if (cv_to_a[at(c.vertex_map[at(w)])] == u) pre.push_back(w);
                        for (int a : A.kappa[at(u)]) poly = times_kappa(sub.graph, poly, pre, a);
                    }
                    for (int e = 0; e < nbe && !poly.empty(); ++e) {
                        if (!mask[at(e)]) continue;
                        auto [h, k] = gedges[at(e)];
                        poly = times_psi(sub.graph, poly, {{h, Rational(-1)}, {k, Rational(-1)}}, 1);
                    }
                    if (!poly.empty()) emit(sub, poly);
                }
            } while (std::next_permutation(mask.begin(), mask.end()));
            return;
        }
        for (const auto* L : cand[at(v)]) {
            if (internal + L->num_edges() > na) continue;
            choice[at(v)] = L;
            pick(v + 1, internal + L->num_edges());
        }
    };
    pick(0, 0);
}

DecoratedStratum to_stratum(const StableGraph& g, const Deco& d) { return {g, d.psi, d.kappa}; }

void require_capability(const StableGraph& a, const StableGraph& b, int dimension)
{
    if (!a.is_trivial() && !b.is_trivial() && dimension > kFullProductDimension)
        throw CapabilityError("graph x graph products are limited to 3g-3+n <= " +
                              std::to_string(kFullProductDimension));
}

}  // namespace

TautClass product(const TautClass& x, const TautClass& y)
{
    if (x.genus() != y.genus() || x.num_legs() != y.num_legs()) throw InvalidInput("ambient (g,n) mismatch");
    TautClass out(x.genus(), x.num_legs());
    if (x.is_zero() || y.is_zero() || x.degree() + y.degree() > x.dimension()) return out;
    for (const auto& [sa, ca] : x.terms())
        for (const auto& [sb, cb] : y.terms()) {
            const bool swap = sb.graph.is_trivial() && !sa.graph.is_trivial();
            const DecoratedStratum& A = swap ? sb : sa;
            const DecoratedStratum& Bs = swap ? sa : sb;
            const StableGraph& B = Bs.graph;
            require_capability(A.graph, B, x.dimension());
            const Rational c = ca * cb;
            for_each_pullback(B, A, [&](const Substitution& sub, DecoPoly poly) {
                for (int h = 0; h < B.num_half_edges() && !poly.empty(); ++h)
                    if (Bs.psi[at(h)] > 0) poly = times_psi(sub.graph, poly, {{h, Rational(1)}}, Bs.psi[at(h)]);
                for (int v = 0; v < B.num_vertices() && !poly.empty(); ++v) {
                    if (Bs.kappa[at(v)].empty()) continue;
                    std::vector<int> pre;
                    for (int w = 0; w < sub.graph.num_vertices(); ++w)
                        if (sub.b_vertex[at(w)] == v) pre.push_back(w);
                    for (int a : Bs.kappa[at(v)]) poly = times_kappa(sub.graph, poly, pre, a);
                }
                for (const auto& [d, k] : poly) out.add(to_stratum(sub.graph, d), c * k);
            });
        }
    return out;
}

Rational pair(const TautClass& a, const TautClass& b) { return integrate(product(a, b)); }

TensorClass pullback_to_graph(const StableGraph& B, const TautClass& x)
{
    B.validate();
    if (B.total_genus() != x.genus() || B.num_legs() != x.num_legs())
        throw InvalidInput("graph does not live in the class's ambient space");
    TensorClass out;
    for (const auto& [A, ca] : x.terms()) {
        require_capability(A.graph, B, x.dimension());
        for_each_pullback(B, A, [&](const Substitution& sub, const DecoPoly& poly) {
            for (const auto& [d, k] : poly) {
                std::vector<DecoratedStratum> key;
                for (int v = 0; v < B.num_vertices(); ++v) {
                    const StableGraph& L = *sub.local[at(v)];
                    auto s = DecoratedStratum::plain(L);
                    for (int h = 0; h < L.num_half_edges(); ++h) s.psi[at(h)] = d.psi[at(sub.local_half[at(v)][at(h)])];
                    for (int w = 0; w < L.num_vertices(); ++w) s.kappa[at(w)] = d.kappa[at(sub.local_vertex[at(v)][at(w)])];
                    key.push_back(canonical_form(s));
                }
                auto [it, inserted] = out.emplace(std::move(key), ca * k);
                if (!inserted) {
                    it->second += ca * k;
                    if (sgn(it->second) == 0) out.erase(it);
                }
            }
        });
    }
    return out;
}

TautClass forgetful_pullback(const TautClass& x)
{
    TautClass out(x.genus(), x.num_legs() + 1);
    for (const auto& [s, c] : x.terms()) {
        const StableGraph& G = s.graph;
        const int nh = G.num_half_edges();
        auto legs = G.legs();
        legs.push_back(nh);
        for (int v = 0; v < G.num_vertices(); ++v) {
            auto vertex_of = G.vertex_map();
            auto involution = G.involution_map();
            vertex_of.push_back(v);
            involution.push_back(nh);
            StableGraph H(G.genera(), vertex_of, involution, legs);
            // kappa_a -> kappa_a - psi_new^a
            const auto& kv = s.kappa[at(v)];
            const int m = static_cast<int>(kv.size());
            for (unsigned mask = 0; mask < (1u << m); ++mask) {
                DecoratedStratum t{H, s.psi, s.kappa};
                t.psi.push_back(0);
                t.kappa[at(v)].clear();
                for (int j = 0; j < m; ++j) {
                    if ((mask >> j) & 1u)
                        t.psi[at(nh)] += kv[at(j)];
                    else
                        t.kappa[at(v)].push_back(kv[at(j)]);
                }
                out.add(t, (__builtin_popcount(mask) % 2) ? Rational(-c) : c);
            }
            // psi_h^k -> psi_h^k - [h and the new leg bubble off] psi_node^{k-1}
            for (int h : G.half_edges_at(v)) {
                const int k = s.psi[at(h)];
                if (k == 0) continue;
                const int bubble = G.num_vertices();
                auto genus = G.genera();
                genus.push_back(0);
                auto vo = G.vertex_map();
                auto inv = G.involution_map();
                vo[at(h)] = bubble;
                vo.push_back(bubble);  // new leg
                inv.push_back(nh);
                vo.push_back(v);       // node, main side
                vo.push_back(bubble);  // node, bubble side
                inv.push_back(nh + 2);
                inv.push_back(nh + 1);
                DecoratedStratum t{StableGraph(genus, vo, inv, legs), s.psi, s.kappa};
                t.psi[at(h)] = 0;
                t.psi.push_back(0);
                t.psi.push_back(k - 1);
                t.psi.push_back(0);
                t.kappa.push_back({});
                out.add(t, -c);
            }
        }
    }
    return out;
}

TautClass permute_legs(const TautClass& x, const std::vector<int>& perm)
{
    const int n = x.num_legs();
    if (static_cast<int>(perm.size()) != n) throw InvalidInput("permutation length differs from leg count");
    std::vector<int> check = perm;
    std::sort(check.begin(), check.end());
    for (int i = 0; i < n; ++i)
        if (check[at(i)] != i) throw InvalidInput("not a permutation");
    TautClass out(x.genus(), n);
    for (const auto& [s, c] : x.terms()) {
        std::vector<int> legs(at(n));
        for (int i = 0; i < n; ++i) legs[at(perm[at(i)])] = s.graph.leg(i);
        DecoratedStratum t{StableGraph(s.graph.genera(), s.graph.vertex_map(), s.graph.involution_map(), legs), s.psi,
                           s.kappa};
        out.add(t, c);
    }
    return out;
}

namespace {

void partitions(int total, int max_part, std::vector<int>& cur, std::vector<std::vector<int>>& out)
{
    if (total == 0) {
        out.emplace_back(cur.rbegin(), cur.rend());
        return;
    }
    for (int p = std::min(total, max_part); p >= 1; --p) {
        cur.push_back(p);
        partitions(total - p, p, cur, out);
        cur.pop_back();
    }
}

}  // namespace

std::vector<DecoratedStratum> enumerate_generators(int g, int n, int k)
{
    std::set<DecoratedStratum> found;
    if (k < 0 || k > 3 * g - 3 + n) return {};
    for (const auto& G : enumerate_stable_graphs(g, n)) {
        if (G.num_edges() > k) continue;
        const int budget = k - G.num_edges();
        const int nv = G.num_vertices();
        // local decorations per vertex, grouped by degree
        std::vector<std::vector<std::vector<std::pair<std::vector<int>, std::vector<int>>>>> local(at(nv));
        for (int v = 0; v < nv; ++v) {
            const auto hv = G.half_edges_at(v);
            const int dim = vertex_dimension(G, v);
            local[at(v)].resize(at(std::min(dim, budget) + 1));
            for (int d = 0; d <= std::min(dim, budget); ++d) {
                std::vector<int> exps(hv.size(), 0);
                std::function<void(std::size_t, int)> place = [&](std::size_t i, int left) {
                    if (i == hv.size()) {
                        std::vector<std::vector<int>> parts;
                        std::vector<int> cur;
                        partitions(left, left, cur, parts);
                        for (auto& p : parts) local[at(v)][at(d)].emplace_back(exps, p);
                        return;
                    }
                    for (int e = 0; e <= left; ++e) {
                        exps[i] = e;
                        place(i + 1, left - e);
                    }
                    exps[i] = 0;
                };
                place(0, d);
            }
        }
        auto s = DecoratedStratum::plain(G);
        std::function<void(int, int)> assign = [&](int v, int left) {
            if (v == nv) {
                if (left == 0) found.insert(canonical_form(s));
                return;
            }
            const auto hv = G.half_edges_at(v);
            for (int d = 0; d < static_cast<int>(local[at(v)].size()) && d <= left; ++d)
                for (const auto& [exps, kap] : local[at(v)][at(d)]) {
                    for (std::size_t i = 0; i < hv.size(); ++i) s.psi[at(hv[i])] = exps[i];
                    s.kappa[at(v)] = kap;
                    assign(v + 1, left - d);
                }
            for (int h : hv) s.psi[at(h)] = 0;
            s.kappa[at(v)].clear();
        };
        assign(0, budget);
    }
    return {found.begin(), found.end()};
}

}  // namespace tautdr
