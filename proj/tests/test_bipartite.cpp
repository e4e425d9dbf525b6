#include "doctest.h"

#include "oracles/brute_graphs.hpp"

#include "tautdr/bipartite.hpp"
#include "tautdr/errors.hpp"
#include "tautdr/localization.hpp"

#include <map>
#include <set>

using namespace tautdr;
using K = HalfEdgeKind;

namespace {

// S0 vertex: 0-root 3, infinity marking -1, one node of weight 2 to a degree-2
// infinity vertex.
BipartiteGraph two_vertex_graph(int node_weight_zero_side = -2)
{
    BipartiteGraph G;
    G.vertices = {{Side::Zero, 0, 0}, {Side::Infinity, 0, 2}};
    G.half_edges = {{0, K::ZeroRoot, 3}, {0, K::InfinityMarking, -1}, {0, K::InfinityNode, node_weight_zero_side},
                    {1, K::Node, 2}};
    G.num_roots = 2;
    return G;
}

Symbol psi() { return {Symbol::Kind::Psi, 0}; }
Symbol psi_inf(int v) { return {Symbol::Kind::PsiInf, v}; }
Symbol psibar(int h) { return {Symbol::Kind::PsiBar, h}; }
Symbol ev(int h) { return {Symbol::Kind::EvD, h}; }

SymbolPolynomial sym(Symbol s, const Rational& c = 1) { return SymbolPolynomial::symbol(s, c); }

using Series = std::map<int, SymbolPolynomial>;

// Coefficient of t^0 in a product of two series given as maps, by direct
// convolution over the powers present.
SymbolPolynomial t0_of_product(const Series& a, const Series& b)
{
    SymbolPolynomial out;
    for (const auto& [p, x] : a) {
        auto it = b.find(-p);
        if (it != b.end()) out += x * it->second;
    }
    return out;
}

void check_against_brute(const BipartiteType& type, const BipartiteBounds& bounds)
{
    CAPTURE(type.g);
    CAPTURE(type.n);
    CAPTURE(type.beta);
    const auto lib = enumerate_bipartite(type, bounds);
    std::set<oracle::BipartiteKey> mine;
    for (const auto& [G, aut] : lib) {
        CHECK_NOTHROW(G.validate());
        CHECK(G.type() == type);
        CHECK(genus_of(G) == type.g);
        const auto p = oracle::plain(G);
        CHECK(aut == oracle::brute_automorphisms(p));
        CHECK(aut == automorphism_count(G));
        CHECK(canonical_form(G) == G);
        mine.insert(oracle::brute_canonical(p));
    }
    CHECK(mine.size() == lib.size());
    CHECK(mine == oracle::brute_bipartite(type, bounds));
}

}  // namespace

TEST_CASE("type validation")
{
    CHECK_THROWS_AS((BipartiteType{0, 0, 2, {1}}.validate()), InvalidInput);
    CHECK_THROWS_AS((BipartiteType{0, 0, 1, {1, 0}}.validate()), InvalidInput);
    CHECK_THROWS_AS((BipartiteType{-1, 0, 1, {1}}.validate()), InvalidInput);
    CHECK_THROWS_AS(enumerate_bipartite({0, 0, 3, {1, 1}}), InvalidInput);
    CHECK_NOTHROW((BipartiteType{0, 1, 0, {3, -3}}.validate()));
}

TEST_CASE("graph validation")
{
    CHECK_NOTHROW(two_vertex_graph().validate());
    // matched weights -3 and 2 do not add up to 0
    CHECK_THROWS_AS(two_vertex_graph(-3).validate(), InvalidInput);

    // a genus-0 rubber vertex with only two half-edges is unstable
    BipartiteGraph U;
    U.vertices = {{Side::Zero, 0, 0}, {Side::Infinity, 0, 1}};
    U.half_edges = {{0, K::ZeroRoot, 1}, {0, K::InfinityNode, -1}, {1, K::Node, 1}};
    U.num_roots = 1;
    CHECK_THROWS_AS(U.validate(), InvalidInput);
    U.vertices[0].genus = 1;
    CHECK_NOTHROW(U.validate());
    CHECK(genus_of(U) == 1);

    // negative contact on the relative side
    BipartiteGraph N;
    N.vertices = {{Side::Infinity, 0, 0}};
    N.half_edges = {{0, K::Marking, 1}, {0, K::Marking, -1}, {0, K::Marking, 1}};
    N.num_roots = 3;
    CHECK_THROWS_AS(N.validate(), InvalidInput);
}

TEST_CASE("genus of bipartite graphs")
{
    BipartiteGraph P;
    P.vertices = {{Side::Zero, 0, 0}, {Side::Infinity, 0, 2}};
    P.half_edges = {{0, K::ZeroRoot, 2}, {0, K::InfinityNode, -1}, {1, K::Node, 1}, {0, K::InfinityNode, -1}, {1, K::Node, 1}};
    P.num_roots = 1;
    CHECK_NOTHROW(P.validate());
    CHECK(genus_of(P) == 1);
    CHECK(automorphism_count(P) == 2);
    CHECK(genus_of(two_vertex_graph()) == 0);
}

TEST_CASE("rho_minus")
{
    CHECK(rho_minus({3, -1}, 10) == 1);
    CHECK(rho_minus({2, 2}, 3) == 0);
    CHECK(rho_minus({2, 2}, 50) == 0);
    CHECK(rho_minus({-1, -2, 3}, 100) == 2);
    CHECK_THROWS_AS(rho_minus({5, -5}, 5), InvalidInput);
}

TEST_CASE("enumeration examples")
{
    CHECK(enumerate_bipartite({0, 0, 1, {1}}).size() == 1);
    CHECK(enumerate_bipartite({0, 1, 0, {3, -3}}).size() == 1);
    CHECK(enumerate_bipartite({0, 0, 2, {3, -1}}).size() == 2);
    for (const auto& [G, aut] : enumerate_bipartite({1, 1, 2, {2}})) CHECK(genus_of(G) == 1);
}

TEST_CASE("enumeration equals brute force")
{
    check_against_brute({0, 0, 1, {1}}, {2, 1, 2});
    for (const auto& type : std::vector<BipartiteType>{{0, 0, 1, {1}},
                                                       {0, 1, 0, {3, -3}},
                                                       {0, 0, 2, {3, -1}},
                                                       {0, 0, 2, {-1, 3}},
                                                       {1, 0, 2, {1, 1}},
                                                       {1, 1, 2, {2}},
                                                       {0, 2, 1, {2, -1}},
                                                       {1, 0, 0, {2, -2}},
                                                       {0, 0, 3, {1, 2}},
                                                       {2, 0, 1, {1}}})
        check_against_brute(type, {});
    check_against_brute({0, 0, 2, {1, 1}}, {1, 2, 2});
}

TEST_CASE("infinity-side series")
{
    const auto c0 = c_gamma_infty(0);
    CHECK(c0.coefficients().size() == 1);
    CHECK(c0.coefficient(0) == SymbolPolynomial(1));

    const auto c2 = c_gamma_infty(2);
    CHECK(c2.coefficient(0) == SymbolPolynomial(1));
    CHECK(c2.coefficient(-1) == sym(psi(), -1));
    CHECK(c2.coefficient(-2) == power(sym(psi()), 2));
    CHECK_THROWS_AS(c2.coefficient(-3), TruncationError);

    // times (t + Psi)/t gives back 1
    for (int N : {1, 4, 7}) {
        LaurentClassSeries f(N);
        f.add(0, SymbolPolynomial(1));
        f.add(-1, sym(psi()));
        const auto prod = c_gamma_infty(N) * f;
        for (int p = 0; p >= -N; --p) CHECK(prod.coefficient(p) == SymbolPolynomial(p == 0 ? 1 : 0));
    }
}

TEST_CASE("c polynomial")
{
    const auto G = two_vertex_graph();
    const auto v = graph_type0(G, 0);
    CHECK(v.rho_infinity() == 2);
    CHECK(v.node_roots.size() == 1);
    CHECK(v.zero_roots.size() == 1);
    CHECK(c_polynomial(v, 0) == SymbolPolynomial(1));
    // node root: half-edge 2, d = 2
    const auto x = sym(psibar(2), 2) - sym(ev(2));
    CHECK(c_polynomial(v, 1) == sym(psi_inf(0)) - x);
    Type0Options all{RootSet::NodeRoots, RootSet::AllInfinityRoots};
    const auto x_mark = sym(psibar(1), 1) - sym(ev(1));
    CHECK(c_polynomial(v, 1, all) == sym(psi_inf(0)) - x - x_mark);
    CHECK(c_polynomial(v, 2) == power(sym(psi_inf(0)), 2) - sym(psi_inf(0)) * x);
}

TEST_CASE("type-0 series closed form for node-root sets")
{
    // numerator and denominator share the node roots, so
    //   C = prod d_e * t^{rho-1-|D|} * sum_j Psi_inf^j t^{-j}
    for (const auto& type : std::vector<BipartiteType>{{0, 0, 2, {3, -1}}, {0, 1, 0, {3, -3}}, {1, 0, 2, {1, 1}}, {0, 0, 3, {1, 2}}})
        for (const auto& [G, aut] : enumerate_bipartite(type))
            for (int vtx = 0; vtx < G.num_vertices(); ++vtx) {
                if (G.vertices[static_cast<std::size_t>(vtx)].side != Side::Zero) continue;
                const auto v = graph_type0(G, vtx);
                Rational prod = 1;
                for (const auto& r : v.node_roots) prod *= -r.weight;
                const int top = v.rho_infinity() - 1 - static_cast<int>(v.node_roots.size());
                const int N = 5;
                const auto s = c_gamma0(v, N);
                for (int p = top; p >= -N; --p)
                    CHECK(s.coefficient(p) == SymbolPolynomial(prod) * power(sym(psi_inf(vtx)), top - p));
                CHECK(s.top_power() <= top);
            }
}

TEST_CASE("single infinity-root expansion")
{
    // rho_inf = 1, one node root of weight d: leading d t^{-1}, so no t^0 term
    for (int d : {1, 2, 5}) {
        GraphType0 v;
        v.node_roots = {{7, -d}};
        const auto s = c_gamma0(v, 3);
        CHECK(s.coefficient(0).is_zero());
        CHECK(s.coefficient(-1) == SymbolPolynomial(d));
        CHECK(s.coefficient(-2) == SymbolPolynomial(d) * sym(psi_inf(0)));
    }
    GraphType0 empty;
    CHECK_THROWS_AS(c_gamma0(empty, 2), TruncationError);
}

TEST_CASE("assembled t^0 coefficient")
{
    // no rubber vertex: t^0 of t/(t+Psi)
    for (const auto& [G, aut] : enumerate_bipartite({0, 0, 1, {1}})) CHECK(assemble_t0(G) == SymbolPolynomial(1));

    // one rubber vertex with rho_inf = 3 (one node, two markings): the type-0
    // series starts at t^1, so t^0 of the product mixes two orders
    const auto list = enumerate_bipartite({0, 0, 1, {3, -1, -1}});
    REQUIRE(list.size() == 1);
    const auto& G = list.front().graph;
    int zero_vertex = -1;
    for (int v = 0; v < G.num_vertices(); ++v)
        if (G.vertices[static_cast<std::size_t>(v)].side == Side::Zero) zero_vertex = v;
    REQUIRE(zero_vertex >= 0);
    Series a, b;
    for (int j = 0; j <= 4; ++j) a[1 - j] = power(sym(psi_inf(zero_vertex)), j);
    for (int k = 0; k <= 4; ++k) b[-k] = power(sym(psi(), -1), k);
    const auto expected = t0_of_product(a, b);
    CHECK(expected == sym(psi_inf(zero_vertex)) - sym(psi()));
    CHECK(assemble_t0(G) == expected);
    CHECK(auto_truncation(G) == 1);
}

TEST_CASE("t^0 is stable under larger truncation")
{
    for (const auto& type : std::vector<BipartiteType>{{0, 0, 2, {3, -1}}, {1, 1, 2, {2}}, {0, 2, 1, {2, -1}}, {0, 0, 3, {1, 2}}})
        for (const auto& [G, aut] : enumerate_bipartite(type))
            for (RootSet rs : {RootSet::NodeRoots, RootSet::AllInfinityRoots}) {
                const Type0Options opt{rs, rs};
                const int N = auto_truncation(G, opt);
                const auto base = assemble_t0_at(G, N, opt);
                CHECK(base == assemble_t0_at(G, 2 * N + 1, opt));
                CHECK(base == assemble_t0_at(G, 2 * N + 6, opt));
                CHECK(assemble_t0(G, opt) == base);
            }
}

TEST_CASE("laurent series arithmetic respects truncation")
{
    LaurentClassSeries a(2), b(3);
    a.add(1, SymbolPolynomial(1));
    a.add(-2, sym(psi()));
    b.add(0, SymbolPolynomial(2));
    b.add(-3, SymbolPolynomial(1));
    const auto c = a * b;
    // min(2 - 0, 3 - 1) = 2
    CHECK(c.truncation() == 2);
    CHECK(c.coefficient(1) == SymbolPolynomial(2));
    CHECK(c.coefficient(-2) == sym(psi(), 2) + SymbolPolynomial(1));
    CHECK_THROWS_AS(c.coefficient(-3), TruncationError);
}
