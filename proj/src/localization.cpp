#include "tautdr/localization.hpp"

#include <algorithm>
#include <sstream>

namespace tautdr {

namespace {

Monomial multiply(const Monomial& a, const Monomial& b)
{
    Monomial m = a;
    for (const auto& [s, k] : b) m[s] += k;
    return m;
}

SymbolPolynomial contact_shift(const GraphType0::Root& r)
{
    // d_e psibar_e - ev_e^*D
    const int d = -r.weight;
    return SymbolPolynomial::symbol({Symbol::Kind::PsiBar, r.id}, d) -
           SymbolPolynomial::symbol({Symbol::Kind::EvD, r.id});
}

std::vector<GraphType0::Root> roots_in(const GraphType0& v, RootSet set)
{
    auto out = v.node_roots;
    if (set == RootSet::AllInfinityRoots) out.insert(out.end(), v.marking_roots.begin(), v.marking_roots.end());
    return out;
}

}  // namespace

std::string to_string(const Symbol& s)
{
    switch (s.kind) {
    case Symbol::Kind::Psi: return "Psi";
    case Symbol::Kind::PsiInf: return "Psi_inf[" + std::to_string(s.index) + "]";
    case Symbol::Kind::PsiBar: return "psibar[" + std::to_string(s.index) + "]";
    case Symbol::Kind::EvD: return "evD[" + std::to_string(s.index) + "]";
    }
    return "?";
}

SymbolPolynomial::SymbolPolynomial(const Rational& c)
{
    add_term({}, c);
}

SymbolPolynomial SymbolPolynomial::symbol(Symbol s, const Rational& c)
{
    SymbolPolynomial p;
    p.add_term({{s, 1}}, c);
    return p;
}

void SymbolPolynomial::add_term(const Monomial& m, const Rational& c)
{
    if (sgn(c) == 0) return;
    auto [it, inserted] = terms_.emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (sgn(it->second) == 0) terms_.erase(it);
    }
}

Rational SymbolPolynomial::constant() const
{
    auto it = terms_.find(Monomial{});
    return it == terms_.end() ? Rational(0) : it->second;
}

int SymbolPolynomial::degree() const
{
    int d = -1;
    for (const auto& [m, c] : terms_) {
        int k = 0;
        for (const auto& [s, e] : m) k += e;
        d = std::max(d, k);
    }
    return d;
}

SymbolPolynomial& SymbolPolynomial::operator+=(const SymbolPolynomial& o)
{
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
}

SymbolPolynomial& SymbolPolynomial::operator-=(const SymbolPolynomial& o)
{
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
}

SymbolPolynomial& SymbolPolynomial::operator*=(const Rational& c)
{
    if (sgn(c) == 0) terms_.clear();
    for (auto& [m, x] : terms_) x *= c;
    return *this;
}

SymbolPolynomial operator*(const SymbolPolynomial& a, const SymbolPolynomial& b)
{
    SymbolPolynomial out;
    for (const auto& [ma, ca] : a.terms_)
        for (const auto& [mb, cb] : b.terms_) out.add_term(multiply(ma, mb), ca * cb);
    return out;
}

std::string SymbolPolynomial::to_string() const
{
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : terms_) {
        if (!first) os << " + ";
        first = false;
        os << tautdr::to_string(c);
        for (const auto& [s, e] : m) {
            os << "*" << tautdr::to_string(s);
            if (e != 1) os << "^" << e;
        }
    }
    return os.str();
}

SymbolPolynomial power(const SymbolPolynomial& x, int k)
{
    SymbolPolynomial out(1);
    for (int i = 0; i < k; ++i) out = out * x;
    return out;
}

int LaurentClassSeries::top_power() const
{
    return coeffs_.empty() ? -truncation_ : coeffs_.rbegin()->first;
}

SymbolPolynomial LaurentClassSeries::coefficient(int p) const
{
    if (p < -truncation_)
        throw TruncationError("coefficient of t^" + std::to_string(p) + " requested from a series exact to t^" +
                              std::to_string(-truncation_));
    auto it = coeffs_.find(p);
    return it == coeffs_.end() ? SymbolPolynomial() : it->second;
}

void LaurentClassSeries::add(int p, const SymbolPolynomial& c)
{
    if (p < -truncation_ || c.is_zero()) return;
    auto& slot = coeffs_[p];
    slot += c;
    if (slot.is_zero()) coeffs_.erase(p);
}

LaurentClassSeries LaurentClassSeries::truncated(int N) const
{
    if (N > truncation_) throw TruncationError("cannot extend a truncated series");
    LaurentClassSeries out(N);
    for (const auto& [p, c] : coeffs_)
        if (p >= -N) out.coeffs_.emplace(p, c);
    return out;
}

LaurentClassSeries operator*(const LaurentClassSeries& a, const LaurentClassSeries& b)
{
    // t^p of the product is exact once every contributing pair is.
    LaurentClassSeries out(std::min(a.truncation_ - b.top_power(), b.truncation_ - a.top_power()));
    for (const auto& [pa, ca] : a.coeffs_)
        for (const auto& [pb, cb] : b.coeffs_) out.add(pa + pb, ca * cb);
    return out;
}

std::string LaurentClassSeries::to_string() const
{
    std::ostringstream os;
    bool first = true;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
        if (!first) os << " + ";
        first = false;
        os << "(" << it->second.to_string() << ")*t^" << it->first;
    }
    if (first) os << "0";
    os << " + O(t^" << -truncation_ - 1 << ")";
    return os.str();
}

LaurentClassSeries c_gamma_infty(int N)
{
    if (N < 0) throw InvalidInput("truncation must be non-negative");
    LaurentClassSeries s(N);
    const auto minus_psi = SymbolPolynomial::symbol({Symbol::Kind::Psi, 0}, -1);
    SymbolPolynomial term(1);
    for (int k = 0; k <= N; ++k) {
        s.add(-k, term);
        term = term * minus_psi;
    }
    return s;
}

GraphType0 graph_type0(const BipartiteGraph& G, int vertex)
{
    const auto& vx = G.vertices.at(static_cast<std::size_t>(vertex));
    if (vx.side != Side::Zero) throw InvalidInput("vertex is not on the 0-side");
    GraphType0 t;
    t.index = vertex;
    t.genus = vx.genus;
    for (int h : G.half_edges_at(vertex)) {
        const auto& he = G.half_edges[static_cast<std::size_t>(h)];
        switch (he.kind) {
        case HalfEdgeKind::Leg: ++t.legs; break;
        case HalfEdgeKind::ZeroRoot: t.zero_roots.push_back({h, he.weight}); break;
        case HalfEdgeKind::InfinityNode: t.node_roots.push_back({h, he.weight}); break;
        case HalfEdgeKind::InfinityMarking: t.marking_roots.push_back({h, he.weight}); break;
        default: throw InvalidInput("infinity-side half-edge on a 0-side vertex");
        }
    }
    return t;
}

std::string to_string(RootSet s)
{
    return s == RootSet::NodeRoots ? "node-roots" : "all-infinity-roots";
}

SymbolPolynomial c_polynomial(const GraphType0& v, int l, Type0Options options)
{
    if (l < 0) return {};
    // sigma_k are the elementary symmetric functions of the shifts
    std::vector<SymbolPolynomial> sigma{SymbolPolynomial(1)};
    for (const auto& r : roots_in(v, options.sigma)) {
        const auto x = contact_shift(r);
        sigma.emplace_back();
        for (std::size_t k = sigma.size() - 1; k >= 1; --k) sigma[k] += sigma[k - 1] * x;
    }
    const auto psi_inf = SymbolPolynomial::symbol({Symbol::Kind::PsiInf, v.index});
    SymbolPolynomial c;
    for (int k = 0; k <= l && k < static_cast<int>(sigma.size()); ++k) {
        auto term = power(psi_inf, l - k) * sigma[static_cast<std::size_t>(k)];
        if (k % 2) term *= Rational(-1);
        c += term;
    }
    return c;
}

LaurentClassSeries c_gamma0(const GraphType0& v, int N, Type0Options options)
{
    if (N < 0) throw InvalidInput("truncation must be non-negative");
    const int rho = v.rho_infinity();
    if (rho == 0) throw TruncationError("graph of type 0 without infinity-roots has no expansion in 1/t");
    const auto denom = roots_in(v, options.denominator);
    const int depth = N + rho + static_cast<int>(denom.size()) + 1;

    LaurentClassSeries numerator(depth);
    for (int j = 0; rho - 1 - j >= -depth; ++j) numerator.add(rho - 1 - j, c_polynomial(v, j, options));

    LaurentClassSeries s = numerator;
    for (const auto& r : denom) {
        // 1/((t+ev)/d - psibar) = d t^{-1} sum_k ((d psibar - ev)/t)^k
        const int d = -r.weight;
        const auto x = contact_shift(r);
        LaurentClassSeries inv(depth);
        SymbolPolynomial term(d);
        for (int k = 0; -1 - k >= -depth; ++k) {
            inv.add(-1 - k, term);
            term = term * x;
        }
        s = s * inv;
    }
    return s.truncated(N);
}

int auto_truncation(const BipartiteGraph& G, Type0Options options)
{
    int N = 0;
    for (int v = 0; v < G.num_vertices(); ++v) {
        if (G.vertices[static_cast<std::size_t>(v)].side != Side::Zero) continue;
        const auto t = graph_type0(G, v);
        const int top = t.rho_infinity() - 1 - static_cast<int>(roots_in(t, options.denominator).size());
        N += std::max(top, 0);
    }
    return N;
}

SymbolPolynomial assemble_t0_at(const BipartiteGraph& G, int N, Type0Options options)
{
    LaurentClassSeries product = c_gamma_infty(N);
    for (int v = 0; v < G.num_vertices(); ++v)
        if (G.vertices[static_cast<std::size_t>(v)].side == Side::Zero)
            product = product * c_gamma0(graph_type0(G, v), N, options);
    return product.coefficient(0);
}

SymbolPolynomial assemble_t0(const BipartiteGraph& G, Type0Options options)
{
    const int N = auto_truncation(G, options);
    auto value = assemble_t0_at(G, N, options);
    if (value != assemble_t0_at(G, N + 2, options))
        throw TruncationError("t^0 coefficient changed between truncations " + std::to_string(N) + " and " +
                              std::to_string(N + 2));
    return value;
}

}  // namespace tautdr
