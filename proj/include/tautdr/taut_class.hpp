#pragma once

// Tautological classes as linear combinations of decorated strata.
//
// Convention: a term (S, c) stands for c * j_{Phi*}(alpha), where alpha is the
// psi/kappa monomial S carries on prod_v M̄_{g(v),n(v)} and j_Phi the gluing
// map.  No 1/|Aut| is applied when integrating; producers that sum over graphs
// (the Pixton formula, boundary divisors, ...) fold it into c themselves.

#include "tautdr/errors.hpp"
#include "tautdr/rational.hpp"
#include "tautdr/stable_graph.hpp"

#include <compare>
#include <map>
#include <string>
#include <vector>

namespace tautdr {

struct DecoratedStratum {
    StableGraph graph;
    std::vector<int> psi;                 // exponent per half-edge
    std::vector<std::vector<int>> kappa;  // sorted kappa indices per vertex

    static DecoratedStratum plain(StableGraph g);

    int decoration_degree(int v) const;
    int degree() const;
    /// Every vertex carries at most its own dimension.
    bool fits() const;
    std::string to_string() const;

    friend auto operator<=>(const DecoratedStratum&, const DecoratedStratum&) = default;
    friend bool operator==(const DecoratedStratum&, const DecoratedStratum&) = default;
};

DecoratedStratum canonical_form(const DecoratedStratum& s);

/// prod_v of the vertex integrals; zero unless every vertex is top degree.
Rational integrate(const DecoratedStratum& s);

template <class Coeff>
class BasicTautClass {
public:
    using Terms = std::map<DecoratedStratum, Coeff>;

    BasicTautClass() = default;
    BasicTautClass(int g, int n) : g_(g), n_(n)
    {
        if (g < 0 || n < 0 || 2 * g - 2 + n <= 0)
            throw InvalidInput("unstable (g,n) = (" + std::to_string(g) + "," + std::to_string(n) + ")");
    }

    static BasicTautClass fundamental(int g, int n)
    {
        BasicTautClass c(g, n);
        c.add(DecoratedStratum::plain(StableGraph::trivial(g, n)), Coeff(Rational(1)));
        return c;
    }

    int genus() const { return g_; }
    int num_legs() const { return n_; }
    int dimension() const { return 3 * g_ - 3 + n_; }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    /// -1 for the zero class.
    int degree() const { return terms_.empty() ? -1 : terms_.begin()->first.degree(); }

    /// Canonicalizes s; drops it when it exceeds a vertex dimension.
    void add(const DecoratedStratum& s, const Coeff& c)
    {
        if (tautdr::is_zero(c) || !s.fits()) return;
        if (s.graph.total_genus() != g_ || s.graph.num_legs() != n_)
            throw InvalidInput("stratum ambient differs from class ambient");
        auto key = canonical_form(s);
        if (!terms_.empty() && key.degree() != degree())
            throw InvalidInput("class must be homogeneous: degree " + std::to_string(key.degree()) + " added to degree " +
                               std::to_string(degree()));
        auto [it, inserted] = terms_.emplace(std::move(key), c);
        if (!inserted) {
            it->second += c;
            if (tautdr::is_zero(it->second)) terms_.erase(it);
        }
    }

    /// Fast path for producers that already hold canonical, fitting strata.
    void add_canonical(const DecoratedStratum& s, const Coeff& c)
    {
        if (tautdr::is_zero(c)) return;
        auto [it, inserted] = terms_.emplace(s, c);
        if (!inserted) {
            it->second += c;
            if (tautdr::is_zero(it->second)) terms_.erase(it);
        }
    }

    /// Coefficient of the canonical form of s (zero if absent).
    Coeff coefficient(const DecoratedStratum& s) const
    {
        auto it = terms_.find(canonical_form(s));
        return it == terms_.end() ? Coeff() : it->second;
    }

    BasicTautClass& operator+=(const BasicTautClass& o)
    {
        check_ambient(o);
        for (const auto& [s, c] : o.terms_) add(s, c);
        return *this;
    }
    BasicTautClass& operator-=(const BasicTautClass& o)
    {
        check_ambient(o);
        for (const auto& [s, c] : o.terms_) {
            Coeff neg = c;
            neg *= Rational(-1);
            add(s, neg);
        }
        return *this;
    }
    BasicTautClass& operator*=(const Rational& x)
    {
        if (sgn(x) == 0) {
            terms_.clear();
            return *this;
        }
        for (auto& [s, c] : terms_) c *= x;
        return *this;
    }
    friend BasicTautClass operator+(BasicTautClass a, const BasicTautClass& b) { return a += b; }
    friend BasicTautClass operator-(BasicTautClass a, const BasicTautClass& b) { return a -= b; }
    friend BasicTautClass operator*(const Rational& x, BasicTautClass a) { return a *= x; }
    friend bool operator==(const BasicTautClass& a, const BasicTautClass& b)
    {
        return a.g_ == b.g_ && a.n_ == b.n_ && a.terms_ == b.terms_;
    }

    std::string to_string() const;

private:
    void check_ambient(const BasicTautClass& o) const
    {
        if (o.g_ != g_ || o.n_ != n_) throw InvalidInput("ambient (g,n) mismatch");
    }

    int g_ = 0;
    int n_ = 0;
    Terms terms_;
};

using TautClass = BasicTautClass<Rational>;
using RTautClass = BasicTautClass<RPolynomial>;

/// psi_1^{e_1} ... psi_n^{e_n} on the trivial graph.
TautClass psi_monomial(int g, const std::vector<int>& exponents);
/// kappa_{b_1}...kappa_{b_m} psi^e on the trivial graph.
TautClass kappa_psi_monomial(int g, const std::vector<int>& psi, std::vector<int> kappa);
/// c * j_{Phi*}(decoration) as a one-term class.
TautClass stratum_class(const DecoratedStratum& s, const Rational& c = 1);
/// The boundary divisor of a one-edge graph, with its 1/|Aut| folded in.
TautClass boundary_divisor(const StableGraph& one_edge_graph);

Rational integrate(const TautClass& x);
RPolynomial integrate(const RTautClass& x);

TautClass evaluate(const RTautClass& x, const Rational& r);
TautClass constant_term(const RTautClass& x);

/// Full graph x graph products are supported while 3g-3+n <= this bound.
inline constexpr int kFullProductDimension = 4;

/// Throws CapabilityError when both factors need boundary excess intersection
/// and the ambient dimension exceeds kFullProductDimension.
TautClass product(const TautClass& a, const TautClass& b);
Rational pair(const TautClass& a, const TautClass& b);

/// Pullback along the map forgetting marking n+1: M̄_{g,n+1} -> M̄_{g,n}.
TautClass forgetful_pullback(const TautClass& x);

/// Relabel markings: marking i becomes marking perm[i] (0-based).
TautClass permute_legs(const TautClass& x, const std::vector<int>& perm);

/// Pullback along the gluing map of B, as a sum of tensor products of classes
/// on the vertex spaces.  Key: one canonical stratum per B-vertex, whose legs
/// are that vertex's half-edges in increasing order.
using TensorClass = std::map<std::vector<DecoratedStratum>, Rational>;
TensorClass pullback_to_graph(const StableGraph& B, const TautClass& x);

/// All canonical decorated strata of degree k on M̄_{g,n} (graphs with at
/// most k edges; psi on half-edges, kappa multisets on vertices).
std::vector<DecoratedStratum> enumerate_generators(int g, int n, int k);

}  // namespace tautdr
