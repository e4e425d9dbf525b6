#pragma once

// Localization classes of a bipartite graph at the symbolic level.  Psi,
// Psi_inf, psibar_e and ev_e^*D are opaque commuting generators; nothing is
// integrated here.

#include "tautdr/bipartite.hpp"
#include "tautdr/errors.hpp"
#include "tautdr/rational.hpp"

#include <compare>
#include <map>
#include <string>
#include <vector>

namespace tautdr {

struct Symbol {
    enum class Kind { Psi, PsiInf, PsiBar, EvD };
    Kind kind = Kind::Psi;
    int index = 0;  // PsiInf: 0-side vertex; PsiBar/EvD: half-edge

    friend auto operator<=>(const Symbol&, const Symbol&) = default;
};

std::string to_string(const Symbol& s);

using Monomial = std::map<Symbol, int>;

class SymbolPolynomial {
public:
    using Terms = std::map<Monomial, Rational>;

    SymbolPolynomial() = default;
    SymbolPolynomial(const Rational& c);  // NOLINT: constants convert
    static SymbolPolynomial symbol(Symbol s, const Rational& c = 1);

    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    Rational constant() const;
    /// Highest total symbol degree; -1 for zero.
    int degree() const;

    SymbolPolynomial& operator+=(const SymbolPolynomial& o);
    SymbolPolynomial& operator-=(const SymbolPolynomial& o);
    SymbolPolynomial& operator*=(const Rational& c);
    friend SymbolPolynomial operator+(SymbolPolynomial a, const SymbolPolynomial& b) { return a += b; }
    friend SymbolPolynomial operator-(SymbolPolynomial a, const SymbolPolynomial& b) { return a -= b; }
    friend SymbolPolynomial operator*(const SymbolPolynomial& a, const SymbolPolynomial& b);
    friend bool operator==(const SymbolPolynomial&, const SymbolPolynomial&) = default;

    std::string to_string() const;

private:
    void add_term(const Monomial& m, const Rational& c);
    Terms terms_;
};

SymbolPolynomial power(const SymbolPolynomial& x, int k);

/// sum_p c_p t^p.  Coefficients of t^p for p >= -truncation are exact; lower
/// ones were discarded and asking for them throws TruncationError.
class LaurentClassSeries {
public:
    LaurentClassSeries() = default;
    explicit LaurentClassSeries(int truncation) : truncation_(truncation) {}

    int truncation() const { return truncation_; }
    const std::map<int, SymbolPolynomial>& coefficients() const { return coeffs_; }
    /// Largest p with a nonzero coefficient (lowest exact power if zero).
    int top_power() const;
    SymbolPolynomial coefficient(int p) const;
    void add(int p, const SymbolPolynomial& c);
    /// Drop everything below t^{-N}; N may not exceed the current truncation.
    LaurentClassSeries truncated(int N) const;

    friend LaurentClassSeries operator*(const LaurentClassSeries& a, const LaurentClassSeries& b);
    friend bool operator==(const LaurentClassSeries&, const LaurentClassSeries&) = default;

    std::string to_string() const;

private:
    int truncation_ = 0;
    std::map<int, SymbolPolynomial> coeffs_;
};

/// t/(t+Psi) = sum_k (-Psi)^k t^{-k}.
LaurentClassSeries c_gamma_infty(int N);

/// A 0-side vertex viewed as a graph of type 0; root ids are half-edge ids of
/// the ambient bipartite graph and index the psibar/ev symbols.
struct GraphType0 {
    struct Root {
        int id = 0;
        int weight = 0;
    };
    int index = 0;  // indexes Psi_inf
    int genus = 0;
    std::vector<Root> zero_roots;
    std::vector<Root> node_roots;
    std::vector<Root> marking_roots;
    int legs = 0;

    int rho_infinity() const { return static_cast<int>(node_roots.size() + marking_roots.size()); }
};

GraphType0 graph_type0(const BipartiteGraph& G, int vertex);

/// Which infinity-roots enter the denominator product and the sigma_k sums.
enum class RootSet { NodeRoots, AllInfinityRoots };
std::string to_string(RootSet s);

struct Type0Options {
    RootSet denominator = RootSet::NodeRoots;
    RootSet sigma = RootSet::NodeRoots;
};

/// c(l) = sum_k (-1)^k Psi_inf^{l-k} sigma_k.
SymbolPolynomial c_polynomial(const GraphType0& v, int l, Type0Options options = {});

/// sum_{l>=g} c(l-g) t^{g+rho_inf-1-l} / prod_e ((t + ev_e)/d_e - psibar_e),
/// exact down to t^{-N}.  Throws TruncationError when rho_inf = 0.
LaurentClassSeries c_gamma0(const GraphType0& v, int N, Type0Options options = {});

/// Smallest truncation at which assemble_t0 is exact for this graph.
int auto_truncation(const BipartiteGraph& G, Type0Options options = {});

/// [C_inf(t) prod_i C_i(t)]_{t^0} with every factor truncated at N.
SymbolPolynomial assemble_t0_at(const BipartiteGraph& G, int N, Type0Options options = {});

/// As above at the automatic truncation, cross-checked at N+2 (a mismatch
/// throws TruncationError).
SymbolPolynomial assemble_t0(const BipartiteGraph& G, Type0Options options = {});

}  // namespace tautdr
