#pragma once

// Insertion ring for (P^1, pt), partial-CohFT axiom checks over the
// tautological engine, and the degree-0 relative classes used to show the
// loop axiom fails.

#include "tautdr/rational.hpp"
#include "tautdr/taut_class.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace tautdr {

/// [alpha]_level.  Level 0 lives on X = P^1: alpha = one*1 + omega*[pt].
/// Other levels live on D = pt, where only `one` may be nonzero.
struct InsertionElement {
    int level = 0;
    Rational one = 0;
    Rational omega = 0;

    static InsertionElement unit(int level = 0) { return {level, 1, 0}; }
    static InsertionElement point() { return {0, 0, 1}; }
    void validate() const;
    std::string to_string() const;

    friend bool operator==(const InsertionElement&, const InsertionElement&) = default;
};

Rational insertion_pairing(const InsertionElement& a, const InsertionElement& b);

/// Basis of the levels -K..K: [1]_0, [omega]_0, then [1]_i for i = -K..K, i != 0.
std::vector<InsertionElement> truncated_basis(int K);

/// Gram matrix and its inverse.
using RationalMatrix = std::vector<std::vector<Rational>>;
RationalMatrix gram_matrix(const std::vector<InsertionElement>& basis);
/// Throws InvalidInput for a singular matrix.
RationalMatrix inverse(const RationalMatrix& m);

/// Omega^{(P^1,pt)}_{1,1,0}([1]_0) from c_1(E^dual (x) T_X(-log D)) pushed
/// forward along X, and Omega_{0,3,0}([1]_0,[1]_i,[1]_{-i}) from the
/// bipartite graph sum of the type (g=0, n=1, beta=0, mu=(i,-i)).
struct OmegaExamples {
    Rational omega_113;
    Rational omega_033(int i) const;
};
OmegaExamples example_omega_values();

/// Degree-0 genus-0 three-point class on M̄_{0,3} (as a number); nullopt when
/// the value is outside what the graph sum here determines.
std::optional<Rational> omega_030(const InsertionElement& a, const InsertionElement& b, const InsertionElement& c);

struct LoopDemo {
    int K = 0;
    Rational lhs;
    Rational partial_rhs;
};
/// lhs = Omega_{1,1,0}([1]_0); partial_rhs = sum over the level -K..K basis of
/// eta^{jk} Omega_{0,3,0}([1]_0, e_j, e_k).  Throws InvalidInput for K < 1.
LoopDemo loop_axiom_demo(int K);

/// A family Omega_{g,m} on a finite basis with pairing eta.
struct CohFTFamily {
    std::vector<std::string> basis_names;
    RationalMatrix eta;
    int unit = 0;
    /// nullopt = no data for these inputs.
    std::function<std::optional<TautClass>(int g, const std::vector<int>& inputs)> omega;
    std::vector<std::pair<int, int>> range;  // (g, m) to check
};

struct AxiomResult {
    int checked = 0;
    int failed = 0;
    int missing = 0;
    std::vector<std::string> failures;  // first few, human readable

    bool holds() const { return failed == 0; }
    bool complete() const { return missing == 0; }
};

struct CohFTReport {
    AxiomResult symmetry;
    AxiomResult unit;        // forgetful pullback + the 3-point unit/pairing identity
    AxiomResult splitting;   // separating one-edge graphs
    AxiomResult loop;        // non-separating one-edge graphs
    bool partial() const;
};

CohFTReport cohft_axiom_predicates(const CohFTFamily& family);

/// The degree-0 fragment of Omega^{(P^1,pt)} on levels -K..K, with data on
/// (0,3) and (1,1) only.
CohFTFamily relative_p1_fragment(int K);

}  // namespace tautdr
