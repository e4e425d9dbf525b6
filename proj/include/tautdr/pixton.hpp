#pragma once

// Pixton's class P^{d,r} for the point target (L trivial, no xi/eta terms),
// its r-polynomiality, constant term and the d > g vanishing certificate.

#include "tautdr/rational.hpp"
#include "tautdr/taut_class.hpp"

#include <string>
#include <utility>
#include <vector>

namespace tautdr {

struct DRProblem {
    int g = 0;
    std::vector<int> a;
    int d = 0;

    int num_legs() const { return static_cast<int>(a.size()); }
    int dimension() const { return 3 * g - 3 + num_legs(); }
    /// Throws InvalidInput unless sum a = 0, 2g-2+n > 0, d >= 0.
    void validate() const;
};

/// r must exceed d*max(1, max|a_i|) + sum|a_i| + 2.
int r_lower_bound(const DRProblem& p);

/// Degree-d part of P^{d,r} at one admissible r.
TautClass pixton_class(const DRProblem& p, int r);

struct RPolynomialClass {
    RTautClass cls;
    std::vector<int> samples;   // interpolation nodes
    std::vector<int> held_out;  // verification nodes
    int degree_bound = 0;
};

struct RPolynomialOptions {
    int first_r = 0;  // 0: smallest admissible r
};

/// Interpolates every coefficient from 2d+3 consecutive r and checks 3 more.
/// Throws PolynomialityError on a held-out mismatch or degree > 2d.
RPolynomialClass r_polynomial(const DRProblem& p, RPolynomialOptions options = {});

TautClass constant_term(const RPolynomialClass& c);

/// constant_term(r_polynomial(g, a, d = g)).
TautClass dr_cycle(int g, const std::vector<int>& a);

enum class Verdict { PairingNull, Fail, Incomplete };
std::string to_string(Verdict v);

struct VanishingReport {
    DRProblem problem;
    RPolynomialClass poly;
    TautClass constant;
    /// (generator, pairing with the constant term)
    std::vector<std::pair<DecoratedStratum, Rational>> pairings;
    /// Same numbers obtained by pairing pixton_class at each sample and
    /// interpolating; must agree entry by entry.
    std::vector<Rational> interpolated_pairings;
    bool complete = true;
    Verdict verdict = Verdict::PairingNull;
};

/// Requires d > g.
VanishingReport vanishing_check(const DRProblem& p, RPolynomialOptions options = {});

}  // namespace tautdr
