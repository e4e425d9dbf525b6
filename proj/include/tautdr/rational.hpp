#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace tautdr {

using Rational = mpq_class;
using Integer = mpz_class;

/// "p/q" with q > 0; integers print without a denominator ("3", "-1/24").
std::string to_string(const Rational& q);
Rational parse_rational(std::string_view text);

Rational factorial(int n);
Rational binomial(int n, int k);
Rational power(const Rational& base, int exponent);

/// Univariate polynomial in r with rational coefficients, stored
/// low-to-high with no trailing zeros.
class RPolynomial {
public:
    RPolynomial() = default;
    RPolynomial(const Rational& constant);  // NOLINT: implicit on purpose
    explicit RPolynomial(std::vector<Rational> coefficients);

    static RPolynomial monomial(const Rational& c, int degree);

    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    bool is_zero() const { return coeffs_.empty(); }
    const std::vector<Rational>& coefficients() const { return coeffs_; }
    Rational coefficient(int k) const;
    Rational operator()(const Rational& r) const;
    Rational constant_term() const { return coefficient(0); }

    RPolynomial& operator+=(const RPolynomial& other);
    RPolynomial& operator-=(const RPolynomial& other);
    RPolynomial& operator*=(const RPolynomial& other);
    RPolynomial& operator*=(const Rational& c);

    friend RPolynomial operator+(RPolynomial a, const RPolynomial& b) { return a += b; }
    friend RPolynomial operator-(RPolynomial a, const RPolynomial& b) { return a -= b; }
    friend RPolynomial operator*(RPolynomial a, const RPolynomial& b) { return a *= b; }
    friend bool operator==(const RPolynomial& a, const RPolynomial& b) { return a.coeffs_ == b.coeffs_; }

    /// Exact interpolation through (xs[i], ys[i]); xs pairwise distinct.
    static RPolynomial interpolate(const std::vector<Rational>& xs, const std::vector<Rational>& ys);

    std::string to_string(std::string_view var = "r") const;

private:
    void trim();
    std::vector<Rational> coeffs_;
};

/// Interpolation on a fixed set of integer nodes.  The inverse Vandermonde
/// matrix is precomputed over a common denominator so each fit is integer
/// multiply-adds plus one division per coefficient.
class NodeInterpolator {
public:
    explicit NodeInterpolator(std::vector<int> nodes);

    const std::vector<int>& nodes() const { return nodes_; }

    /// Interpolant through (nodes[i], ys[i] / scale).
    RPolynomial fit(const std::vector<Integer>& ys, const Integer& scale) const;
    /// Evaluation at z as integer weights: value = sum_i weights[i] ys[i] / (denominator * scale).
    struct Row {
        std::vector<Integer> weights;
        Integer denominator;
    };
    Row row_at(int z) const;

private:
    std::vector<int> nodes_;
    std::vector<std::vector<Integer>> inverse_;  // [k][i], over denominator_
    Integer denominator_;
};

inline bool is_zero(const Rational& q) { return sgn(q) == 0; }
inline bool is_zero(const RPolynomial& p) { return p.is_zero(); }

/// Sum_{x=0}^{r-1} x^p as a polynomial in r (Faulhaber, B_1 = -1/2).
RPolynomial power_sum_polynomial(int p);

/// Sum_{x=0}^{r-1} (x (r - x))^m as a polynomial in r.
RPolynomial loop_weight_sum_polynomial(int m);

}  // namespace tautdr
