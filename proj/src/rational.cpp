#include "tautdr/rational.hpp"

#include "tautdr/errors.hpp"

#include <map>
#include <mutex>

namespace tautdr {

std::string to_string(const Rational& q)
{
    Rational c = q;
    c.canonicalize();
    if (c.get_den() == 1) return c.get_num().get_str();
    return c.get_num().get_str() + "/" + c.get_den().get_str();
}

Rational parse_rational(std::string_view text)
{
    std::string s(text);
    if (s.empty()) throw InvalidInput("empty rational");
    Rational q;
    if (q.set_str(s, 10) != 0 || q.get_den() == 0) throw InvalidInput("malformed rational: " + s);
    q.canonicalize();
    return q;
}

Rational factorial(int n)
{
    Integer f = 1;
    for (int i = 2; i <= n; ++i) f *= i;
    return Rational(f);
}

Rational binomial(int n, int k)
{
    if (k < 0 || k > n) return 0;
    Integer b;
    mpz_bin_uiui(b.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return Rational(b);
}

Rational power(const Rational& base, int exponent)
{
    Rational result = 1;
    Rational b = base;
    int e = exponent;
    if (e < 0) {
        b = 1 / b;
        e = -e;
    }
    while (e > 0) {
        if (e & 1) result *= b;
        b *= b;
        e >>= 1;
    }
    return result;
}

RPolynomial::RPolynomial(const Rational& constant)
{
    if (!tautdr::is_zero(constant)) coeffs_.push_back(constant);
}

RPolynomial::RPolynomial(std::vector<Rational> coefficients) : coeffs_(std::move(coefficients))
{
    for (auto& c : coeffs_) c.canonicalize();
    trim();
}

RPolynomial RPolynomial::monomial(const Rational& c, int degree)
{
    std::vector<Rational> v(static_cast<std::size_t>(degree) + 1, Rational(0));
    v.back() = c;
    return RPolynomial(std::move(v));
}

void RPolynomial::trim()
{
    while (!coeffs_.empty() && tautdr::is_zero(coeffs_.back())) coeffs_.pop_back();
}

Rational RPolynomial::coefficient(int k) const
{
    if (k < 0 || k >= static_cast<int>(coeffs_.size())) return 0;
    return coeffs_[static_cast<std::size_t>(k)];
}

Rational RPolynomial::operator()(const Rational& r) const
{
    Rational acc = 0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * r + *it;
    return acc;
}

RPolynomial& RPolynomial::operator+=(const RPolynomial& other)
{
    if (other.coeffs_.size() > coeffs_.size()) coeffs_.resize(other.coeffs_.size(), Rational(0));
    for (std::size_t i = 0; i < other.coeffs_.size(); ++i) coeffs_[i] += other.coeffs_[i];
    trim();
    return *this;
}

RPolynomial& RPolynomial::operator-=(const RPolynomial& other)
{
    if (other.coeffs_.size() > coeffs_.size()) coeffs_.resize(other.coeffs_.size(), Rational(0));
    for (std::size_t i = 0; i < other.coeffs_.size(); ++i) coeffs_[i] -= other.coeffs_[i];
    trim();
    return *this;
}

RPolynomial& RPolynomial::operator*=(const RPolynomial& other)
{
    if (coeffs_.empty() || other.coeffs_.empty()) {
        coeffs_.clear();
        return *this;
    }
    std::vector<Rational> out(coeffs_.size() + other.coeffs_.size() - 1, Rational(0));
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
        for (std::size_t j = 0; j < other.coeffs_.size(); ++j) out[i + j] += coeffs_[i] * other.coeffs_[j];
    coeffs_ = std::move(out);
    trim();
    return *this;
}

RPolynomial& RPolynomial::operator*=(const Rational& c)
{
    for (auto& x : coeffs_) x *= c;
    trim();
    return *this;
}

RPolynomial RPolynomial::interpolate(const std::vector<Rational>& xs, const std::vector<Rational>& ys)
{
    if (xs.size() != ys.size()) throw InvalidInput("interpolate: size mismatch");
    const std::size_t n = xs.size();
    // Newton divided differences, then expand the Newton form.
    std::vector<Rational> dd(ys);
    for (std::size_t level = 1; level < n; ++level) {
        for (std::size_t i = n - 1; i >= level; --i) {
            Rational denom = xs[i] - xs[i - level];
            if (tautdr::is_zero(denom)) throw InvalidInput("interpolate: repeated abscissa");
            dd[i] = (dd[i] - dd[i - 1]) / denom;
            if (i == level) break;
        }
    }
    RPolynomial result;
    for (std::size_t k = n; k-- > 0;) {
        result *= RPolynomial(std::vector<Rational>{-xs[k], Rational(1)});
        result += RPolynomial(dd[k]);
    }
    return result;
}

NodeInterpolator::NodeInterpolator(std::vector<int> nodes) : nodes_(std::move(nodes))
{
    const std::size_t n = nodes_.size();
    // Column i of the inverse Vandermonde matrix holds the monomial
    // coefficients of the Lagrange basis polynomial l_i.
    std::vector<std::vector<Rational>> inv(n, std::vector<Rational>(n));
    for (std::size_t i = 0; i < n; ++i) {
        RPolynomial basis(Rational(1));
        Rational denom = 1;
        for (std::size_t j = 0; j < n; ++j) {
            if (j == i) continue;
            if (nodes_[i] == nodes_[j]) throw InvalidInput("interpolation nodes must be distinct");
            basis *= RPolynomial(std::vector<Rational>{Rational(-nodes_[j]), Rational(1)});
            denom *= nodes_[i] - nodes_[j];
        }
        for (std::size_t k = 0; k < n; ++k) inv[k][i] = basis.coefficient(static_cast<int>(k)) / denom;
    }
    denominator_ = 1;
    for (const auto& row : inv)
        for (const auto& x : row) mpz_lcm(denominator_.get_mpz_t(), denominator_.get_mpz_t(), x.get_den_mpz_t());
    inverse_.assign(n, std::vector<Integer>(n));
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < n; ++i) {
            Rational scaled = inv[k][i] * denominator_;
            inverse_[k][i] = scaled.get_num();
        }
}

RPolynomial NodeInterpolator::fit(const std::vector<Integer>& ys, const Integer& scale) const
{
    const std::size_t n = nodes_.size();
    if (ys.size() != n) throw InvalidInput("interpolate: size mismatch");
    std::vector<Rational> coeffs(n);
    Integer acc;
    const Integer den = denominator_ * scale;
    for (std::size_t k = 0; k < n; ++k) {
        acc = 0;
        for (std::size_t i = 0; i < n; ++i) mpz_addmul(acc.get_mpz_t(), inverse_[k][i].get_mpz_t(), ys[i].get_mpz_t());
        if (acc == 0) continue;
        mpq_set_num(coeffs[k].get_mpq_t(), acc.get_mpz_t());
        mpq_set_den(coeffs[k].get_mpq_t(), den.get_mpz_t());
        coeffs[k].canonicalize();
    }
    return RPolynomial(std::move(coeffs));
}

NodeInterpolator::Row NodeInterpolator::row_at(int z) const
{
    // Lagrange basis values l_i(z) over a common denominator.
    const std::size_t n = nodes_.size();
    std::vector<Rational> l(n);
    for (std::size_t i = 0; i < n; ++i) {
        Rational v = 1;
        for (std::size_t j = 0; j < n; ++j)
            if (j != i) v *= Rational(z - nodes_[j]) / Rational(nodes_[i] - nodes_[j]);
        l[i] = v;
    }
    Row row;
    row.denominator = 1;
    for (const auto& x : l) mpz_lcm(row.denominator.get_mpz_t(), row.denominator.get_mpz_t(), x.get_den_mpz_t());
    for (const auto& x : l) {
        Rational scaled = x * row.denominator;
        row.weights.push_back(scaled.get_num());
    }
    return row;
}

std::string RPolynomial::to_string(std::string_view var) const
{
    if (coeffs_.empty()) return "0";
    std::string out;
    for (std::size_t k = coeffs_.size(); k-- > 0;) {
        const Rational& c = coeffs_[k];
        if (tautdr::is_zero(c)) continue;
        std::string term = tautdr::to_string(abs(c));
        bool negative = sgn(c) < 0;
        if (k > 0) {
            std::string mono(var);
            if (k > 1) mono += "^" + std::to_string(k);
            term = (term == "1") ? mono : term + "*" + mono;
        }
        if (out.empty())
            out = negative ? "-" + term : term;
        else
            out += negative ? " - " + term : " + " + term;
    }
    return out;
}

namespace {

std::vector<Rational> bernoulli_numbers(int upto)
{
    // B_1 = -1/2 convention.
    std::vector<Rational> b(static_cast<std::size_t>(upto) + 1, Rational(0));
    b[0] = 1;
    for (int m = 1; m <= upto; ++m) {
        Rational s = 0;
        for (int k = 0; k < m; ++k) s += binomial(m + 1, k) * b[static_cast<std::size_t>(k)];
        b[static_cast<std::size_t>(m)] = -s / (m + 1);
    }
    return b;
}

}  // namespace

RPolynomial power_sum_polynomial(int p)
{
    static std::mutex mutex;
    static std::map<int, RPolynomial> cache;
    {
        std::lock_guard lock(mutex);
        if (auto it = cache.find(p); it != cache.end()) return it->second;
    }
    auto b = bernoulli_numbers(p);
    std::vector<Rational> c(static_cast<std::size_t>(p) + 2, Rational(0));
    for (int k = 0; k <= p; ++k)
        c[static_cast<std::size_t>(p + 1 - k)] += binomial(p + 1, k) * b[static_cast<std::size_t>(k)] / (p + 1);
    RPolynomial poly(std::move(c));
    std::lock_guard lock(mutex);
    cache.emplace(p, poly);
    return poly;
}

RPolynomial loop_weight_sum_polynomial(int m)
{
    // (x(r-x))^m = sum_j C(m,j) r^{m-j} (-1)^j x^{m+j}
    RPolynomial total;
    for (int j = 0; j <= m; ++j) {
        RPolynomial term = power_sum_polynomial(m + j);
        term *= RPolynomial::monomial(binomial(m, j) * ((j % 2) ? -1 : 1), m - j);
        total += term;
    }
    return total;
}

}  // namespace tautdr
