#include "hand.hpp"

namespace oracle {

namespace {
Rational fact(int k)
{
    Rational f = 1;
    for (int i = 2; i <= k; ++i) f *= i;
    return f;
}
}  // namespace

Rational genus0_closed_form(const std::vector<int>& d)
{
    Rational v = fact(static_cast<int>(d.size()) - 3);
    for (int x : d) v /= fact(x);
    return v;
}

Rational loop_coefficient(int r)
{
    Rational s = 0;
    for (int w = 0; w < r; ++w) s += Rational(w * (r - w)) / 2;
    return s / Rational(2 * r);
}

Rational divisor_coefficient(const std::vector<int>& a, const std::vector<int>& side, int r)
{
    long long sum = 0;
    for (int i : side) sum += a[static_cast<std::size_t>(i)];
    long long w = (-sum) % r;
    if (w < 0) w += r;
    return Rational(static_cast<long>(w * (r - w))) / 2;
}

Rational psi_coefficient(int a_i) { return Rational(a_i * a_i) / 2; }

Rational lagrange_at_zero(const std::vector<std::pair<Rational, Rational>>& points)
{
    Rational total = 0;
    for (std::size_t i = 0; i < points.size(); ++i) {
        Rational term = points[i].second;
        for (std::size_t j = 0; j < points.size(); ++j)
            if (j != i) term *= (0 - points[j].first) / (points[i].first - points[j].first);
        total += term;
    }
    return total;
}

std::vector<KnownIntegral> known_integrals()
{
    return {
        {1, {1}, Rational(1, 24)},
        {1, {1, 1}, Rational(1, 24)},
        {1, {0, 2}, Rational(1, 24)},
        {2, {4}, Rational(1, 1152)},
        {2, {1, 4}, Rational(1, 384)},
        {2, {2, 3}, Rational(29, 5760)},
        {2, {2, 2, 2}, Rational(7, 240)},
        {3, {7}, Rational(1, 82944)},
    };
}

}  // namespace oracle
