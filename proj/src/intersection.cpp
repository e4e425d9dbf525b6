#include "tautdr/intersection.hpp"

#include "tautdr/errors.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <map>
#include <mutex>
#include <numeric>
#include <shared_mutex>
#include <sstream>

namespace tautdr {

namespace {

std::shared_mutex cache_mutex;
std::map<integral_cache::Key, Rational> cache;

Rational double_factorial(int k)  // k!! with (-1)!! = 1
{
    Integer out = 1;
    for (int i = k; i > 1; i -= 2) out *= i;
    return Rational(out);
}

bool stable(int g, int n) { return g >= 0 && n >= 0 && 2 * g - 2 + n > 0; }

Rational compute(int g, std::vector<int> d);

// Zero on unstable or negative input; used inside the recursion.
Rational lookup(int g, std::vector<int> d)
{
    const int n = static_cast<int>(d.size());
    if (!stable(g, n)) return 0;
    if (std::any_of(d.begin(), d.end(), [](int x) { return x < 0; })) return 0;
    if (std::accumulate(d.begin(), d.end(), 0) != 3 * g - 3 + n) return 0;
    std::sort(d.begin(), d.end(), std::greater<>());
    integral_cache::Key key{g, d};
    {
        std::shared_lock lock(cache_mutex);
        if (auto it = cache.find(key); it != cache.end()) return it->second;
    }
    Rational value = compute(g, d);
    std::unique_lock lock(cache_mutex);
    cache.emplace(std::move(key), value);
    return value;
}

Rational compute(int g, std::vector<int> d)
{
    const int n = static_cast<int>(d.size());
    if (g == 0 && n == 3) return 1;
    if (g == 1 && n == 1) return Rational(1, 24);

    // d is sorted descending, so zeros and ones sit at the back.
    if (d.back() == 0) {
        d.pop_back();
        Rational total = 0;
        for (std::size_t i = 0; i < d.size(); ++i) {
            if (d[i] == 0) continue;
            auto e = d;
            e[i] -= 1;
            total += lookup(g, e);
        }
        return total;
    }
    if (d.back() == 1) {
        d.pop_back();
        return Rational(2 * g - 2 + n - 1) * lookup(g, d);
    }

    // Virasoro / DVV on the first exponent (all exponents are >= 2 here).
    const int top = d.front();
    std::vector<int> rest(d.begin() + 1, d.end());
    Rational total = 0;
    for (std::size_t j = 0; j < rest.size(); ++j) {
        auto e = rest;
        e[j] += top - 1;
        total += double_factorial(2 * rest[j] + 2 * top - 1) / double_factorial(2 * rest[j] - 1) * lookup(g, e);
    }
    const int m = static_cast<int>(rest.size());
    for (int a = 0; a <= top - 2; ++a) {
        const int b = top - 2 - a;
        const Rational weight = double_factorial(2 * a + 1) * double_factorial(2 * b + 1) / 2;
        auto loop = rest;
        loop.push_back(a);
        loop.push_back(b);
        Rational inner = lookup(g - 1, loop);
        for (unsigned mask = 0; mask < (1u << m); ++mask) {
            std::vector<int> left{a}, right{b};
            for (int i = 0; i < m; ++i) ((mask >> i) & 1u ? left : right).push_back(rest[static_cast<std::size_t>(i)]);
            for (int g1 = 0; g1 <= g; ++g1) {
                Rational l = lookup(g1, left);
                if (sgn(l) == 0) continue;
                inner += l * lookup(g - g1, right);
            }
        }
        total += weight * inner;
    }
    return total / double_factorial(2 * top + 1);
}

}  // namespace

Rational psi_integral(int g, const std::vector<int>& d)
{
    if (!stable(g, static_cast<int>(d.size())))
        throw InvalidInput("unstable (g,n) = (" + std::to_string(g) + "," + std::to_string(d.size()) + ")");
    return lookup(g, d);
}

Rational kappa_psi_integral(int g, const std::vector<int>& psi, const std::vector<int>& kappa)
{
    const int n = static_cast<int>(psi.size());
    if (!stable(g, n))
        throw InvalidInput("unstable (g,n) = (" + std::to_string(g) + "," + std::to_string(n) + ")");
    int degree = std::accumulate(psi.begin(), psi.end(), 0) + std::accumulate(kappa.begin(), kappa.end(), 0);
    if (degree != 3 * g - 3 + n) return 0;
    if (kappa.empty()) return lookup(g, psi);

    // kappa_{b_1} K = pi_*(psi_{n+1}^{b_1+1} prod_{j>1} (kappa_{b_j} - psi_{n+1}^{b_j}))
    const int first = kappa.front();
    std::vector<int> others(kappa.begin() + 1, kappa.end());
    const int m = static_cast<int>(others.size());
    Rational total = 0;
    for (unsigned mask = 0; mask < (1u << m); ++mask) {
        int extra = first + 1;
        std::vector<int> kept;
        for (int j = 0; j < m; ++j) {
            if ((mask >> j) & 1u)
                extra += others[static_cast<std::size_t>(j)];
            else
                kept.push_back(others[static_cast<std::size_t>(j)]);
        }
        auto p = psi;
        p.push_back(extra);
        Rational term = kappa_psi_integral(g, p, kept);
        total += (__builtin_popcount(mask) % 2) ? Rational(-term) : term;
    }
    return total;
}

namespace integral_cache {

std::vector<std::pair<Key, Rational>> snapshot()
{
    std::shared_lock lock(cache_mutex);
    return {cache.begin(), cache.end()};
}

std::size_t size()
{
    std::shared_lock lock(cache_mutex);
    return cache.size();
}

void clear()
{
    std::unique_lock lock(cache_mutex);
    cache.clear();
}

void load(const std::string& path)
{
    std::ifstream in(path);
    if (!in) return;
    std::string line;
    std::unique_lock lock(cache_mutex);
    while (std::getline(in, line)) {
        auto tab = line.find('\t');
        auto colon = line.find(':');
        if (tab == std::string::npos || colon == std::string::npos || colon > tab) continue;
        int g = std::stoi(line.substr(0, colon));
        std::vector<int> d;
        std::stringstream list(line.substr(colon + 1, tab - colon - 1));
        std::string item;
        while (std::getline(list, item, ','))
            if (!item.empty()) d.push_back(std::stoi(item));
        std::sort(d.begin(), d.end(), std::greater<>());
        cache.emplace(Key{g, d}, parse_rational(line.substr(tab + 1)));
    }
}

void save(const std::string& path)
{
    std::ofstream out(path);
    if (!out) throw InvalidInput("cannot write cache file " + path);
    for (const auto& [key, value] : snapshot()) {
        out << key.first << ':';
        for (std::size_t i = 0; i < key.second.size(); ++i) out << (i ? "," : "") << key.second[i];
        out << '\t' << to_string(value) << '\n';
    }
}

}  // namespace integral_cache

}  // namespace tautdr
