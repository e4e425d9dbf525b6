#include "tautdr/cohft.hpp"

#include "tautdr/bipartite.hpp"
#include "tautdr/localization.hpp"
#include "tautdr/stable_graph.hpp"

#include <map>
#include <mutex>
#include <sstream>

namespace tautdr {

namespace {

template <class T>
std::size_t at(T i)
{
    return static_cast<std::size_t>(i);
}

// (P^1, pt): chi(P^1) = 2 and one log point.
constexpr int kDegreeTangent = 2;
constexpr int kDivisorPoints = 1;

// Omega_{1,1,0}(x) = pi_*( ev^*x . c_1(E^dual (x) T_X(-log D)) ), with
// c_1 = -lambda_1 (x) 1 + 1 (x) c_1(T_X(-log D)).  Returns (coefficient of
// the fundamental class, coefficient of lambda_1).
std::pair<Rational, Rational> omega_11(const InsertionElement& x)
{
    if (x.level != 0) return {0, 0};  // contact orders must sum to beta.D = 0
    const Rational log_tangent_degree = kDegreeTangent - kDivisorPoints;
    // integral over X of x * (-lambda_1 * 1): only x's point part survives
    const Rational lambda_part = -x.omega;
    // integral over X of x * c_1(T(-log D)) * 1: only x's unit part survives
    const Rational fundamental_part = x.one * log_tangent_degree;
    return {fundamental_part, lambda_part};
}

Rational compute_omega_033(int i)
{
    BipartiteType type{0, 1, 0, {i, -i}};
    Rational total = 0;
    for (const auto& [G, aut] : enumerate_bipartite(type)) {
        // M̄_{0,3} is a point: only the symbol-free part of C_G survives.
        total += assemble_t0(G).constant() / Rational(static_cast<long>(aut));
    }
    return total;
}

std::string tuple_string(const std::vector<int>& v)
{
    std::ostringstream os;
    os << "(";
    for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
    os << ")";
    return os.str();
}

void note(AxiomResult& r, const std::string& what)
{
    ++r.failed;
    if (r.failures.size() < 8) r.failures.push_back(what);
}

TensorClass tensor(const std::vector<const TautClass*>& factors, const Rational& c)
{
    TensorClass out;
    std::vector<DecoratedStratum> key(factors.size());
    std::function<void(std::size_t, Rational)> rec = [&](std::size_t i, Rational acc) {
        if (i == factors.size()) {
            auto [it, inserted] = out.emplace(key, acc);
            if (!inserted) {
                it->second += acc;
                if (sgn(it->second) == 0) out.erase(it);
            }
            return;
        }
        for (const auto& [s, x] : factors[i]->terms()) {
            key[i] = s;
            rec(i + 1, acc * x);
        }
    };
    if (sgn(c) != 0) rec(0, c);
    return out;
}

void accumulate(TensorClass& into, const TensorClass& x)
{
    for (const auto& [k, c] : x) {
        auto [it, inserted] = into.emplace(k, c);
        if (!inserted) {
            it->second += c;
            if (sgn(it->second) == 0) into.erase(it);
        }
    }
}

}  // namespace

void InsertionElement::validate() const
{
    if (level != 0 && sgn(omega) != 0) throw InvalidInput("insertions at nonzero level live on D = pt");
}

std::string InsertionElement::to_string() const
{
    std::ostringstream os;
    os << "[";
    if (level == 0 && sgn(omega) != 0) {
        os << tautdr::to_string(one) << "+" << tautdr::to_string(omega) << "w";
    } else {
        os << tautdr::to_string(one);
    }
    os << "]_" << level;
    return os.str();
}

Rational insertion_pairing(const InsertionElement& a, const InsertionElement& b)
{
    a.validate();
    b.validate();
    if (a.level + b.level != 0) return 0;
    if (a.level == 0) return a.one * b.omega + a.omega * b.one;  // integral over P^1
    return a.one * b.one;                                         // integral over a point
}

std::vector<InsertionElement> truncated_basis(int K)
{
    if (K < 0) throw InvalidInput("level bound must be non-negative");
    std::vector<InsertionElement> basis{InsertionElement::unit(0), InsertionElement::point()};
    for (int i = -K; i <= K; ++i)
        if (i != 0) basis.push_back(InsertionElement::unit(i));
    return basis;
}

RationalMatrix gram_matrix(const std::vector<InsertionElement>& basis)
{
    RationalMatrix m(basis.size(), std::vector<Rational>(basis.size()));
    for (std::size_t i = 0; i < basis.size(); ++i)
        for (std::size_t j = 0; j < basis.size(); ++j) m[i][j] = insertion_pairing(basis[i], basis[j]);
    return m;
}

RationalMatrix inverse(const RationalMatrix& m)
{
    const std::size_t n = m.size();
    RationalMatrix a = m, inv(n, std::vector<Rational>(n));
    for (std::size_t i = 0; i < n; ++i) inv[i][i] = 1;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && sgn(a[piv][col]) == 0) ++piv;
        if (piv == n) throw InvalidInput("pairing is degenerate");
        std::swap(a[piv], a[col]);
        std::swap(inv[piv], inv[col]);
        const Rational p = a[col][col];
        for (std::size_t j = 0; j < n; ++j) {
            a[col][j] /= p;
            inv[col][j] /= p;
        }
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col || sgn(a[r][col]) == 0) continue;
            const Rational f = a[r][col];
            for (std::size_t j = 0; j < n; ++j) {
                a[r][j] -= f * a[col][j];
                inv[r][j] -= f * inv[col][j];
            }
        }
    }
    return inv;
}

Rational OmegaExamples::omega_033(int i) const
{
    if (i == 0) throw InvalidInput("omega_033 needs a nonzero contact order");
    static std::mutex mu;
    static std::map<int, Rational> cache;
    std::lock_guard lock(mu);
    auto it = cache.find(i);
    if (it == cache.end()) it = cache.emplace(i, compute_omega_033(i)).first;
    return it->second;
}

OmegaExamples example_omega_values()
{
    OmegaExamples ex;
    ex.omega_113 = omega_11(InsertionElement::unit(0)).first;
    return ex;
}

std::optional<Rational> omega_030(const InsertionElement& a, const InsertionElement& b, const InsertionElement& c)
{
    a.validate();
    b.validate();
    c.validate();
    if (a.level + b.level + c.level != 0) return Rational(0);
    std::vector<const InsertionElement*> zero, other;
    for (const auto* x : {&a, &b, &c}) (x->level == 0 ? zero : other).push_back(x);
    if (other.empty()) {
        // constant maps: integral over P^1 of the triple product
        return a.one * b.one * c.omega + a.one * b.omega * c.one + a.omega * b.one * c.one;
    }
    if (zero.size() == 1) {
        // the map is constant at D, so a point class at the interior marking restricts to 0
        return zero[0]->one * other[0]->one * other[1]->one * example_omega_values().omega_033(other[0]->level);
    }
    return std::nullopt;
}

LoopDemo loop_axiom_demo(int K)
{
    if (K < 1) throw InvalidInput("K must be at least 1");
    const auto basis = truncated_basis(K);
    const auto eta_inv = inverse(gram_matrix(basis));
    LoopDemo d;
    d.K = K;
    d.lhs = example_omega_values().omega_113;
    for (std::size_t j = 0; j < basis.size(); ++j)
        for (std::size_t k = 0; k < basis.size(); ++k) {
            if (sgn(eta_inv[j][k]) == 0) continue;
            d.partial_rhs += eta_inv[j][k] * *omega_030(InsertionElement::unit(0), basis[j], basis[k]);
        }
    return d;
}

bool CohFTReport::partial() const
{
    return !symmetry.complete() || !unit.complete() || !splitting.complete() || !loop.complete();
}

CohFTReport cohft_axiom_predicates(const CohFTFamily& family)
{
    const int B = static_cast<int>(family.basis_names.size());
    if (static_cast<int>(family.eta.size()) != B) throw InvalidInput("pairing size differs from basis size");
    const auto eta_inv = inverse(family.eta);

    std::map<std::pair<int, std::vector<int>>, std::optional<TautClass>> memo;
    auto omega = [&](int g, const std::vector<int>& in) -> const std::optional<TautClass>& {
        auto key = std::make_pair(g, in);
        auto it = memo.find(key);
        if (it == memo.end()) it = memo.emplace(key, family.omega(g, in)).first;
        return it->second;
    };

    CohFTReport rep;
    for (const auto& [g, m] : family.range) {
        std::vector<std::vector<int>> tuples{{}};
        for (int i = 0; i < m; ++i) {
            std::vector<std::vector<int>> next;
            for (const auto& t : tuples)
                for (int b = 0; b < B; ++b) {
                    next.push_back(t);
                    next.back().push_back(b);
                }
            tuples = std::move(next);
        }
        const std::string where = "(g,m)=(" + std::to_string(g) + "," + std::to_string(m) + ") inputs ";

        std::vector<StableGraph> one_edge;
        for (const auto& G : enumerate_stable_graphs(g, m))
            if (G.num_edges() == 1) one_edge.push_back(G);

        for (const auto& v : tuples) {
            const auto& base = omega(g, v);

            // S_m: swapping inputs i, i+1 equals relabeling the markings
            for (int i = 0; i + 1 < m; ++i) {
                auto w = v;
                std::swap(w[at(i)], w[at(i + 1)]);
                const auto& other = omega(g, w);
                ++rep.symmetry.checked;
                if (!base || !other) {
                    ++rep.symmetry.missing;
                    continue;
                }
                std::vector<int> perm(at(m));
                for (int k = 0; k < m; ++k) perm[at(k)] = k;
                std::swap(perm[at(i)], perm[at(i + 1)]);
                if (!(permute_legs(*base, perm) == *other))
                    note(rep.symmetry, where + tuple_string(v) + " swap " + std::to_string(i + 1) + "<->" +
                                           std::to_string(i + 2));
            }

            // forgetful pullback of the unit
            {
                auto w = v;
                w.push_back(family.unit);
                const auto& up = omega(g, w);
                ++rep.unit.checked;
                if (!base || !up) {
                    ++rep.unit.missing;
                } else if (!(forgetful_pullback(*base) == *up)) {
                    note(rep.unit, where + tuple_string(v) + " forgetful");
                }
            }
            if (g == 0 && m == 3 && v[2] == family.unit) {
                ++rep.unit.checked;
                if (!base) {
                    ++rep.unit.missing;
                } else if (!(*base == family.eta[at(v[0])][at(v[1])] * TautClass::fundamental(0, 3))) {
                    note(rep.unit, where + tuple_string(v) + " three-point unit");
                }
            }

            for (const auto& Bg : one_edge) {
                const bool loop = Bg.num_vertices() == 1;
                AxiomResult& res = loop ? rep.loop : rep.splitting;
                ++res.checked;
                if (!base) {
                    ++res.missing;
                    continue;
                }
                TensorClass lhs;
                try {
                    lhs = pullback_to_graph(Bg, *base);
                } catch (const CapabilityError&) {
                    ++res.missing;
                    continue;
                }
                TensorClass rhs;
                bool missing = false;
                for (int j = 0; j < B && !missing; ++j)
                    for (int k = 0; k < B && !missing; ++k) {
                        if (sgn(eta_inv[at(j)][at(k)]) == 0) continue;
                        std::vector<std::optional<TautClass>> local;
                        for (int u = 0; u < Bg.num_vertices(); ++u) {
                            std::vector<int> in;
                            for (int h : Bg.half_edges_at(u)) {
                                if (Bg.is_leg(h)) {
                                    for (int i = 0; i < m; ++i)
                                        if (Bg.leg(i) == h) in.push_back(v[at(i)]);
                                } else {
                                    in.push_back(h < Bg.involution(h) ? j : k);
                                }
                            }
                            local.push_back(omega(Bg.genus(u), in));
                            if (!local.back()) missing = true;
                        }
                        if (missing) break;
                        std::vector<const TautClass*> ptrs;
                        for (const auto& c : local) ptrs.push_back(&*c);
                        accumulate(rhs, tensor(ptrs, eta_inv[at(j)][at(k)]));
                    }
                if (missing) {
                    ++res.missing;
                } else if (lhs != rhs) {
                    note(res, where + tuple_string(v) + " graph " + Bg.to_string());
                }
            }
        }
    }
    return rep;
}

CohFTFamily relative_p1_fragment(int K)
{
    const auto basis = truncated_basis(K);
    CohFTFamily f;
    for (const auto& b : basis) f.basis_names.push_back(b.to_string());
    f.eta = gram_matrix(basis);
    f.unit = 0;
    f.range = {{0, 3}, {1, 1}};
    f.omega = [basis](int g, const std::vector<int>& in) -> std::optional<TautClass> {
        const int m = static_cast<int>(in.size());
        int level_sum = 0;
        for (int i : in) level_sum += basis[at(i)].level;
        if (level_sum != 0) return TautClass(g, m);  // contact orders cannot add up to beta.D = 0
        if (g == 0 && m == 3) {
            auto x = omega_030(basis[at(in[0])], basis[at(in[1])], basis[at(in[2])]);
            if (!x) return std::nullopt;
            return *x * TautClass::fundamental(0, 3);
        }
        if (g == 1 && m == 1) {
            // lambda_1 = psi_1 on M̄_{1,1}
            auto [fund, lambda] = omega_11(basis[at(in[0])]);
            return fund * TautClass::fundamental(1, 1) + lambda * psi_monomial(1, {1});
        }
        return std::nullopt;
    };
    return f;
}

}  // namespace tautdr
