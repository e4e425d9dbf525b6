#include "tautdr/pixton.hpp"

#include "tautdr/errors.hpp"
#include "tautdr/weighting_kernel.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <shared_mutex>

namespace tautdr {

namespace {

std::size_t at(int i) { return static_cast<std::size_t>(i); }

// r-independent expansion of the Pixton sum for one (g, n, d).
//
// The degree-d part of a graph's contribution splits into profiles: psi degree
// j_i at leg i and degree k_e from edge e.  A profile contributes
//   prod_i a_i^{2 j_i} * M(k+1) * r^{-h1} / |Aut|   times fixed rationals,
// where M is the weighting moment; the fixed part is stored as integers over
// one denominator per graph.
struct Profile {
    std::vector<int> leg_degree;
    int moment = 0;  // index into GraphPlan::moments
    std::vector<std::pair<int, Integer>> entries;  // (term, scaled constant)
};

struct GraphPlan {
    StableGraph graph;
    int h1 = 0;
    std::vector<std::vector<int>> moments;  // distinct edge exponent vectors
    std::vector<Profile> profiles;
    std::unique_ptr<WeightingKernel> kernel;
};

struct Plan {
    std::vector<DecoratedStratum> terms;
    std::vector<int> term_graph;
    std::vector<Integer> term_denominator;  // lcm-scale * |Aut|, per term
    std::vector<GraphPlan> graphs;
};

void compositions(int total, int parts, std::vector<int>& cur, const std::function<void()>& visit)
{
    if (static_cast<int>(cur.size()) == parts) {
        if (total == 0) visit();
        return;
    }
    for (int x = 0; x <= total; ++x) {
        cur.push_back(x);
        compositions(total - x, parts, cur, visit);
        cur.pop_back();
    }
}

Plan build_plan(int g, int n, int d)
{
    Plan plan;
    if (d > 3 * g - 3 + n) return plan;
    std::map<DecoratedStratum, int> index;
    for (const auto& G : enumerate_stable_graphs(g, n)) {
        const int ne = G.num_edges();
        if (ne > d) continue;
        const auto edges = G.edges();
        GraphPlan gp;
        gp.graph = G;
        gp.h1 = G.h1();
        std::map<std::vector<int>, int> moment_index;
        std::vector<std::pair<std::size_t, std::pair<int, Rational>>> raw;  // (profile, (term, constant))
        std::vector<int> degrees;
        compositions(d - ne, n + ne, degrees, [&] {
            std::vector<int> j(degrees.begin(), degrees.begin() + n);
            std::vector<int> k(degrees.begin() + n, degrees.end());
            Rational base = 1;
            for (int i = 0; i < n; ++i) base /= power(Rational(2), j[at(i)]) * factorial(j[at(i)]);
            for (int e = 0; e < ne; ++e) {
                const int ke = k[at(e)];
                base /= power(Rational(2), ke + 1) * factorial(ke + 1);
                if (ke % 2) base = -base;
            }
            Profile prof;
            prof.leg_degree = j;
            std::vector<int> m(k);
            for (auto& x : m) x += 1;
            auto [it, inserted] = moment_index.emplace(m, static_cast<int>(gp.moments.size()));
            if (inserted) gp.moments.push_back(m);
            prof.moment = it->second;
            const std::size_t pi = gp.profiles.size();
            // distribute each edge degree over its two half-edges
            std::vector<int> split(at(ne), 0);
            std::function<void(int, Rational)> spread = [&](int e, Rational c) {
                if (e == ne) {
                    auto s = DecoratedStratum::plain(G);
                    for (int i = 0; i < n; ++i) s.psi[at(G.leg(i))] = j[at(i)];
                    for (int f = 0; f < ne; ++f) {
                        s.psi[at(edges[at(f)].first)] += split[at(f)];
                        s.psi[at(edges[at(f)].second)] += k[at(f)] - split[at(f)];
                    }
                    if (!s.fits()) return;
                    auto key = canonical_form(s);
                    auto [ti, fresh] = index.emplace(key, static_cast<int>(plan.terms.size()));
                    if (fresh) {
                        plan.terms.push_back(key);
                        plan.term_graph.push_back(static_cast<int>(plan.graphs.size()));
                    }
                    raw.push_back({pi, {ti->second, c}});
                    return;
                }
                for (int x = 0; x <= k[at(e)]; ++x) {
                    split[at(e)] = x;
                    spread(e + 1, c * binomial(k[at(e)], x));
                }
            };
            spread(0, base);
            gp.profiles.push_back(std::move(prof));
        });
        // common denominator for this graph
        Integer scale = 1;
        for (const auto& [pi, tc] : raw) mpz_lcm(scale.get_mpz_t(), scale.get_mpz_t(), tc.second.get_den_mpz_t());
        for (const auto& [pi, tc] : raw) {
            Rational scaled = tc.second * scale;
            auto& entries = gp.profiles[pi].entries;
            auto it = std::find_if(entries.begin(), entries.end(), [&](const auto& x) { return x.first == tc.first; });
            if (it == entries.end())
                entries.emplace_back(tc.first, scaled.get_num());
            else
                it->second += scaled.get_num();
        }
        const Integer den = scale * static_cast<unsigned long>(automorphism_count(G));
        plan.term_denominator.resize(plan.terms.size(), den);
        gp.kernel = std::make_unique<WeightingKernel>(G);
        plan.graphs.push_back(std::move(gp));
    }
    return plan;
}

const Plan& plan_for(int g, int n, int d)
{
    static std::shared_mutex mutex;
    static std::map<std::tuple<int, int, int>, std::unique_ptr<Plan>> cache;
    const auto key = std::make_tuple(g, n, d);
    {
        std::shared_lock lock(mutex);
        if (auto it = cache.find(key); it != cache.end()) return *it->second;
    }
    auto plan = std::make_unique<Plan>(build_plan(g, n, d));
    std::unique_lock lock(mutex);
    auto [it, inserted] = cache.emplace(key, std::move(plan));
    return *it->second;
}

// Numerators of every plan term at one r; term t's value is
// num[t] / (term_denominator[t] * r^{h1}).
std::vector<Integer> plan_numerators(const Plan& plan, const std::vector<int>& a, int r)
{
    std::vector<Integer> num(plan.terms.size(), 0);
    Integer mult;
    for (const auto& gp : plan.graphs) {
        const auto moments = gp.kernel->moments(a, r, gp.moments);
        for (const auto& prof : gp.profiles) {
            mult = moments[at(prof.moment)];
            if (mult == 0) continue;
            for (std::size_t i = 0; i < a.size(); ++i)
                for (int j = 0; j < prof.leg_degree[i]; ++j) mult *= a[i] * a[i];
            if (mult == 0) continue;
            for (const auto& [t, c] : prof.entries) mpz_addmul(num[at(t)].get_mpz_t(), c.get_mpz_t(), mult.get_mpz_t());
        }
    }
    return num;
}

int term_h1(const Plan& plan, std::size_t t) { return plan.graphs[at(plan.term_graph[t])].h1; }

Integer power_of(int r, int k)
{
    Integer out;
    mpz_ui_pow_ui(out.get_mpz_t(), static_cast<unsigned long>(r), static_cast<unsigned long>(k));
    return out;
}

void check_r(const DRProblem& p, int r)
{
    const int bound = r_lower_bound(p);
    if (r <= bound)
        throw InvalidInput("r = " + std::to_string(r) + " is not above the polynomiality bound " + std::to_string(bound));
}

}  // namespace

void DRProblem::validate() const
{
    const int n = num_legs();
    if (std::accumulate(a.begin(), a.end(), 0) != 0) throw InvalidInput("sum of the a-vector must be 0");
    if (g < 0 || 2 * g - 2 + n <= 0)
        throw InvalidInput("unstable (g,n) = (" + std::to_string(g) + "," + std::to_string(n) + ")");
    if (d < 0) throw InvalidInput("degree must be non-negative");
}

int r_lower_bound(const DRProblem& p)
{
    int mx = 1, total = 0;
    for (int x : p.a) {
        mx = std::max(mx, std::abs(x));
        total += std::abs(x);
    }
    return p.d * mx + total + 2;
}

TautClass pixton_class(const DRProblem& p, int r)
{
    p.validate();
    check_r(p, r);
    const auto& plan = plan_for(p.g, p.num_legs(), p.d);
    TautClass out(p.g, p.num_legs());
    const auto num = plan_numerators(plan, p.a, r);
    for (std::size_t t = 0; t < num.size(); ++t) {
        if (num[t] == 0) continue;
        Rational value(num[t], plan.term_denominator[t] * power_of(r, term_h1(plan, t)));
        value.canonicalize();
        out.add_canonical(plan.terms[t], value);
    }
    return out;
}

RPolynomialClass r_polynomial(const DRProblem& p, RPolynomialOptions options)
{
    p.validate();
    const int first = options.first_r > 0 ? options.first_r : r_lower_bound(p) + 1;
    check_r(p, first);
    RPolynomialClass result;
    result.degree_bound = 2 * p.d;
    result.cls = RTautClass(p.g, p.num_legs());
    const int nodes = 2 * p.d + 3;
    for (int i = 0; i < nodes; ++i) result.samples.push_back(first + i);
    for (int i = 0; i < 3; ++i) result.held_out.push_back(first + nodes + i);

    const auto& plan = plan_for(p.g, p.num_legs(), p.d);
    if (plan.terms.empty()) return result;
    std::vector<std::vector<Integer>> at_sample, at_held;
    for (int r : result.samples) at_sample.push_back(plan_numerators(plan, p.a, r));
    for (int r : result.held_out) at_held.push_back(plan_numerators(plan, p.a, r));

    // Bring the samples of a term to one denominator: with L_h = lcm_i r_i^h,
    // Y_i = num_i * L_h / r_i^h and value_i = Y_i / (den_t * L_h).
    int max_h1 = 0;
    for (const auto& gp : plan.graphs) max_h1 = std::max(max_h1, gp.h1);
    std::vector<Integer> lcm_h(at(max_h1 + 1), 1);
    std::vector<std::vector<Integer>> lift(at(max_h1 + 1));
    for (int h = 0; h <= max_h1; ++h) {
        for (int r : result.samples) mpz_lcm(lcm_h[at(h)].get_mpz_t(), lcm_h[at(h)].get_mpz_t(), power_of(r, h).get_mpz_t());
        for (int r : result.samples) lift[at(h)].push_back(lcm_h[at(h)] / power_of(r, h));
    }
    const NodeInterpolator interp(result.samples);
    std::vector<NodeInterpolator::Row> rows;
    for (int z : result.held_out) rows.push_back(interp.row_at(z));

    std::vector<Integer> ys(result.samples.size());
    Integer acc, lhs, rhs;
    for (std::size_t t = 0; t < plan.terms.size(); ++t) {
        const int h = term_h1(plan, t);
        for (std::size_t i = 0; i < ys.size(); ++i) ys[i] = at_sample[i][t] * lift[at(h)][i];
        // held-out: sum_i w_i Y_i / (E * L_h) == num(z) / z^h
        for (std::size_t j = 0; j < rows.size(); ++j) {
            acc = 0;
            for (std::size_t i = 0; i < ys.size(); ++i) mpz_addmul(acc.get_mpz_t(), rows[j].weights[i].get_mpz_t(), ys[i].get_mpz_t());
            lhs = acc * power_of(result.held_out[j], h);
            rhs = rows[j].denominator * lcm_h[at(h)] * at_held[j][t];
            if (lhs != rhs)
                throw PolynomialityError("coefficient of " + plan.terms[t].to_string() +
                                         " misses the held-out value at r = " + std::to_string(result.held_out[j]));
        }
        RPolynomial poly = interp.fit(ys, plan.term_denominator[t] * lcm_h[at(h)]);
        if (poly.degree() > result.degree_bound)
            throw PolynomialityError("coefficient of " + plan.terms[t].to_string() + " has r-degree " +
                                     std::to_string(poly.degree()) + " > " + std::to_string(result.degree_bound));
        result.cls.add_canonical(plan.terms[t], poly);
    }
    return result;
}

TautClass constant_term(const RPolynomialClass& c) { return constant_term(c.cls); }

TautClass dr_cycle(int g, const std::vector<int>& a) { return constant_term(r_polynomial({g, a, g})); }

std::string to_string(Verdict v)
{
    switch (v) {
    case Verdict::PairingNull: return "pairing-null";
    case Verdict::Fail: return "FAIL";
    case Verdict::Incomplete: return "incomplete";
    }
    return "?";
}

VanishingReport vanishing_check(const DRProblem& p, RPolynomialOptions options)
{
    p.validate();
    if (p.d <= p.g) throw InvalidInput("vanishing check needs d > g");
    VanishingReport report;
    report.problem = p;
    report.poly = r_polynomial(p, options);
    report.constant = constant_term(report.poly);
    const int k = p.dimension() - p.d;
    if (k < 0) return report;  // degree above the dimension: the class is 0

    std::vector<DecoratedStratum> generators = enumerate_generators(p.g, p.num_legs(), k);
    std::vector<TautClass> at_samples;
    for (int r : report.poly.samples) at_samples.push_back(pixton_class(p, r));
    std::vector<Rational> xs(report.poly.samples.begin(), report.poly.samples.end());

    bool nonzero = false;
    for (const auto& gen : generators) {
        const TautClass gc = stratum_class(gen);
        try {
            const Rational direct = pair(report.constant, gc);
            std::vector<Rational> ys;
            for (const auto& x : at_samples) ys.push_back(pair(x, gc));
            const Rational route = RPolynomial::interpolate(xs, ys).constant_term();
            report.pairings.emplace_back(gen, direct);
            report.interpolated_pairings.push_back(route);
            if (sgn(direct) != 0 || direct != route) nonzero = true;
        } catch (const CapabilityError&) {
            report.complete = false;
        }
    }
    report.verdict = nonzero ? Verdict::Fail : report.complete ? Verdict::PairingNull : Verdict::Incomplete;
    return report;
}

}  // namespace tautdr
