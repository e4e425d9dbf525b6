#include "tautdr/weighting_kernel.hpp"

#include "tautdr/errors.hpp"

#include <map>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace tautdr {

namespace {

std::size_t at(int i) { return static_cast<std::size_t>(i); }

// Below this many core weightings the OpenMP region costs more than it saves.
constexpr long long kParallelThreshold = 2048;

}  // namespace

WeightingKernel::WeightingKernel(const StableGraph& g) : graph_(g)
{
    const auto edges = g.edges();
    std::vector<bool> is_loop_half(at(g.num_half_edges()), false);
    for (std::size_t e = 0; e < edges.size(); ++e) {
        auto [h, k] = edges[e];
        if (g.vertex_of(h) == g.vertex_of(k)) {
            loops_.push_back(static_cast<int>(e));
            is_loop_half[at(h)] = is_loop_half[at(k)] = true;
        }
    }
    std::vector<int> renumber(at(g.num_half_edges()), -1);
    int next = 0;
    for (int h = 0; h < g.num_half_edges(); ++h)
        if (!is_loop_half[at(h)]) renumber[at(h)] = next++;
    std::vector<int> vertex_of(at(next)), involution(at(next)), legs;
    for (int h = 0; h < g.num_half_edges(); ++h) {
        if (renumber[at(h)] < 0) continue;
        vertex_of[at(renumber[at(h)])] = g.vertex_of(h);
        involution[at(renumber[at(h)])] = renumber[at(g.involution(h))];
    }
    for (int l : g.legs()) legs.push_back(renumber[at(l)]);
    core_ = StableGraph(g.genera(), vertex_of, involution, legs);

    std::map<int, int> edge_of_first;
    for (std::size_t e = 0; e < edges.size(); ++e)
        if (renumber[at(edges[e].first)] >= 0) edge_of_first[renumber[at(edges[e].first)]] = static_cast<int>(e);
    for (auto [h, k] : core_.edges()) core_to_edge_.push_back(edge_of_first.at(h));
    plan_ = detail::SpanningPlan::build(core_);
}

std::vector<Integer> WeightingKernel::moments(const std::vector<int>& a, int r,
                                              const std::vector<std::vector<int>>& ms) const
{
    if (r < 2) throw InvalidInput("weighting modulus must be at least 2");
    if (static_cast<int>(a.size()) != graph_.num_legs()) throw InvalidInput("a-vector length differs from leg count");
    const std::size_t nm = ms.size();

    std::vector<Integer> loop_factor(nm, 1);
    for (std::size_t i = 0; i < nm; ++i)
        for (int e : loops_) {
            const int m = ms[i][at(e)];
            loop_factor[i] *= m == 0 ? Integer(r) : Integer(loop_weight_sum_polynomial(m)(r));
        }

    const int f = free_dimension();
    long long total = 1;
    for (int i = 0; i < f; ++i) total *= r;
    const auto& core_edges = plan_.edges;
    const int nce = static_cast<int>(core_edges.size());

    std::vector<Integer> acc(nm, 0);
    auto run = [&](long long begin, long long end, std::vector<Integer>& local) {
        std::vector<int> free_values(at(f)), w(at(core_.num_half_edges()));
        Integer t, prod, power;
        for (long long idx = begin; idx < end; ++idx) {
            long long x = idx;
            for (int i = 0; i < f; ++i) {
                free_values[at(i)] = static_cast<int>(x % r);
                x /= r;
            }
            if (!plan_.solve(core_, a, r, free_values, w)) continue;
            for (std::size_t i = 0; i < nm; ++i) {
                prod = 1;
                for (int ce = 0; ce < nce && prod != 0; ++ce) {
                    const int m = ms[i][at(core_to_edge_[at(ce)])];
                    if (m == 0) continue;
                    const long we = w[at(core_edges[at(ce)].first)];
                    t = we * (r - we);
                    mpz_pow_ui(power.get_mpz_t(), t.get_mpz_t(), static_cast<unsigned long>(m));
                    prod *= power;
                }
                local[i] += prod;
            }
        }
    };

    if (total < kParallelThreshold) {
        run(0, total, acc);
    } else {
#pragma omp parallel
        {
            std::vector<Integer> local(nm, 0);
#pragma omp for schedule(static)
            for (long long chunk = 0; chunk < total; chunk += 256) run(chunk, std::min(chunk + 256, total), local);
#pragma omp critical
            for (std::size_t i = 0; i < nm; ++i) acc[i] += local[i];
        }
    }
    for (std::size_t i = 0; i < nm; ++i) acc[i] *= loop_factor[i];
    return acc;
}

std::vector<Integer> weighting_moments(const StableGraph& g, const std::vector<int>& a, int r,
                                       const std::vector<std::vector<int>>& ms)
{
    return WeightingKernel(g).moments(a, r, ms);
}

Integer weighting_moment_reference(const StableGraph& g, const std::vector<int>& a, int r, const std::vector<int>& m)
{
    const auto edges = g.edges();
    const int ne = static_cast<int>(edges.size());
    std::vector<int> x(at(ne), 0);
    WeightingModR w{r, std::vector<int>(at(g.num_half_edges()), 0)};
    for (int i = 0; i < g.num_legs(); ++i) w.w[at(g.leg(i))] = mod_r(a[at(i)], r);
    Integer total = 0;
    while (true) {
        for (int e = 0; e < ne; ++e) {
            w.w[at(edges[at(e)].first)] = x[at(e)];
            w.w[at(edges[at(e)].second)] = mod_r(-x[at(e)], r);
        }
        if (is_valid_weighting(g, a, w)) {
            Integer prod = 1;
            for (int e = 0; e < ne; ++e)
                for (int j = 0; j < m[at(e)]; ++j) prod *= static_cast<long>(x[at(e)]) * (r - x[at(e)]);
            total += prod;
        }
        int i = 0;
        while (i < ne && ++x[at(i)] == r) x[at(i++)] = 0;
        if (i == ne) break;
    }
    return total;
}

}  // namespace tautdr
