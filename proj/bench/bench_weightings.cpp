// Weighting moments: OpenMP kernel vs the serial brute-force reference, and
// the end-to-end Pixton evaluation that sits on top of the kernel.

#include "tautdr/pixton.hpp"
#include "tautdr/stable_graph.hpp"
#include "tautdr/weighting_kernel.hpp"

#include <benchmark/benchmark.h>

using namespace tautdr;

namespace {

// Highest-h1 loop-free graph of M̄_{g,n} with the most edges: the kernel's
// worst case.
const StableGraph& heavy_graph(int g, int n)
{
    static std::map<std::pair<int, int>, StableGraph> memo;
    auto [it, fresh] = memo.try_emplace({g, n});
    if (fresh) {
        int best = -1;
        for (const auto& G : enumerate_stable_graphs(g, n)) {
            bool loop = false;
            for (auto [a, b] : G.edges()) loop |= G.vertex_of(a) == G.vertex_of(b);
            if (loop) continue;
            const int score = 100 * G.h1() + G.num_edges();
            if (score > best) {
                best = score;
                it->second = G;
            }
        }
    }
    return it->second;
}

std::vector<int> legs_for(int n)
{
    std::vector<int> a(static_cast<std::size_t>(n), 0);
    if (n >= 2) {
        a[0] = 3;
        a[1] = -3;
    }
    return a;
}

void BM_KernelMoments(benchmark::State& state)
{
    const auto& G = heavy_graph(2, 1);
    const int r = static_cast<int>(state.range(0));
    WeightingKernel kernel(G);
    const std::vector<std::vector<int>> ms{std::vector<int>(static_cast<std::size_t>(G.num_edges()), 1)};
    for (auto _ : state) benchmark::DoNotOptimize(kernel.moments(legs_for(1), r, ms));
    state.SetLabel(G.to_string());
}

void BM_ReferenceMoments(benchmark::State& state)
{
    const auto& G = heavy_graph(2, 1);
    const int r = static_cast<int>(state.range(0));
    const std::vector<int> m(static_cast<std::size_t>(G.num_edges()), 1);
    for (auto _ : state) benchmark::DoNotOptimize(weighting_moment_reference(G, legs_for(1), r, m));
    state.SetLabel(G.to_string());
}

void BM_KernelMomentsGenus3(benchmark::State& state)
{
    const auto& G = heavy_graph(3, 0);
    const int r = static_cast<int>(state.range(0));
    WeightingKernel kernel(G);
    const std::vector<std::vector<int>> ms{std::vector<int>(static_cast<std::size_t>(G.num_edges()), 1)};
    for (auto _ : state) benchmark::DoNotOptimize(kernel.moments({}, r, ms));
}

void BM_ReferenceMomentsGenus3(benchmark::State& state)
{
    const auto& G = heavy_graph(3, 0);
    const int r = static_cast<int>(state.range(0));
    const std::vector<int> m(static_cast<std::size_t>(G.num_edges()), 1);
    for (auto _ : state) benchmark::DoNotOptimize(weighting_moment_reference(G, {}, r, m));
}

void BM_PixtonClass(benchmark::State& state)
{
    const DRProblem p{1, {2, -1, -1}, 2};
    const int r = r_lower_bound(p) + 1 + static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(pixton_class(p, r));
}

}  // namespace

BENCHMARK(BM_KernelMoments)->Arg(8)->Arg(16)->Arg(32);
BENCHMARK(BM_ReferenceMoments)->Arg(8)->Arg(16)->Arg(32);
BENCHMARK(BM_KernelMomentsGenus3)->Arg(6)->Arg(10);
BENCHMARK(BM_ReferenceMomentsGenus3)->Arg(6)->Arg(10);
BENCHMARK(BM_PixtonClass)->Arg(0)->Arg(20);

BENCHMARK_MAIN();
