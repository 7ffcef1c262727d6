#include <benchmark/benchmark.h>

#include "spinforge/assembly.hpp"
#include "spinforge/entanglement.hpp"
#include "spinforge/grid.hpp"
#include "spinforge/multiplets.hpp"
#include "spinforge/state_io.hpp"

namespace sf = spinforge;

namespace {

void BM_ScalarMultiply(benchmark::State& state) {
    sf::QuadraticScalar a = sf::QuadraticScalar::from_parts(3, -2, 5, 1, 7);
    sf::QuadraticScalar b = sf::QuadraticScalar::from_parts(-1, 4, 2, -3, 5);
    for (auto _ : state) {
        benchmark::DoNotOptimize(a * b);
    }
}
BENCHMARK(BM_ScalarMultiply);

void BM_ScalarSqrt(benchmark::State& state) {
    sf::QuadraticScalar x = sf::QuadraticScalar::from_parts(11, 6, 0, 0, 9);  // (3+sqrt2)^2/9
    for (auto _ : state) {
        benchmark::DoNotOptimize(x.try_sqrt());
    }
}
BENCHMARK(BM_ScalarSqrt);

void BM_QuadrupletDerivation(benchmark::State& state) {
    for (auto _ : state) {
        benchmark::DoNotOptimize(sf::quadruplet());
    }
}
BENCHMARK(BM_QuadrupletDerivation);

void BM_SSquared(benchmark::State& state) {
    sf::SpinState x = sf::quadruplet().states[1].state;
    for (auto _ : state) {
        benchmark::DoNotOptimize(sf::apply_s_squared({1, 2, 3}, x));
    }
}
BENCHMARK(BM_SSquared);

void BM_Symmetrize(benchmark::State& state) {
    sf::SpinState basis = sf::SpinState::basis("uud");
    for (auto _ : state) {
        benchmark::DoNotOptimize(sf::project(sf::ProjectorKind::Symmetrizer, basis));
    }
}
BENCHMARK(BM_Symmetrize);

void BM_ClassifyPairSinglet(benchmark::State& state) {
    sf::TotalState x = sf::assemble(sf::AssemblyCase::PairSinglet, {"n", "n", "l"}, 1);
    for (auto _ : state) {
        benchmark::DoNotOptimize(sf::classify(x));
    }
}
BENCHMARK(BM_ClassifyPairSinglet);

void BM_EntropyQuadrupletCut1(benchmark::State& state) {
    sf::SpinState x = sf::quadruplet().states[1].state;
    sf::Bipartition cut = sf::Bipartition::of(3, {1});
    for (auto _ : state) {
        benchmark::DoNotOptimize(sf::entropy_bits(x, cut));
    }
}
BENCHMARK(BM_EntropyQuadrupletCut1);

void BM_ScanSingleSeparation(benchmark::State& state) {
    sf::ScanParams params = sf::default_scan_params(1.0);
    std::vector<double> distances = {6.0};
    for (auto _ : state) {
        benchmark::DoNotOptimize(sf::separation_scan(params, distances));
    }
}
BENCHMARK(BM_ScanSingleSeparation);

void BM_ParseStateText(benchmark::State& state) {
    std::string text =
        sf::write_state_text(sf::assemble(sf::AssemblyCase::PairSinglet, {"n", "n", "l"}, 1));
    for (auto _ : state) {
        benchmark::DoNotOptimize(sf::parse_state_text(text));
    }
}
BENCHMARK(BM_ParseStateText);

}  // namespace

BENCHMARK_MAIN();
