// Serial and parallel schedules of the main kernels on the same inputs.
#include <benchmark/benchmark.h>

#include "homotransfer/transfer.hpp"
#include "support/corpus.hpp"

using namespace homotransfer;
using namespace homotransfer::testing;

namespace {

Exec exec_of(const benchmark::State& s) { return s.range(0) ? Exec::parallel : Exec::serial; }

const DGAlgebra& sample() {
    static const DGAlgebra a = [] {
        MonomialOptions o;
        o.zero_d_rate = 0.0;
        return dga_corpus(Field::rationals(), 1, 17, o).front();
    }();
    return a;
}

void BM_BarContraction(benchmark::State& state) {
    const auto& A = sample();
    const auto c = homology_contraction(A.complex());
    for (auto _ : state) benchmark::DoNotOptimize(perturbed_bar_contraction(A, c, 4, exec_of(state)));
}

void BM_TransferHpt(benchmark::State& state) {
    const auto& A = sample();
    const auto c = homology_contraction(A.complex());
    TransferOptions o;
    o.max_arity = 6;
    o.exec = exec_of(state);
    const auto s = AInfinityStructure::from_dga(A, 6);
    for (auto _ : state) benchmark::DoNotOptimize(transfer_hpt(s, c, o));
}

void BM_Stasheff(benchmark::State& state) {
    const auto& A = sample();
    TransferOptions o;
    o.max_arity = 6;
    const auto r = transfer_hpt(AInfinityStructure::from_dga(A, 6), homology_contraction(A.complex()), o);
    for (auto _ : state) benchmark::DoNotOptimize(check_stasheff(r.structure, exec_of(state)));
}

}  // namespace

// argument: 0 serial, 1 parallel
BENCHMARK(BM_BarContraction)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_TransferHpt)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Stasheff)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
