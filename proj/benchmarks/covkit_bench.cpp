#include "covkit/fields.hpp"
#include "covkit/generators.hpp"
#include "covkit/geometry.hpp"
#include "covkit/heisenberg.hpp"
#include "covkit/representations.hpp"

#include <benchmark/benchmark.h>

using namespace covkit;

namespace {

LorentzParams sample_omega() {
    LorentzParams omega;
    omega << 0.3, -0.2, 0.1, 0.5, -0.4, 0.25;
    return omega;
}

void BM_LorentzExp(benchmark::State& state) {
    const LorentzParams omega = sample_omega();
    for (auto _ : state) benchmark::DoNotOptimize(lorentz_exp(omega));
}
BENCHMARK(BM_LorentzExp);

void BM_RepMatrix(benchmark::State& state) {
    const FieldRep rep = state.range(0) == 0 ? FieldRep::vector() : FieldRep::spinor();
    const GroupParams g = GroupParams::lorentz(sample_omega());
    for (auto _ : state) benchmark::DoNotOptimize(rep_matrix(rep, g));
}
BENCHMARK(BM_RepMatrix)->Arg(0)->Arg(1);

void BM_Pairing(benchmark::State& state) {
    const FieldFunction phi = WavePacket::gaussian(Vec4::Zero(), 1.0).field();
    const FieldFunction f = WavePacket::gaussian(Vec4(0.2, 0.0, 0.0, 0.0), 0.9).field();
    const GridSpec grid = GridSpec::cube(6.0, static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(pairing(phi, f, grid, 1));
    state.SetItemsProcessed(state.iterations() * state.range(0) * state.range(0) * state.range(0) * state.range(0));
}
BENCHMARK(BM_Pairing)->Arg(9)->Arg(17)->Arg(33)->Unit(benchmark::kMillisecond);

void BM_VerifyLocal(benchmark::State& state) {
    WavePacket p;
    p.components.assign(4, ComponentPolynomial{});
    const FieldFunction field = p.field();
    const ParamFamily family = poincare_family(FieldRep::spinor(), true);
    const std::vector<Vec4> points = sample_points(static_cast<std::size_t>(state.range(0)), Vec4::Constant(-1.5),
                                                   Vec4::Constant(1.5), 1);
    for (auto _ : state) benchmark::DoNotOptimize(verify_local_relation(field, family, FDScheme{}, points));
}
BENCHMARK(BM_VerifyLocal)->Arg(50)->Arg(200)->Unit(benchmark::kMillisecond);

void BM_ToyGlobal(benchmark::State& state) {
    const ToyOperatorModel model = ToyOperatorModel::number_operator(static_cast<int>(state.range(0)), 2.5);
    for (auto _ : state) benchmark::DoNotOptimize(toy_global_check(model, 0.3));
}
BENCHMARK(BM_ToyGlobal)->Arg(16)->Arg(64);

}  // namespace

BENCHMARK_MAIN();
