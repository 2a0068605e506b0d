#include <benchmark/benchmark.h>

#include "qdouble/characters.hpp"
#include "qdouble/lattice.hpp"
#include "qdouble/modular.hpp"
#include "qdouble/quantum_double.hpp"

using namespace qdouble;

namespace {

GroupPtr group_for(int which) {
    switch (which) {
        case 0: return symmetric(3);
        case 1: return symmetric(4);
        case 2: return alternating(5);
        default: return alternating(6);
    }
}

void BM_CharacterTable(benchmark::State& state) {
    auto g = group_for(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(character_table(g, 1));
    state.SetLabel(g->label());
}
BENCHMARK(BM_CharacterTable)->DenseRange(0, 3)->Unit(benchmark::kMillisecond);

void BM_SMatrix(benchmark::State& state) {
    QuantumDouble qd(group_for(static_cast<int>(state.range(0))));
    for (auto _ : state) benchmark::DoNotOptimize(s_matrix(qd));
    state.SetLabel(qd.group()->label());
}
BENCHMARK(BM_SMatrix)->DenseRange(0, 3)->Unit(benchmark::kMillisecond);

void BM_TranspositionSearch(benchmark::State& state) {
    QuantumDouble qd(group_for(static_cast<int>(state.range(0))));
    auto d = modular_data(qd);
    for (auto _ : state) benchmark::DoNotOptimize(search_transposition_invariants(qd, d));
    state.SetLabel(qd.group()->label());
}
BENCHMARK(BM_TranspositionSearch)->DenseRange(0, 3)->Unit(benchmark::kMillisecond);

void BM_FaceProjector(benchmark::State& state) {
    auto s3 = symmetric(3);
    auto p = minimal_boundary_patch(s3, {whole_group(s3), trivial_cocycle(s3)});
    auto psi = random_state(p, 1);
    auto op = face_op(p, p->s1(), 0);
    for (auto _ : state) benchmark::DoNotOptimize(op.apply(psi.amplitudes));
    state.SetItemsProcessed(state.iterations() * p->dimension());
}
BENCHMARK(BM_FaceProjector)->Unit(benchmark::kMillisecond);

void BM_VertexOperator(benchmark::State& state) {
    auto p = build_patch(cyclic(2), 3, 2);
    auto psi = random_state(p, 1);
    auto op = vertex_op(p, p->internal_vertices().front(), 1);
    for (auto _ : state) benchmark::DoNotOptimize(op.apply(psi.amplitudes));
    state.SetItemsProcessed(state.iterations() * p->dimension());
}
BENCHMARK(BM_VertexOperator)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
