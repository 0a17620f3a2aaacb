#include <benchmark/benchmark.h>

#include "fade/analysis.hpp"
#include "fade/fractional_ode.hpp"
#include "fade/galerkin_assembly.hpp"
#include "fade/solver.hpp"

namespace {

using namespace fade;

void BM_BuildBasis(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(build_basis(n));
}
BENCHMARK(BM_BuildBasis)->Arg(4)->Arg(10)->Arg(32);

void BM_FractionalMatrix(benchmark::State& state) {
    const BasisSet basis(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(fractional_galerkin_matrix(basis, 1.5));
}
BENCHMARK(BM_FractionalMatrix)->Arg(4)->Arg(10)->Arg(20);

void BM_MatrixExponential(benchmark::State& state) {
    const ProblemSpec spec = [&] {
        ProblemSpec s;
        s.g = parse("exp(-x)");
        s.n = static_cast<int>(state.range(0));
        return s;
    }();
    const Eigen::MatrixXd m = solve(spec).system().matrix;
    for (auto _ : state) benchmark::DoNotOptimize(matrix_exponential(m, 0.5));
}
BENCHMARK(BM_MatrixExponential)->Arg(4)->Arg(10);

void BM_MittagLefflerPropagator(benchmark::State& state) {
    ProblemSpec spec;
    spec.alpha = 0.5;
    spec.g = parse("x^2");
    spec.n = 4;
    const Eigen::MatrixXd m = solve(spec).system().matrix;
    for (auto _ : state) benchmark::DoNotOptimize(mittag_leffler_propagator(m, 0.5, 0.5));
}
BENCHMARK(BM_MittagLefflerPropagator);

void BM_SolveExample1(benchmark::State& state) {
    ProblemSpec spec;
    spec.g = parse("exp(-x)");
    spec.n = static_cast<int>(state.range(0));
    for (auto _ : state) {
        const Solution sol = solve(spec);
        benchmark::DoNotOptimize(evaluate_solution(sol, 0.5, 0.5));
    }
}
BENCHMARK(BM_SolveExample1)->Arg(4)->Arg(10);

void BM_EmpiricalTruncation(benchmark::State& state) {
    const Expression f = parse("exp(-x)");
    for (auto _ : state) benchmark::DoNotOptimize(empirical_truncation(f, 8));
}
BENCHMARK(BM_EmpiricalTruncation);

}  // namespace
BENCHMARK_MAIN();
