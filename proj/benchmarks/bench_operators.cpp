#include <benchmark/benchmark.h>

#include "jetvar/calculus.hpp"
#include "jetvar/euler.hpp"
#include "jetvar/homotopy.hpp"
#include "jetvar/random.hpp"
#include "jetvar/syntax.hpp"

using namespace jetvar;

namespace {

RunConfig config(int n, int m) {
  RunConfig c;
  c.n = n;
  c.m = m;
  return c;
}

// Random inputs are drawn outside the timed loop.
void BM_TotalDerivative(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  std::vector<ScalarExpr> inputs;
  for (std::uint64_t k = 0; k < 64; ++k) {
    FormGenerator g(config(n, 2), k);
    inputs.push_back(g.scalar());
  }
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(total_derivative(inputs[i++ % inputs.size()], n));
  }
}
BENCHMARK(BM_TotalDerivative)->DenseRange(1, 3);

void BM_EulerLagrange(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  std::vector<ScalarExpr> inputs;
  for (std::uint64_t k = 0; k < 64; ++k) {
    FormGenerator g(config(n, 2), k);
    inputs.push_back(g.scalar());
  }
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(euler_lagrange(inputs[i++ % inputs.size()]));
  }
}
BENCHMARK(BM_EulerLagrange)->DenseRange(1, 3);

void BM_DhPotentialHessian(benchmark::State& state) {
  const Bundle b(2, 1);
  Form hessian = parse_form("(u1_11*u1_22 - u1_12**2)*dx1^dx2", b);
  for (auto _ : state) {
    benchmark::DoNotOptimize(dh_potential(hessian, SolveBounds{2, 2, true}));
  }
}
BENCHMARK(BM_DhPotentialHessian)->Unit(benchmark::kMillisecond);

void BM_DhPotentialRandom(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  std::vector<Form> inputs;
  for (std::uint64_t k = 0; inputs.size() < 16; ++k) {
    FormGenerator g(config(n, 1), k);
    Form phi = d_h(g.form({0, n - 1}));
    if (!phi.is_zero()) {
      inputs.push_back(phi);
    }
  }
  std::size_t i = 0;
  for (auto _ : state) {
    const Form& phi = inputs[i++ % inputs.size()];
    benchmark::DoNotOptimize(dh_potential(phi, default_bounds(phi)));
  }
}
BENCHMARK(BM_DhPotentialRandom)->DenseRange(1, 3)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
