#include <benchmark/benchmark.h>

#include <random>

#include "jetvar/jetvar.hpp"

namespace {

using namespace jetvar;

Expr random_lagrangian(std::mt19937_64& rng, int n, int m) {
  std::vector<Coord> vars;
  for (int i = 1; i <= n; ++i) vars.push_back(Coord::base(i));
  for (int mu = 1; mu <= m; ++mu) {
    vars.push_back(Coord::fiber(mu));
    for (int i = 1; i <= n; ++i) vars.push_back(Coord::jet(mu, {i}));
  }
  return random_polynomial(rng, vars, 3);
}

ProjectableField boost_like(int n, int m) {
  std::vector<Expr> xi(static_cast<std::size_t>(n));
  std::vector<Expr> Xi;
  xi[0] = Expr::x(1) * Expr::x(1);
  for (int mu = 1; mu <= m; ++mu) Xi.push_back(Expr::x(1) * Expr::y(mu));
  return ProjectableField(xi, Xi);
}

void BM_Euler(benchmark::State& state) {
  int n = static_cast<int>(state.range(0));
  int m = static_cast<int>(state.range(1));
  std::mt19937_64 rng(1);
  JetContext ctx(n, m, 1);
  Expr L = random_lagrangian(rng, n, m);
  for (auto _ : state) benchmark::DoNotOptimize(euler(ctx, L));
}
BENCHMARK(BM_Euler)->Args({1, 1})->Args({2, 2})->Args({3, 2});

void BM_TotalDerivative(benchmark::State& state) {
  std::mt19937_64 rng(2);
  JetContext ctx(3, 2, 2);
  Expr e = random_lagrangian(rng, 3, 2);
  for (auto _ : state) benchmark::DoNotOptimize(total_derivative(ctx, e, 2));
}
BENCHMARK(BM_TotalDerivative);

void BM_Prolong(benchmark::State& state) {
  int r = static_cast<int>(state.range(0));
  JetContext ctx(2, 2, r);
  ProjectableField X = boost_like(2, 2);
  for (auto _ : state) benchmark::DoNotOptimize(prolong(ctx, X, r));
}
BENCHMARK(BM_Prolong)->DenseRange(1, 4);

void BM_LepageDelta(benchmark::State& state) {
  int n = static_cast<int>(state.range(0));
  std::mt19937_64 rng(3);
  JetContext ctx(n, 2, 1);
  Expr L = random_lagrangian(rng, n, 2);
  for (auto _ : state) benchmark::DoNotOptimize(lepage_delta(ctx, L));
}
BENCHMARK(BM_LepageDelta)->DenseRange(1, 3);

void BM_NullCertificate(benchmark::State& state) {
  auto f = make_function_symbol("f", {Coord::base(1), Coord::base(2), Coord::fiber(1), Coord::fiber(2)});
  JetContext ctx(2, 2, 1, {f});
  Expr L = -null_from_form(ctx, Expr::function(f) * DiffForm::dy(1));
  for (auto _ : state) benchmark::DoNotOptimize(null_certificate(ctx, L));
}
BENCHMARK(BM_NullCertificate);

void BM_ConservedCurrent(benchmark::State& state) {
  std::mt19937_64 rng(4);
  JetContext ctx(2, 2, 1);
  Expr L = random_lagrangian(rng, 2, 2);
  ProjectableField X = boost_like(2, 2);
  for (auto _ : state) benchmark::DoNotOptimize(conserved_current(ctx, L, X));
}
BENCHMARK(BM_ConservedCurrent);

void BM_CovarianceSystem(benchmark::State& state) {
  std::mt19937_64 rng(5);
  JetContext ctx(2, 2, 1);
  Expr L = random_lagrangian(rng, 2, 2);
  TensorType tx = TensorType::from_signature("+");
  for (auto _ : state) benchmark::DoNotOptimize(covariance_system(ctx, L, tx));
}
BENCHMARK(BM_CovarianceSystem);

void BM_GradientCheck(benchmark::State& state) {
  int N = static_cast<int>(state.range(0));
  JetContext ctx(2, 1, 1);
  Expr z1 = Expr::z(1, {1});
  Expr z2 = Expr::z(1, {2});
  Expr L = scaled(z1 * z1 + z2 * z2, Rational(1, 2)) + Expr::y(1) * Expr::y(1) * Expr::y(1);
  PolySection gamma({Expr::x(1) * Expr::x(1) * Expr::x(2) + Expr::x(2) * Expr::x(2) * Expr::x(2)});
  for (auto _ : state) benchmark::DoNotOptimize(discrete_action_gradient_check(ctx, L, gamma, {2, N}));
}
BENCHMARK(BM_GradientCheck)->Arg(50)->Arg(100)->Arg(200)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
