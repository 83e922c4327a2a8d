#include "mpw/fourier.hpp"
#include "mpw/greens.hpp"
#include "mpw/lattice.hpp"
#include "mpw/linear_flow.hpp"
#include "mpw/quantum_spectra.hpp"
#include "mpw/spectral_pde.hpp"
#include "mpw/variational.hpp"

#include <benchmark/benchmark.h>

#include <cmath>
#include <random>

using namespace mpw;

static void BM_HeatTorus(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  const int dim = static_cast<int>(state.range(1));
  const auto u0 = TorusGrid::sample(dim, m, [](const Vec& x) { return Complex(std::sin(x(0))); });
  for (auto _ : state) benchmark::DoNotOptimize(pde::heat_torus(u0, 1.0, 1.0));
}
BENCHMARK(BM_HeatTorus)->Args({256, 1})->Args({4096, 1})->Args({64, 2})->Args({32, 3});

static void BM_MatrixExponential(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  std::mt19937_64 rng(1);
  std::normal_distribution<double> g(0.0, 1.0);
  CMat a(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) a(i, j) = Complex(g(rng), g(rng));
  }
  const CMat h = kI * 0.5 * (a + a.adjoint());
  for (auto _ : state) benchmark::DoNotOptimize(flow::matrix_exponential(h, 1.0));
}
BENCHMARK(BM_MatrixExponential)->Arg(8)->Arg(32)->Arg(128);

static void BM_SawtoothQuadrature(benchmark::State& state) {
  const int radius = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(fourier::fourier_coeffs_quadrature([](double x) { return x; }, radius, 256));
  }
}
BENCHMARK(BM_SawtoothQuadrature)->Arg(64)->Arg(1024);

static void BM_TightBindingEvolve(benchmark::State& state) {
  lattice::TightBindingModel m;
  m.kind = lattice::ModelKind::honeycomb_two_band;
  m.side = static_cast<int>(state.range(0));
  CVec psi = CVec::Zero(m.state_size());
  psi(0) = 1.0;
  for (auto _ : state) benchmark::DoNotOptimize(lattice::tb_evolve(m, psi, 1.0));
}
BENCHMARK(BM_TightBindingEvolve)->Arg(8)->Arg(16)->Unit(benchmark::kMillisecond);

static void BM_BirmanSchwinger(benchmark::State& state) {
  const auto v = quantum::sample_potential([](double x) { return std::abs(x) <= 0.5 ? -1.0 : 0.0; });
  for (auto _ : state) benchmark::DoNotOptimize(quantum::birman_schwinger(v, 0.2));
}
BENCHMARK(BM_BirmanSchwinger)->Unit(benchmark::kMillisecond);

static void BM_RectangleDirichlet(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto p = greens::make_rectangle_problem(
      n, n, [](double x, double y) { return std::sin(kPi * x) * std::sin(kPi * y); },
      [](double x, double y) { return x * y; });
  for (auto _ : state) benchmark::DoNotOptimize(greens::solve_rectangle_dirichlet(p));
}
BENCHMARK(BM_RectangleDirichlet)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);

static void BM_GLGradient(benchmark::State& state) {
  auto s = variational::gl_state(2, static_cast<int>(state.range(0)), 2.0);
  for (Eigen::Index i = 0; i < s.psi.size(); ++i) s.psi[i] = std::polar(0.5, 0.01 * static_cast<double>(i));
  for (auto _ : state) benchmark::DoNotOptimize(variational::gl_gradient(s));
}
BENCHMARK(BM_GLGradient)->Arg(32)->Arg(64);

static void BM_Maxwell(benchmark::State& state) {
  std::mt19937_64 rng(7);
  pde::EMField em;
  em.e = pde::random_solenoidal_field(16, 2, rng);
  em.h = pde::random_solenoidal_field(16, 2, rng);
  for (auto _ : state) benchmark::DoNotOptimize(pde::maxwell_free(em, 0.1, 1e-3));
}
BENCHMARK(BM_Maxwell)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
