#include "heis/grid.hpp"
#include "heis/grid_kernels.hpp"
#include "heis/rng.hpp"

#include <benchmark/benchmark.h>

#include <vector>

using heis::cplx;
using heis::GridSpec;
using heis::vecn;
namespace k = heis::kernels;

namespace {

std::vector<cplx> make_values(std::size_t size) {
  heis::Rng rng(7, "bench");
  std::vector<cplx> v(size);
  for (auto& c : v) c = cplx(rng.real(-1.0, 1.0), rng.real(-1.0, 1.0));
  return v;
}

void bm_fd_serial(benchmark::State& state) {
  const GridSpec spec(1, 8.0, std::size_t(state.range(0)));
  const auto in = make_values(spec.size());
  std::vector<cplx> out;
  for (auto _ : state) {
    k::fd_derivative_serial(spec, in, 0, out);
    benchmark::DoNotOptimize(out.data());
  }
}

void bm_fd_parallel(benchmark::State& state) {
  const GridSpec spec(1, 8.0, std::size_t(state.range(0)));
  const auto in = make_values(spec.size());
  std::vector<cplx> out;
  for (auto _ : state) {
    k::fd_derivative_parallel(spec, in, 0, out);
    benchmark::DoNotOptimize(out.data());
  }
}

void bm_quant_serial(benchmark::State& state) {
  const GridSpec spec(1, 8.0, std::size_t(state.range(0)));
  const auto in = make_values(spec.size());
  const vecn xi{0.7}, eta{-0.4};
  std::vector<cplx> out;
  for (auto _ : state) {
    k::quant_apply_serial(spec, in, xi, eta, 0.3, out);
    benchmark::DoNotOptimize(out.data());
  }
}

void bm_quant_parallel(benchmark::State& state) {
  const GridSpec spec(1, 8.0, std::size_t(state.range(0)));
  const auto in = make_values(spec.size());
  const vecn xi{0.7}, eta{-0.4};
  std::vector<cplx> out;
  for (auto _ : state) {
    k::quant_apply_parallel(spec, in, xi, eta, 0.3, out);
    benchmark::DoNotOptimize(out.data());
  }
}

void bm_dot_serial(benchmark::State& state) {
  const auto a = make_values(std::size_t(state.range(0)));
  const auto b = make_values(std::size_t(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(k::dot_conj_serial(a, b, 1.0));
  }
}

void bm_dot_parallel(benchmark::State& state) {
  const auto a = make_values(std::size_t(state.range(0)));
  const auto b = make_values(std::size_t(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(k::dot_conj_parallel(a, b, 1.0));
  }
}

}  // namespace

BENCHMARK(bm_fd_serial)->Arg(1 << 14)->Arg(1 << 17)->Arg(1 << 20);
BENCHMARK(bm_fd_parallel)->Arg(1 << 14)->Arg(1 << 17)->Arg(1 << 20);
BENCHMARK(bm_quant_serial)->Arg(1 << 14)->Arg(1 << 17)->Arg(1 << 20);
BENCHMARK(bm_quant_parallel)->Arg(1 << 14)->Arg(1 << 17)->Arg(1 << 20);
BENCHMARK(bm_dot_serial)->Arg(1 << 14)->Arg(1 << 17)->Arg(1 << 20);
BENCHMARK(bm_dot_parallel)->Arg(1 << 14)->Arg(1 << 17)->Arg(1 << 20);

BENCHMARK_MAIN();
