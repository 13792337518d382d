#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "heis/grid.hpp"
#include "heis/grid_kernels.hpp"
#include "heis/rng.hpp"

#include <cmath>
#include <numbers>

using heis::cplx;
using heis::GridFunction;
using heis::GridSpec;
using heis::Rng;
using heis::TestFunction;
using heis::vecn;
namespace k = heis::kernels;

namespace {

std::vector<cplx> random_values(Rng& rng, std::size_t size) {
  std::vector<cplx> v(size);
  for (auto& c : v) c = cplx(rng.real(-1.0, 1.0), rng.real(-1.0, 1.0));
  return v;
}

}  // namespace

TEST_CASE("fd derivative: parallel output is bit-identical to the reference") {
  for (const GridSpec spec : {GridSpec(1, 8.0, 32768), GridSpec(2, 4.0, 128)}) {
    Rng rng(42, "kernels-fd");
    const auto in = random_values(rng, spec.size());
    for (std::size_t axis = 0; axis < spec.n; ++axis) {
      std::vector<cplx> serial, parallel;
      k::fd_derivative_serial(spec, in, axis, serial);
      k::fd_derivative_parallel(spec, in, axis, parallel);
      CHECK(serial == parallel);
    }
  }
}

TEST_CASE("fd derivative: fourth-order accuracy on a sampled Gaussian") {
  TestFunction f = TestFunction::gaussian(1, 1.0);
  f.freq[0] = 0.2;
  const TestFunction df = f.derivative(0);
  auto worst_error = [&](std::size_t N) {
    const GridSpec spec(1, 8.0, N);
    const GridFunction g = heis::sample(spec, f);
    std::vector<cplx> d;
    k::fd_derivative_serial(spec, g.values, 0, d);
    double worst = 0.0;
    for (std::size_t i = 0; i < spec.size(); ++i)
      worst = std::max(worst, std::abs(d[i] - df.evaluate({spec.point(i)})));
    return worst;
  };
  const double coarse = worst_error(1024);
  const double fine = worst_error(2048);
  CHECK(fine <= 1e-7);
  // Halving h divides the error by ~16 for a fourth-order stencil.
  CHECK(coarse / fine >= 12.0);
}

TEST_CASE("quant kernel: parallel output is bit-identical to the reference") {
  const GridSpec spec(1, 8.0, 32768);
  Rng rng(42, "kernels-quant");
  const auto in = random_values(rng, spec.size());
  const vecn xi{0.7}, eta{-0.4};
  std::vector<cplx> serial, parallel;
  k::quant_apply_serial(spec, in, xi, eta, 0.3, serial);
  k::quant_apply_parallel(spec, in, xi, eta, 0.3, parallel);
  CHECK(serial == parallel);
}

TEST_CASE("shift-modulate kernel: parallel output is bit-identical, shifts clip") {
  const GridSpec spec(1, 8.0, 32768);
  Rng rng(42, "kernels-shift");
  const auto in = random_values(rng, spec.size());
  const std::vector<long> steps{37};
  const vecn freq{-1.3};
  std::vector<cplx> serial, parallel;
  k::shift_modulate_serial(spec, in, steps, cplx(0.6, 0.8), freq, serial);
  k::shift_modulate_parallel(spec, in, steps, cplx(0.6, 0.8), freq, parallel);
  CHECK(serial == parallel);
  // The first 37 slots had no source sample and must be exactly zero.
  for (long i = 0; i < 37; ++i) CHECK(serial[std::size_t(i)] == cplx(0.0));
  CHECK(serial[37] != cplx(0.0));
}

TEST_CASE("blocked inner product: parallel reduction matches the reference bitwise") {
  Rng rng(42, "kernels-dot");
  for (std::size_t size : {std::size_t(1000), std::size_t(4096), std::size_t(100000)}) {
    const auto a = random_values(rng, size);
    const auto b = random_values(rng, size);
    const cplx serial = k::dot_conj_serial(a, b, 0.0078125);
    const cplx parallel = k::dot_conj_parallel(a, b, 0.0078125);
    CHECK(serial.real() == parallel.real());
    CHECK(serial.imag() == parallel.imag());
  }
}

TEST_CASE("blocked inner product: repeated runs are bit-for-bit reproducible") {
  Rng rng(42, "kernels-repro");
  const auto a = random_values(rng, 50000);
  const auto b = random_values(rng, 50000);
  const cplx first = k::dot_conj_parallel(a, b, 1.0);
  for (int rep = 0; rep < 5; ++rep) {
    const cplx again = k::dot_conj_parallel(a, b, 1.0);
    CHECK(first.real() == again.real());
    CHECK(first.imag() == again.imag());
  }
}
