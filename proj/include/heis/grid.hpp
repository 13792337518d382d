#pragma once

#include "heis/test_function.hpp"

#include <complex>
#include <cstddef>
#include <vector>

namespace heis {

/// Uniform grid over [-L, L)^n with N samples per axis, N a power of two.
/// Index layout is row-major with the last axis fastest.
struct GridSpec {
  std::size_t n = 1;
  double L = 8.0;
  std::size_t N = 2048;

  GridSpec() = default;
  GridSpec(std::size_t n_, double L_, std::size_t N_);

  double h() const { return 2.0 * L / double(N); }
  std::size_t size() const;
  double point(std::size_t k) const { return -L + double(k) * h(); }
  vecn point_of(std::size_t flat) const;
  std::size_t stride(std::size_t axis) const;

  friend bool operator==(const GridSpec& a, const GridSpec& b) {
    return a.n == b.n && a.L == b.L && a.N == b.N;
  }
};

struct GridFunction {
  GridSpec spec;
  std::vector<cplx> values;

  static GridFunction zero(const GridSpec& spec);
};

GridFunction sample(const GridSpec& spec, const TestFunction& f);

/// Quadrature inner product sum f conj(g) h^n; conjugate-linear in the
/// second slot. Deterministic summation order, identical for the serial and
/// parallel paths.
cplx inner_product(const GridFunction& f, const GridFunction& g);

double norm(const GridFunction& f);
double sup_abs(const GridFunction& f);
double sup_abs_diff(const GridFunction& f, const GridFunction& g);

}  // namespace heis
