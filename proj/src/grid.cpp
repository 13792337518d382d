#include "heis/grid.hpp"

#include "heis/grid_kernels.hpp"

#include <cmath>
#include <stdexcept>

namespace heis {

GridSpec::GridSpec(std::size_t n_, double L_, std::size_t N_)
    : n(n_), L(L_), N(N_) {
  if (n == 0) throw std::invalid_argument("grid dimension must be positive");
  if (!(L > 0.0)) throw std::invalid_argument("grid half-width must be positive");
  if (N < 2 || (N & (N - 1)) != 0)
    throw std::invalid_argument("grid sample count must be a power of two");
}

std::size_t GridSpec::size() const {
  std::size_t total = 1;
  for (std::size_t j = 0; j < n; ++j) total *= N;
  return total;
}

std::size_t GridSpec::stride(std::size_t axis) const {
  std::size_t s = 1;
  for (std::size_t j = axis + 1; j < n; ++j) s *= N;
  return s;
}

vecn GridSpec::point_of(std::size_t flat) const {
  vecn z(n, 0.0);
  for (std::size_t j = n; j-- > 0;) {
    z[j] = point(flat % N);
    flat /= N;
  }
  return z;
}

GridFunction GridFunction::zero(const GridSpec& spec) {
  return GridFunction{spec, std::vector<cplx>(spec.size(), cplx(0.0))};
}

GridFunction sample(const GridSpec& spec, const TestFunction& f) {
  if (f.dim() != spec.n)
    throw std::invalid_argument("function and grid dimension mismatch");
  GridFunction out = GridFunction::zero(spec);
  for (std::size_t i = 0; i < out.values.size(); ++i)
    out.values[i] = f.evaluate(spec.point_of(i));
  return out;
}

cplx inner_product(const GridFunction& f, const GridFunction& g) {
  if (!(f.spec == g.spec)) throw std::invalid_argument("grid spec mismatch");
  const double weight = std::pow(f.spec.h(), double(f.spec.n));
  if (kernels::parallel_enabled(f.values.size()))
    return kernels::dot_conj_parallel(f.values, g.values, weight);
  return kernels::dot_conj_serial(f.values, g.values, weight);
}

double norm(const GridFunction& f) {
  return std::sqrt(std::abs(inner_product(f, f)));
}

double sup_abs(const GridFunction& f) {
  double m = 0.0;
  for (const cplx& v : f.values) m = std::max(m, std::abs(v));
  return m;
}

double sup_abs_diff(const GridFunction& f, const GridFunction& g) {
  if (!(f.spec == g.spec)) throw std::invalid_argument("grid spec mismatch");
  double m = 0.0;
  for (std::size_t i = 0; i < f.values.size(); ++i)
    m = std::max(m, std::abs(f.values[i] - g.values[i]));
  return m;
}

}  // namespace heis
