#include "heis/grid_kernels.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace heis::kernels {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr std::size_t kBlock = 4096;

// Stencil body shared by both fd variants.
inline cplx fd_at(const GridSpec& spec, const std::vector<cplx>& in,
                  std::size_t i, std::size_t axis, std::size_t stride,
                  double inv12h) {
  const long k = long((i / stride) % spec.N);
  const long nmax = long(spec.N);
  const cplx p1 = (k + 1 < nmax) ? in[i + stride] : cplx(0.0);
  const cplx p2 = (k + 2 < nmax) ? in[i + 2 * stride] : cplx(0.0);
  const cplx m1 = (k - 1 >= 0) ? in[i - stride] : cplx(0.0);
  const cplx m2 = (k - 2 >= 0) ? in[i - 2 * stride] : cplx(0.0);
  return (-p2 + 8.0 * p1 - 8.0 * m1 + m2) * inv12h;
}

inline cplx quant_at(const GridSpec& spec, const std::vector<cplx>& in,
                     const vecn& xi, const vecn& eta, double s,
                     const std::vector<std::size_t>& strides, double inv12h,
                     std::size_t i) {
  cplx acc(0.0);
  for (std::size_t j = 0; j < spec.n; ++j)
    if (xi[j] != 0.0)
      acc -= xi[j] * fd_at(spec, in, i, j, strides[j], inv12h);
  double dot = 0.0;
  std::size_t rest = i;
  for (std::size_t j = 0; j < spec.n; ++j) {
    const std::size_t k = rest / strides[j];
    rest -= k * strides[j];
    dot += eta[j] * spec.point(k);
  }
  acc += cplx(0.0, kTwoPi) * (s - dot) * in[i];
  return acc;
}

inline cplx shift_at(const GridSpec& spec, const std::vector<cplx>& in,
                     const std::vector<long>& steps, cplx scale,
                     const vecn& freq, const std::vector<std::size_t>& strides,
                     std::size_t i) {
  double phase = 0.0;
  long src = long(i);
  bool inside = true;
  std::size_t rest = i;
  for (std::size_t j = 0; j < spec.n; ++j) {
    const long k = long(rest / strides[j]);
    rest -= std::size_t(k) * strides[j];
    phase += freq[j] * spec.point(std::size_t(k));
    const long ks = k - steps[j];
    if (ks < 0 || ks >= long(spec.N)) inside = false;
    src -= steps[j] * long(strides[j]);
  }
  if (!inside) return cplx(0.0);
  const double arg = kTwoPi * phase;
  return scale * cplx(std::cos(arg), std::sin(arg)) * in[std::size_t(src)];
}

std::vector<std::size_t> all_strides(const GridSpec& spec) {
  std::vector<std::size_t> out(spec.n);
  for (std::size_t j = 0; j < spec.n; ++j) out[j] = spec.stride(j);
  return out;
}

cplx dot_conj_blocked(const std::vector<cplx>& a, const std::vector<cplx>& b,
                      double weight, bool parallel) {
  if (a.size() != b.size()) throw std::invalid_argument("size mismatch");
  const std::size_t size = a.size();
  const std::size_t nblocks = (size + kBlock - 1) / kBlock;
  std::vector<cplx> partial(nblocks, cplx(0.0));
#ifdef _OPENMP
#pragma omp parallel for if (parallel) schedule(static)
#endif
  for (long bi = 0; bi < long(nblocks); ++bi) {
    const std::size_t lo = std::size_t(bi) * kBlock;
    const std::size_t hi = std::min(size, lo + kBlock);
    cplx acc(0.0);
    for (std::size_t i = lo; i < hi; ++i) acc += a[i] * std::conj(b[i]);
    partial[std::size_t(bi)] = acc;
  }
  cplx total(0.0);
  for (const cplx& p : partial) total += p;
  return total * weight;
}

}  // namespace

bool parallel_enabled(std::size_t size) {
#ifdef _OPENMP
  return size >= 2 * kBlock;
#else
  (void)size;
  return false;
#endif
}

void fd_derivative_serial(const GridSpec& spec, const std::vector<cplx>& in,
                          std::size_t axis, std::vector<cplx>& out) {
  const std::size_t stride = spec.stride(axis);
  const double inv12h = 1.0 / (12.0 * spec.h());
  out.resize(in.size());
  for (std::size_t i = 0; i < in.size(); ++i)
    out[i] = fd_at(spec, in, i, axis, stride, inv12h);
}

void fd_derivative_parallel(const GridSpec& spec, const std::vector<cplx>& in,
                            std::size_t axis, std::vector<cplx>& out) {
  const std::size_t stride = spec.stride(axis);
  const double inv12h = 1.0 / (12.0 * spec.h());
  out.resize(in.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
  for (long i = 0; i < long(in.size()); ++i)
    out[std::size_t(i)] = fd_at(spec, in, std::size_t(i), axis, stride, inv12h);
}

void quant_apply_serial(const GridSpec& spec, const std::vector<cplx>& in,
                        const vecn& xi, const vecn& eta, double s,
                        std::vector<cplx>& out) {
  const auto strides = all_strides(spec);
  const double inv12h = 1.0 / (12.0 * spec.h());
  out.resize(in.size());
  for (std::size_t i = 0; i < in.size(); ++i)
    out[i] = quant_at(spec, in, xi, eta, s, strides, inv12h, i);
}

void quant_apply_parallel(const GridSpec& spec, const std::vector<cplx>& in,
                          const vecn& xi, const vecn& eta, double s,
                          std::vector<cplx>& out) {
  const auto strides = all_strides(spec);
  const double inv12h = 1.0 / (12.0 * spec.h());
  out.resize(in.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
  for (long i = 0; i < long(in.size()); ++i)
    out[std::size_t(i)] =
        quant_at(spec, in, xi, eta, s, strides, inv12h, std::size_t(i));
}

void shift_modulate_serial(const GridSpec& spec, const std::vector<cplx>& in,
                           const std::vector<long>& steps, cplx scale,
                           const vecn& freq, std::vector<cplx>& out) {
  const auto strides = all_strides(spec);
  out.resize(in.size());
  for (std::size_t i = 0; i < in.size(); ++i)
    out[i] = shift_at(spec, in, steps, scale, freq, strides, i);
}

void shift_modulate_parallel(const GridSpec& spec, const std::vector<cplx>& in,
                             const std::vector<long>& steps, cplx scale,
                             const vecn& freq, std::vector<cplx>& out) {
  const auto strides = all_strides(spec);
  out.resize(in.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
  for (long i = 0; i < long(in.size()); ++i)
    out[std::size_t(i)] =
        shift_at(spec, in, steps, scale, freq, strides, std::size_t(i));
}

cplx dot_conj_serial(const std::vector<cplx>& a, const std::vector<cplx>& b,
                     double weight) {
  return dot_conj_blocked(a, b, weight, false);
}

cplx dot_conj_parallel(const std::vector<cplx>& a, const std::vector<cplx>& b,
                       double weight) {
  return dot_conj_blocked(a, b, weight, true);
}

}  // namespace heis::kernels
