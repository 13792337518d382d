#pragma once

#include "heis/grid.hpp"

#include <complex>
#include <cstddef>
#include <vector>

// Data-parallel inner loops of the grid path. Each kernel comes in a serial
// reference version and an OpenMP version with identical semantics; the
// parallel reductions keep a fixed blocked summation tree so results match
// the reference bit-for-bit at any thread count.
namespace heis::kernels {

/// Fourth-order central difference along `axis`; samples outside the grid
/// count as zero (functions are assumed to decay inside the window).
void fd_derivative_serial(const GridSpec& spec, const std::vector<cplx>& in,
                          std::size_t axis, std::vector<cplx>& out);
void fd_derivative_parallel(const GridSpec& spec, const std::vector<cplx>& in,
                            std::size_t axis, std::vector<cplx>& out);

/// out = -sum_j xi_j D4_j(in) + 2 pi i (s - <eta, z>) in.
void quant_apply_serial(const GridSpec& spec, const std::vector<cplx>& in,
                        const vecn& xi, const vecn& eta, double s,
                        std::vector<cplx>& out);
void quant_apply_parallel(const GridSpec& spec, const std::vector<cplx>& in,
                          const vecn& xi, const vecn& eta, double s,
                          std::vector<cplx>& out);

/// out[k] = scale * exp(2 pi i <freq, z_k>) * in[k - steps], zero outside.
void shift_modulate_serial(const GridSpec& spec, const std::vector<cplx>& in,
                           const std::vector<long>& steps, cplx scale,
                           const vecn& freq, std::vector<cplx>& out);
void shift_modulate_parallel(const GridSpec& spec, const std::vector<cplx>& in,
                             const std::vector<long>& steps, cplx scale,
                             const vecn& freq, std::vector<cplx>& out);

/// sum_k a_k conj(b_k) * weight over a fixed blocked summation tree.
cplx dot_conj_serial(const std::vector<cplx>& a, const std::vector<cplx>& b,
                     double weight);
cplx dot_conj_parallel(const std::vector<cplx>& a, const std::vector<cplx>& b,
                       double weight);

/// True when the OpenMP path is compiled in and worth dispatching to.
bool parallel_enabled(std::size_t size);

}  // namespace heis::kernels
