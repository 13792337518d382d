#pragma once

#include "heis/grid.hpp"
#include "heis/test_function.hpp"

#include <cstddef>
#include <utility>
#include <vector>

namespace heis {

/// Lie algebra element (xi, eta, s) in the cotangent-bundle coordinates,
/// with [(xi,eta,s),(xi',eta',s')] = (0, 0, <xi,eta'> - <eta,xi'>).
struct HeisAlg3 {
  vecn xi;
  vecn eta;
  double s = 0.0;

  std::size_t n() const { return xi.size(); }
};

HeisAlg3 bracket3(const HeisAlg3& a, const HeisAlg3& b);
HeisAlg3 scale3(double u, const HeisAlg3& a);

/// Group element (x, y, t) in the same coordinates.
struct HeisGroup3 {
  vecn x;
  vecn y;
  double t = 0.0;

  std::size_t n() const { return x.size(); }
};

HeisGroup3 mul3(const HeisGroup3& a, const HeisGroup3& b);
HeisGroup3 inverse3(const HeisGroup3& g);

/// The twist (x, y, t) |-> (-y, x, t); a group automorphism.
HeisGroup3 twist_psi(const HeisGroup3& g);

/// Contraction of a constant vector field with theta = <y, dx> at (x, y).
double theta_contraction(const vecn& field_x, const vecn& field_y,
                         const vecn& x, const vecn& y);

/// Connection on the trivial line bundle acting on functions of (x, y):
/// L_X f + 2 pi i (X . theta) f, for a constant field X = (Xx, Xy).
TestFunction covariant_derivative(const vecn& field_x, const vecn& field_y,
                                  const TestFunction& f);

/// Hamiltonian vector field of the momentum observable of a: the constant
/// field (xi, eta).
std::pair<vecn, vecn> hamiltonian_vf(const HeisAlg3& a);

/// Prequantization of the momentum observable, acting on functions of (x, y):
/// -<xi, d/dx> - <eta, d/dy> - 2 pi i (<eta, x> - s).
TestFunction prequant_op(const HeisAlg3& a, const TestFunction& f);

/// Quantization operator on functions of x alone:
/// -<xi, d/dx> + 2 pi i (s - <eta, x>).
TestFunction quant_op(const HeisAlg3& a, const TestFunction& f);
GridFunction quant_op(const HeisAlg3& a, const GridFunction& f);

/// Lifts a function of x to phase space, constant in y.
TestFunction lift_constant_in_y(const TestFunction& f);

/// The unitary representation with modulus xi_mod:
/// (S(x,y,t) f)(z) = e^{2 pi i xi [t - <y, z> + 1/2 <x, y>]} f(z - x).
TestFunction rep_S(double xi_mod, const HeisGroup3& g, const TestFunction& f);
GridFunction rep_S(double xi_mod, const HeisGroup3& g, const GridFunction& f);

/// Lattice steps of a translation, or a rejection when some component is not
/// an integer multiple of the spacing (no silent interpolation).
std::vector<long> lattice_steps(const GridSpec& spec, const vecn& x);

/// Sup-norm defect between the central difference in u of S(exp(u a)) f and
/// quant_op(a, f), both evaluated analytically on the grid points.
double infinitesimal_check(const HeisAlg3& a, const TestFunction& f, double u,
                           const GridSpec& eval_grid);

}  // namespace heis
