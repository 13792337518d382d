#pragma once

#include "heis/heisenberg.hpp"
#include "heis/symplectic.hpp"

namespace heis {

enum class OrbitKind { fixed_point, generic };

/// Classification tag for the momentum image: a single generic orbit of
/// dimension 2n with its modulus, or a fixed point.
template <class S>
struct OrbitTag {
  OrbitKind kind = OrbitKind::fixed_point;
  S modulus = S(0);
  std::size_t dim = 0;
};

/// Momentum of the affine action: the functional x |-> omega(x, v).
template <class S>
SympCovector<S> affine_momentum(const SympForm<S>& form, const SympVector<S>& v) {
  return -form.sharp(v);
}

/// The cocycle of the affine momentum map: Sigma(y, z) = omega(y, z).
template <class S>
S affine_cocycle(const SympForm<S>& form, const SympVector<S>& y,
                 const SympVector<S>& z) {
  return form.omega(y, z);
}

/// Independent route to the cocycle through the Poisson bracket at a base
/// point v: {J^y, J^z}(v) = dJ^y(v) . X^z(v) with X^z constant equal to z,
/// evaluated as an exact difference since J^y is linear. The [y,z] term of
/// the abelian algebra vanishes, so this must equal omega(y, z) at every v.
template <class S>
S affine_bracket_at(const SympForm<S>& form, const SympVector<S>& y,
                    const SympVector<S>& z, const SympVector<S>& v) {
  const SympCovector<S> at_shift = affine_momentum(form, v + z);
  const SympCovector<S> at_base = affine_momentum(form, v);
  return at_shift(y) - at_base(y);
}

/// Exact directional derivative of J^x at v in direction w; J^x is linear so
/// the difference quotient is the derivative.
template <class S>
S affine_directional_derivative(const SympForm<S>& form, const SympVector<S>& x,
                                const SympVector<S>& v, const SympVector<S>& w) {
  const SympCovector<S> jx_shift = affine_momentum(form, v + w);
  const SympCovector<S> jx_base = affine_momentum(form, v);
  return jx_shift(x) - jx_base(x);
}

/// Equivariant momentum map of the Heisenberg action:
/// J(v)(x, xi) = omega(x, v) + xi, i.e. lambda = -sharp(v), mu = 1.
template <class S>
DualElement<S> heis_momentum(const SympForm<S>& form, const SympVector<S>& v) {
  return DualElement<S>{-form.sharp(v), S(1)};
}

/// Front-end evaluating J(v) on an element given in the matrix model:
/// extracts (x, xi) and delegates to the intrinsic formula.
template <class S>
S momentum_eval_matrix(const SympForm<S>& form, const SympVector<S>& v,
                       const Matrix<S>& X) {
  return heis_momentum(form, v)(alg_from_matrix(form.n(), X));
}

/// Solves heis_momentum(v) = f for a functional with mu = 1: v = -flat(lambda).
template <class S>
SympVector<S> momentum_preimage(const SympForm<S>& form, const DualElement<S>& f) {
  if (f.mu != S(1))
    throw std::invalid_argument("momentum preimage requires mu = 1");
  return -form.flat(f.lambda);
}

/// The image of the Heisenberg momentum map: the single generic coadjoint
/// orbit through J(0), of modulus 1.
template <class S>
OrbitTag<S> momentum_image(std::size_t n) {
  return OrbitTag<S>{OrbitKind::generic, S(1), 2 * n};
}

}  // namespace heis
