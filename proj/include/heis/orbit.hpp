#pragma once

#include "heis/heisenberg.hpp"
#include "heis/momentum.hpp"
#include "heis/symplectic.hpp"

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

namespace heis {

/// Coordinates of a vector in the extended space V, basis
/// (e_0; e_1..e_n, f_1..f_n; f_{n+1}).
template <class S>
using ExtVector = std::vector<S>;

template <class S>
ExtVector<S> ext_zero(std::size_t n) {
  return ExtVector<S>(2 * n + 2, S(0));
}

template <class S>
ExtVector<S> ext_e0(std::size_t n) {
  ExtVector<S> v = ext_zero<S>(n);
  v[0] = S(1);
  return v;
}

template <class S>
ExtVector<S> ext_f_last(std::size_t n) {
  ExtVector<S> v = ext_zero<S>(n);
  v[2 * n + 1] = S(1);
  return v;
}

template <class S>
ExtVector<S> apply_matrix(const Matrix<S>& M, const ExtVector<S>& v) {
  if (M.cols() != v.size()) throw std::invalid_argument("matrix shape mismatch");
  ExtVector<S> out(M.rows(), S(0));
  for (std::size_t i = 0; i < M.rows(); ++i)
    for (std::size_t j = 0; j < v.size(); ++j) out[i] += M(i, j) * v[j];
  return out;
}

/// The functional z* with z*(w) = w^T J z, as a coefficient vector.
template <class S>
ExtVector<S> star_coefficients(const ExtendedForm<S>& E, const ExtVector<S>& z) {
  return apply_matrix(E.mat, z);
}

/// Generalized two-vector operator L_{a,b} = a (x) b* + b (x) a*.
template <class S>
Matrix<S> L_outer(const ExtendedForm<S>& E, const ExtVector<S>& a,
                  const ExtVector<S>& b) {
  const std::size_t m = E.dim();
  const ExtVector<S> astar = star_coefficients(E, a);
  const ExtVector<S> bstar = star_coefficients(E, b);
  Matrix<S> M(m, m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      M(i, j) = a[i] * bstar[j] + b[i] * astar[j];
  return M;
}

/// Closed-form matrix of L_{w, f_{n+1}}: first column (w_0, w~, 2 w_{2n+1})^T,
/// bottom middle row (J w~)^T, corner -w_0.
template <class S>
Matrix<S> L_w(const ExtendedForm<S>& E, const ExtVector<S>& w) {
  const std::size_t n = E.n;
  const std::size_t m = E.dim();
  if (w.size() != m) throw std::invalid_argument("extended vector has wrong length");
  Matrix<S> M(m, m);
  M(0, 0) = w[0];
  for (std::size_t i = 0; i < 2 * n; ++i) M(1 + i, 0) = w[1 + i];
  M(m - 1, 0) = S(2) * w[m - 1];
  M(m - 1, m - 1) = S(0) - w[0];
  for (std::size_t j = 0; j < 2 * n; ++j) {
    S acc(0);
    for (std::size_t i = 0; i < 2 * n; ++i) {
      if (E.middle(j, i) == S(0)) continue;
      acc += E.middle(j, i) * w[1 + i];
    }
    M(m - 1, 1 + j) = acc;
  }
  return M;
}

/// Inverts L on ghat: reads w = (eta, x~, xi/2) off the first column.
template <class S>
ExtVector<S> decompose_ghat(const ExtendedForm<S>& E, const Matrix<S>& X,
                            const S& tol = S(0)) {
  if (auto why = ghat_violation(E, X, tol))
    throw std::invalid_argument("not in ghat: " + *why);
  const std::size_t m = E.dim();
  ExtVector<S> w(m, S(0));
  w[0] = X(0, 0);
  for (std::size_t i = 1; i < m - 1; ++i) w[i] = X(i, 0);
  w[m - 1] = X(m - 1, 0) / S(2);
  return w;
}

/// Both sides of the conjugation identity P L_{w,f} P^{-1} = L_{Pw, Pf}.
/// P must be symplectic for the extended form.
template <class S>
std::pair<Matrix<S>, Matrix<S>> conjugate_L(const ExtendedForm<S>& E,
                                            const Matrix<S>& P,
                                            const ExtVector<S>& w,
                                            const S& tol = S(0)) {
  if (!is_symplectic(E, P, tol))
    throw std::invalid_argument("P is not symplectic for the extended form");
  const Matrix<S> lhs = P * L_w(E, w) * symplectic_inverse(E, P);
  const Matrix<S> rhs = L_outer(E, apply_matrix(P, w), apply_matrix(P, ext_f_last<S>(E.n)));
  return {lhs, rhs};
}

/// Normal-form data of a tuple: modulus, the zero-type summand dimension and
/// the nilpotency height. Nonzero modulus pairs with the height-1 cotype on a
/// 2-dimensional slice plus a 2n-dimensional zero type; zero modulus is the
/// full zero type.
template <class S>
struct CotypeDescriptor {
  S modulus = S(0);
  std::size_t zero_type_dim = 0;
  int height = 0;

  static CotypeDescriptor from_modulus(std::size_t n, const S& xi) {
    if (xi == S(0)) return CotypeDescriptor{xi, 2 * n + 2, 0};
    return CotypeDescriptor{xi, 2 * n, 1};
  }
};

template <class S>
struct TupleReduction {
  ExtVector<S> w;
  Matrix<S> residual;
  CotypeDescriptor<S> descriptor;
};

/// Reduction of a tuple with Y in ghat, parameters (zeta, d, xi): adding
/// L_w for w = -zeta e_0 - d clears everything but the [2n+1, 0] entry,
/// which is the modulus.
template <class S>
TupleReduction<S> reduce_tuple(const ExtendedForm<S>& E, const Matrix<S>& Y,
                               const S& tol = S(0)) {
  const GhatParams<S> p = ghat_params(E, Y, tol);
  const std::size_t n = E.n;
  ExtVector<S> w = ext_zero<S>(n);
  w[0] = S(0) - p.zeta;
  for (std::size_t i = 0; i < n; ++i) {
    w[1 + i] = S(0) - p.d.x[i];
    w[1 + n + i] = S(0) - p.d.y[i];
  }
  const Matrix<S> residual = Y + L_w(E, w);
  return TupleReduction<S>{std::move(w), residual,
                           CotypeDescriptor<S>::from_modulus(n, p.xi)};
}

/// The restriction functional: Z |-> tr(Y Z) evaluated on the
/// (x~, xi) basis of ghat_{f_{n+1}}, returned in (lambda, mu) coordinates.
/// Y may be any matrix of the right shape; for Y in ghat the result is the
/// zero functional, so the interesting representatives live outside ghat.
template <class S>
DualElement<S> restrict_functional(const ExtendedForm<S>& E, const Matrix<S>& Y) {
  const std::size_t n = E.n;
  const std::size_t m = E.dim();
  if (Y.rows() != m || Y.cols() != m)
    throw std::invalid_argument("wrong shape for the extended space");
  DualElement<S> out{SympCovector<S>::zero(n), S(0)};

  const SympForm<S>& base = E.base;
  for (std::size_t i = 0; i < 2 * n; ++i) {
    SympVector<S> b = base.basis_vector(i);
    const Matrix<S> Z =
        make_ghat(E, GhatParams<S>{S(0), std::move(b), S(0)});
    const S value = Matrix<S>::trace_product(Y, Z);
    if (i < n)
      out.lambda.cx[i] = value;
    else
      out.lambda.cy[i - n] = value;
  }
  // The central basis element is E_{2n+1,0}; tr(Y E_{2n+1,0}) = Y[0, 2n+1].
  out.mu = Y(0, m - 1);
  return out;
}

/// Both sides of the invariance identity: conjugating the normal form
/// xi E_{2n+1,0} by any element of the f_{n+1} stabilizer fixes it.
template <class S>
std::pair<Matrix<S>, Matrix<S>> conjugation_invariance_check(
    const ExtendedForm<S>& E, const Matrix<S>& P, const S& xi,
    const S& tol = S(0)) {
  if (!is_in_Ghat_f(E, P, tol))
    throw std::invalid_argument("P is not in the f_{n+1} stabilizer");
  const std::size_t m = E.dim();
  Matrix<S> normal(m, m);
  normal(m - 1, 0) = xi;
  return {P * normal * symplectic_inverse(E, P), normal};
}

/// h_mu: the functional (x, xi) |-> mu * xi.
template <class S>
DualElement<S> h_mu(std::size_t n, const S& mu) {
  return DualElement<S>{SympCovector<S>::zero(n), mu};
}

template <class S>
struct OrbitDescriptor {
  OrbitKind kind = OrbitKind::fixed_point;
  S mu = S(0);
  DualElement<S> representative;
  std::optional<GroupElement<S>> normalizer;
};

/// Intrinsic classification of a dual element. For mu != 0 the normalizer
/// (mu^{-1} flat(lambda), 0) moves f onto h_mu exactly; for mu = 0 the orbit
/// is the singleton {f}.
template <class S>
OrbitDescriptor<S> classify_dual(const SympForm<S>& form, const DualElement<S>& f) {
  if (f.mu == S(0))
    return OrbitDescriptor<S>{OrbitKind::fixed_point, S(0), f, std::nullopt};
  const SympVector<S> yf = form.flat(f.lambda);
  GroupElement<S> normalizer{(S(1) / f.mu) * yf, S(0)};
  return OrbitDescriptor<S>{OrbitKind::generic, f.mu, h_mu(form.n(), f.mu),
                            std::move(normalizer)};
}

/// The coadjoint-orbit symplectic pairing at f on infinitesimal generators:
/// f([a, b]) = mu(f) * omega(a.x, b.x). Linear in the modulus, which is the
/// operational content of omega_{O_xi} = xi omega_{O_1}.
template <class S>
S orbit_pairing(const SympForm<S>& form, const DualElement<S>& f,
                const AlgElement<S>& a, const AlgElement<S>& b) {
  return f(bracket(form, a, b));
}

}  // namespace heis
