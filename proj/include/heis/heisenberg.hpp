#pragma once

#include "heis/matrix.hpp"
#include "heis/symplectic.hpp"

#include <optional>
#include <string>

namespace heis {

/// Group element (v, r) of H_{2n+1}.
template <class S>
struct GroupElement {
  SympVector<S> v;
  S r = S(0);

  static GroupElement identity(std::size_t n) {
    return GroupElement{SympVector<S>::zero(n), S(0)};
  }
  std::size_t n() const { return v.n; }

  friend bool operator==(const GroupElement& a, const GroupElement& b) {
    return a.v == b.v && a.r == b.r;
  }
};

/// Lie algebra element (x, xi); xi is the central coordinate.
template <class S>
struct AlgElement {
  SympVector<S> x;
  S xi = S(0);

  static AlgElement zero(std::size_t n) {
    return AlgElement{SympVector<S>::zero(n), S(0)};
  }
  std::size_t n() const { return x.n; }

  friend bool operator==(const AlgElement& a, const AlgElement& b) {
    return a.x == b.x && a.xi == b.xi;
  }
};

/// Functional f(x, xi) = lambda(x) + mu * xi on the Lie algebra.
template <class S>
struct DualElement {
  SympCovector<S> lambda;
  S mu = S(0);

  std::size_t n() const { return lambda.n; }

  S operator()(const AlgElement<S>& a) const { return lambda(a.x) + mu * a.xi; }

  friend bool operator==(const DualElement& a, const DualElement& b) {
    return a.lambda == b.lambda && a.mu == b.mu;
  }
};

template <class S>
GroupElement<S> mul(const SympForm<S>& form, const GroupElement<S>& g1,
                    const GroupElement<S>& g2) {
  const S half = S(1) / S(2);
  return GroupElement<S>{g1.v + g2.v,
                         g1.r + g2.r + half * form.omega(g1.v, g2.v)};
}

template <class S>
GroupElement<S> inverse(const GroupElement<S>& g) {
  return GroupElement<S>{-g.v, S(0) - g.r};
}

/// Lie bracket [(x,.),(y,.)] = (0, omega(x, y)); center-valued.
template <class S>
AlgElement<S> bracket(const SympForm<S>& form, const AlgElement<S>& a,
                      const AlgElement<S>& b) {
  return AlgElement<S>{SympVector<S>::zero(a.n()), form.omega(a.x, b.x)};
}

/// exp is the identity on coordinates; (x, xi) read as a group element.
template <class S>
GroupElement<S> exp_alg(const AlgElement<S>& a) {
  return GroupElement<S>{a.x, a.xi};
}

template <class S>
AlgElement<S> log_group(const GroupElement<S>& g) {
  return AlgElement<S>{g.v, g.r};
}

namespace detail {

/// Writes l's coefficients into row `row`, columns 1..2n of M.
template <class S>
void put_covector_row(Matrix<S>& M, std::size_t row, const SympCovector<S>& l) {
  for (std::size_t i = 0; i < l.n; ++i) {
    M(row, 1 + i) = l.cx[i];
    M(row, 1 + l.n + i) = l.cy[i];
  }
}

template <class S>
void put_vector_column(Matrix<S>& M, std::size_t col, const SympVector<S>& v) {
  for (std::size_t i = 0; i < v.n; ++i) {
    M(1 + i, col) = v.x[i];
    M(1 + v.n + i, col) = v.y[i];
  }
}

template <class S>
SympVector<S> column_vector(const Matrix<S>& M, std::size_t n, std::size_t col) {
  SympVector<S> v = SympVector<S>::zero(n);
  for (std::size_t i = 0; i < n; ++i) {
    v.x[i] = M(1 + i, col);
    v.y[i] = M(1 + n + i, col);
  }
  return v;
}

}  // namespace detail

/// The unipotent matrix model: first column (1, v, r)^T, bottom row
/// (r, 1/2 omega^sharp(v), 1).
template <class S>
Matrix<S> rho(const SympForm<S>& form, const GroupElement<S>& g) {
  const std::size_t n = g.n();
  const std::size_t m = 2 * n + 2;
  Matrix<S> M = Matrix<S>::identity(m);
  detail::put_vector_column(M, 0, g.v);
  M(m - 1, 0) = g.r;
  const S half = S(1) / S(2);
  detail::put_covector_row(M, m - 1, half * form.sharp(g.v));
  return M;
}

/// Strictly lower-triangular model of the Lie algebra.
template <class S>
Matrix<S> rho_alg(const SympForm<S>& form, const AlgElement<S>& a) {
  const std::size_t n = a.n();
  const std::size_t m = 2 * n + 2;
  Matrix<S> M(m, m);
  detail::put_vector_column(M, 0, a.x);
  M(m - 1, 0) = a.xi;
  const S half = S(1) / S(2);
  detail::put_covector_row(M, m - 1, half * form.sharp(a.x));
  return M;
}

/// Reads (x, xi) off a matrix in the rho_alg image.
template <class S>
AlgElement<S> alg_from_matrix(std::size_t n, const Matrix<S>& M) {
  return AlgElement<S>{detail::column_vector(M, n, 0), M(2 * n + 1, 0)};
}

/// Ad_g Y = (Y.x, Y.xi + omega(g.v, Y.x)); matches matrix conjugation.
template <class S>
AlgElement<S> adjoint(const SympForm<S>& form, const GroupElement<S>& g,
                      const AlgElement<S>& y) {
  SympVector<S>::require_same(g.v, y.x);
  return AlgElement<S>{y.x, y.xi + form.omega(g.v, y.x)};
}

/// Coadjoint action g . f = Ad*_{g^{-1}} f = (lambda - mu * sharp(g.v), mu).
template <class S>
DualElement<S> coadjoint(const SympForm<S>& form, const GroupElement<S>& g,
                         const DualElement<S>& f) {
  if (g.n() != f.n()) throw std::invalid_argument("symplectic dimension mismatch");
  return DualElement<S>{f.lambda - f.mu * form.sharp(g.v), f.mu};
}

// ---------------------------------------------------------------------------
// Membership predicates for the embedded matrix sets. Exact mode uses tol = 0.
// ---------------------------------------------------------------------------

template <class S, class V>
bool near_zero(const V& v, const S& tol) {
  return scalar_traits<S>::abs(S(v)) <= tol;
}

/// sp(V, J): X^T J + J X = 0.
template <class S>
bool is_in_sp(const ExtendedForm<S>& E, const Matrix<S>& X, const S& tol = S(0)) {
  if (X.rows() != E.dim() || X.cols() != E.dim()) return false;
  const Matrix<S> defect = X.transpose() * E.mat + E.mat * X;
  for (std::size_t i = 0; i < defect.rows(); ++i)
    for (std::size_t j = 0; j < defect.cols(); ++j)
      if (!near_zero(defect(i, j), tol)) return false;
  return true;
}

/// Sp(V, J): P^T J P = J.
template <class S>
bool is_symplectic(const ExtendedForm<S>& E, const Matrix<S>& P,
                   const S& tol = S(0)) {
  if (P.rows() != E.dim() || P.cols() != E.dim()) return false;
  const Matrix<S> defect = P.transpose() * E.mat * P - E.mat;
  for (std::size_t i = 0; i < defect.rows(); ++i)
    for (std::size_t j = 0; j < defect.cols(); ++j)
      if (!near_zero(defect(i, j), tol)) return false;
  return true;
}

template <class S>
S vec_entry(const SympVector<S>& v, std::size_t i) {
  return i < v.n ? v.x[i] : v.y[i - v.n];
}

/// Parameters (zeta, d, xi) of an element of the Lie algebra ghat.
template <class S>
struct GhatParams {
  S zeta = S(0);
  SympVector<S> d;
  S xi = S(0);
};

/// Builds the ghat element with parameters (zeta, d, xi): first column
/// (zeta, d, xi)^T, bottom middle row (J d)^T, corner -zeta.
template <class S>
Matrix<S> make_ghat(const ExtendedForm<S>& E, const GhatParams<S>& p) {
  const std::size_t n = E.n;
  const std::size_t m = E.dim();
  Matrix<S> M(m, m);
  M(0, 0) = p.zeta;
  detail::put_vector_column(M, 0, p.d);
  M(m - 1, 0) = p.xi;
  M(m - 1, m - 1) = S(0) - p.zeta;
  for (std::size_t j = 0; j < 2 * n; ++j) {
    S acc(0);
    for (std::size_t i = 0; i < 2 * n; ++i) {
      if (E.middle(j, i) == S(0)) continue;
      acc += E.middle(j, i) * vec_entry(p.d, i);
    }
    M(m - 1, 1 + j) = acc;
  }
  return M;
}

/// Explains why X fails the ghat membership predicate, or nullopt if it
/// passes. Checked entrywise: exact when tol = 0.
template <class S>
std::optional<std::string> ghat_violation(const ExtendedForm<S>& E,
                                          const Matrix<S>& X,
                                          const S& tol = S(0)) {
  const std::size_t m = E.dim();
  if (X.rows() != m || X.cols() != m) return "wrong shape for the extended space";
  const std::size_t n = E.n;
  for (std::size_t j = 1; j < m; ++j)
    if (!near_zero(X(0, j), tol)) return "top row must vanish beyond the corner";
  for (std::size_t i = 1; i <= 2 * n; ++i) {
    for (std::size_t j = 1; j <= 2 * n; ++j)
      if (!near_zero(X(i, j), tol)) return "middle block must vanish";
    if (!near_zero(X(i, m - 1), tol)) return "last column must vanish above the corner";
  }
  if (!near_zero(X(m - 1, m - 1) + X(0, 0), tol))
    return "corner entries must balance (trace-free corners)";
  // bottom middle row must equal (J d)^T for d = first-column middle block
  for (std::size_t j = 0; j < 2 * n; ++j) {
    S acc(0);
    for (std::size_t i = 0; i < 2 * n; ++i) {
      if (E.middle(j, i) == S(0)) continue;
      acc += E.middle(j, i) * X(1 + i, 0);
    }
    if (!near_zero(X(m - 1, 1 + j) - acc, tol))
      return "bottom row must equal (J d)^T";
  }
  return std::nullopt;
}

template <class S>
bool is_in_ghat(const ExtendedForm<S>& E, const Matrix<S>& X, const S& tol = S(0)) {
  return !ghat_violation(E, X, tol).has_value();
}

template <class S>
GhatParams<S> ghat_params(const ExtendedForm<S>& E, const Matrix<S>& X,
                          const S& tol = S(0)) {
  if (auto why = ghat_violation(E, X, tol))
    throw std::invalid_argument("not in ghat: " + *why);
  return GhatParams<S>{X(0, 0), detail::column_vector(X, E.n, 0),
                       X(E.dim() - 1, 0)};
}

/// ghat_{f_{n+1}}: ghat with zero diagonal.
template <class S>
bool is_in_ghat_f(const ExtendedForm<S>& E, const Matrix<S>& X,
                  const S& tol = S(0)) {
  return is_in_ghat(E, X, tol) && near_zero(X(0, 0), tol);
}

/// Parameters (a, d, f) of an element of the group Ghat.
template <class S>
struct GhatGroupParams {
  S a = S(1);
  SympVector<S> d;
  S f = S(0);
};

/// Ghat element: diag corners (a, a^{-1}), middle identity, first column
/// (a, d, f)^T, bottom middle row a^{-1} (J d)^T. Exactly symplectic by
/// construction.
template <class S>
Matrix<S> make_ghat_group(const ExtendedForm<S>& E, const GhatGroupParams<S>& p) {
  if (p.a == S(0)) throw std::invalid_argument("Ghat parameter a must be nonzero");
  const std::size_t n = E.n;
  const std::size_t m = E.dim();
  Matrix<S> M = Matrix<S>::identity(m);
  M(0, 0) = p.a;
  detail::put_vector_column(M, 0, p.d);
  M(m - 1, 0) = p.f;
  const S ainv = S(1) / p.a;
  M(m - 1, m - 1) = ainv;
  for (std::size_t j = 0; j < 2 * n; ++j) {
    S acc(0);
    for (std::size_t i = 0; i < 2 * n; ++i) {
      if (E.middle(j, i) == S(0)) continue;
      acc += E.middle(j, i) * vec_entry(p.d, i);
    }
    M(m - 1, 1 + j) = ainv * acc;
  }
  return M;
}

template <class S>
bool is_in_Ghat(const ExtendedForm<S>& E, const Matrix<S>& P, const S& tol = S(0)) {
  const std::size_t m = E.dim();
  if (P.rows() != m || P.cols() != m) return false;
  if (near_zero(P(0, 0), tol)) return false;
  GhatGroupParams<S> p{P(0, 0), detail::column_vector(P, E.n, 0), P(m - 1, 0)};
  const Matrix<S> rebuilt = make_ghat_group(E, p);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      if (!near_zero(P(i, j) - rebuilt(i, j), tol)) return false;
  return true;
}

/// Stabilizer of f_{n+1} inside Ghat: the a = 1 slice (unipotent form).
template <class S>
bool is_in_Ghat_f(const ExtendedForm<S>& E, const Matrix<S>& P,
                  const S& tol = S(0)) {
  return is_in_Ghat(E, P, tol) && near_zero(P(0, 0) - S(1), tol);
}

/// Finite exponential for nilpotent matrices; throws if no power vanishes.
template <class S>
Matrix<S> expm_nilpotent(const Matrix<S>& M) {
  const std::size_t m = M.rows();
  Matrix<S> out = Matrix<S>::identity(m);
  Matrix<S> term = Matrix<S>::identity(m);
  for (std::size_t k = 1; k <= m + 1; ++k) {
    term = (S(1) / S(static_cast<long long>(k))) * (term * M);
    if (term.is_zero()) return out;
    out = out + term;
  }
  throw std::invalid_argument("matrix is not nilpotent");
}

}  // namespace heis
