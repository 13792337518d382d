#pragma once

#include "heis/matrix.hpp"
#include "heis/scalar.hpp"

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace heis {

/// Element of R^{2n} split into its x- and y-parts.
template <class S>
struct SympVector {
  std::size_t n = 0;
  std::vector<S> x;
  std::vector<S> y;

  static SympVector zero(std::size_t n) {
    return SympVector{n, std::vector<S>(n, S(0)), std::vector<S>(n, S(0))};
  }

  bool is_zero() const {
    for (const S& v : x)
      if (v != S(0)) return false;
    for (const S& v : y)
      if (v != S(0)) return false;
    return true;
  }

  friend SympVector operator+(const SympVector& a, const SympVector& b) {
    require_same(a, b);
    SympVector out = a;
    for (std::size_t i = 0; i < a.n; ++i) {
      out.x[i] += b.x[i];
      out.y[i] += b.y[i];
    }
    return out;
  }

  friend SympVector operator-(const SympVector& a) {
    SympVector out = a;
    for (std::size_t i = 0; i < a.n; ++i) {
      out.x[i] = S(0) - a.x[i];
      out.y[i] = S(0) - a.y[i];
    }
    return out;
  }

  friend SympVector operator-(const SympVector& a, const SympVector& b) {
    return a + (-b);
  }

  friend SympVector operator*(const S& c, const SympVector& a) {
    SympVector out = a;
    for (std::size_t i = 0; i < a.n; ++i) {
      out.x[i] = c * a.x[i];
      out.y[i] = c * a.y[i];
    }
    return out;
  }

  friend bool operator==(const SympVector& a, const SympVector& b) {
    return a.n == b.n && a.x == b.x && a.y == b.y;
  }

  static void require_same(const SympVector& a, const SympVector& b) {
    if (a.n != b.n) throw std::invalid_argument("symplectic dimension mismatch");
  }
};

/// Linear functional on R^{2n}: l(w) = <cx, w.x> + <cy, w.y>.
template <class S>
struct SympCovector {
  std::size_t n = 0;
  std::vector<S> cx;
  std::vector<S> cy;

  static SympCovector zero(std::size_t n) {
    return SympCovector{n, std::vector<S>(n, S(0)), std::vector<S>(n, S(0))};
  }

  S operator()(const SympVector<S>& w) const {
    if (w.n != n) throw std::invalid_argument("symplectic dimension mismatch");
    S acc(0);
    for (std::size_t i = 0; i < n; ++i) acc += cx[i] * w.x[i] + cy[i] * w.y[i];
    return acc;
  }

  bool is_zero() const {
    for (const S& v : cx)
      if (v != S(0)) return false;
    for (const S& v : cy)
      if (v != S(0)) return false;
    return true;
  }

  friend SympCovector operator+(const SympCovector& a, const SympCovector& b) {
    if (a.n != b.n) throw std::invalid_argument("symplectic dimension mismatch");
    SympCovector out = a;
    for (std::size_t i = 0; i < a.n; ++i) {
      out.cx[i] += b.cx[i];
      out.cy[i] += b.cy[i];
    }
    return out;
  }

  friend SympCovector operator-(const SympCovector& a) {
    SympCovector out = a;
    for (std::size_t i = 0; i < a.n; ++i) {
      out.cx[i] = S(0) - a.cx[i];
      out.cy[i] = S(0) - a.cy[i];
    }
    return out;
  }

  friend SympCovector operator-(const SympCovector& a, const SympCovector& b) {
    return a + (-b);
  }

  friend SympCovector operator*(const S& c, const SympCovector& a) {
    SympCovector out = a;
    for (std::size_t i = 0; i < a.n; ++i) {
      out.cx[i] = c * a.cx[i];
      out.cy[i] = c * a.cy[i];
    }
    return out;
  }

  friend bool operator==(const SympCovector& a, const SympCovector& b) {
    return a.n == b.n && a.cx == b.cx && a.cy == b.cy;
  }

  double max_abs() const {
    double m = 0.0;
    for (const S& v : cx)
      m = std::max(m, scalar_traits<S>::to_double(scalar_traits<S>::abs(v)));
    for (const S& v : cy)
      m = std::max(m, scalar_traits<S>::to_double(scalar_traits<S>::abs(v)));
    return m;
  }
};

/// The standard symplectic form on R^{2n}. The evaluation formula
/// omega((x,y),(z,w)) = <x,w> - <y,z> is the single source of truth; the
/// stored matrix is derived from it by evaluating on basis pairs.
template <class S>
class SympForm {
 public:
  static SympForm standard(std::size_t n) {
    if (n == 0) throw std::invalid_argument("n must be positive");
    return SympForm(n);
  }

  std::size_t n() const { return n_; }

  S omega(const SympVector<S>& u, const SympVector<S>& v) const {
    require_dim(u);
    require_dim(v);
    S acc(0);
    for (std::size_t i = 0; i < n_; ++i)
      acc += u.x[i] * v.y[i] - u.y[i] * v.x[i];
    return acc;
  }

  /// omega^sharp(v): the covector w |-> omega(v, w).
  SympCovector<S> sharp(const SympVector<S>& v) const {
    require_dim(v);
    SympCovector<S> out = SympCovector<S>::zero(n_);
    for (std::size_t i = 0; i < n_; ++i) {
      out.cx[i] = S(0) - v.y[i];
      out.cy[i] = v.x[i];
    }
    return out;
  }

  /// omega^flat: the inverse of sharp, unique by nondegeneracy.
  SympVector<S> flat(const SympCovector<S>& l) const {
    if (l.n != n_) throw std::invalid_argument("symplectic dimension mismatch");
    SympVector<S> out = SympVector<S>::zero(n_);
    for (std::size_t i = 0; i < n_; ++i) {
      out.x[i] = l.cy[i];
      out.y[i] = S(0) - l.cx[i];
    }
    return out;
  }

  /// Matrix M with omega(u, v) = u^T M v, in the basis e_1..e_n, f_1..f_n.
  const Matrix<S>& matrix() const { return mat_; }

  SympVector<S> basis_vector(std::size_t i) const {
    SympVector<S> out = SympVector<S>::zero(n_);
    if (i < n_)
      out.x[i] = S(1);
    else if (i < 2 * n_)
      out.y[i - n_] = S(1);
    else
      throw std::invalid_argument("basis index out of range");
    return out;
  }

 private:
  explicit SympForm(std::size_t n) : n_(n), mat_(2 * n, 2 * n) {
    for (std::size_t i = 0; i < 2 * n_; ++i) {
      const SympVector<S> bi = basis_vector(i);
      for (std::size_t j = 0; j < 2 * n_; ++j)
        mat_(i, j) = omega(bi, basis_vector(j));
    }
  }

  void require_dim(const SympVector<S>& v) const {
    if (v.n != n_) throw std::invalid_argument("symplectic dimension mismatch");
  }

  std::size_t n_;
  Matrix<S> mat_;
};

/// Symplectic form on the extended space V = R x R^{2n} x R in the basis
/// (e_0; e_1..e_n, f_1..f_n; f_{n+1}).  The middle block is half the
/// transposed form matrix; with that choice the unipotent image of the
/// group law is exactly the stabilizer of f_{n+1}.
template <class S>
struct ExtendedForm {
  std::size_t n = 0;
  SympForm<S> base;
  Matrix<S> mat;
  Matrix<S> mat_inv;

  std::size_t dim() const { return 2 * n + 2; }

  /// Middle block J as a (2n x 2n) matrix.
  const S& middle(std::size_t i, std::size_t j) const { return mat(1 + i, 1 + j); }
};

template <class S>
ExtendedForm<S> extended_form(std::size_t n) {
  if (n == 0) throw std::invalid_argument("n must be positive");
  SympForm<S> base = SympForm<S>::standard(n);
  const std::size_t m = 2 * n + 2;
  Matrix<S> J(m, m);
  J(0, m - 1) = S(1);
  J(m - 1, 0) = S(0) - S(1);
  const S half = S(1) / S(2);
  const Matrix<S> omega_t = base.matrix().transpose();
  for (std::size_t i = 0; i < 2 * n; ++i)
    for (std::size_t j = 0; j < 2 * n; ++j) J(1 + i, 1 + j) = half * omega_t(i, j);
  // Closed-form inverse: corners swap sign, middle block is (Omega^T/2)^{-1}
  // = 2 Omega since Omega^2 = -I.
  Matrix<S> Jinv(m, m);
  Jinv(0, m - 1) = S(0) - S(1);
  Jinv(m - 1, 0) = S(1);
  const Matrix<S>& omega = base.matrix();
  for (std::size_t i = 0; i < 2 * n; ++i)
    for (std::size_t j = 0; j < 2 * n; ++j) Jinv(1 + i, 1 + j) = S(2) * omega(i, j);
  return ExtendedForm<S>{n, base, J, Jinv};
}

/// Inverse of a symplectic matrix: P^{-1} = J^{-1} P^T J.
template <class S>
Matrix<S> symplectic_inverse(const ExtendedForm<S>& E, const Matrix<S>& P) {
  return E.mat_inv * P.transpose() * E.mat;
}

}  // namespace heis
