#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "heis/symplectic.hpp"
#include "test_util.hpp"

using heis::ExtendedForm;
using heis::Matrix;
using heis::Rational;
using heis::Rng;
using heis::SympCovector;
using heis::SympForm;
using heis::SympVector;
namespace tu = heis::testutil;

namespace {

SympVector<Rational> vec1(long long x, long long y) {
  return SympVector<Rational>{1, {Rational(x)}, {Rational(y)}};
}

/// Independent route to flat: solve Omega^T v = l for the coordinate vector.
SympVector<Rational> flat_by_linear_solve(const SympForm<Rational>& form,
                                          const SympCovector<Rational>& l) {
  const std::size_t n = form.n();
  Matrix<Rational> rhs(2 * n, 1);
  for (std::size_t i = 0; i < n; ++i) {
    rhs(i, 0) = l.cx[i];
    rhs(n + i, 0) = l.cy[i];
  }
  const Matrix<Rational> sol = form.matrix().transpose().inverse() * rhs;
  SympVector<Rational> v = SympVector<Rational>::zero(n);
  for (std::size_t i = 0; i < n; ++i) {
    v.x[i] = sol(i, 0);
    v.y[i] = sol(n + i, 0);
  }
  return v;
}

}  // namespace

TEST_CASE("omega: basis pairing and frozen values") {
  const auto form = SympForm<Rational>::standard(1);
  CHECK(form.omega(vec1(1, 0), vec1(0, 1)) == Rational(1));
  CHECK(form.omega(vec1(0, 1), vec1(1, 0)) == Rational(-1));

  const auto form2 = SympForm<Rational>::standard(2);
  const SympVector<Rational> u{2, {Rational(1), Rational(2)}, {Rational(3), Rational(4)}};
  const SympVector<Rational> v{2, {Rational(5), Rational(6)}, {Rational(7), Rational(8)}};
  CHECK(form2.omega(u, v) == Rational(-16));
}

TEST_CASE("omega: bilinearity and antisymmetry over random rationals") {
  for (std::size_t n = 1; n <= 4; ++n) {
    const auto form = SympForm<Rational>::standard(n);
    Rng rng(42, "symplectic-bilinear");
    for (int trial = 0; trial < 100; ++trial) {
      const auto u = tu::random_vector<Rational>(rng, n);
      const auto v = tu::random_vector<Rational>(rng, n);
      const auto w = tu::random_vector<Rational>(rng, n);
      const Rational a = rng.rational();
      const Rational b = rng.rational();
      CHECK(form.omega(a * u + b * v, w) ==
            a * form.omega(u, w) + b * form.omega(v, w));
      CHECK(form.omega(u, v) == -form.omega(v, u));
      CHECK(form.omega(u, u) == Rational(0));
    }
  }
}

TEST_CASE("omega: stored matrix agrees with the defining formula") {
  for (std::size_t n = 1; n <= 4; ++n) {
    const auto form = SympForm<Rational>::standard(n);
    Rng rng(42, "symplectic-matrix");
    for (int trial = 0; trial < 25; ++trial) {
      const auto u = tu::random_vector<Rational>(rng, n);
      const auto v = tu::random_vector<Rational>(rng, n);
      Matrix<Rational> uc(1, 2 * n), vc(2 * n, 1);
      for (std::size_t i = 0; i < n; ++i) {
        uc(0, i) = u.x[i];
        uc(0, n + i) = u.y[i];
        vc(i, 0) = v.x[i];
        vc(n + i, 0) = v.y[i];
      }
      CHECK((uc * form.matrix() * vc)(0, 0) == form.omega(u, v));
    }
    const Rational det = form.matrix().determinant();
    CHECK((det == Rational(1) || det == Rational(-1)));
  }
}

TEST_CASE("sharp: frozen evaluation and zero") {
  const auto form = SympForm<Rational>::standard(1);
  const auto l = form.sharp(vec1(1, 0));
  // omega((1,0), .) picks the y coordinate.
  CHECK(l(vec1(0, 1)) == Rational(1));
  CHECK(l(vec1(1, 0)) == Rational(0));
  CHECK(l(vec1(7, 3)) == Rational(3));
  CHECK(form.sharp(SympVector<Rational>::zero(1)).is_zero());
}

TEST_CASE("flat: frozen value and linear-solve oracle") {
  const auto form = SympForm<Rational>::standard(1);
  CHECK(form.flat(SympCovector<Rational>::zero(1)).is_zero());
  // The dual-basis covector w |-> w.y comes from (1, 0).
  const SympCovector<Rational> pick_y{1, {Rational(0)}, {Rational(1)}};
  CHECK(form.flat(pick_y) == vec1(1, 0));
  CHECK(flat_by_linear_solve(form, pick_y) == vec1(1, 0));
}

TEST_CASE("sharp and flat are mutually inverse") {
  for (std::size_t n = 1; n <= 4; ++n) {
    const auto form = SympForm<Rational>::standard(n);
    Rng rng(42, "sharp-flat");
    for (int trial = 0; trial < 250; ++trial) {
      const auto v = tu::random_vector<Rational>(rng, n);
      CHECK(form.flat(form.sharp(v)) == v);
      const auto l = tu::random_covector<Rational>(rng, n);
      CHECK(form.sharp(form.flat(l)) == l);
      CHECK(form.flat(l) == flat_by_linear_solve(form, l));
    }
  }
}

TEST_CASE("sharp/flat evaluation identity") {
  const auto form = SympForm<Rational>::standard(3);
  Rng rng(42, "sharp-eval");
  for (int trial = 0; trial < 50; ++trial) {
    const auto v = tu::random_vector<Rational>(rng, 3);
    const auto w = tu::random_vector<Rational>(rng, 3);
    CHECK(form.sharp(v)(w) == form.omega(v, w));
  }
}

TEST_CASE("dimension mismatches are rejected") {
  const auto form = SympForm<Rational>::standard(2);
  Rng rng(1, "dim-mismatch");
  const auto u2 = tu::random_vector<Rational>(rng, 2);
  CHECK_THROWS_AS(form.omega(u2, vec1(1, 0)), std::invalid_argument);
  CHECK_THROWS_AS(form.sharp(vec1(1, 0)), std::invalid_argument);
  CHECK_THROWS_AS(SympForm<Rational>::standard(0), std::invalid_argument);
}

TEST_CASE("extended form: displayed block shape at n = 1") {
  const auto E = heis::extended_form<Rational>(1);
  CHECK(E.mat.rows() == 4);
  CHECK(E.mat(0, 3) == Rational(1));
  CHECK(E.mat(3, 0) == Rational(-1));
  // Middle block is one half of the standard antisymmetric (0 -1; 1 0).
  CHECK(E.mat(1, 2) == Rational(-1, 2));
  CHECK(E.mat(2, 1) == Rational(1, 2));
  CHECK(E.mat(1, 1) == Rational(0));
  CHECK(E.mat(2, 2) == Rational(0));
  CHECK(E.mat(0, 0) == Rational(0));
  CHECK_THROWS_AS(heis::extended_form<Rational>(0), std::invalid_argument);
}

TEST_CASE("extended form: antisymmetric, invertible, square block structure") {
  for (std::size_t n = 1; n <= 4; ++n) {
    const auto E = heis::extended_form<Rational>(n);
    CHECK(E.mat.transpose() == Rational(-1) * E.mat);
    CHECK(E.mat.determinant() != Rational(0));

    // J^2 = block_diag(-1, (Omega/2)^2, -1), by the matrix-product oracle.
    const std::size_t m = E.dim();
    const Matrix<Rational> square = E.mat * E.mat;
    Matrix<Rational> expected(m, m);
    expected(0, 0) = Rational(-1);
    expected(m - 1, m - 1) = Rational(-1);
    const auto form = SympForm<Rational>::standard(n);
    const Matrix<Rational> half_omega = Rational(1, 2) * form.matrix();
    const Matrix<Rational> middle = half_omega * half_omega;
    for (std::size_t i = 0; i < 2 * n; ++i)
      for (std::size_t j = 0; j < 2 * n; ++j) expected(1 + i, 1 + j) = middle(i, j);
    CHECK(square == expected);
  }
}
