#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "heis/orbit.hpp"
#include "test_util.hpp"

using heis::AlgElement;
using heis::DualElement;
using heis::ExtVector;
using heis::GhatParams;
using heis::GroupElement;
using heis::Matrix;
using heis::OrbitKind;
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

Matrix<Rational> elementary(std::size_t m, std::size_t i, std::size_t j) {
  Matrix<Rational> E(m, m);
  E(i, j) = Rational(1);
  return E;
}

}  // namespace

TEST_CASE("L_w: frozen vectors and the outer-product oracle") {
  const auto E = heis::extended_form<Rational>(1);

  CHECK(L_w(E, heis::ext_zero<Rational>(1)).is_zero());

  // w = f_{n+1}: single entry 2 at the bottom-left.
  const auto Lf = L_w(E, heis::ext_f_last<Rational>(1));
  CHECK(Lf == Rational(2) * elementary(4, 3, 0));

  // w = e_0: +1 / -1 corners.
  const auto Le = L_w(E, heis::ext_e0<Rational>(1));
  CHECK(Le == elementary(4, 0, 0) - elementary(4, 3, 3));
  CHECK(Le == L_outer(E, heis::ext_e0<Rational>(1), heis::ext_f_last<Rational>(1)));

  for (std::size_t n = 1; n <= 4; ++n) {
    const auto En = heis::extended_form<Rational>(n);
    Rng rng(42, "rank-two");
    for (int trial = 0; trial < 100; ++trial) {
      const auto w = tu::random_ext<Rational>(rng, n);
      const auto closed = L_w(En, w);
      CHECK(closed == L_outer(En, w, heis::ext_f_last<Rational>(n)));
      CHECK(heis::is_in_ghat(En, closed));
    }
  }
}

TEST_CASE("decompose_ghat: frozen value and round trips") {
  const auto E = heis::extended_form<Rational>(1);

  CHECK(heis::decompose_ghat(E, Matrix<Rational>(4, 4)) ==
        heis::ext_zero<Rational>(1));

  // Zero diagonal, first column (0, x~, xi): w = x~ + xi/2 f_{n+1}.
  const auto X = make_ghat(E, GhatParams<Rational>{Rational(0), vec1(3, 4), Rational(6)});
  const ExtVector<Rational> w = heis::decompose_ghat(E, X);
  CHECK(w == ExtVector<Rational>{Rational(0), Rational(3), Rational(4), Rational(3)});

  for (std::size_t n = 1; n <= 4; ++n) {
    const auto En = heis::extended_form<Rational>(n);
    Rng rng(42, "decompose-roundtrip");
    for (int trial = 0; trial < 100; ++trial) {
      const auto Y = make_ghat(En, tu::random_ghat_params<Rational>(rng, n));
      CHECK(L_w(En, heis::decompose_ghat(En, Y)) == Y);
      const auto v = tu::random_ext<Rational>(rng, n);
      CHECK(heis::decompose_ghat(En, L_w(En, v)) == v);
    }
  }

  Matrix<Rational> bad(4, 4);
  bad(1, 2) = Rational(1);
  CHECK_THROWS_AS(heis::decompose_ghat(E, bad), std::invalid_argument);
}

TEST_CASE("conjugate_L: identity, stabilizer case, random symplectic") {
  const auto E = heis::extended_form<Rational>(2);
  Rng rng(42, "symplectic-conjugation");

  const auto w0 = tu::random_ext<Rational>(rng, 2);
  const auto at_identity = conjugate_L(E, Matrix<Rational>::identity(6), w0);
  CHECK(at_identity.first == at_identity.second);
  CHECK(at_identity.first == L_w(E, w0));

  for (int trial = 0; trial < 100; ++trial) {
    const auto w = tu::random_ext<Rational>(rng, 2);
    const auto P = tu::random_ghat_group<Rational>(rng, E);
    const auto sides = conjugate_L(E, P, w);
    CHECK(sides.first == sides.second);

    // P in the stabilizer fixes f_{n+1}, so the right side is L_{Pw, f}.
    const auto Q = tu::random_stabilizer<Rational>(rng, E);
    const auto stab_sides = conjugate_L(E, Q, w);
    CHECK(stab_sides.first == stab_sides.second);
    CHECK(stab_sides.second == L_w(E, heis::apply_matrix(Q, w)));
  }

  // Non-symplectic P is rejected.
  Matrix<Rational> bad = Matrix<Rational>::identity(6);
  bad(0, 0) = Rational(2);
  CHECK_THROWS_AS(conjugate_L(E, bad, w0), std::invalid_argument);
}

namespace {

/// Series exponential for small-norm double matrices; test-only oracle for
/// generating symplectic matrices outside the subgroup parameterization.
Matrix<double> expm_series(const Matrix<double>& M) {
  Matrix<double> out = Matrix<double>::identity(M.rows());
  Matrix<double> term = Matrix<double>::identity(M.rows());
  for (int k = 1; k <= 24; ++k) {
    term = (1.0 / double(k)) * (term * M);
    out = out + term;
  }
  return out;
}

}  // namespace

TEST_CASE("conjugate_L float mode: P from exponentials of sp elements") {
  const auto E = heis::extended_form<double>(2);
  const std::size_t m = E.dim();
  Rng rng(42, "symplectic-exp");
  for (int trial = 0; trial < 50; ++trial) {
    // J^{-1} S with S symmetric lies in sp(V, J); its exponential is
    // symplectic.
    Matrix<double> sym(m, m);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = i; j < m; ++j)
        sym(i, j) = sym(j, i) = rng.real(-0.15, 0.15);
    const Matrix<double> X = E.mat_inv * sym;
    const Matrix<double> P = expm_series(X);
    REQUIRE(heis::is_symplectic(E, P, 1e-12));

    heis::ExtVector<double> w(m, 0.0);
    for (auto& c : w) c = rng.real(-1.0, 1.0);
    const auto sides = conjugate_L(E, P, w, 1e-12);
    CHECK(Matrix<double>::max_abs_diff(sides.first, sides.second) <= 1e-10);
  }
}

TEST_CASE("reduce_tuple: frozen example, residual shape, zero modulus") {
  const auto E = heis::extended_form<Rational>(1);

  const auto Y = make_ghat(E, GhatParams<Rational>{Rational(2), vec1(3, 4), Rational(5)});
  const auto red = reduce_tuple(E, Y);
  CHECK(red.w == ExtVector<Rational>{Rational(-2), Rational(-3), Rational(-4), Rational(0)});
  CHECK(red.descriptor.modulus == Rational(5));
  CHECK(red.descriptor.height == 1);
  CHECK(red.descriptor.zero_type_dim == 2);
  CHECK(red.residual == Rational(5) * elementary(4, 3, 0));

  // Already normal: nothing to do.
  const auto normal = make_ghat(
      E, GhatParams<Rational>{Rational(0), SympVector<Rational>::zero(1), Rational(7)});
  const auto red2 = reduce_tuple(E, normal);
  CHECK(red2.w == heis::ext_zero<Rational>(1));
  CHECK(red2.descriptor.modulus == Rational(7));

  // xi = 0 is the indecomposable zero type on the full space.
  const auto zero = make_ghat(E, GhatParams<Rational>{Rational(1), vec1(2, 3), Rational(0)});
  const auto red3 = reduce_tuple(E, zero);
  CHECK(red3.descriptor.modulus == Rational(0));
  CHECK(red3.descriptor.height == 0);
  CHECK(red3.descriptor.zero_type_dim == 4);
  CHECK(red3.residual.is_zero());

  for (std::size_t n = 1; n <= 4; ++n) {
    const auto En = heis::extended_form<Rational>(n);
    Rng rng(42, "reduction");
    for (int trial = 0; trial < 100; ++trial) {
      const auto params = tu::random_ghat_params<Rational>(rng, n);
      const auto M = make_ghat(En, params);
      const auto r = reduce_tuple(En, M);
      // Residual has at most the bottom-left entry.
      Matrix<Rational> expected(2 * n + 2, 2 * n + 2);
      expected(2 * n + 1, 0) = params.xi;
      CHECK(r.residual == expected);
      // The reducing vector carries no f_{n+1} component.
      CHECK(r.w[2 * n + 1] == Rational(0));
    }
  }
}

TEST_CASE("reduce_tuple: modulus is stable under adding L_w' with zero f-part") {
  for (std::size_t n = 1; n <= 4; ++n) {
    const auto E = heis::extended_form<Rational>(n);
    Rng rng(42, "reduction-stability");
    for (int trial = 0; trial < 100; ++trial) {
      const auto Y = make_ghat(E, tu::random_ghat_params<Rational>(rng, n));
      auto wprime = tu::random_ext<Rational>(rng, n);
      wprime[2 * n + 1] = Rational(0);
      const auto shifted = Y + L_w(E, wprime);
      CHECK(reduce_tuple(E, shifted).descriptor.modulus ==
            reduce_tuple(E, Y).descriptor.modulus);
    }
  }
}

TEST_CASE("reduce_tuple: stabilizer conjugation moves the modulus off normal forms") {
  // The combined move Y -> P (Y + L_w') P^{-1} does not preserve the
  // extracted modulus once the tuple has a nonzero corner parameter: a
  // central stabilizer element already shifts it by 2 zeta f.
  const auto E = heis::extended_form<Rational>(1);
  const auto Y = L_w(E, heis::ext_e0<Rational>(1));
  CHECK(reduce_tuple(E, Y).descriptor.modulus == Rational(0));
  const auto P = make_ghat_group(
      E, heis::GhatGroupParams<Rational>{Rational(1), SympVector<Rational>::zero(1),
                                         Rational(1)});
  const auto moved = P * Y * P.inverse();
  CHECK(reduce_tuple(E, moved).descriptor.modulus == Rational(2));

  // On normal forms the stabilizer conjugation fixes the matrix outright, so
  // there the modulus is a genuine invariant.
  Rng rng(42, "reduction-normal");
  for (int trial = 0; trial < 50; ++trial) {
    const auto Q = tu::random_stabilizer<Rational>(rng, E);
    Matrix<Rational> normal(4, 4);
    normal(3, 0) = rng.rational();
    CHECK(Q * normal * Q.inverse() == normal);
  }
}

TEST_CASE("restrict_functional: ghat annihilates, anchor, linearity") {
  for (std::size_t n = 1; n <= 3; ++n) {
    const auto E = heis::extended_form<Rational>(n);
    const std::size_t m = E.dim();
    Rng rng(42, "trace-pairing");

    for (int trial = 0; trial < 50; ++trial) {
      // The trace pairing of ghat against ghat_f vanishes identically.
      const auto X = make_ghat(E, tu::random_ghat_params<Rational>(rng, n));
      auto zp = tu::random_ghat_params<Rational>(rng, n);
      zp.zeta = Rational(0);
      const auto Z = make_ghat(E, zp);
      CHECK((X * Z).trace() == Rational(0));

      const auto f = restrict_functional(E, X);
      CHECK(f.lambda.is_zero());
      CHECK(f.mu == Rational(0));
    }

    // J(0) anchor: E_{0, 2n+1} restricts to the central character.
    const auto anchor = restrict_functional(E, elementary(m, 0, m - 1));
    CHECK(anchor.lambda.is_zero());
    CHECK(anchor.mu == Rational(1));
    // The transposed reading lands in ghat_f and therefore restricts to zero.
    const auto other = restrict_functional(E, elementary(m, m - 1, 0));
    CHECK(other.lambda.is_zero());
    CHECK(other.mu == Rational(0));

    // Linearity in Y.
    Rng rng2(42, "restrict-linear");
    for (int trial = 0; trial < 20; ++trial) {
      Matrix<Rational> Y1(m, m), Y2(m, m);
      for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) {
          Y1(i, j) = rng2.rational();
          Y2(i, j) = rng2.rational();
        }
      const Rational a = rng2.rational();
      const Rational b = rng2.rational();
      const auto lhs = restrict_functional(E, a * Y1 + b * Y2);
      const auto r1 = restrict_functional(E, Y1);
      const auto r2 = restrict_functional(E, Y2);
      CHECK(lhs.lambda == a * r1.lambda + b * r2.lambda);
      CHECK(lhs.mu == a * r1.mu + b * r2.mu);
    }

    // The restriction of ell_Y to ghat_f evaluates as tr(Y Z) in the (x, xi)
    // coordinates of Z.
    Rng rng3(42, "restrict-eval");
    const auto form = SympForm<Rational>::standard(n);
    for (int trial = 0; trial < 20; ++trial) {
      Matrix<Rational> Y(m, m);
      for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) Y(i, j) = rng3.rational();
      const auto f = restrict_functional(E, Y);
      const auto Zalg = tu::random_alg<Rational>(rng3, n);
      const auto Zmat = rho_alg(form, Zalg);
      CHECK(f(Zalg) == (Y * Zmat).trace());
    }
  }
}

TEST_CASE("conjugation invariance: the normal form is fixed by the stabilizer") {
  for (std::size_t n = 1; n <= 3; ++n) {
    const auto E = heis::extended_form<Rational>(n);
    Rng rng(42, "normal-form");

    const auto at_identity = conjugation_invariance_check(
        E, Matrix<Rational>::identity(E.dim()), Rational(1));
    CHECK(at_identity.first == at_identity.second);

    for (int trial = 0; trial < 100; ++trial) {
      const auto P = tu::random_stabilizer<Rational>(rng, E);
      const auto one = conjugation_invariance_check(E, P, Rational(1));
      CHECK(one.first == one.second);
      const auto zero = conjugation_invariance_check(E, P, Rational(0));
      CHECK(zero.first == zero.second);
      CHECK(zero.first.is_zero());
      const auto any = conjugation_invariance_check(E, P, rng.rational());
      CHECK(any.first == any.second);
    }

    // Elements outside the stabilizer are rejected.
    const auto bad = make_ghat_group(
        E, heis::GhatGroupParams<Rational>{Rational(2), SympVector<Rational>::zero(n),
                                           Rational(0)});
    CHECK_THROWS_AS(conjugation_invariance_check(E, bad, Rational(1)),
                    std::invalid_argument);
  }
}

TEST_CASE("classify_dual: frozen cases") {
  const auto form = SympForm<Rational>::standard(1);

  // Already in normal form.
  const auto t1 = classify_dual(form, heis::h_mu(1, Rational(5)));
  CHECK(t1.kind == OrbitKind::generic);
  CHECK(t1.mu == Rational(5));
  REQUIRE(t1.normalizer.has_value());
  CHECK(t1.normalizer->v.is_zero());
  CHECK(t1.normalizer->r == Rational(0));

  // mu = 0 with nonzero lambda: a fixed point.
  DualElement<Rational> fixed{form.sharp(vec1(1, 2)), Rational(0)};
  const auto t2 = classify_dual(form, fixed);
  CHECK(t2.kind == OrbitKind::fixed_point);
  CHECK(t2.representative == fixed);
  CHECK(!t2.normalizer.has_value());

  // lambda = sharp((2,3)), mu = 5: normalizer is y_f / 5.
  DualElement<Rational> f{form.sharp(vec1(2, 3)), Rational(5)};
  const auto t3 = classify_dual(form, f);
  REQUIRE(t3.normalizer.has_value());
  CHECK(t3.normalizer->v ==
        SympVector<Rational>{1, {Rational(2, 5)}, {Rational(3, 5)}});
  CHECK(coadjoint(form, *t3.normalizer, f) == heis::h_mu(1, Rational(5)));
}

TEST_CASE("classify_dual: normalizer property and isotropy on random input") {
  for (std::size_t n = 1; n <= 4; ++n) {
    const auto form = SympForm<Rational>::standard(n);
    Rng rng(42, "classify");
    for (int trial = 0; trial < 100; ++trial) {
      DualElement<Rational> f{tu::random_covector<Rational>(rng, n),
                              rng.nonzero_rational()};
      const auto d = classify_dual(form, f);
      CHECK(d.kind == OrbitKind::generic);
      REQUIRE(d.normalizer.has_value());
      CHECK(coadjoint(form, *d.normalizer, f) == heis::h_mu(n, f.mu));
      CHECK(d.representative == heis::h_mu(n, f.mu));

      // Isotropy of h_mu is exactly the center: nonzero x moves it.
      auto x = tu::random_vector<Rational>(rng, n);
      if (x.is_zero()) x.x[0] = Rational(1);
      const GroupElement<Rational> off_center{x, rng.rational()};
      CHECK(coadjoint(form, off_center, heis::h_mu(n, f.mu)) != heis::h_mu(n, f.mu));
      const GroupElement<Rational> central{SympVector<Rational>::zero(n),
                                           rng.rational()};
      CHECK(coadjoint(form, central, heis::h_mu(n, f.mu)) == heis::h_mu(n, f.mu));
    }
  }
}

TEST_CASE("orbit pairing: frozen values, scaling, lambda independence") {
  const auto form = SympForm<Rational>::standard(1);
  const AlgElement<Rational> a{vec1(1, 0), Rational(0)};
  const AlgElement<Rational> b{vec1(0, 1), Rational(0)};
  CHECK(orbit_pairing(form, heis::h_mu(1, Rational(1)), a, b) == Rational(1));
  CHECK(orbit_pairing(form, heis::h_mu(1, Rational(5)), a, b) == Rational(5));
  CHECK(orbit_pairing(form, heis::h_mu(1, Rational(5)), a, a) == Rational(0));

  for (std::size_t n = 1; n <= 3; ++n) {
    const auto formn = SympForm<Rational>::standard(n);
    Rng rng(42, "orbit-pairing");
    for (int trial = 0; trial < 100; ++trial) {
      const auto aa = tu::random_alg<Rational>(rng, n);
      const auto bb = tu::random_alg<Rational>(rng, n);
      const Rational xi = rng.rational();
      CHECK(orbit_pairing(formn, heis::h_mu(n, xi), aa, bb) ==
            xi * orbit_pairing(formn, heis::h_mu(n, Rational(1)), aa, bb));
      CHECK(orbit_pairing(formn, heis::h_mu(n, xi), aa, bb) ==
            xi * formn.omega(aa.x, bb.x));

      // The pairing sees only mu, which is an orbit invariant.
      const auto f = tu::random_dual<Rational>(rng, n);
      const auto g = tu::random_group<Rational>(rng, n);
      CHECK(orbit_pairing(formn, coadjoint(formn, g, f), aa, bb) ==
            orbit_pairing(formn, f, aa, bb));
    }
  }
}
