#include "heis/verify.hpp"

#include "heis/momentum.hpp"
#include "heis/orbit.hpp"
#include "heis/quantization.hpp"
#include "heis/rng.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <map>
#include <numbers>
#include <stdexcept>

namespace heis::verify {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

template <class S, class A, class B>
double sdiff(const A& a, const B& b) {
  return scalar_traits<S>::to_double(scalar_traits<S>::abs(S(a - b)));
}

constexpr std::size_t kMaxCachedN = 8;

/// The forms are immutable; build them once per dimension instead of per
/// trial. Function-local statics make the first use thread-safe.
template <class S>
const ExtendedForm<S>& cached_extended(std::size_t n) {
  static const std::vector<ExtendedForm<S>> table = [] {
    std::vector<ExtendedForm<S>> out;
    for (std::size_t k = 1; k <= kMaxCachedN; ++k)
      out.push_back(extended_form<S>(k));
    return out;
  }();
  if (n == 0 || n > kMaxCachedN) throw std::invalid_argument("n out of range");
  return table[n - 1];
}

template <class S>
const SympForm<S>& cached_form(std::size_t n) {
  return cached_extended<S>(n).base;
}

template <class S>
double covector_defect(const SympCovector<S>& a, const SympCovector<S>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.n; ++i) {
    m = std::max(m, sdiff<S>(a.cx[i], b.cx[i]));
    m = std::max(m, sdiff<S>(a.cy[i], b.cy[i]));
  }
  return m;
}

template <class S>
double dual_defect(const DualElement<S>& a, const DualElement<S>& b) {
  return std::max(covector_defect(a.lambda, b.lambda), sdiff<S>(a.mu, b.mu));
}

template <class S>
SympVector<S> random_vector(Rng& rng, std::size_t n) {
  SympVector<S> v = SympVector<S>::zero(n);
  for (std::size_t i = 0; i < n; ++i) {
    v.x[i] = rng.scalar<S>();
    v.y[i] = rng.scalar<S>();
  }
  return v;
}

template <class S>
SympCovector<S> random_covector(Rng& rng, std::size_t n) {
  SympCovector<S> l = SympCovector<S>::zero(n);
  for (std::size_t i = 0; i < n; ++i) {
    l.cx[i] = rng.scalar<S>();
    l.cy[i] = rng.scalar<S>();
  }
  return l;
}

template <class S>
GroupElement<S> random_group(Rng& rng, std::size_t n) {
  return GroupElement<S>{random_vector<S>(rng, n), rng.scalar<S>()};
}

template <class S>
AlgElement<S> random_alg(Rng& rng, std::size_t n) {
  return AlgElement<S>{random_vector<S>(rng, n), rng.scalar<S>()};
}

template <class S>
DualElement<S> random_dual(Rng& rng, std::size_t n) {
  return DualElement<S>{random_covector<S>(rng, n), rng.scalar<S>()};
}

template <class S>
ExtVector<S> random_ext(Rng& rng, std::size_t n) {
  ExtVector<S> w = ext_zero<S>(n);
  for (auto& c : w) c = rng.scalar<S>();
  return w;
}

template <class S>
S nonzero_scalar(Rng& rng) {
  S v = rng.scalar<S>();
  while (v == S(0)) v = rng.scalar<S>();
  return v;
}

struct CheckSpec {
  double exact_tol = 0.0;
  double float_tol = 1e-12;
  std::function<double(Rng&, const CheckConfig&, bool exact)> defect;
  long fixed_trials = 0;  // nonzero: ignore cfg.trials (single-instance checks)
};

/// Dispatches one trial to the exact or floating instantiation.
template <class Fn>
std::function<double(Rng&, const CheckConfig&, bool)> per_mode(Fn&& fn) {
  return [fn](Rng& rng, const CheckConfig& cfg, bool exact) {
    if (exact) return fn.template operator()<Rational>(rng, cfg);
    return fn.template operator()<double>(rng, cfg);
  };
}

// ---------------------------------------------------------------------------
// group suite
// ---------------------------------------------------------------------------

const auto rho_homomorphism = per_mode([]<class S>(Rng& rng, const CheckConfig& cfg) {
  const auto& form = cached_form<S>(cfg.n);
  const auto g1 = random_group<S>(rng, cfg.n);
  const auto g2 = random_group<S>(rng, cfg.n);
  return Matrix<S>::max_abs_diff(rho(form, g1) * rho(form, g2),
                                 rho(form, mul(form, g1, g2)));
});

const auto rho_structure = per_mode([]<class S>(Rng& rng, const CheckConfig& cfg) {
  const auto& form = cached_form<S>(cfg.n);
  const auto g = random_group<S>(rng, cfg.n);
  const auto M = rho(form, g) - Matrix<S>::identity(2 * cfg.n + 2);
  const S rank_tol = scalar_traits<S>::is_exact ? S(0) : S(1e-10);
  double defect = std::max(0.0, double(M.rank(rank_tol)) - 2.0);
  if (!(g == GroupElement<S>::identity(cfg.n)) && M.is_zero()) defect += 1.0;
  return defect;
});

const auto bracket_isomorphism = per_mode([]<class S>(Rng& rng, const CheckConfig& cfg) {
  const auto& form = cached_form<S>(cfg.n);
  const auto X = random_alg<S>(rng, cfg.n);
  const auto Y = random_alg<S>(rng, cfg.n);
  const auto MX = rho_alg(form, X);
  const auto MY = rho_alg(form, Y);
  return Matrix<S>::max_abs_diff(MX * MY - MY * MX,
                                 rho_alg(form, bracket(form, X, Y)));
});

const auto algebra_nilpotency = per_mode([]<class S>(Rng& rng, const CheckConfig& cfg) {
  const auto& form = cached_form<S>(cfg.n);
  const auto X = random_alg<S>(rng, cfg.n);
  return rho_alg(form, X).pow(2).max_abs();
});

const auto exp_consistency = per_mode([]<class S>(Rng& rng, const CheckConfig& cfg) {
  const auto& form = cached_form<S>(cfg.n);
  const auto X = random_alg<S>(rng, cfg.n);
  return Matrix<S>::max_abs_diff(expm_nilpotent(rho_alg(form, X)),
                                 rho(form, exp_alg(X)));
});

const auto ad_matrix_conjugation = per_mode([]<class S>(Rng& rng, const CheckConfig& cfg) {
  const auto& form = cached_form<S>(cfg.n);
  const auto g = random_group<S>(rng, cfg.n);
  const auto Y = random_alg<S>(rng, cfg.n);
  const auto conj = rho(form, g) * rho_alg(form, Y) * rho(form, inverse(g));
  return Matrix<S>::max_abs_diff(rho_alg(form, adjoint(form, g, Y)), conj);
});

const auto coadjoint_action = per_mode([]<class S>(Rng& rng, const CheckConfig& cfg) {
  const auto& form = cached_form<S>(cfg.n);
  const auto f = random_dual<S>(rng, cfg.n);
  const auto g1 = random_group<S>(rng, cfg.n);
  const auto g2 = random_group<S>(rng, cfg.n);
  return dual_defect(coadjoint(form, g1, coadjoint(form, g2, f)),
                     coadjoint(form, mul(form, g1, g2), f));
});

const auto coadjoint_duality = per_mode([]<class S>(Rng& rng, const CheckConfig& cfg) {
  const auto& form = cached_form<S>(cfg.n);
  const auto f = random_dual<S>(rng, cfg.n);
  const auto g = random_group<S>(rng, cfg.n);
  const auto Y = random_alg<S>(rng, cfg.n);
  return sdiff<S>(coadjoint(form, g, f)(Y), f(adjoint(form, inverse(g), Y)));
});

const auto mu_invariance = per_mode([]<class S>(Rng& rng, const CheckConfig& cfg) {
  const auto& form = cached_form<S>(cfg.n);
  const auto f = random_dual<S>(rng, cfg.n);
  const auto g = random_group<S>(rng, cfg.n);
  return sdiff<S>(coadjoint(form, g, f).mu, f.mu);
});

const auto stabilizer_membership = per_mode([]<class S>(Rng& rng, const CheckConfig& cfg) {
  const auto& form = cached_form<S>(cfg.n);
  const auto& E = cached_extended<S>(cfg.n);
  const S tol = scalar_traits<S>::is_exact ? S(0) : S(1e-10);
  const auto g = random_group<S>(rng, cfg.n);
  const auto X = random_alg<S>(rng, cfg.n);
  const auto P = make_ghat_group(
      E, GhatGroupParams<S>{nonzero_scalar<S>(rng), random_vector<S>(rng, cfg.n),
                            rng.scalar<S>()});
  double defect = 0.0;
  if (!is_in_Ghat_f(E, rho(form, g), tol)) defect += 1.0;
  if (!is_in_ghat_f(E, rho_alg(form, X), tol)) defect += 1.0;
  if (!is_symplectic(E, P, tol)) defect += 1.0;
  if (!is_in_sp(E, rho_alg(form, X), tol)) defect += 1.0;
  return defect;
});

// ---------------------------------------------------------------------------
// momentum suite
// ---------------------------------------------------------------------------

const auto cocycle_identity = per_mode([]<class S>(Rng& rng, const CheckConfig& cfg) {
  const auto& form = cached_form<S>(cfg.n);
  const auto y = random_vector<S>(rng, cfg.n);
  const auto z = random_vector<S>(rng, cfg.n);
  const S sigma = affine_cocycle(form, y, z);
  double defect = sdiff<S>(sigma, form.omega(y, z));
  for (int k = 0; k < 10; ++k) {
    const auto v = random_vector<S>(rng, cfg.n);
    defect = std::max(defect, sdiff<S>(affine_bracket_at(form, y, z, v), sigma));
  }
  return defect;
});

const auto affine_shift = per_mode([]<class S>(Rng& rng, const CheckConfig& cfg) {
  const auto& form = cached_form<S>(cfg.n);
  const auto v = random_vector<S>(rng, cfg.n);
  const auto a = random_vector<S>(rng, cfg.n);
  const auto x = random_vector<S>(rng, cfg.n);
  return sdiff<S>(affine_momentum(form, v + a)(x),
                  affine_momentum(form, v)(x) + form.omega(x, a));
});

const auto nonequivariance_witness = per_mode([]<class S>(Rng& rng, const CheckConfig& cfg) {
  const auto& form = cached_form<S>(cfg.n);
  const auto a = random_vector<S>(rng, cfg.n);
  const auto v = random_vector<S>(rng, cfg.n);
  const auto w = random_vector<S>(rng, cfg.n);
  return covector_defect(
      affine_momentum(form, v + a) - affine_momentum(form, v),
      affine_momentum(form, w + a) - affine_momentum(form, w));
});

const auto hamiltonian_gradient = per_mode([]<class S>(Rng& rng, const CheckConfig& cfg) {
  const auto& form = cached_form<S>(cfg.n);
  const auto x = random_vector<S>(rng, cfg.n);
  const auto v = random_vector<S>(rng, cfg.n);
  const auto w = random_vector<S>(rng, cfg.n);
  if constexpr (scalar_traits<S>::is_exact) {
    return sdiff<S>(affine_directional_derivative(form, x, v, w),
                    form.omega(x, w));
  } else {
    const double eps = 1e-4;
    const double plus = affine_momentum(form, v + eps * w)(x);
    const double minus = affine_momentum(form, v + (-eps) * w)(x);
    const double expected = form.omega(x, w);
    const double scale = std::max(1.0, std::fabs(expected));
    return std::fabs((plus - minus) / (2 * eps) - expected) / scale;
  }
});

const auto heis_equivariance = per_mode([]<class S>(Rng& rng, const CheckConfig& cfg) {
  const auto& form = cached_form<S>(cfg.n);
  const auto v = random_vector<S>(rng, cfg.n);
  const auto g = random_group<S>(rng, cfg.n);
  return dual_defect(heis_momentum(form, v + g.v),
                     coadjoint(form, g, heis_momentum(form, v)));
});

const auto momentum_image_modulus = per_mode([]<class S>(Rng& rng, const CheckConfig& cfg) {
  const auto& form = cached_form<S>(cfg.n);
  const auto v = random_vector<S>(rng, cfg.n);
  const auto d = classify_dual(form, heis_momentum(form, v));
  double defect = sdiff<S>(d.mu, S(1));
  if (d.kind != OrbitKind::generic) defect += 1.0;
  return defect;
});

const auto momentum_surjectivity = per_mode([]<class S>(Rng& rng, const CheckConfig& cfg) {
  const auto& form = cached_form<S>(cfg.n);
  DualElement<S> f{random_covector<S>(rng, cfg.n), S(1)};
  return dual_defect(heis_momentum(form, momentum_preimage(form, f)), f);
});

// ---------------------------------------------------------------------------
// cotype suite
// ---------------------------------------------------------------------------

const auto rank_two_closed_form = per_mode([]<class S>(Rng& rng, const CheckConfig& cfg) {
  const auto& E = cached_extended<S>(cfg.n);
  const auto w = random_ext<S>(rng, cfg.n);
  const auto closed = L_w(E, w);
  const S tol = scalar_traits<S>::is_exact ? S(0) : S(1e-10);
  double defect =
      Matrix<S>::max_abs_diff(closed, L_outer(E, w, ext_f_last<S>(cfg.n)));
  if (!is_in_ghat(E, closed, tol)) defect += 1.0;
  return defect;
});

const auto decompose_roundtrip = per_mode([]<class S>(Rng& rng, const CheckConfig& cfg) {
  const auto& E = cached_extended<S>(cfg.n);
  const S tol = scalar_traits<S>::is_exact ? S(0) : S(1e-10);
  const auto Y = make_ghat(
      E, GhatParams<S>{rng.scalar<S>(), random_vector<S>(rng, cfg.n), rng.scalar<S>()});
  double defect = Matrix<S>::max_abs_diff(L_w(E, decompose_ghat(E, Y, tol)), Y);
  const auto w = random_ext<S>(rng, cfg.n);
  const auto back = decompose_ghat(E, L_w(E, w), tol);
  for (std::size_t i = 0; i < w.size(); ++i)
    defect = std::max(defect, sdiff<S>(back[i], w[i]));
  return defect;
});

const auto symplectic_conjugation = per_mode([]<class S>(Rng& rng, const CheckConfig& cfg) {
  const auto& E = cached_extended<S>(cfg.n);
  const S tol = scalar_traits<S>::is_exact ? S(0) : S(1e-9);
  const auto P = make_ghat_group(
      E, GhatGroupParams<S>{nonzero_scalar<S>(rng), random_vector<S>(rng, cfg.n),
                            rng.scalar<S>()});
  const auto w = random_ext<S>(rng, cfg.n);
  const auto sides = conjugate_L(E, P, w, tol);
  return Matrix<S>::max_abs_diff(sides.first, sides.second);
});

const auto trace_pairing_vanishing = per_mode([]<class S>(Rng& rng, const CheckConfig& cfg) {
  const auto& E = cached_extended<S>(cfg.n);
  const auto X = make_ghat(
      E, GhatParams<S>{rng.scalar<S>(), random_vector<S>(rng, cfg.n), rng.scalar<S>()});
  const auto Z = make_ghat(
      E, GhatParams<S>{S(0), random_vector<S>(rng, cfg.n), rng.scalar<S>()});
  double defect = scalar_traits<S>::to_double(
      scalar_traits<S>::abs(Matrix<S>::trace_product(X, Z)));
  const auto f = restrict_functional(E, X);
  defect = std::max(defect, covector_defect(f.lambda, SympCovector<S>::zero(cfg.n)));
  defect = std::max(defect, sdiff<S>(f.mu, S(0)));
  return defect;
});

const auto normal_form_invariance = per_mode([]<class S>(Rng& rng, const CheckConfig& cfg) {
  const auto& E = cached_extended<S>(cfg.n);
  const S tol = scalar_traits<S>::is_exact ? S(0) : S(1e-9);
  const auto P = make_ghat_group(
      E, GhatGroupParams<S>{S(1), random_vector<S>(rng, cfg.n), rng.scalar<S>()});
  const auto sides = conjugation_invariance_check(E, P, rng.scalar<S>(), tol);
  return Matrix<S>::max_abs_diff(sides.first, sides.second);
});

const auto reduction_residual = per_mode([]<class S>(Rng& rng, const CheckConfig& cfg) {
  const auto& E = cached_extended<S>(cfg.n);
  const auto params = GhatParams<S>{rng.scalar<S>(), random_vector<S>(rng, cfg.n),
                                    rng.scalar<S>()};
  const auto r = reduce_tuple(E, make_ghat(E, params));
  Matrix<S> expected(E.dim(), E.dim());
  expected(E.dim() - 1, 0) = params.xi;
  double defect = Matrix<S>::max_abs_diff(r.residual, expected);
  defect = std::max(defect, sdiff<S>(r.descriptor.modulus, params.xi));
  const bool want_height = params.xi != S(0);
  if ((r.descriptor.height == 1) != want_height) defect += 1.0;
  return defect;
});

const auto reduction_shift_stability = per_mode([]<class S>(Rng& rng, const CheckConfig& cfg) {
  const auto& E = cached_extended<S>(cfg.n);
  const auto Y = make_ghat(
      E, GhatParams<S>{rng.scalar<S>(), random_vector<S>(rng, cfg.n), rng.scalar<S>()});
  auto wprime = random_ext<S>(rng, cfg.n);
  wprime[2 * cfg.n + 1] = S(0);
  return sdiff<S>(reduce_tuple(E, Y + L_w(E, wprime)).descriptor.modulus,
                  reduce_tuple(E, Y).descriptor.modulus);
});

const auto restrict_anchor = per_mode([]<class S>(Rng&, const CheckConfig& cfg) {
  const auto& E = cached_extended<S>(cfg.n);
  Matrix<S> Y(E.dim(), E.dim());
  Y(0, E.dim() - 1) = S(1);
  const auto f = restrict_functional(E, Y);
  double defect = sdiff<S>(f.mu, S(1));
  defect = std::max(defect, covector_defect(f.lambda, SympCovector<S>::zero(cfg.n)));
  return defect;
});

const auto classify_normalizer = per_mode([]<class S>(Rng& rng, const CheckConfig& cfg) {
  const auto& form = cached_form<S>(cfg.n);
  DualElement<S> f{random_covector<S>(rng, cfg.n), nonzero_scalar<S>(rng)};
  const auto d = classify_dual(form, f);
  double defect = d.kind == OrbitKind::generic ? 0.0 : 1.0;
  if (d.normalizer)
    defect = std::max(defect, dual_defect(coadjoint(form, *d.normalizer, f),
                                          h_mu(cfg.n, f.mu)));
  else
    defect += 1.0;
  return defect;
});

const auto isotropy_center = per_mode([]<class S>(Rng& rng, const CheckConfig& cfg) {
  const auto& form = cached_form<S>(cfg.n);
  const S mu = nonzero_scalar<S>(rng);
  auto x = random_vector<S>(rng, cfg.n);
  if (x.is_zero()) x.x[0] = S(1);
  const GroupElement<S> off_center{x, rng.scalar<S>()};
  const GroupElement<S> central{SympVector<S>::zero(cfg.n), rng.scalar<S>()};
  double defect = 0.0;
  // Nonzero x must move h_mu; the center must fix it.
  if (dual_defect(coadjoint(form, off_center, h_mu(cfg.n, mu)), h_mu(cfg.n, mu)) == 0.0)
    defect += 1.0;
  defect = std::max(defect, dual_defect(coadjoint(form, central, h_mu(cfg.n, mu)),
                                        h_mu(cfg.n, mu)));
  return defect;
});

const auto orbit_scaling = per_mode([]<class S>(Rng& rng, const CheckConfig& cfg) {
  const auto& form = cached_form<S>(cfg.n);
  const auto a = random_alg<S>(rng, cfg.n);
  const auto b = random_alg<S>(rng, cfg.n);
  const S xi = rng.scalar<S>();
  return sdiff<S>(orbit_pairing(form, h_mu(cfg.n, xi), a, b),
                  xi * orbit_pairing(form, h_mu(cfg.n, S(1)), a, b));
});

const auto orbit_mu_invariance = per_mode([]<class S>(Rng& rng, const CheckConfig& cfg) {
  const auto& form = cached_form<S>(cfg.n);
  const auto a = random_alg<S>(rng, cfg.n);
  const auto b = random_alg<S>(rng, cfg.n);
  const auto f = random_dual<S>(rng, cfg.n);
  const auto g = random_group<S>(rng, cfg.n);
  return sdiff<S>(orbit_pairing(form, coadjoint(form, g, f), a, b),
                  orbit_pairing(form, f, a, b));
});

// ---------------------------------------------------------------------------
// quantization suite (always floating point)
// ---------------------------------------------------------------------------

vecn random_vecn(Rng& rng, std::size_t n, double lo, double hi) {
  vecn v(n);
  for (double& c : v) c = rng.real(lo, hi);
  return v;
}

HeisAlg3 random_alg3(Rng& rng, std::size_t n, double scale) {
  return HeisAlg3{random_vecn(rng, n, -scale, scale),
                  random_vecn(rng, n, -scale, scale), rng.real(-scale, scale)};
}

HeisGroup3 random_group3(Rng& rng, std::size_t n, double scale) {
  return HeisGroup3{random_vecn(rng, n, -scale, scale),
                    random_vecn(rng, n, -scale, scale), rng.real(-scale, scale)};
}

/// Mild member of the closed-form family; the ranges keep third-derivative
/// constants small enough that every stated tolerance has real margin.
TestFunction random_test_function(Rng& rng, std::size_t dim) {
  TestFunction f = TestFunction::gaussian(dim, 0.0);
  for (std::size_t j = 0; j < dim; ++j) {
    f.width[j] = rng.real(0.8, 1.8);
    f.freq[j] = rng.real(-0.3, 0.3);
    f.center[j] = rng.real(-0.4, 0.4);
  }
  Polynomial p(dim);
  p.add_term(std::vector<int>(dim, 0),
             cplx(rng.real(0.3, 1.0), rng.real(-0.5, 0.5)));
  std::vector<int> e(dim, 0);
  e[0] = 1;
  p.add_term(e, cplx(rng.real(-0.5, 0.5), rng.real(-0.5, 0.5)));
  f.poly = p;
  return f;
}

/// Evaluation grid for analytic-family checks in dimension d; resolution
/// drops with dimension to keep the point count bounded.
GridSpec eval_grid(std::size_t d) {
  if (d <= 1) return GridSpec(1, 4.0, 64);
  if (d == 2) return GridSpec(2, 3.0, 16);
  return GridSpec(d, 2.5, 8);
}

/// The analytic checks run the family at min(cfg.n, 3).
std::size_t family_n(const CheckConfig& cfg) {
  return std::max<std::size_t>(1, std::min<std::size_t>(cfg.n, 3));
}

double commutator_defect_eval(const GridSpec& eval, const TestFunction& lhs1,
                              const TestFunction& lhs2, const TestFunction& rhs) {
  double defect = 0.0, scale = 0.0;
  for (std::size_t i = 0; i < eval.size(); ++i) {
    const vecn z = eval.point_of(i);
    defect = std::max(defect, std::abs(lhs1.evaluate(z) - lhs2.evaluate(z) -
                                       rhs.evaluate(z)));
    scale = std::max(scale, std::abs(rhs.evaluate(z)));
  }
  return defect / std::max(scale, 1.0);
}

double prequant_homomorphism_defect(Rng& rng, const CheckConfig& cfg) {
  const std::size_t n = family_n(cfg);
  const GridSpec eval = eval_grid(2 * n);
  const TestFunction f = random_test_function(rng, 2 * n);
  const HeisAlg3 a = random_alg3(rng, n, 1.0);
  const HeisAlg3 b = random_alg3(rng, n, 1.0);
  return commutator_defect_eval(
      eval, prequant_op(a, prequant_op(b, f)), prequant_op(b, prequant_op(a, f)),
      prequant_op(bracket3(a, b), f));
}

double quant_commutator_analytic_defect(Rng& rng, const CheckConfig& cfg) {
  const std::size_t n = family_n(cfg);
  const GridSpec eval = eval_grid(n);
  const TestFunction f = random_test_function(rng, n);
  const HeisAlg3 a = random_alg3(rng, n, 1.0);
  const HeisAlg3 b = random_alg3(rng, n, 1.0);
  return commutator_defect_eval(eval, quant_op(a, quant_op(b, f)),
                                quant_op(b, quant_op(a, f)),
                                quant_op(bracket3(a, b), f));
}

double quant_commutator_grid_defect(Rng& rng, const CheckConfig& cfg) {
  const GridFunction f = sample(cfg.grid, random_test_function(rng, cfg.grid.n));
  const HeisAlg3 a = random_alg3(rng, cfg.grid.n, 1.0);
  const HeisAlg3 b = random_alg3(rng, cfg.grid.n, 1.0);
  const GridFunction lhs1 = quant_op(a, quant_op(b, f));
  const GridFunction lhs2 = quant_op(b, quant_op(a, f));
  const GridFunction rhs = quant_op(bracket3(a, b), f);
  double defect = 0.0;
  for (std::size_t i = 0; i < f.values.size(); ++i)
    defect = std::max(defect, std::abs(lhs1.values[i] - lhs2.values[i] -
                                       rhs.values[i]));
  return defect / std::max(sup_abs(rhs), 1.0);
}

double quant_skew_hermitian_defect(Rng& rng, const CheckConfig& cfg) {
  const GridFunction f = sample(cfg.grid, random_test_function(rng, cfg.grid.n));
  const GridFunction g = sample(cfg.grid, random_test_function(rng, cfg.grid.n));
  const HeisAlg3 a = random_alg3(rng, cfg.grid.n, 1.0);
  return std::abs(inner_product(quant_op(a, f), g) +
                  inner_product(f, quant_op(a, g)));
}

double polarization_defect(Rng& rng, const CheckConfig& cfg) {
  const std::size_t n = family_n(cfg);
  const TestFunction f = random_test_function(rng, n);
  const HeisAlg3 a = random_alg3(rng, n, 1.0);
  const TestFunction via_phase = prequant_op(a, lift_constant_in_y(f));
  const TestFunction direct = quant_op(a, f);
  double defect = 0.0;
  for (int k = 0; k < 10; ++k) {
    vecn xy(2 * n);
    for (double& c : xy) c = rng.real(-2.0, 2.0);
    const vecn x(xy.begin(), xy.begin() + long(n));
    defect = std::max(defect,
                      std::abs(via_phase.evaluate(xy) - direct.evaluate(x)));
  }
  return defect;
}

double repS_homomorphism_defect(Rng& rng, const CheckConfig& cfg) {
  const std::size_t n = family_n(cfg);
  const GridSpec eval = eval_grid(n);
  const TestFunction f = random_test_function(rng, n);
  const HeisGroup3 g1 = random_group3(rng, n, 1.0);
  const HeisGroup3 g2 = random_group3(rng, n, 1.0);
  const double xi = rng.real(-2.0, 2.0);
  const TestFunction lhs = rep_S(xi, g1, rep_S(xi, g2, f));
  const TestFunction rhs = rep_S(xi, mul3(g1, g2), f);
  double defect = 0.0;
  for (std::size_t i = 0; i < eval.size(); ++i) {
    const vecn z = eval.point_of(i);
    defect = std::max(defect, std::abs(lhs.evaluate(z) - rhs.evaluate(z)));
  }
  return defect;
}

double repS_unitarity_defect(Rng& rng, const CheckConfig& cfg) {
  TestFunction fa = TestFunction::gaussian(cfg.grid.n, std::numbers::pi);
  TestFunction fb = TestFunction::gaussian(cfg.grid.n, 2.0);
  for (std::size_t j = 0; j < cfg.grid.n; ++j) {
    fa.center[j] = rng.real(-1.0, 1.0);
    fa.freq[j] = rng.real(-0.5, 0.5);
    fb.center[j] = rng.real(-1.0, 1.0);
  }
  const GridFunction A = sample(cfg.grid, fa);
  const GridFunction B = sample(cfg.grid, fb);
  const double h = cfg.grid.h();
  HeisGroup3 g = random_group3(rng, cfg.grid.n, 1.0);
  for (std::size_t j = 0; j < cfg.grid.n; ++j)
    g.x[j] = h * double(rng.int_in(-128, 128));
  const double xi = rng.real(-1.5, 1.5);
  return std::abs(inner_product(rep_S(xi, g, A), rep_S(xi, g, B)) -
                  inner_product(A, B));
}

double repS_central_character_defect(Rng& rng, const CheckConfig& cfg) {
  const std::size_t n = family_n(cfg);
  const TestFunction f = random_test_function(rng, n);
  const double t = rng.real(-3.0, 3.0);
  const double xi = rng.real(-2.0, 2.0);
  const TestFunction sf =
      rep_S(xi, HeisGroup3{vecn(n, 0.0), vecn(n, 0.0), t}, f);
  const cplx phase(std::cos(kTwoPi * xi * t), std::sin(kTwoPi * xi * t));
  double defect = 0.0;
  for (int k = 0; k < 10; ++k) {
    vecn z(n);
    for (double& c : z) c = rng.real(-2.0, 2.0);
    defect = std::max(defect, std::abs(sf.evaluate(z) - phase * f.evaluate(z)));
  }
  return defect;
}

double twist_automorphism_defect(Rng& rng, const CheckConfig&) {
  const HeisGroup3 a = random_group3(rng, 2, 1.5);
  const HeisGroup3 b = random_group3(rng, 2, 1.5);
  const HeisGroup3 lhs = twist_psi(mul3(a, b));
  const HeisGroup3 rhs = mul3(twist_psi(a), twist_psi(b));
  double defect = std::fabs(lhs.t - rhs.t);
  for (std::size_t j = 0; j < 2; ++j) {
    defect = std::max(defect, std::fabs(lhs.x[j] - rhs.x[j]));
    defect = std::max(defect, std::fabs(lhs.y[j] - rhs.y[j]));
  }
  HeisGroup3 four = a;
  for (int k = 0; k < 4; ++k) four = twist_psi(four);
  for (std::size_t j = 0; j < 2; ++j) {
    defect = std::max(defect, std::fabs(four.x[j] - a.x[j]));
    defect = std::max(defect, std::fabs(four.y[j] - a.y[j]));
  }
  return defect;
}

/// The difference-quotient truncation scales with the cube of the phase
/// slope, so the infinitesimalization instances draw smaller algebra
/// elements than the other checks: |xi|,|eta|,|s| <= 0.3 keeps the u = 1e-3
/// defect a factor of ~3 under its 1e-5 bound across seeds.
HeisAlg3 random_infinitesimal_alg3(Rng& rng, std::size_t n) {
  return random_alg3(rng, n, 0.3);
}

double infinitesimal_defect_at(Rng& rng, const CheckConfig& cfg, double u) {
  const GridSpec eval(cfg.grid.n, std::min(cfg.grid.L, 4.0),
                      std::min<std::size_t>(cfg.grid.N, 512));
  const TestFunction f = random_test_function(rng, cfg.grid.n);
  const HeisAlg3 a = random_infinitesimal_alg3(rng, cfg.grid.n);
  return infinitesimal_check(a, f, u, eval);
}

double infinitesimal_small_step_defect(Rng& rng, const CheckConfig& cfg) {
  return infinitesimal_defect_at(rng, cfg, 1e-3);
}

double infinitesimal_order_defect(Rng& rng, const CheckConfig& cfg) {
  const GridSpec eval(cfg.grid.n, std::min(cfg.grid.L, 4.0),
                      std::min<std::size_t>(cfg.grid.N, 512));
  const TestFunction f = random_test_function(rng, cfg.grid.n);
  const HeisAlg3 a = random_infinitesimal_alg3(rng, cfg.grid.n);
  const double coarse = infinitesimal_check(a, f, 1e-2, eval);
  const double fine = infinitesimal_check(a, f, 1e-3, eval);
  if (fine == 0.0) return 0.0;
  const double order = std::log10(coarse / fine);
  return std::max(0.0, 1.9 - order);
}

double quadrature_anchor_defect(Rng&, const CheckConfig&) {
  const GridSpec spec(1, 6.0, 512);
  const GridFunction f = sample(spec, TestFunction::gaussian(1, std::numbers::pi));
  return std::abs(inner_product(f, f) - cplx(1.0 / std::sqrt(2.0), 0.0));
}

// ---------------------------------------------------------------------------
// registry
// ---------------------------------------------------------------------------

std::function<double(Rng&, const CheckConfig&, bool)> float_only(
    double (*fn)(Rng&, const CheckConfig&)) {
  return [fn](Rng& rng, const CheckConfig& cfg, bool) { return fn(rng, cfg); };
}

struct Suite {
  std::vector<std::string> checks;
  bool algebra = true;
};

const std::map<std::string, CheckSpec>& registry() {
  static const std::map<std::string, CheckSpec> reg = [] {
    std::map<std::string, CheckSpec> r;
    // group
    r["rho_homomorphism"] = {0.0, 1e-12, rho_homomorphism};
    r["rho_structure"] = {0.0, 1e-12, rho_structure};
    r["bracket_isomorphism"] = {0.0, 1e-12, bracket_isomorphism};
    r["algebra_nilpotency"] = {0.0, 1e-12, algebra_nilpotency};
    r["exp_consistency"] = {0.0, 1e-12, exp_consistency};
    r["ad_matrix_conjugation"] = {0.0, 1e-12, ad_matrix_conjugation};
    r["coadjoint_action"] = {0.0, 1e-12, coadjoint_action};
    r["coadjoint_duality"] = {0.0, 1e-12, coadjoint_duality};
    r["mu_invariance"] = {0.0, 1e-12, mu_invariance};
    r["stabilizer_membership"] = {0.0, 0.0, stabilizer_membership};
    // momentum
    r["cocycle_identity"] = {0.0, 1e-12, cocycle_identity};
    r["affine_shift"] = {0.0, 1e-12, affine_shift};
    r["nonequivariance_witness"] = {0.0, 1e-12, nonequivariance_witness};
    r["hamiltonian_gradient"] = {0.0, 1e-6, hamiltonian_gradient};
    r["heis_equivariance"] = {0.0, 1e-12, heis_equivariance};
    r["momentum_image_modulus"] = {0.0, 1e-12, momentum_image_modulus};
    r["momentum_surjectivity"] = {0.0, 1e-12, momentum_surjectivity};
    // cotype
    r["rank_two_closed_form"] = {0.0, 1e-10, rank_two_closed_form};
    r["decompose_roundtrip"] = {0.0, 1e-10, decompose_roundtrip};
    r["symplectic_conjugation"] = {0.0, 1e-9, symplectic_conjugation};
    r["trace_pairing_vanishing"] = {0.0, 1e-10, trace_pairing_vanishing};
    r["normal_form_invariance"] = {0.0, 1e-9, normal_form_invariance};
    r["reduction_residual"] = {0.0, 1e-10, reduction_residual};
    r["reduction_shift_stability"] = {0.0, 1e-10, reduction_shift_stability};
    r["restrict_anchor"] = {0.0, 1e-12, restrict_anchor, 1};
    r["classify_normalizer"] = {0.0, 1e-10, classify_normalizer};
    r["isotropy_center"] = {0.0, 0.0, isotropy_center};
    r["orbit_scaling"] = {0.0, 1e-12, orbit_scaling};
    r["orbit_mu_invariance"] = {0.0, 1e-12, orbit_mu_invariance};
    // quantization
    r["prequant_homomorphism"] = {1e-10, 1e-10, float_only(prequant_homomorphism_defect)};
    r["quant_commutator_analytic"] = {1e-10, 1e-10, float_only(quant_commutator_analytic_defect)};
    r["quant_commutator_grid"] = {1e-6, 1e-6, float_only(quant_commutator_grid_defect)};
    r["quant_skew_hermitian"] = {1e-8, 1e-8, float_only(quant_skew_hermitian_defect)};
    r["polarization_consistency"] = {1e-12, 1e-12, float_only(polarization_defect)};
    r["repS_homomorphism"] = {1e-12, 1e-12, float_only(repS_homomorphism_defect)};
    r["repS_unitarity"] = {1e-8, 1e-8, float_only(repS_unitarity_defect)};
    r["repS_central_character"] = {1e-12, 1e-12, float_only(repS_central_character_defect)};
    r["twist_automorphism"] = {1e-12, 1e-12, float_only(twist_automorphism_defect)};
    r["infinitesimal_defect"] = {1e-5, 1e-5, float_only(infinitesimal_small_step_defect)};
    r["infinitesimal_order"] = {0.0, 0.0, float_only(infinitesimal_order_defect)};
    r["quadrature_anchor"] = {1e-10, 1e-10, float_only(quadrature_anchor_defect), 1};
    return r;
  }();
  return reg;
}

const std::map<std::string, Suite>& suites() {
  static const std::map<std::string, Suite> s = {
      {"group",
       {{"rho_homomorphism", "rho_structure", "bracket_isomorphism",
         "algebra_nilpotency", "exp_consistency", "ad_matrix_conjugation",
         "coadjoint_action", "coadjoint_duality", "mu_invariance",
         "stabilizer_membership"},
        true}},
      {"momentum",
       {{"cocycle_identity", "affine_shift", "nonequivariance_witness",
         "hamiltonian_gradient", "heis_equivariance", "momentum_image_modulus",
         "momentum_surjectivity"},
        true}},
      {"cotype",
       {{"rank_two_closed_form", "decompose_roundtrip", "symplectic_conjugation",
         "trace_pairing_vanishing", "normal_form_invariance", "reduction_residual",
         "reduction_shift_stability", "restrict_anchor", "classify_normalizer",
         "isotropy_center", "orbit_scaling", "orbit_mu_invariance"},
        true}},
      {"quantization",
       {{"prequant_homomorphism", "quant_commutator_analytic",
         "quant_commutator_grid", "quant_skew_hermitian",
         "polarization_consistency", "repS_homomorphism", "repS_unitarity",
         "repS_central_character", "twist_automorphism", "infinitesimal_defect",
         "infinitesimal_order", "quadrature_anchor"},
        false}},
  };
  return s;
}

}  // namespace

bool SuiteResult::pass() const {
  for (const CheckResult& c : checks)
    if (!c.pass) return false;
  return true;
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& [name, suite] : suites()) out.push_back(name);
    return out;
  }();
  return names;
}

bool is_suite(const std::string& name) { return suites().count(name) != 0; }

CheckResult run_check(const std::string& name, const CheckConfig& cfg) {
  const auto it = registry().find(name);
  if (it == registry().end())
    throw std::invalid_argument("unknown check: " + name);
  const CheckSpec& spec = it->second;
  const long trials =
      spec.fixed_trials > 0 ? spec.fixed_trials : std::max<long>(1, cfg.trials);

  // Trials are split into fixed chunks, each with its own named stream, so
  // the result does not depend on scheduling or thread count.
  constexpr long kChunk = 64;
  const long nchunks = (trials + kChunk - 1) / kChunk;
  std::vector<double> worst_per_chunk(std::size_t(nchunks), 0.0);
  std::vector<long> worst_trial_per_chunk(std::size_t(nchunks), 0);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) if (nchunks > 1)
#endif
  for (long c = 0; c < nchunks; ++c) {
    Rng rng(cfg.seed, name + "#" + std::to_string(c));
    const long lo = c * kChunk;
    const long hi = std::min(trials, lo + kChunk);
    double worst = 0.0;
    long at = 0;
    for (long t = lo; t < hi; ++t) {
      const double defect = spec.defect(rng, cfg, cfg.exact);
      if (defect > worst) {
        worst = defect;
        at = t - lo;
      }
    }
    worst_per_chunk[std::size_t(c)] = worst;
    worst_trial_per_chunk[std::size_t(c)] = at;
  }
  double worst = 0.0;
  long worst_chunk = 0;
  for (long c = 0; c < nchunks; ++c) {
    if (worst_per_chunk[std::size_t(c)] > worst) {
      worst = worst_per_chunk[std::size_t(c)];
      worst_chunk = c;
    }
  }

  double tol = cfg.exact ? spec.exact_tol : spec.float_tol;
  if (cfg.tol_override >= 0.0) tol = cfg.tol_override;
  return CheckResult{name,
                     trials,
                     worst,
                     tol,
                     worst <= tol,
                     name + "#" + std::to_string(worst_chunk),
                     worst_trial_per_chunk[std::size_t(worst_chunk)]};
}

SuiteResult run_suite(const std::string& suite, const CheckConfig& cfg) {
  const auto it = suites().find(suite);
  if (it == suites().end()) throw std::invalid_argument("unknown suite: " + suite);
  const auto start = std::chrono::steady_clock::now();
  SuiteResult out;
  out.suite = suite;
  out.seed = cfg.seed;
  out.n = cfg.n;
  CheckConfig local = cfg;
  if (!it->second.algebra) local.exact = false;
  if (!it->second.algebra) local.trials = cfg.functions;
  out.mode = local.exact ? "exact" : "float";
  for (const std::string& check : it->second.checks)
    out.checks.push_back(run_check(check, local));
  out.wall_time_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  return out;
}

nlohmann::json report_json(const std::vector<SuiteResult>& suites_run) {
  nlohmann::json out;
  bool all_pass = true;
  nlohmann::json list = nlohmann::json::array();
  for (const SuiteResult& s : suites_run) {
    nlohmann::json checks = nlohmann::json::array();
    for (const CheckResult& c : s.checks) {
      nlohmann::json record = {{"check", c.name},
                               {"instances", c.instances},
                               {"max_defect", c.max_defect},
                               {"tolerance", c.tolerance},
                               {"pass", c.pass}};
      if (!c.pass)
        record["worst_instance"] = {{"stream", c.worst_stream},
                                    {"trial", c.worst_trial},
                                    {"seed", s.seed}};
      checks.push_back(std::move(record));
    }
    all_pass = all_pass && s.pass();
    list.push_back({{"suite", s.suite},
                    {"mode", s.mode},
                    {"seed", s.seed},
                    {"n", s.n},
                    {"pass", s.pass()},
                    {"wall_time_s", s.wall_time_s},
                    {"checks", checks}});
  }
  out["suites"] = list;
  out["pass"] = all_pass;
  return out;
}

}  // namespace heis::verify
