#include "heis/quantization.hpp"

#include "heis/grid_kernels.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace heis {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double dot(const vecn& a, const vecn& b) {
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

void require_same_n(std::size_t a, std::size_t b) {
  if (a != b) throw std::invalid_argument("dimension mismatch");
}

}  // namespace

HeisAlg3 bracket3(const HeisAlg3& a, const HeisAlg3& b) {
  require_same_n(a.n(), b.n());
  return HeisAlg3{vecn(a.n(), 0.0), vecn(a.n(), 0.0),
                  dot(a.xi, b.eta) - dot(a.eta, b.xi)};
}

HeisAlg3 scale3(double u, const HeisAlg3& a) {
  HeisAlg3 out = a;
  for (double& v : out.xi) v *= u;
  for (double& v : out.eta) v *= u;
  out.s *= u;
  return out;
}

HeisGroup3 mul3(const HeisGroup3& a, const HeisGroup3& b) {
  require_same_n(a.n(), b.n());
  HeisGroup3 out{a.x, a.y, 0.0};
  for (std::size_t i = 0; i < a.n(); ++i) {
    out.x[i] += b.x[i];
    out.y[i] += b.y[i];
  }
  // omega((x,y),(x',y')) = <x, y'> - <y, x'>
  out.t = a.t + b.t + 0.5 * (dot(a.x, b.y) - dot(a.y, b.x));
  return out;
}

HeisGroup3 inverse3(const HeisGroup3& g) {
  HeisGroup3 out = g;
  for (double& v : out.x) v = -v;
  for (double& v : out.y) v = -v;
  out.t = -g.t;
  return out;
}

HeisGroup3 twist_psi(const HeisGroup3& g) {
  HeisGroup3 out{g.y, g.x, g.t};
  for (double& v : out.x) v = -v;
  return out;
}

double theta_contraction(const vecn& field_x, const vecn& /*field_y*/,
                         const vecn& /*x*/, const vecn& y) {
  require_same_n(field_x.size(), y.size());
  return dot(y, field_x);
}

TestFunction covariant_derivative(const vecn& field_x, const vecn& field_y,
                                  const TestFunction& f) {
  const std::size_t n = field_x.size();
  require_same_n(field_y.size(), n);
  require_same_n(f.dim(), 2 * n);
  // L_X f
  Polynomial acc(f.poly.dim());
  TestFunction out{acc, f.width, f.freq, f.center};
  for (std::size_t j = 0; j < n; ++j) {
    if (field_x[j] != 0.0)
      out.poly = out.poly + f.derivative(j).poly.scaled(field_x[j]);
    if (field_y[j] != 0.0)
      out.poly = out.poly + f.derivative(n + j).poly.scaled(field_y[j]);
  }
  // + 2 pi i <y, Xx> f, with y the second coordinate block.
  for (std::size_t j = 0; j < n; ++j)
    if (field_x[j] != 0.0)
      out.poly = out.poly +
                 f.times_coord(n + j).poly.scaled(cplx(0.0, kTwoPi * field_x[j]));
  return out;
}

std::pair<vecn, vecn> hamiltonian_vf(const HeisAlg3& a) {
  return {a.xi, a.eta};
}

TestFunction prequant_op(const HeisAlg3& a, const TestFunction& f) {
  const std::size_t n = a.n();
  require_same_n(f.dim(), 2 * n);
  Polynomial acc(f.poly.dim());
  TestFunction out{acc, f.width, f.freq, f.center};
  for (std::size_t j = 0; j < n; ++j) {
    if (a.xi[j] != 0.0)
      out.poly = out.poly + f.derivative(j).poly.scaled(-a.xi[j]);
    if (a.eta[j] != 0.0) {
      out.poly = out.poly + f.derivative(n + j).poly.scaled(-a.eta[j]);
      out.poly = out.poly +
                 f.times_coord(j).poly.scaled(cplx(0.0, -kTwoPi * a.eta[j]));
    }
  }
  out.poly = out.poly + f.poly.scaled(cplx(0.0, kTwoPi * a.s));
  return out;
}

TestFunction quant_op(const HeisAlg3& a, const TestFunction& f) {
  const std::size_t n = a.n();
  require_same_n(f.dim(), n);
  Polynomial acc(f.poly.dim());
  TestFunction out{acc, f.width, f.freq, f.center};
  for (std::size_t j = 0; j < n; ++j) {
    if (a.xi[j] != 0.0)
      out.poly = out.poly + f.derivative(j).poly.scaled(-a.xi[j]);
    if (a.eta[j] != 0.0)
      out.poly = out.poly +
                 f.times_coord(j).poly.scaled(cplx(0.0, -kTwoPi * a.eta[j]));
  }
  out.poly = out.poly + f.poly.scaled(cplx(0.0, kTwoPi * a.s));
  return out;
}

GridFunction quant_op(const HeisAlg3& a, const GridFunction& f) {
  require_same_n(a.n(), f.spec.n);
  if (f.spec.N < 16)
    throw std::invalid_argument(
        "grid too coarse for the finite-difference path (N < 16)");
  GridFunction out{f.spec, {}};
  if (kernels::parallel_enabled(f.values.size()))
    kernels::quant_apply_parallel(f.spec, f.values, a.xi, a.eta, a.s, out.values);
  else
    kernels::quant_apply_serial(f.spec, f.values, a.xi, a.eta, a.s, out.values);
  return out;
}

TestFunction lift_constant_in_y(const TestFunction& f) {
  const std::size_t n = f.dim();
  Polynomial lifted(2 * n);
  for (const auto& [exps, coeff] : f.poly.terms()) {
    std::vector<int> e(2 * n, 0);
    for (std::size_t j = 0; j < n; ++j) e[j] = exps[j];
    lifted.add_term(std::move(e), coeff);
  }
  vecn width(2 * n, 0.0), freq(2 * n, 0.0), center(2 * n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    width[j] = f.width[j];
    freq[j] = f.freq[j];
    center[j] = f.center[j];
  }
  return TestFunction{std::move(lifted), std::move(width), std::move(freq),
                      std::move(center)};
}

namespace {

/// Phase data of S(x,y,t) at modulus xi: constant part t + 1/2 <x, y> and
/// plane-wave frequency -xi y.
struct RepPhase {
  cplx scale;
  vecn freq;
};

RepPhase rep_phase(double xi_mod, const HeisGroup3& g) {
  const double constant = kTwoPi * xi_mod * (g.t + 0.5 * dot(g.x, g.y));
  RepPhase out{cplx(std::cos(constant), std::sin(constant)), g.y};
  for (double& v : out.freq) v *= -xi_mod;
  return out;
}

}  // namespace

TestFunction rep_S(double xi_mod, const HeisGroup3& g, const TestFunction& f) {
  require_same_n(f.dim(), g.n());
  const RepPhase ph = rep_phase(xi_mod, g);
  return f.translated(g.x).modulated(ph.freq).scaled(ph.scale);
}

std::vector<long> lattice_steps(const GridSpec& spec, const vecn& x) {
  require_same_n(spec.n, x.size());
  const double h = spec.h();
  std::vector<long> steps(x.size(), 0);
  for (std::size_t j = 0; j < x.size(); ++j) {
    const double exact = x[j] / h;
    const double rounded = std::nearbyint(exact);
    if (std::fabs(exact - rounded) > 1e-9)
      throw std::invalid_argument(
          "translation is not a lattice multiple of the grid spacing");
    steps[j] = long(rounded);
  }
  return steps;
}

GridFunction rep_S(double xi_mod, const HeisGroup3& g, const GridFunction& f) {
  require_same_n(f.spec.n, g.n());
  const std::vector<long> steps = lattice_steps(f.spec, g.x);
  const RepPhase ph = rep_phase(xi_mod, g);
  GridFunction out{f.spec, {}};
  if (kernels::parallel_enabled(f.values.size()))
    kernels::shift_modulate_parallel(f.spec, f.values, steps, ph.scale, ph.freq,
                                     out.values);
  else
    kernels::shift_modulate_serial(f.spec, f.values, steps, ph.scale, ph.freq,
                                   out.values);
  return out;
}

double infinitesimal_check(const HeisAlg3& a, const TestFunction& f, double u,
                           const GridSpec& eval_grid) {
  if (!(u > 0.0)) throw std::invalid_argument("step must be positive");
  require_same_n(a.n(), f.dim());
  require_same_n(eval_grid.n, f.dim());
  const HeisGroup3 plus{scale3(u, a).xi, scale3(u, a).eta, u * a.s};
  const HeisGroup3 minus{scale3(-u, a).xi, scale3(-u, a).eta, -u * a.s};
  const TestFunction s_plus = rep_S(1.0, plus, f);
  const TestFunction s_minus = rep_S(1.0, minus, f);
  const TestFunction expected = quant_op(a, f);
  double defect = 0.0;
  const std::size_t total = eval_grid.size();
  for (std::size_t i = 0; i < total; ++i) {
    const vecn z = eval_grid.point_of(i);
    const cplx diff =
        (s_plus.evaluate(z) - s_minus.evaluate(z)) / (2.0 * u) -
        expected.evaluate(z);
    defect = std::max(defect, std::abs(diff));
  }
  return defect;
}

}  // namespace heis
