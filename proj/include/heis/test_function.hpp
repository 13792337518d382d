#pragma once

#include <complex>
#include <cstddef>
#include <map>
#include <vector>

namespace heis {

using cplx = std::complex<double>;
using vecn = std::vector<double>;

/// Multivariate polynomial with complex coefficients, keyed by exponent
/// multi-index. Degrees stay tiny; a map is plenty.
class Polynomial {
 public:
  explicit Polynomial(std::size_t dim) : dim_(dim) {}

  static Polynomial constant(std::size_t dim, cplx value) {
    Polynomial p(dim);
    p.add_term(std::vector<int>(dim, 0), value);
    return p;
  }

  std::size_t dim() const { return dim_; }
  bool empty() const { return terms_.empty(); }

  void add_term(std::vector<int> exponents, cplx coeff);

  cplx evaluate(const vecn& z) const;

  Polynomial derivative(std::size_t var) const;
  Polynomial times_coord(std::size_t var) const;
  Polynomial scaled(cplx c) const;
  /// q with q(z) = p(z - shift).
  Polynomial translated(const vecn& shift) const;

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b);

  const std::map<std::vector<int>, cplx>& terms() const { return terms_; }

 private:
  std::size_t dim_;
  std::map<std::vector<int>, cplx> terms_;
};

/// Closed-form family p(z) exp(-sum_j a_j (z_j - c_j)^2 + 2 pi i <b, z>).
/// Closed under differentiation, coordinate multiplication, translation and
/// plane-wave modulation, so operator identities can be checked analytically.
struct TestFunction {
  Polynomial poly;
  vecn width;   // a_j >= 0 per variable
  vecn freq;    // b_j
  vecn center;  // c_j

  static TestFunction gaussian(std::size_t dim, double width);
  static TestFunction constant(std::size_t dim, cplx value);

  std::size_t dim() const { return width.size(); }

  cplx evaluate(const vecn& z) const;

  TestFunction derivative(std::size_t var) const;
  TestFunction times_coord(std::size_t var) const;
  TestFunction scaled(cplx c) const;
  /// f(. - shift).
  TestFunction translated(const vecn& shift) const;
  /// e^{2 pi i <db, .>} f.
  TestFunction modulated(const vecn& db) const;
};

}  // namespace heis
