#pragma once

#include <span>
#include <vector>

#include "polaron/graded_matrix.hpp"

namespace polaron {

/// Polynomial with complex coefficients in ascending order.
class Poly {
 public:
  Poly() = default;
  explicit Poly(std::vector<cplx> coeffs) : c_(std::move(coeffs)) {}

  /// lead * prod_j (x_j - x).
  static Poly from_roots(std::span<const cplx> roots, cplx lead);
  /// Least-squares fit of the given degree through (x, y) samples.
  static Poly fit(std::span<const cplx> x, std::span<const cplx> y, int degree);

  const std::vector<cplx>& coeffs() const& { return c_; }
  std::vector<cplx> coeffs() && { return std::move(c_); }
  cplx coeff(int n) const { return n >= 0 && n < static_cast<int>(c_.size()) ? c_[n] : cplx{}; }
  int size() const { return static_cast<int>(c_.size()); }
  /// Highest n with |c_n| > tol * max|c|; -1 for the zero polynomial.
  int degree(double tol = 0.0) const;

  template <class T>
  T operator()(const T& x) const {
    T r = cplx{};
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * x + T(*it);
    return r;
  }

  Poly derivative() const;
  /// Roots of the polynomial truncated at degree(tol), via the companion matrix.
  std::vector<cplx> roots(double tol = 1e-13) const;
  /// Quotient and remainder of division by a polynomial of exact degree d.degree().
  std::pair<Poly, Poly> divmod(const Poly& d) const;

  friend Poly operator*(const Poly& a, const Poly& b);
  friend Poly operator+(const Poly& a, const Poly& b);
  friend Poly operator-(const Poly& a, const Poly& b);
  friend Poly operator*(cplx s, Poly a);

 private:
  std::vector<cplx> c_;
};

/// n points k * period / n, k = 0..n-1.
std::vector<double> uniform_grid(int n, double period);

/// Finite Fourier series sum_{|k| <= K} c_k e^{iku} with Grassmann coefficients.
class TrigPolynomial {
 public:
  TrigPolynomial() = default;
  TrigPolynomial(int max_mode, std::vector<Grassmann> coeffs);

  /// Least-squares fit with every mode |k| <= max_mode; needs >= 2 max_mode + 1
  /// distinct points.
  static TrigPolynomial fit(std::span<const double> grid, std::span<const Grassmann> values,
                            int max_mode);

  int max_mode() const { return max_mode_; }
  Grassmann coefficient(int k) const;
  Grassmann evaluate(cplx u) const;

  /// max_k |c_k - c_{-k} e^{ik eta}| (crossing symmetry u -> -u - eta).
  double crossing_residual(cplx eta) const;
  /// Largest coefficient at odd k (vanishes for pi-periodic functions).
  double odd_mode_norm() const;
  /// Largest coefficient with |k| > bound.
  double norm_above(int bound) const;
  /// Max residual of the fit on its own grid.
  double fit_residual() const { return fit_residual_; }

 private:
  int max_mode_ = 0;
  std::vector<Grassmann> c_;
  double fit_residual_ = 0.0;
};

/// c_k = (1/M) sum_j f(u_j) e^{-ik u_j} for samples on uniform_grid(M, 2 pi).
GradedMatrix fourier_mode(std::span<const GradedMatrix> samples, int k);

}  // namespace polaron
