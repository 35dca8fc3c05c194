#include "polaron/trig_poly.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

#include "polaron/error.hpp"

namespace polaron {

namespace {

const double kPi = std::acos(-1.0);

}  // namespace

// ----------------------------------------------------------------------- Poly

Poly Poly::from_roots(std::span<const cplx> roots, cplx lead) {
  std::vector<cplx> c{lead};
  for (cplx x : roots) {
    // multiply by (x - w)
    std::vector<cplx> next(c.size() + 1, cplx{});
    for (std::size_t n = 0; n < c.size(); ++n) {
      next[n] += x * c[n];
      next[n + 1] -= c[n];
    }
    c = std::move(next);
  }
  return Poly(std::move(c));
}

Poly Poly::fit(std::span<const cplx> x, std::span<const cplx> y, int degree) {
  if (x.size() != y.size() || static_cast<int>(x.size()) < degree + 1)
    throw Error(ErrorCode::RankDeficient, "not enough samples for polynomial fit");
  const int m = static_cast<int>(x.size());
  Eigen::MatrixXcd a(m, degree + 1);
  Eigen::VectorXcd b(m);
  for (int i = 0; i < m; ++i) {
    cplx p = 1.0;
    for (int n = 0; n <= degree; ++n, p *= x[i]) a(i, n) = p;
    b(i) = y[i];
  }
  const Eigen::VectorXcd sol = a.colPivHouseholderQr().solve(b);
  return Poly(std::vector<cplx>(sol.data(), sol.data() + sol.size()));
}

int Poly::degree(double tol) const {
  double scale = 0.0;
  for (cplx v : c_) scale = std::max(scale, std::abs(v));
  for (int n = size() - 1; n >= 0; --n)
    if (std::abs(c_[n]) > tol * scale && c_[n] != cplx{}) return n;
  return -1;
}

Poly Poly::derivative() const {
  if (c_.size() <= 1) return Poly({cplx{}});
  std::vector<cplx> d(c_.size() - 1);
  for (std::size_t n = 1; n < c_.size(); ++n) d[n - 1] = static_cast<double>(n) * c_[n];
  return Poly(std::move(d));
}

std::vector<cplx> Poly::roots(double tol) const {
  const int deg = degree(tol);
  if (deg <= 0) return {};
  Eigen::MatrixXcd comp = Eigen::MatrixXcd::Zero(deg, deg);
  for (int i = 1; i < deg; ++i) comp(i, i - 1) = 1.0;
  for (int i = 0; i < deg; ++i) comp(i, deg - 1) = -c_[i] / c_[deg];
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(comp, false);
  const auto& ev = es.eigenvalues();
  std::vector<cplx> r(ev.data(), ev.data() + ev.size());
  // One Newton polish step per root against the original coefficients.
  const Poly dp = derivative();
  for (cplx& x : r) {
    const cplx d = dp(x);
    if (d != cplx{}) x -= (*this)(x) / d;
  }
  return r;
}

std::pair<Poly, Poly> Poly::divmod(const Poly& d) const {
  const int dd = d.degree();
  if (dd < 0) throw Error(ErrorCode::RankDeficient, "division by zero polynomial");
  std::vector<cplx> rem = c_;
  const int n = size() - 1;
  if (n < dd) return {Poly({cplx{}}), *this};
  std::vector<cplx> q(n - dd + 1, cplx{});
  for (int k = n - dd; k >= 0; --k) {
    q[k] = rem[k + dd] / d.c_[dd];
    for (int j = 0; j <= dd; ++j) rem[k + j] -= q[k] * d.c_[j];
  }
  rem.resize(std::max(dd, 1));
  return {Poly(std::move(q)), Poly(std::move(rem))};
}

Poly operator*(const Poly& a, const Poly& b) {
  if (a.c_.empty() || b.c_.empty()) return Poly();
  std::vector<cplx> c(a.c_.size() + b.c_.size() - 1, cplx{});
  for (std::size_t i = 0; i < a.c_.size(); ++i)
    for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
  return Poly(std::move(c));
}

Poly operator+(const Poly& a, const Poly& b) {
  std::vector<cplx> c(std::max(a.c_.size(), b.c_.size()), cplx{});
  for (std::size_t i = 0; i < a.c_.size(); ++i) c[i] += a.c_[i];
  for (std::size_t i = 0; i < b.c_.size(); ++i) c[i] += b.c_[i];
  return Poly(std::move(c));
}

Poly operator-(const Poly& a, const Poly& b) { return a + (-1.0) * b; }

Poly operator*(cplx s, Poly a) {
  for (cplx& v : a.c_) v *= s;
  return a;
}

// ------------------------------------------------------------- TrigPolynomial

std::vector<double> uniform_grid(int n, double period) {
  std::vector<double> g(n);
  for (int k = 0; k < n; ++k) g[k] = period * k / n;
  return g;
}

TrigPolynomial::TrigPolynomial(int max_mode, std::vector<Grassmann> coeffs)
    : max_mode_(max_mode), c_(std::move(coeffs)) {
  if (static_cast<int>(c_.size()) != 2 * max_mode + 1)
    throw Error(ErrorCode::DimMismatch, "coefficient count must be 2K+1");
}

TrigPolynomial TrigPolynomial::fit(std::span<const double> grid,
                                   std::span<const Grassmann> values, int max_mode) {
  const int m = static_cast<int>(grid.size());
  const int nmodes = 2 * max_mode + 1;
  if (m < nmodes || values.size() != grid.size())
    throw Error(ErrorCode::RankDeficient, "grid too small for the requested modes");
  Eigen::MatrixXcd a(m, nmodes);
  Eigen::MatrixXcd b(m, kMonomials);
  for (int i = 0; i < m; ++i) {
    for (int k = -max_mode; k <= max_mode; ++k)
      a(i, k + max_mode) = std::exp(cplx(0.0, k * grid[i]));
    for (int c = 0; c < kMonomials; ++c) b(i, c) = values[i][c];
  }
  const Eigen::ColPivHouseholderQR<Eigen::MatrixXcd> qr(a);
  if (qr.rank() < nmodes) throw Error(ErrorCode::RankDeficient, "Fourier design matrix");
  const Eigen::MatrixXcd sol = qr.solve(b);
  std::vector<Grassmann> c(nmodes);
  for (int k = 0; k < nmodes; ++k)
    for (int mono = 0; mono < kMonomials; ++mono) c[k][mono] = sol(k, mono);
  TrigPolynomial t(max_mode, std::move(c));
  t.fit_residual_ = m == 0 ? 0.0 : (a * sol - b).cwiseAbs().maxCoeff();
  return t;
}

Grassmann TrigPolynomial::coefficient(int k) const {
  if (k < -max_mode_ || k > max_mode_) return Grassmann{};
  return c_[k + max_mode_];
}

Grassmann TrigPolynomial::evaluate(cplx u) const {
  Grassmann r;
  for (int k = -max_mode_; k <= max_mode_; ++k)
    r += c_[k + max_mode_] * std::exp(cplx(0.0, k) * u);
  return r;
}

double TrigPolynomial::crossing_residual(cplx eta) const {
  double worst = 0.0;
  for (int k = -max_mode_; k <= max_mode_; ++k) {
    const Grassmann d = coefficient(k) - coefficient(-k) * std::exp(cplx(0.0, k) * eta);
    worst = std::max(worst, d.norm());
  }
  return worst;
}

double TrigPolynomial::odd_mode_norm() const {
  double worst = 0.0;
  for (int k = -max_mode_; k <= max_mode_; ++k)
    if (k % 2 != 0) worst = std::max(worst, coefficient(k).norm());
  return worst;
}

double TrigPolynomial::norm_above(int bound) const {
  double worst = 0.0;
  for (int k = -max_mode_; k <= max_mode_; ++k)
    if (std::abs(k) > bound) worst = std::max(worst, coefficient(k).norm());
  return worst;
}

GradedMatrix fourier_mode(std::span<const GradedMatrix> samples, int k) {
  if (samples.empty()) throw Error(ErrorCode::DimMismatch, "no samples");
  const int m = static_cast<int>(samples.size());
  GradedMatrix acc(samples[0].space());
  for (int j = 0; j < m; ++j) {
    const double u = 2.0 * kPi * j / m;
    acc += std::exp(cplx(0.0, -k * u)) * samples[j];
  }
  return acc * (1.0 / m);
}

}  // namespace polaron
