#include "polaron/tq.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <functional>
#include <string>
#include <type_traits>

#include "polaron/error.hpp"
#include "polaron/transfer.hpp"

namespace polaron {

namespace {

const double kPi = std::acos(-1.0);
constexpr int kCirclePoints = 64;

template <class T>
T abar_t(const T& u, const ModelParams& p) {
  const cplx se2 = std::sin(p.eta) * std::sin(p.eta);
  T r = cplx(1.0);
  for (int l = 0; l < p.N; ++l) {
    const cplx th = p.theta_at(l);
    r = r * sin(u - th + p.eta) * sin(u + th + p.eta) / T(se2);
  }
  return r;
}

template <class T>
T a_t(const T& u, const ModelParams& p) {
  const T den = sin(2.0 * u + p.eta);
  if (std::abs(body(den)) < 1e-13) throw Error(ErrorCode::PoleHit, "sin(2u + eta) = 0");
  return T(p.omega_plus() * p.omega_minus()) * sin(u - p.psi_plus) * sin(u - p.psi_minus) *
         sin(2.0 * u + 2.0 * p.eta) / den * abar_t(u, p);
}

template <class T>
T d_t(const T& u, const ModelParams& p) {
  return a_t(T(-1.0) * u - p.eta, p);
}

template <class T>
T s_t(const T& u, const ModelParams& p) {
  return sin(2.0 * u) * sin(2.0 * u + 2.0 * p.eta) * abar_t(u, p) * abar_t(T(-1.0) * u - p.eta, p);
}

template <class T>
T q0_t(const T& u, const std::vector<T>& roots, cplx eta) {
  const cplx se2 = std::sin(eta) * std::sin(eta);
  T r = cplx(1.0);
  for (const T& l : roots) r = r * sin(u - l) * sin(u + l + eta) / T(se2);
  return r;
}

// Q(u) = Q0(u) + g Q1(w(u)) with g carried by the eps slot; u may itself be
// dual (a Grassmann-shifted root).
Dual q_dual(const Dual& u, const std::vector<Dual>& roots, const Poly& q1, cplx eta) {
  Dual q = q0_t(u, roots, eta);
  q.e += q1(w_of(u.v, eta));
  return q;
}

std::vector<Dual> as_dual(const std::vector<cplx>& xs) {
  return std::vector<Dual>(xs.begin(), xs.end());
}

// a(mu)/d(mu) in the literal homogeneous form.
template <class T>
T homogeneous_ratio(const T& mu, const ModelParams& p) {
  T r = cplx(1.0);
  const T q = sin(mu + p.eta) / sin(mu);
  for (int k = 0; k < 2 * p.N; ++k) r = r * q;
  return r * sin(mu - p.psi_plus) * sin(mu - p.psi_minus) * sin(2.0 * mu + 2.0 * p.eta) /
         (sin(mu + p.eta + p.psi_plus) * sin(mu + p.eta + p.psi_minus) * sin(2.0 * mu));
}

cplx homogeneous_g_term(cplx mu, const ModelParams& p) {
  const cplx se = std::sin(p.eta);
  cplx r = std::sin(2.0 * mu + p.eta) * std::sin(2.0 * mu + 2.0 * p.eta) /
           (std::sin(mu + p.eta + p.psi_plus) * std::sin(mu + p.eta + p.psi_minus));
  const cplx q = std::sin(mu + p.eta) / se;
  for (int k = 0; k < 2 * p.N; ++k) r *= q;
  return r;
}

// BAE at mu normalized by d(mu) Q(mu - eta):
//   a/d + Q(mu + eta)/Q(mu - eta) + sigma cbar S / (d Q(mu - eta)).
// With T = Dual and with_g the eps slot is g; otherwise eps is a derivative.
template <class T>
T bae_expr(const T& mu, const std::vector<T>& roots, const BetheState& s, bool with_g,
           bool literal_homogeneous) {
  const ModelParams& p = s.params;
  T qm, qp;
  if constexpr (std::is_same_v<T, Dual>) {
    if (with_g) {
      qm = q_dual(mu - p.eta, roots, s.q1, p.eta);
      qp = q_dual(mu + p.eta, roots, s.q1, p.eta);
    } else {
      qm = q0_t(mu - p.eta, roots, p.eta);
      qp = q0_t(mu + p.eta, roots, p.eta);
    }
  } else {
    qm = q0_t(mu - p.eta, roots, p.eta);
    qp = q0_t(mu + p.eta, roots, p.eta);
  }
  T r = (literal_homogeneous ? homogeneous_ratio(mu, p) : a_t(mu, p) / d_t(mu, p)) + qp / qm;
  if constexpr (std::is_same_v<T, Dual>) {
    if (with_g) {
      const cplx m = mu.v;
      const cplx extra = literal_homogeneous
                             ? homogeneous_g_term(m, p)
                             : p.omega_plus() * p.omega_minus() * s_t(m, p) / d_t(m, p);
      r.e += static_cast<double>(s.sector) * extra / qm.v;
    }
  }
  return r;
}

cplx q0_derivative(cplx u, const std::vector<cplx>& roots, cplx eta) {
  return q0_t(Dual(u, 1.0), as_dual(roots), eta).e;
}

// Root shifts dl_j = -Q1(l_j) / Q0'(l_j).
std::vector<cplx> root_shifts(const BetheState& s) {
  std::vector<cplx> d(s.roots0.size());
  for (std::size_t j = 0; j < d.size(); ++j) {
    const cplx dq = q0_derivative(s.roots0[j], s.roots0, s.params.eta);
    if (std::abs(dq) < 1e-14) throw Error(ErrorCode::SingularJacobian, "multiple root of Q0");
    d[j] = -s.q1(w_of(s.roots0[j], s.params.eta)) / dq;
  }
  return d;
}

double circle_radius(const BetheState& s) {
  double r = 2.0;
  for (cplx l : s.roots0) r = std::max(r, 1.5 * std::abs(w_of(l, s.params.eta)) + 0.5);
  return r;
}

// Conditions that Lambda1 be a polynomial in w of degree <= N + 2 with the
// asymptotic top coefficient: DFT modes n > N + 2 on a circle enclosing the
// roots of Q0 (aliased negative powers included) and the top mode, relative
// to the size of the expected top term on the circle.
std::vector<cplx> degree_conditions(const BetheState& s) {
  const ModelParams& p = s.params;
  const double radius = circle_radius(s);
  std::vector<cplx> lam1(kCirclePoints);
  for (int j = 0; j < kCirclePoints; ++j) {
    const cplx w = radius * std::exp(cplx(0.0, 2.0 * kPi * j / kCirclePoints));
    lam1[j] = lambda_tq_parts(u_of_w(w, p.eta), s, 0.0).e;
  }
  const int top = p.N + 2;
  const double scale =
      std::max(1.0, std::abs(lambda1_top_coefficient(p)) * std::pow(radius, top));
  std::vector<cplx> out;
  for (int n = top; n < kCirclePoints; ++n) {
    cplx c{};
    for (int j = 0; j < kCirclePoints; ++j)
      c += lam1[j] * std::exp(cplx(0.0, -2.0 * kPi * n * j / kCirclePoints));
    c /= static_cast<double>(kCirclePoints);
    if (n == top) c -= static_cast<double>(s.sector) * lambda1_top_coefficient(p) * std::pow(radius, top);
    out.push_back(c / scale);
  }
  return out;
}

// Positions of the unknown Q1 coefficients.
std::vector<int> q1_unknowns(int n_sites, int n_finite, bool extended) {
  std::vector<int> idx;
  if (!extended) {
    for (int k = 0; k < n_sites; ++k) idx.push_back(k);
  } else {
    for (int k = 0; k <= n_sites + 1; ++k)
      if (k != n_finite) idx.push_back(k);
  }
  return idx;
}

Poly q1_from(const std::vector<int>& idx, const Eigen::VectorXcd& x, int n_sites) {
  std::vector<cplx> c(n_sites + 2, cplx{});
  for (std::size_t i = 0; i < idx.size(); ++i) c[idx[i]] = x(static_cast<int>(i));
  return Poly(std::move(c));
}

// Solves an affine least-squares problem r(x) = r0 + J x = 0 by probing.
Eigen::VectorXcd affine_solve(const std::function<Eigen::VectorXcd(const Eigen::VectorXcd&)>& r,
                              int n_unknowns) {
  const Eigen::VectorXcd zero = Eigen::VectorXcd::Zero(n_unknowns);
  const Eigen::VectorXcd r0 = r(zero);
  Eigen::MatrixXcd jac(r0.size(), n_unknowns);
  for (int k = 0; k < n_unknowns; ++k) {
    Eigen::VectorXcd e = zero;
    e(k) = 1.0;
    jac.col(k) = r(e) - r0;
  }
  const Eigen::ColPivHouseholderQR<Eigen::MatrixXcd> qr(jac);
  if (qr.rank() < n_unknowns) throw Error(ErrorCode::RankDeficient, "order-g system is singular");
  return qr.solve(-r0);
}

Eigen::VectorXcd stack(const BaeResiduals& r, bool with_degree) {
  std::vector<cplx> all(r.order_g.begin(), r.order_g.end());
  if (with_degree) all.insert(all.end(), r.degree.begin(), r.degree.end());
  return Eigen::Map<Eigen::VectorXcd>(all.data(), static_cast<int>(all.size()));
}

BaeResiduals residuals_impl(const BetheState& s, bool literal_homogeneous) {
  BaeResiduals out;
  const std::vector<cplx> shifts = root_shifts(s);
  const std::vector<Dual> roots = as_dual(s.roots0);
  for (std::size_t j = 0; j < s.roots0.size(); ++j) {
    const Dual mu(s.roots0[j], shifts[j]);
    const Dual r = bae_expr(mu, roots, s, true, literal_homogeneous);
    out.order0.push_back(r.v);
    out.order_g.push_back(r.e);
  }
  if (!s.full_form()) out.degree = degree_conditions(s);
  // The order-g equations carry a factor g; with g = 0 they hold for any Q1.
  if (s.params.g().norm() == 0.0) {
    std::fill(out.order_g.begin(), out.order_g.end(), cplx{});
    std::fill(out.degree.begin(), out.degree.end(), cplx{});
  }
  return out;
}

// Fills Q1 for fixed roots0 by the linear order-g solve; canonical form first.
BetheState solve_order_g(BetheState s, double tol) {
  const int n = s.params.N;
  const int m = s.n_finite();
  std::string failure;
  for (bool extended : {false, true}) {
    if (!extended && m != n) continue;
    const std::vector<int> idx = q1_unknowns(n, m, extended);
    const auto residual = [&](const Eigen::VectorXcd& x) {
      BetheState t = s;
      t.q1 = q1_from(idx, x, n);
      BaeResiduals r;
      const std::vector<cplx> shifts = root_shifts(t);
      for (std::size_t j = 0; j < t.roots0.size(); ++j)
        r.order_g.push_back(
            bae_expr(Dual(t.roots0[j], shifts[j]), as_dual(t.roots0), t, true, false).e);
      r.degree = degree_conditions(t);
      return stack(r, true);
    };
    try {
      const Eigen::VectorXcd x = affine_solve(residual, static_cast<int>(idx.size()));
      BetheState t = s;
      t.q1 = q1_from(idx, x, n);
      const double res = residual(x).cwiseAbs().maxCoeff();
      if (res < tol) return t;
      failure = "order-g residual " + std::to_string(res);
    } catch (const Error& e) {
      failure = e.what();
    }
  }
  throw Error(ErrorCode::NoConvergence, "order-g equations not solvable: " + failure);
}

// (1 / (2 sin^2 eta))^n: prod_j (x_j - w) times this is the product of n factors.
cplx factor_scale(int n, cplx eta) {
  const cplx se = std::sin(eta);
  return std::pow(1.0 / (2.0 * se * se), n);
}

cplx canonical_root(cplx l, cplx eta) { return u_of_w(w_of(l, eta), eta); }

}  // namespace

// ----------------------------------------------------------------- BetheState

bool BetheState::full_form() const {
  return n_finite() == params.N && q1.degree() <= params.N - 1;
}

std::vector<cplx> BetheState::roots1() const {
  std::vector<cplx> out;
  for (cplx x : q1.roots(1e-12)) out.push_back(u_of_w(x, params.eta));
  return out;
}

cplx BetheState::amplitude() const {
  const int deg = q1.degree(1e-12);
  if (deg < 0) return cplx{};
  return q1.coeff(deg) / factor_lead(deg, params.eta);
}

BetheState BetheState::from_roots(int sector, std::vector<cplx> roots0,
                                  const std::vector<cplx>& roots1, cplx amplitude,
                                  const ModelParams& p) {
  BetheState s;
  s.sector = sector;
  s.roots0 = std::move(roots0);
  s.params = p;
  std::vector<cplx> xs;
  for (cplx l : roots1) xs.push_back(w_of(l, p.eta));
  s.q1 = Poly::from_roots(xs, amplitude * factor_scale(static_cast<int>(xs.size()), p.eta));
  return s;
}

cplx u_of_w(cplx w, cplx eta) { return (std::acos(w) - eta) / 2.0; }

cplx factor_lead(int n, cplx eta) {
  const cplx se = std::sin(eta);
  return std::pow(-1.0 / (2.0 * se * se), n);
}

Poly q0_poly(const BetheState& s) {
  std::vector<cplx> xs;
  for (cplx l : s.roots0) xs.push_back(w_of(l, s.params.eta));
  return Poly::from_roots(xs, factor_scale(static_cast<int>(xs.size()), s.params.eta));
}

Grassmann q_function(cplx u, const BetheState& s) {
  Grassmann q = s.params.g() * s.q1(w_of(u, s.params.eta));
  q[0] += q0_t(u, s.roots0, s.params.eta);
  return q;
}

TQCoefficients a_d_abar(cplx u, const ModelParams& p) {
  TQCoefficients c;
  c.a = a_t(u, p);
  c.d = d_t(u, p);
  c.abar = abar_t(u, p);
  c.cbar = p.g() * (p.omega_plus() * p.omega_minus());
  return c;
}

cplx inhomogeneous_factor(cplx u, const ModelParams& p) { return s_t(u, p); }

Dual lambda_tq_parts(cplx u, const BetheState& s, double near_root) {
  const ModelParams& p = s.params;
  const std::vector<Dual> roots = as_dual(s.roots0);
  const Dual q = q_dual(Dual(u), roots, s.q1, p.eta);
  if (std::abs(q.v) < near_root) throw Error(ErrorCode::NearRoot, "Q0(u) vanishes");
  const Dual qm = q_dual(Dual(u - p.eta), roots, s.q1, p.eta);
  const Dual qp = q_dual(Dual(u + p.eta), roots, s.q1, p.eta);
  Dual num = Dual(a_t(u, p)) * qm + Dual(d_t(u, p)) * qp;
  num.e += static_cast<double>(s.sector) * p.omega_plus() * p.omega_minus() * s_t(u, p);
  return num / q;
}

Grassmann lambda_tq(cplx u, const BetheState& s, double near_root) {
  const Dual l = lambda_tq_parts(u, s, near_root);
  Grassmann r = s.params.g() * l.e;
  r[0] += l.v;
  return r;
}

cplx lambda1_top_coefficient(const ModelParams& p) {
  const int n = p.N;
  return p.omega_plus() * p.omega_minus() * std::pow(cplx(0.0, 2.0), -(2 * n + 2)) *
         std::pow(std::sin(p.eta), -2 * n) * std::pow(2.0, n + 2);
}

cplx lambda_product_target(cplx theta, const ModelParams& p) {
  const cplx se = std::sin(p.eta);
  return quantum_determinant(theta, p) * se * se /
         (std::sin(2.0 * theta + p.eta) * std::sin(2.0 * theta - p.eta));
}

std::pair<Dual, Dual> lambda_residues(const BetheState& s, int j, int points) {
  const cplx eta = s.params.eta;
  const cplx l = s.roots0.at(j);
  // Stay clear of every other zero of Q0 and every pole of a(u), d(u).
  double gap = 0.1;
  for (std::size_t k = 0; k < s.roots0.size(); ++k) {
    for (cplx other : {s.roots0[k], -s.roots0[k] - eta}) {
      if (static_cast<int>(k) == j && other == l) continue;
      for (int shift = -2; shift <= 2; ++shift)
        gap = std::min(gap, std::abs(l - other - kPi * shift));
    }
  }
  for (int m = -4; m <= 4; ++m) gap = std::min(gap, std::abs(l - (m * kPi / 2.0 - eta / 2.0)));
  const double r = 0.25 * gap;
  Dual first, second;
  for (int k = 0; k < points; ++k) {
    const cplx z = r * std::exp(cplx(0.0, 2.0 * kPi * k / points));
    const Dual lam = lambda_tq_parts(l + z, s, 0.0);
    // (1/2 pi i) oint f du with du = i z dphi
    first = first + lam * Dual(z / static_cast<double>(points));
    second = second + lam * Dual(z * z / static_cast<double>(points));
  }
  return {first, second};
}

double lambda_fourier_excess(const BetheState& s, int max_mode, int points) {
  std::vector<Dual> f(points);
  for (int k = 0; k < points; ++k) f[k] = lambda_tq_parts(2.0 * kPi * k / points, s);
  double inside = 0.0, outside = 0.0;
  for (int n = -points / 2 + 1; n <= points / 2; ++n) {
    Dual c;
    for (int k = 0; k < points; ++k)
      c = c + f[k] * Dual(std::exp(cplx(0.0, -2.0 * kPi * n * k / points)) / static_cast<double>(points));
    const double size = std::max(std::abs(c.v), std::abs(c.e));
    double& bucket = std::abs(n) > max_mode ? outside : inside;
    bucket = std::max(bucket, size);
  }
  return outside / std::max(inside, 1e-300);
}

double BaeResiduals::max() const {
  double m = 0.0;
  for (const auto* v : {&order0, &order_g, &degree})
    for (cplx x : *v) m = std::max(m, std::abs(x));
  return m;
}

BaeResiduals bae_residuals(const BetheState& s) {
  return residuals_impl(s, s.params.homogeneous());
}

BaeResiduals bae_residuals_general(const BetheState& s) { return residuals_impl(s, false); }

std::vector<cplx> polish_roots0(const std::vector<cplx>& roots0, const ModelParams& p,
                                const SolveOptions& opt) {
  const int m = static_cast<int>(roots0.size());
  std::vector<cplx> x = roots0;
  if (m == 0) return x;
  BetheState shell;
  shell.params = p;
  const bool literal = p.homogeneous();
  const auto eval = [&](const std::vector<cplx>& pt, Eigen::VectorXcd& f, Eigen::MatrixXcd* jac) {
    f.resize(m);
    if (jac) jac->resize(m, m);
    for (int k = 0; k < (jac ? m : 1); ++k) {
      std::vector<Dual> roots = as_dual(pt);
      if (jac) roots[k].e = 1.0;
      for (int j = 0; j < m; ++j) {
        const Dual r = bae_expr(roots[j], roots, shell, false, literal);
        f(j) = r.v;
        if (jac) (*jac)(j, k) = r.e;
      }
    }
  };
  Eigen::VectorXcd f;
  Eigen::MatrixXcd jac;
  for (int it = 0; it < opt.max_iterations; ++it) {
    eval(x, f, &jac);
    const double res = f.cwiseAbs().maxCoeff();
    if (!std::isfinite(res)) throw Error(ErrorCode::NoConvergence, "residual is not finite");
    Eigen::FullPivLU<Eigen::MatrixXcd> lu(jac);
    if (!lu.isInvertible()) throw Error(ErrorCode::SingularJacobian, "BAE Jacobian is singular");
    const Eigen::VectorXcd step = lu.solve(-f);
    for (int j = 0; j < m; ++j) x[j] += step(j);
    if (res < opt.tol * 1e-3 || step.cwiseAbs().maxCoeff() < 1e-15) break;
  }
  eval(x, f, nullptr);
  if (f.cwiseAbs().maxCoeff() > opt.tol)
    throw Error(ErrorCode::NoConvergence,
                "order-0 residual " + std::to_string(f.cwiseAbs().maxCoeff()));
  for (cplx& l : x) l = canonical_root(l, p.eta);
  return x;
}

BetheState solve_bae(const BetheState& seed, const SolveOptions& opt) {
  BetheState s = seed;
  s.roots0 = polish_roots0(seed.roots0, seed.params, opt);
  s = solve_order_g(s, opt.tol);
  if (bae_residuals(s).max() > opt.tol)
    throw Error(ErrorCode::NoConvergence,
                "residual after solve " + std::to_string(bae_residuals(s).max()));
  return s;
}

BetheState fit_q_from_lambda(const LevelCurve& curve, const ModelParams& p,
                             const SolveOptions& opt) {
  const int n = p.N;
  std::vector<double> us;
  std::vector<cplx> lam0, lam1;
  const Grassmann g = p.g();
  const bool has_g = g.norm() > 0.0;
  for (std::size_t i = 0; i < curve.grid.size(); ++i) {
    const double u = curve.grid[i];
    if (std::abs(std::sin(2.0 * u + p.eta)) < 1e-6) continue;
    us.push_back(u);
    lam0.push_back(curve.values[i].body());
    lam1.push_back(has_g ? g_part(curve.values[i], g).coefficient : cplx{});
  }
  const int rows = static_cast<int>(us.size());
  if (rows < 2 * n + 6) throw Error(ErrorCode::RankDeficient, "too few usable grid points");

  // Order g^0: Lambda0 Q0(u) = a Q0(u - eta) + d Q0(u + eta) for Q0 in w.
  Eigen::MatrixXcd a0(rows, n + 1);
  for (int i = 0; i < rows; ++i) {
    const cplx u = us[i];
    const cplx a = a_t(u, p), d = d_t(u, p);
    for (int k = 0; k <= n; ++k)
      a0(i, k) = lam0[i] * std::pow(w_of(u, p.eta), k) - a * std::pow(w_of(u - p.eta, p.eta), k) -
                 d * std::pow(w_of(u + p.eta, p.eta), k);
  }
  Eigen::BDCSVD<Eigen::MatrixXcd> svd(a0, Eigen::ComputeFullV);
  const Eigen::VectorXd sv = svd.singularValues();
  if (sv(n) > 1e-8 * sv(0) || (n > 0 && sv(n - 1) < 1e-6 * sv(0)))
    throw Error(ErrorCode::RankDeficient,
                "Q0 null space is not one-dimensional (singular values " +
                    std::to_string(sv(n - 1 >= 0 ? n - 1 : 0) / sv(0)) + ", " +
                    std::to_string(sv(n) / sv(0)) + ")");
  const Eigen::VectorXcd null = svd.matrixV().col(n);
  Poly q0(std::vector<cplx>(null.data(), null.data() + null.size()));
  const int m = q0.degree(1e-7);
  BetheState s;
  s.sector = curve.sector;
  s.params = p;
  for (cplx x : q0.roots(1e-7)) s.roots0.push_back(u_of_w(x, p.eta));
  if (static_cast<int>(s.roots0.size()) != m)
    throw Error(ErrorCode::RankDeficient, "root extraction lost roots");
  s.roots0 = polish_roots0(s.roots0, p, opt);

  if (!has_g) return solve_order_g(s, opt.tol);

  // Order g: a Q1(u - eta) + d Q1(u + eta) - Lambda0 Q1 = Lambda1 Q0 - sigma omega S.
  const Poly q0n = q0_poly(s);
  std::string failure;
  for (bool extended : {false, true}) {
    if (!extended && m != n) continue;
    const std::vector<int> idx = q1_unknowns(n, m, extended);
    Eigen::MatrixXcd a1(rows, static_cast<int>(idx.size()));
    Eigen::VectorXcd b1(rows);
    for (int i = 0; i < rows; ++i) {
      const cplx u = us[i];
      const cplx a = a_t(u, p), d = d_t(u, p);
      for (std::size_t c = 0; c < idx.size(); ++c) {
        const int k = idx[c];
        a1(i, static_cast<int>(c)) = a * std::pow(w_of(u - p.eta, p.eta), k) +
                                     d * std::pow(w_of(u + p.eta, p.eta), k) -
                                     lam0[i] * std::pow(w_of(u, p.eta), k);
      }
      b1(i) = lam1[i] * q0n(w_of(u, p.eta)) -
              static_cast<double>(s.sector) * p.omega_plus() * p.omega_minus() * s_t(u, p);
    }
    const Eigen::ColPivHouseholderQR<Eigen::MatrixXcd> qr(a1);
    if (qr.rank() < static_cast<int>(idx.size())) {
      failure = "order-g fit is rank deficient";
      continue;
    }
    const Eigen::VectorXcd x = qr.solve(b1);
    const double res = (a1 * x - b1).cwiseAbs().maxCoeff() / std::max(1.0, b1.cwiseAbs().maxCoeff());
    if (res > 1e-8) {
      failure = "order-g fit residual " + std::to_string(res);
      continue;
    }
    BetheState t = s;
    t.q1 = q1_from(idx, x, n);
    return t;
  }
  throw Error(ErrorCode::RankDeficient, failure);
}

Dual energy_parts(const BetheState& s) {
  const ModelParams& p = s.params;
  if (!p.homogeneous()) throw Error(ErrorCode::ConfigError, "energy requires theta = 0");
  const cplx se = std::sin(p.eta);
  const auto cot = [](cplx x) { return std::cos(x) / std::sin(x); };
  Dual e = -0.5 * cot(p.psi_plus) - 0.5 * cot(p.psi_minus) - 1.0 / std::sin(2.0 * p.eta) +
           static_cast<double>(p.N) * cot(p.eta) + 0.5 * std::tan(p.eta);
  const std::vector<cplx> shifts = root_shifts(s);
  for (std::size_t j = 0; j < s.roots0.size(); ++j) {
    const Dual mu(s.roots0[j], shifts[j]);
    const Dual den = sin(mu) * sin(mu + p.eta);
    if (std::abs(den.v) < 1e-12) throw Error(ErrorCode::PoleHit, "sin(mu) sin(mu + eta) = 0");
    e += Dual(se) / den;
  }
  const Poly poly_part = s.q1.divmod(q0_poly(s)).first;
  e.e += 2.0 * se * poly_part.derivative()(std::cos(p.eta));
  return e;
}

Grassmann energy(const BetheState& s) {
  const Dual e = energy_parts(s);
  Grassmann r = s.params.g() * e.e;
  r[0] += e.v;
  return r;
}

Dual energy_from_lambda(const BetheState& s, double step) {
  const auto d4 = [&](double h) {
    const Dual a = lambda_tq_parts(h, s) - lambda_tq_parts(-h, s);
    const Dual b = lambda_tq_parts(2.0 * h, s) - lambda_tq_parts(-2.0 * h, s);
    return (Dual(8.0) * a - b) / Dual(12.0 * h);
  };
  const Dual deriv = (Dual(16.0) * d4(step / 2.0) - d4(step)) / Dual(15.0);
  return Dual(0.5) * deriv + Dual(0.5 * std::tan(s.params.eta));
}

}  // namespace polaron
