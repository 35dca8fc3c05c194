#include "polaron/model.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "polaron/error.hpp"

namespace polaron {

namespace {

constexpr double kSingular = 1e-12;

bool near_zero(cplx z) { return std::abs(z) < kSingular; }

GradedMatrix sigma_z_on(int factor, int n_factors) {
  const GradedSpace s = GradedSpace::uniform(n_factors);
  GradedMatrix m(s);
  for (int i = 0; i < s.dim(); ++i) m.component(0)(i, i) = s.factor_parity(i, factor) ? -1.0 : 1.0;
  return m;
}

GradedMatrix embed_dense(const GradedMatrix& local, std::initializer_list<int> legs,
                         const GradedSpace& target) {
  const std::vector<int> l(legs);
  return embed(local, l, target).to_dense();
}

}  // namespace

// ---------------------------------------------------------------- ModelParams

void ModelParams::validate() const {
  if (N < 1) throw Error(ErrorCode::ConfigError, "N must be at least 1");
  if (!theta.empty() && static_cast<int>(theta.size()) != N)
    throw Error(ErrorCode::ConfigError, "theta must have N entries (got " +
                                            std::to_string(theta.size()) + ")");
  if (near_zero(std::sin(eta))) throw Error(ErrorCode::SingularCoupling, "sin(eta) = 0");
  if (near_zero(std::cos(eta))) throw Error(ErrorCode::SingularBoundary, "cos(eta) = 0");
  if (near_zero(std::sin(psi_minus))) throw Error(ErrorCode::SingularBoundary, "sin(psi_-) = 0");
  if (near_zero(std::sin(psi_plus))) throw Error(ErrorCode::SingularBoundary, "sin(psi_+) = 0");
}

bool ModelParams::homogeneous() const {
  return std::all_of(theta.begin(), theta.end(), [](cplx t) { return t == cplx{}; });
}

bool ModelParams::diagonal() const {
  return a_minus == cplx{} && a_plus == cplx{} && b_minus == cplx{} && b_plus == cplx{};
}

cplx ModelParams::omega_minus() const {
  if (near_zero(std::sin(psi_minus))) throw Error(ErrorCode::SingularBoundary, "sin(psi_-) = 0");
  return 1.0 / std::sin(psi_minus);
}

cplx ModelParams::omega_plus() const {
  const cplx den = 2.0 * std::cos(eta) * std::sin(psi_plus);
  if (near_zero(den)) throw Error(ErrorCode::SingularBoundary, "2 cos(eta) sin(psi_+) = 0");
  return 1.0 / den;
}

cplx ModelParams::kappa_plus() const {
  return 0.5 / (std::sin(psi_plus) * std::sin(eta)) * std::sin(eta + psi_plus);
}

cplx ModelParams::kappa_minus() const {
  return 0.5 / (std::sin(psi_plus) * std::sin(eta)) * std::sin(eta - psi_plus);
}

Grassmann ModelParams::alpha_minus() const { return Grassmann::generator(Monomial::Am, a_minus); }
Grassmann ModelParams::alpha_plus() const { return Grassmann::generator(Monomial::Ap, a_plus); }
Grassmann ModelParams::beta_minus() const { return Grassmann::generator(Monomial::Bm, b_minus); }
Grassmann ModelParams::beta_plus() const { return Grassmann::generator(Monomial::Bp, b_plus); }

Grassmann ModelParams::g() const {
  return alpha_plus() * beta_minus() - beta_plus() * alpha_minus();
}

ModelParams ModelParams::with_zero_theta() const {
  ModelParams q = *this;
  q.theta.assign(N, cplx{});
  return q;
}

ModelParams ModelParams::with_zero_odd() const {
  ModelParams q = *this;
  q.a_minus = q.a_plus = q.b_minus = q.b_plus = 0.0;
  return q;
}

// ------------------------------------------------------------------- Residual

double Residual::max() const { return *std::max_element(component.begin(), component.end()); }

Residual& Residual::merge(const Residual& o) {
  for (int k = 0; k < kMonomials; ++k) component[k] = std::max(component[k], o.component[k]);
  return *this;
}

Residual residual_of(const GradedMatrix& diff) {
  Residual r;
  for (int k = 0; k < kMonomials; ++k) r.component[k] = diff.component_norm(k);
  return r;
}

// ------------------------------------------------------------------ R and K

GradedSpace pair_space() { return GradedSpace::uniform(2); }

GradedMatrix r_matrix(cplx u, const ModelParams& p) {
  const cplx se = std::sin(p.eta);
  if (near_zero(se)) throw Error(ErrorCode::SingularCoupling, "sin(eta) = 0");
  Eigen::Matrix4cd r = Eigen::Matrix4cd::Zero();
  r(0, 0) = std::sin(u + p.eta);
  r(1, 1) = r(2, 2) = std::sin(u);
  r(1, 2) = r(2, 1) = se;
  r(3, 3) = p.corrupt_r ? std::sin(u + p.eta) : -std::sin(u + p.eta);
  return GradedMatrix::from_body(pair_space(), r / se);
}

GradedMatrix r21_matrix(cplx u, const ModelParams& p) {
  const GradedMatrix perm = graded_permutation({0, 1});
  return perm * r_matrix(u, p) * perm;
}

cplx xi(cplx u, const ModelParams& p) {
  const cplx se = std::sin(p.eta);
  return -std::sin(u - p.eta) * std::sin(u + p.eta) / (se * se);
}

GradedMatrix k_minus(cplx u, const ModelParams& p) {
  const cplx w = p.omega_minus();
  GradedMatrix k(GradedSpace::uniform(1));
  k.set(0, 0, w * std::sin(u + p.psi_minus));
  k.set(1, 1, -w * std::sin(u - p.psi_minus));
  k.set(0, 1, p.alpha_minus() * (w * std::sin(2.0 * u)));
  k.set(1, 0, p.beta_minus() * (w * std::sin(2.0 * u)));
  return k;
}

GradedMatrix k_plus(cplx u, const ModelParams& p) {
  const cplx w = p.omega_plus();
  const cplx v = u + p.eta;
  GradedMatrix k(GradedSpace::uniform(1));
  k.set(0, 0, w * std::sin(v + p.psi_plus));
  k.set(1, 1, w * std::sin(v - p.psi_plus));
  k.set(0, 1, p.alpha_plus() * (w * std::sin(2.0 * v)));
  k.set(1, 0, p.beta_plus() * (w * std::sin(2.0 * v)));
  return k;
}

GradedMatrix tilde_r(cplx u, TildeVariant variant, const ModelParams& p) {
  if (variant == TildeVariant::DoubleTilde21) {
    const GradedMatrix inner = partial_supertranspose(r21_matrix(u, p).inverse(), 1, Transpose::Ist);
    return partial_supertranspose(inner.inverse(), 1, Transpose::St);
  }
  const GradedMatrix inner = partial_supertranspose(r_matrix(u, p).inverse(), 0, Transpose::St);
  return partial_supertranspose(inner.inverse(), 0, Transpose::Ist);
}

// ------------------------------------------------------------------ residuals

double check_ybe(cplx u, cplx v, const ModelParams& p) {
  const GradedSpace s3 = GradedSpace::uniform(3);
  const GradedMatrix r12 = embed_dense(r_matrix(u - v, p), {0, 1}, s3);
  const GradedMatrix r13 = embed_dense(r_matrix(u, p), {0, 2}, s3);
  const GradedMatrix r23 = embed_dense(r_matrix(v, p), {1, 2}, s3);
  return (r12 * r13 * r23 - r23 * r13 * r12).norm();
}

Residual reflection_residual(cplx u, cplx v, const ModelParams& p) {
  const GradedSpace s2 = pair_space();
  const GradedMatrix k1 = embed_dense(k_minus(u, p), {0}, s2);
  const GradedMatrix k2 = embed_dense(k_minus(v, p), {1}, s2);
  const GradedMatrix lhs = r_matrix(u - v, p) * k1 * r21_matrix(u + v, p) * k2;
  const GradedMatrix rhs = k2 * r_matrix(u + v, p) * k1 * r21_matrix(u - v, p);
  return residual_of(lhs - rhs);
}

Residual dual_reflection_residual(cplx u, cplx v, const ModelParams& p) {
  const GradedSpace s2 = pair_space();
  const GradedMatrix k1 = embed_dense(k_plus(u, p), {0}, s2);
  const GradedMatrix k2 = embed_dense(k_plus(v, p), {1}, s2);
  const GradedMatrix lhs =
      r_matrix(v - u, p) * k1 * tilde_r(-u - v, TildeVariant::DoubleTilde21, p) * k2;
  const GradedMatrix rhs =
      k2 * tilde_r(-u - v, TildeVariant::Tilde12, p) * k1 * r21_matrix(v - u, p);
  return residual_of(lhs - rhs);
}

double r_initial_residual(const ModelParams& p) {
  return (r_matrix(0.0, p) - graded_permutation({0, 1})).norm();
}

double r_unitarity_residual(cplx u, const ModelParams& p) {
  const GradedMatrix id = GradedMatrix::identity(pair_space());
  return (r_matrix(u, p) * r21_matrix(-u, p) - xi(u, p) * id).norm();
}

double r_p_symmetry_residual(cplx u, const ModelParams& p) {
  return (r21_matrix(u, p) - r_matrix(u, p)).norm();
}

double r_t_symmetry_residual(cplx u, const ModelParams& p, Transpose variant) {
  const GradedMatrix r = r_matrix(u, p);
  const GradedMatrix t =
      partial_supertranspose(partial_supertranspose(r, 0, variant), 1, variant);
  return (t - r21_matrix(u, p)).norm();
}

double r_t_symmetry_residual(cplx u, const ModelParams& p) {
  return std::max(r_t_symmetry_residual(u, p, Transpose::St),
                  r_t_symmetry_residual(u, p, Transpose::Ist));
}

double r_crossing_residual(cplx u, const ModelParams& p) {
  const GradedMatrix a = partial_supertranspose(r21_matrix(-u - 2.0 * p.eta, p), 1, Transpose::St);
  const GradedMatrix b = partial_supertranspose(r21_matrix(u, p), 0, Transpose::St);
  return (a * b - xi(u + p.eta, p) * GradedMatrix::identity(pair_space())).norm();
}

double r_antisymmetry_residual(const ModelParams& p) {
  Eigen::Matrix4cd proj = Eigen::Matrix4cd::Zero();
  proj(1, 1) = proj(2, 2) = 0.5;
  proj(1, 2) = proj(2, 1) = -0.5;
  const GradedMatrix pm = GradedMatrix::from_body(pair_space(), proj);
  return (r_matrix(-p.eta, p) + 2.0 * pm).norm();
}

double r_periodicity_residual(cplx u, const ModelParams& p) {
  const double pi = std::acos(-1.0);
  const GradedMatrix shifted = r_matrix(u + pi, p);
  const GradedMatrix r = r_matrix(u, p);
  double worst = 0.0;
  for (int f = 0; f < 2; ++f) {
    const GradedMatrix sz = sigma_z_on(f, 2);
    worst = std::max(worst, (shifted + sz * r * sz).norm());
  }
  return worst;
}

double k_periodicity_residual(cplx u, const ModelParams& p) {
  const double pi = std::acos(-1.0);
  const GradedMatrix sz = sigma_z_on(0, 1);
  const double km = (k_minus(u + pi, p) + sz * k_minus(u, p) * sz).norm();
  const double kp = (k_plus(u + pi, p) + sz * k_plus(u, p) * sz).norm();
  return std::max(km, kp);
}

}  // namespace polaron
