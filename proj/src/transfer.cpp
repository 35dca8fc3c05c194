#include "polaron/transfer.hpp"

#include <array>
#include <complex>
#include <cmath>
#include <string>
#include <vector>

#include "polaron/error.hpp"
#include "polaron/trig_poly.hpp"

namespace polaron {

namespace {

SparseGradedMatrix embed_pair(const GradedMatrix& r, int a, int b, const GradedSpace& space) {
  // R_{ab} with a > b is the graded flip of R_{ba}.
  if (a < b) {
    const std::array<int, 2> legs{a, b};
    return embed(r, legs, space);
  }
  const GradedMatrix perm = graded_permutation({0, 1});
  const std::array<int, 2> legs{b, a};
  return embed(perm * r * perm, legs, space);
}

SparseGradedMatrix embed_single(const GradedMatrix& k, int f, const GradedSpace& space) {
  const std::array<int, 1> legs{f};
  return embed(k, legs, space);
}

GradedMatrix hat_monodromy_in(cplx u, const ModelParams& p, const GradedSpace& space, int aux,
                              int first_site) {
  GradedMatrix t = GradedMatrix::identity(space);
  for (int j = 1; j <= p.N; ++j)
    t = t * embed_pair(r_matrix(u + p.theta_at(j - 1), p), aux, first_site + j - 1, space);
  return t;
}

void check_sites(const ModelParams& p) {
  if (p.N < 1 || p.N > 12) throw Error(ErrorCode::ConfigError, "N out of range: " + std::to_string(p.N));
  if (!p.theta.empty() && static_cast<int>(p.theta.size()) != p.N)
    throw Error(ErrorCode::ConfigError, "theta must have N entries");
}


// ------------------------------------------------- extended-precision path

using cld = std::complex<long double>;
using MatrixLd = Eigen::Matrix<cld, Eigen::Dynamic, Eigen::Dynamic>;
using GradedLd = std::array<MatrixLd, kMonomials>;

cld widen(cplx z) { return {static_cast<long double>(z.real()), static_cast<long double>(z.imag())}; }

GradedLd zero_ld(int dim) {
  GradedLd r;
  for (MatrixLd& m : r) m = MatrixLd::Zero(dim, dim);
  return r;
}

GradedLd multiply(const GradedLd& a, const GradedLd& b) {
  const auto& table = product_table();
  GradedLd r = zero_ld(static_cast<int>(a[0].rows()));
  for (int i = 0; i < kMonomials; ++i) {
    if (a[i].isZero(0)) continue;
    for (int j = 0; j < kMonomials; ++j) {
      const ProductRule rule = table[i][j];
      if (rule.sign == 0 || b[j].isZero(0)) continue;
      if (rule.sign > 0)
        r[rule.target] += a[i] * b[j];
      else
        r[rule.target] -= a[i] * b[j];
    }
  }
  return r;
}

// Embedding of the unit matrix E_{rc}; entries are 0 or +-1, so exact.
MatrixLd embedded_unit(int rows, int r, int c, const std::vector<int>& legs, const GradedSpace& space) {
  Eigen::MatrixXcd e = Eigen::MatrixXcd::Zero(rows, rows);
  e(r, c) = 1.0;
  const GradedMatrix unit = GradedMatrix::from_body(GradedSpace::uniform(static_cast<int>(legs.size())), e);
  const GradedMatrix dense =
      legs.size() == 1 ? embed_single(unit, legs[0], space).to_dense()
                       : embed_pair(unit, legs[0], legs[1], space).to_dense();
  return dense.body().cast<cld>();
}

GradedLd r_extended(cld u, const ModelParams& p, int site, const GradedSpace& space) {
  const cld eta = widen(p.eta);
  const cld se = std::sin(eta);
  const cld a = std::sin(u + eta) / se, b = std::sin(u) / se;
  const std::vector<int> legs{0, site};
  GradedLd r = zero_ld(space.dim());
  r[0] = a * embedded_unit(4, 0, 0, legs, space) + b * embedded_unit(4, 1, 1, legs, space) +
         b * embedded_unit(4, 2, 2, legs, space) + embedded_unit(4, 1, 2, legs, space) +
         embedded_unit(4, 2, 1, legs, space) +
         (p.corrupt_r ? a : -a) * embedded_unit(4, 3, 3, legs, space);
  return r;
}

// K entries: body on the diagonal, one odd generator off the diagonal.
GradedLd k_extended(cld d0, cld d1, cld off, Monomial upper, cplx upper_amp, Monomial lower,
                    cplx lower_amp, const GradedSpace& space) {
  const std::vector<int> legs{0};
  GradedLd k = zero_ld(space.dim());
  k[0] = d0 * embedded_unit(2, 0, 0, legs, space) + d1 * embedded_unit(2, 1, 1, legs, space);
  k[static_cast<int>(upper)] = off * widen(upper_amp) * embedded_unit(2, 0, 1, legs, space);
  k[static_cast<int>(lower)] = off * widen(lower_amp) * embedded_unit(2, 1, 0, legs, space);
  return k;
}

// Partial supertrace over the leading (auxiliary) factor: no preceding legs.
GradedLd trace_aux(const GradedLd& a, const GradedSpace& space) {
  const int rest = space.dim() / 2;
  GradedLd r = zero_ld(rest);
  for (int m = 0; m < kMonomials; ++m)
    r[m] = a[m].topLeftCorner(rest, rest) - a[m].bottomRightCorner(rest, rest);
  return r;
}

GradedLd transfer_ld(cplx u_in, const ModelParams& p) {
  check_sites(p);
  p.omega_plus();
  p.omega_minus();
  const GradedSpace space = GradedSpace::uniform(p.N + 1);
  const cld u = widen(u_in), eta = widen(p.eta);
  const cld pm = widen(p.psi_minus), pp = widen(p.psi_plus);
  const cld wm = cld(1.0L) / std::sin(pm);
  const cld wp = cld(1.0L) / (cld(2.0L) * std::cos(eta) * std::sin(pp));
  const cld v = u + eta;
  GradedLd t = k_extended(wp * std::sin(v + pp), wp * std::sin(v - pp), wp * std::sin(cld(2.0L) * v),
                          Monomial::Ap, p.a_plus, Monomial::Bp, p.b_plus, space);
  for (int j = p.N; j >= 1; --j) t = multiply(t, r_extended(u - widen(p.theta_at(j - 1)), p, j, space));
  t = multiply(t, k_extended(wm * std::sin(u + pm), -wm * std::sin(u - pm), wm * std::sin(cld(2.0L) * u),
                             Monomial::Am, p.a_minus, Monomial::Bm, p.b_minus, space));
  for (int j = 1; j <= p.N; ++j) t = multiply(t, r_extended(u + widen(p.theta_at(j - 1)), p, j, space));
  return trace_aux(t, space);
}

}  // namespace

GradedMatrix monodromy_in(cplx u, const ModelParams& p, const GradedSpace& space, int aux,
                          int first_site) {
  check_sites(p);
  GradedMatrix t = GradedMatrix::identity(space);
  for (int j = p.N; j >= 1; --j)
    t = t * embed_pair(r_matrix(u - p.theta_at(j - 1), p), aux, first_site + j - 1, space);
  return t;
}

GradedMatrix monodromy(cplx u, const ModelParams& p) {
  return monodromy_in(u, p, GradedSpace::uniform(p.N + 1), 0, 1);
}

GradedMatrix hat_monodromy(cplx u, const ModelParams& p) {
  check_sites(p);
  return hat_monodromy_in(u, p, GradedSpace::uniform(p.N + 1), 0, 1);
}

GradedMatrix double_row_monodromy(cplx u, const ModelParams& p) {
  const GradedSpace space = GradedSpace::uniform(p.N + 1);
  return monodromy(u, p) * embed_single(k_minus(u, p), 0, space) * hat_monodromy(u, p);
}

GradedMatrix transfer(cplx u, const ModelParams& p) {
  check_sites(p);
  const GradedSpace space = GradedSpace::uniform(p.N + 1);
  GradedMatrix t = embed_single(k_plus(u, p), 0, space).to_dense();
  for (int j = p.N; j >= 1; --j)
    t = t * embed_pair(r_matrix(u - p.theta_at(j - 1), p), 0, j, space);
  t = t * embed_single(k_minus(u, p), 0, space);
  for (int j = 1; j <= p.N; ++j)
    t = t * embed_pair(r_matrix(u + p.theta_at(j - 1), p), 0, j, space);
  return partial_supertrace(t, 0);
}

GradedMatrix transfer_extended(cplx u, const ModelParams& p) {
  const GradedLd t = transfer_ld(u, p);
  GradedMatrix out(GradedSpace::uniform(p.N));
  for (int m = 0; m < kMonomials; ++m) out.component(m) = t[m].cast<cplx>();
  return out;
}

Residual transfer_commutator_residual(cplx u, cplx v, const ModelParams& p) {
  const GradedLd a = transfer_ld(u, p), b = transfer_ld(v, p);
  const GradedLd ab = multiply(a, b), ba = multiply(b, a);
  Residual r;
  for (int m = 0; m < kMonomials; ++m)
    r.component[m] = static_cast<double>((ab[m] - ba[m]).cwiseAbs().maxCoeff());
  return r;
}

cplx quantum_determinant(cplx u, const ModelParams& p) {
  const cplx se = std::sin(p.eta);
  const cplx wp = p.omega_plus();
  const cplx wm = p.omega_minus();
  cplx d = wp * wp * wm * wm / (se * se) * std::sin(u + p.psi_plus) * std::sin(u - p.psi_plus) *
           std::sin(u + p.psi_minus) * std::sin(u - p.psi_minus) * std::sin(2.0 * u + 2.0 * p.eta) *
           std::sin(2.0 * u - 2.0 * p.eta);
  const cplx se4 = se * se * se * se;
  for (int l = 0; l < p.N; ++l) {
    const cplx th = p.theta_at(l);
    d *= std::sin(u - th - p.eta) * std::sin(u - th + p.eta) * std::sin(u + th - p.eta) *
         std::sin(u + th + p.eta) / se4;
  }
  return d;
}

cplx transfer_value_at_zero(const ModelParams& p) {
  const cplx se2 = std::sin(p.eta) * std::sin(p.eta);
  cplx v = 1.0;
  for (int l = 0; l < p.N; ++l) {
    const cplx th = p.theta_at(l);
    v *= std::sin(p.eta - th) * std::sin(p.eta + th) / se2;
  }
  return v;
}

cplx transfer_value_at_half_pi(const ModelParams& p) {
  const double h = std::acos(0.0);
  const cplx se2 = std::sin(p.eta) * std::sin(p.eta);
  cplx v = std::cos(p.psi_minus) / std::sin(p.psi_minus) * std::cos(p.psi_plus) / std::sin(p.psi_plus);
  for (int l = 0; l < p.N; ++l) {
    const cplx th = p.theta_at(l);
    v *= std::sin(h - th + p.eta) * std::sin(h + th + p.eta) / se2;
  }
  return v;
}

Grassmann asymptotic_coefficient(const ModelParams& p) {
  const int n = p.N;
  const cplx c = p.omega_plus() * p.omega_minus() * std::pow(cplx(0.0, 2.0), -(2 * n + 2)) *
                 std::pow(std::sin(p.eta), -2 * n) * std::exp(cplx(0.0, n + 2.0) * p.eta);
  return p.g() * c;
}

GradedMatrix transfer_fourier_mode(const ModelParams& p, int k, int points) {
  std::vector<GradedMatrix> samples;
  samples.reserve(points);
  const double two_pi = 4.0 * std::acos(0.0);
  for (int j = 0; j < points; ++j) samples.push_back(transfer(two_pi * j / points, p));
  return fourier_mode(samples, k);
}

GradedMatrix u_z(int n_sites) {
  const GradedSpace s = GradedSpace::uniform(n_sites);
  GradedMatrix m(s);
  for (int i = 0; i < s.dim(); ++i) m.component(0)(i, i) = s.parity(i) ? -1.0 : 1.0;
  return m;
}

GradedMatrix annihilator(int site, int n_sites) {
  if (site < 1 || site > n_sites) throw Error(ErrorCode::BadFactor, "site out of range");
  const GradedSpace s = GradedSpace::uniform(n_sites);
  const int f = site - 1;
  GradedMatrix c(s);
  for (int row = 0; row < s.dim(); ++row) {
    if (s.digit(row, f) != 0) continue;
    int string = 0;
    for (int k = f + 1; k < n_sites; ++k) string += s.factor_parity(row, k);
    c.component(0)(row, s.with_digit(row, f, 1)) = (string & 1) ? -1.0 : 1.0;
  }
  return c;
}

GradedMatrix creator(int site, int n_sites) {
  const GradedMatrix c = annihilator(site, n_sites);
  return GradedMatrix::from_body(c.space(), c.body().transpose());
}

GradedMatrix hamiltonian_from_transfer(const ModelParams& p, double step) {
  const ModelParams q = p.with_zero_theta();
  const auto d4 = [&](double h) {
    const GradedMatrix a = transfer(h, q) - transfer(-h, q);
    const GradedMatrix b = transfer(2.0 * h, q) - transfer(-2.0 * h, q);
    return (8.0 * a - b) * (1.0 / (12.0 * h));
  };
  const GradedMatrix deriv = (16.0 * d4(step / 2.0) - d4(step)) * (1.0 / 15.0);
  GradedMatrix h = 0.5 * deriv;
  h += (0.5 * std::tan(p.eta)) * GradedMatrix::identity(h.space());
  return h;
}

GradedMatrix hamiltonian_explicit(const ModelParams& p) {
  const int n = p.N;
  const GradedSpace s = GradedSpace::uniform(n);
  const GradedMatrix id = GradedMatrix::identity(s);
  std::vector<GradedMatrix> c, cd, num, hole;
  for (int j = 1; j <= n; ++j) {
    c.push_back(annihilator(j, n));
    cd.push_back(creator(j, n));
    num.push_back(cd.back() * c.back());
    hole.push_back(id - num.back());
  }
  const cplx se = std::sin(p.eta);
  const cplx ce = std::cos(p.eta);
  GradedMatrix h(s);
  for (int j = 0; j + 1 < n; ++j) {
    h += (ce / se) * (hole[j + 1] * hole[j] + num[j + 1] * num[j]);
    h += (1.0 / se) * (cd[j] * c[j + 1] + cd[j + 1] * c[j]);
  }
  const cplx cot_m = std::cos(p.psi_minus) / std::sin(p.psi_minus);
  h += (0.5 * cot_m) * (hole[0] - num[0]);
  h += p.kappa_plus() * hole[n - 1] - p.kappa_minus() * num[n - 1];
  const cplx csc_m = 1.0 / std::sin(p.psi_minus);
  const cplx csc_p = 1.0 / std::sin(p.psi_plus);
  h += (p.alpha_minus() * csc_m) * c[0] + (p.beta_minus() * csc_m) * cd[0];
  h += (p.alpha_plus() * csc_p) * c[n - 1] + (p.beta_plus() * csc_p) * cd[n - 1];
  return h;
}

}  // namespace polaron
