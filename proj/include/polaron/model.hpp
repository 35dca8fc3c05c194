#pragma once

#include <array>
#include <vector>

#include "polaron/graded_matrix.hpp"

namespace polaron {

struct ModelParams {
  int N = 2;
  cplx eta{0.37, 0.1};
  cplx psi_minus{0.4, 0.2};
  cplx psi_plus{-0.7, 0.1};
  // Amplitudes multiplying the fixed odd generators alpha_-, alpha_+, beta_-, beta_+.
  cplx a_minus = 0.0;
  cplx a_plus = 0.0;
  cplx b_minus = 0.0;
  cplx b_plus = 0.0;
  std::vector<cplx> theta;  // size N; empty means homogeneous
  // Negative control: flips the sign of the |2>|2> diagonal entry of R.
  bool corrupt_r = false;

  /// Throws Error(SingularCoupling / SingularBoundary / ConfigError).
  void validate() const;

  cplx theta_at(int j) const { return theta.empty() ? cplx{} : theta[j]; }
  bool homogeneous() const;
  bool diagonal() const;

  cplx omega_minus() const;  // 1/sin(psi_-)
  cplx omega_plus() const;   // 1/(2 cos(eta) sin(psi_+))
  cplx kappa_plus() const;
  cplx kappa_minus() const;

  Grassmann alpha_minus() const;
  Grassmann alpha_plus() const;
  Grassmann beta_minus() const;
  Grassmann beta_plus() const;
  /// g = alpha_+ beta_- - beta_+ alpha_-.
  Grassmann g() const;

  ModelParams with_zero_theta() const;
  ModelParams with_zero_odd() const;
};

/// Max absolute coefficient per Grassmann monomial of a matrix.
struct Residual {
  std::array<double, kMonomials> component{};
  double max() const;
  Residual& merge(const Residual& o);
};

Residual residual_of(const GradedMatrix& diff);

GradedSpace pair_space();

GradedMatrix r_matrix(cplx u, const ModelParams& p);
/// R_21(u) = P R_12(u) P.
GradedMatrix r21_matrix(cplx u, const ModelParams& p);
/// -sin(u - eta) sin(u + eta) / sin^2(eta).
cplx xi(cplx u, const ModelParams& p);

GradedMatrix k_minus(cplx u, const ModelParams& p);
GradedMatrix k_plus(cplx u, const ModelParams& p);

enum class TildeVariant { DoubleTilde21, Tilde12 };

/// DoubleTilde21: ([ (R_21^-1)^{ist2} ]^-1)^{st2};
/// Tilde12:       ([ (R_12^-1)^{st1} ]^-1)^{ist1}.
GradedMatrix tilde_r(cplx u, TildeVariant variant, const ModelParams& p);

/// Graded Yang-Baxter residual R12(u-v) R13(u) R23(v) - R23(v) R13(u) R12(u-v).
double check_ybe(cplx u, cplx v, const ModelParams& p);

/// R12(u-v) K1-(u) R21(u+v) K2-(v) - K2-(v) R12(u+v) K1-(u) R21(u-v).
Residual reflection_residual(cplx u, cplx v, const ModelParams& p);
/// R12(v-u) K1+(u) R~~21(-u-v) K2+(v) - K2+(v) R~12(-u-v) K1+(u) R21(v-u).
Residual dual_reflection_residual(cplx u, cplx v, const ModelParams& p);

// Local R-matrix properties, each returns the max entry residual.
double r_initial_residual(const ModelParams& p);          // R(0) = P
double r_unitarity_residual(cplx u, const ModelParams& p); // R12(u) R21(-u) = xi(u)
double r_p_symmetry_residual(cplx u, const ModelParams& p);
double r_t_symmetry_residual(cplx u, const ModelParams& p);  // st1 st2 and ist1 ist2
double r_t_symmetry_residual(cplx u, const ModelParams& p, Transpose variant);
double r_crossing_residual(cplx u, const ModelParams& p);
double r_antisymmetry_residual(const ModelParams& p);      // R(-eta) = -2 P^(-)
double r_periodicity_residual(cplx u, const ModelParams& p);

/// Quasi-periodicity K(u + pi) = -sigma^z K(u) sigma^z for both K-matrices.
double k_periodicity_residual(cplx u, const ModelParams& p);

}  // namespace polaron
