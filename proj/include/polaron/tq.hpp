#pragma once

#include <utility>
#include <vector>

#include "polaron/dual.hpp"
#include "polaron/model.hpp"
#include "polaron/spectra.hpp"
#include "polaron/trig_poly.hpp"

namespace polaron {

/// A solution of the T-Q relation in the decomposition Q = Q0 + g Q1.
///
/// Q0(u) = prod_j sin(u - l_j) sin(u + l_j + eta) / sin^2(eta) over the
/// finite roots l_j. Levels whose body Q-function has M < N zeros carry the
/// remaining N - M roots at infinity, where the corresponding factors become
/// constants and are dropped. Q1 is stored as a polynomial in
/// w = cos(2u + eta); a factor sin(u - l) sin(u + l + eta) / sin^2(eta)
/// equals (cos(2l + eta) - w) / (2 sin^2(eta)).
struct BetheState {
  int sector = 1;
  std::vector<cplx> roots0;
  Poly q1;
  ModelParams params;

  int n_finite() const { return static_cast<int>(roots0.size()); }
  /// N finite roots and deg Q1 <= N - 1, i.e. the form
  /// Q1 = amplitude * prod_{j<N} sin(u - l1_j) sin(u + l1_j + eta) / sin^2(eta).
  bool full_form() const;
  /// Finite roots of Q1 (in u) and its amplitude relative to that product.
  std::vector<cplx> roots1() const;
  cplx amplitude() const;

  static BetheState from_roots(int sector, std::vector<cplx> roots0,
                               const std::vector<cplx>& roots1, cplx amplitude,
                               const ModelParams& p);
};

inline cplx w_of(cplx u, cplx eta) { return std::cos(2.0 * u + eta); }
/// Branch with Re acos in [0, pi].
cplx u_of_w(cplx w, cplx eta);
/// (-1 / (2 sin^2 eta))^n, leading coefficient of n root factors in w.
cplx factor_lead(int n, cplx eta);

/// Q0 as a polynomial in w.
Poly q0_poly(const BetheState& s);
Grassmann q_function(cplx u, const BetheState& s);

struct TQCoefficients {
  cplx a{};
  cplx d{};
  cplx abar{};
  Grassmann cbar;
};
/// a(u), d(u), Abar(u), cbar = omega_+ omega_- g. Throws Error(PoleHit).
TQCoefficients a_d_abar(cplx u, const ModelParams& p);

/// sin(2u) sin(2u + 2 eta) Abar(u) Abar(-u - eta).
cplx inhomogeneous_factor(cplx u, const ModelParams& p);

/// Lambda(u) from the T-Q relation. Throws Error(NearRoot).
Grassmann lambda_tq(cplx u, const BetheState& s, double near_root = 1e-10);
/// (Lambda0, Lambda1) with Lambda = Lambda0 + g Lambda1.
Dual lambda_tq_parts(cplx u, const BetheState& s, double near_root = 1e-10);

/// The asymptotic constant: the w^{N+2} coefficient of Lambda1 equals
/// sector * this value.
cplx lambda1_top_coefficient(const ModelParams& p);

/// delta(theta) sin^2(eta) / (sin(2 theta + eta) sin(2 theta - eta)), the value
/// of Lambda(theta) Lambda(theta - eta) at an inhomogeneity.
cplx lambda_product_target(cplx theta, const ModelParams& p);

/// Laurent coefficients of Lambda at the j-th root of Q0: (order -1, order -2),
/// each as (body, g-part), from a trapezoidal contour integral.
std::pair<Dual, Dual> lambda_residues(const BetheState& s, int j, int points = 64);

/// Largest Fourier mode of lambda_tq on the real line with |k| > max_mode,
/// relative to the largest mode overall.
double lambda_fourier_excess(const BetheState& s, int max_mode, int points = 128);

struct BaeResiduals {
  std::vector<cplx> order0;   // one per finite root
  std::vector<cplx> order_g;  // one per finite root, including the root shift
  std::vector<cplx> degree;   // polynomiality and asymptotic conditions on Lambda1
  double max() const;
};

/// BAEs expanded to order g at mu_j = l_j + g dl_j, dl_j = -Q1(l_j) / Q0'(l_j).
/// The equation is normalized by d(mu) Q(mu - eta); at theta = 0 the
/// literal homogeneous form is used. With g = 0 the order-g entries are zero.
BaeResiduals bae_residuals(const BetheState& s);
/// The general (inhomogeneous) form divided by d(mu) Q(mu - eta), for any theta.
BaeResiduals bae_residuals_general(const BetheState& s);

struct SolveOptions {
  int max_iterations = 60;
  double tol = 1e-10;
};

/// Newton on the order-g^0 equations for roots0, then one linear solve for
/// Q1. Throws Error(NoConvergence / SingularJacobian / RankDeficient).
BetheState solve_bae(const BetheState& seed, const SolveOptions& opt = {});

/// Inverts the T-Q relation on a measured eigenvalue curve. Throws
/// Error(RankDeficient).
BetheState fit_q_from_lambda(const LevelCurve& curve, const ModelParams& p,
                             const SolveOptions& opt = {});

/// E = -cot(psi_+)/2 - cot(psi_-)/2 - 1/sin(2 eta) + N cot(eta) + tan(eta)/2
///     + sum_j sin(eta) / (sin mu_j sin(mu_j + eta))
/// with mu_j = l_j + g dl_j, plus g * 2 sin(eta) P'(cos eta) where P is the
/// polynomial part of Q1/Q0 (zero in the full form). Requires theta = 0.
/// Throws Error(PoleHit).
Dual energy_parts(const BetheState& s);
Grassmann energy(const BetheState& s);
/// 1/2 Lambda'(0) + 1/2 tan(eta) by central differences of lambda_tq.
Dual energy_from_lambda(const BetheState& s, double step = 1e-3);

/// Newton polish of roots0 only (order g^0).
std::vector<cplx> polish_roots0(const std::vector<cplx>& roots0, const ModelParams& p,
                                const SolveOptions& opt = {});

}  // namespace polaron
