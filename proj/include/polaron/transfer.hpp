#pragma once

#include "polaron/model.hpp"

namespace polaron {

/// Monodromy T_a(u) = R_{aN}(u - theta_N) ... R_{a1}(u - theta_1) acting on
/// `space`, where the auxiliary space is factor `aux` and site j sits at
/// factor `first_site + j - 1`.
GradedMatrix monodromy_in(cplx u, const ModelParams& p, const GradedSpace& space, int aux,
                          int first_site);

/// Monodromy on (aux, site 1, ..., site N), aux first.
GradedMatrix monodromy(cplx u, const ModelParams& p);
/// T^_0(u) = R_{01}(u + theta_1) ... R_{0N}(u + theta_N) on (aux, sites).
GradedMatrix hat_monodromy(cplx u, const ModelParams& p);
/// T_0(u) K_0^-(u) T^_0(u).
GradedMatrix double_row_monodromy(cplx u, const ModelParams& p);

/// t(u) = str_0 { K_0^+(u) T_0(u) K_0^-(u) T^_0(u) } on the 2^N chain space.
GradedMatrix transfer(cplx u, const ModelParams& p);

/// t(u) evaluated in long double arithmetic (entries of R and K included),
/// rounded to double at the end.
GradedMatrix transfer_extended(cplx u, const ModelParams& p);

/// Per-monomial max-entry norm of [t(u), t(v)] with both factors and the
/// commutator kept in long double; in double the roundoff floor grows like |t|^2.
Residual transfer_commutator_residual(cplx u, cplx v, const ModelParams& p);

/// The scalar delta(u) of the operator product identity.
cplx quantum_determinant(cplx u, const ModelParams& p);

/// Scalar values of t(0) and t(pi/2).
cplx transfer_value_at_zero(const ModelParams& p);
cplx transfer_value_at_half_pi(const ModelParams& p);

/// Coefficient c with t(u) ~ c e^{i(2N+4)u} U^z as Im u -> -infinity:
/// omega_+ omega_- g e^{i(N+2) eta} / ((2i)^{2N+2} sin^{2N} eta).
Grassmann asymptotic_coefficient(const ModelParams& p);

/// Fourier mode k of t(u) over one 2 pi period sampled at `points` nodes.
GradedMatrix transfer_fourier_mode(const ModelParams& p, int k, int points);

/// prod_j sigma^z_j on the chain.
GradedMatrix u_z(int n_sites);

/// Annihilator c_j = |1><2| on site j (1-based) with the sigma^z string on
/// the sites after j. Body-only.
GradedMatrix annihilator(int site, int n_sites);
GradedMatrix creator(int site, int n_sites);

/// 1/2 t'(0) + 1/2 tan(eta) at theta = 0; fourth-order central differences
/// with one Richardson step.
GradedMatrix hamiltonian_from_transfer(const ModelParams& p, double step = 1e-3);

/// The small-polaron Hamiltonian assembled from fermion operators.
GradedMatrix hamiltonian_explicit(const ModelParams& p);

}  // namespace polaron
