#pragma once

#include <array>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "polaron/io.hpp"

namespace polaron {

/// Outcome of one identity check. `identity` states the relation in formula
/// form; `residual` is the max entrywise deviation over all samples.
struct Check {
  std::string name;
  std::string identity;
  double residual = 0.0;
  double tolerance = 0.0;
  int samples = 0;
  bool passed = false;
  /// Max deviation per Grassmann monomial where the check tracks it.
  std::optional<std::array<double, kMonomials>> components;
  std::string note;
};

/// Random spectral parameter with Re in [-1.5, 1.5], Im in [-0.5, 0.5].
cplx random_point(std::mt19937_64& rng);

// Individual checks. Each samples `count` random points (or pairs) where it
// depends on a spectral parameter.
Check check_r_initial(const ModelParams& p, double tol);
Check check_r_unitarity(const ModelParams& p, std::mt19937_64& rng, int count, double tol);
Check check_r_p_symmetry(const ModelParams& p, std::mt19937_64& rng, int count, double tol);
Check check_r_t_symmetry(const ModelParams& p, Transpose variant, std::mt19937_64& rng, int count,
                         double tol);
Check check_r_crossing(const ModelParams& p, std::mt19937_64& rng, int count, double tol);
Check check_r_antisymmetry(const ModelParams& p, double tol);
Check check_r_periodicity(const ModelParams& p, std::mt19937_64& rng, int count, double tol);
Check check_k_periodicity(const ModelParams& p, std::mt19937_64& rng, int count, double tol);
Check check_ybe_suite(const ModelParams& p, std::mt19937_64& rng, int count, double tol);
Check check_reflection(const ModelParams& p, std::mt19937_64& rng, int count, double tol);
Check check_dual_reflection(const ModelParams& p, std::mt19937_64& rng, int count, double tol);
Check check_commutativity(const ModelParams& p, std::mt19937_64& rng, int count, double tol);
Check check_transfer_crossing(const ModelParams& p, std::mt19937_64& rng, int count, double tol);
Check check_transfer_periodicity(const ModelParams& p, std::mt19937_64& rng, int count,
                                 double tol);
Check check_transfer_at_zero(const ModelParams& p, double tol);
Check check_transfer_at_half_pi(const ModelParams& p, double tol);
Check check_operator_product(const ModelParams& p, double tol);
/// Relative deviation of the e^{i(2N+4)u} Fourier mode of t(u) from its
/// asymptotic form; an exactly vanishing prediction (g = 0) is compared
/// absolutely.
Check check_asymptotic_mode(const ModelParams& p, double tol);
Check check_uz_square(const ModelParams& p);
Check check_uz_automorphism(const ModelParams& p, std::mt19937_64& rng, int count, double tol);
Check check_uz_even_commutation(const ModelParams& p, std::mt19937_64& rng, int count, double tol);
/// Uses the homogeneous chain built from p.
Check check_hamiltonian(const ModelParams& p, double fd_step, double tol);

/// The full identity suite for `cmd_verify`. Per-check default tolerances are
/// replaced by `tol_identity` when it is positive.
std::vector<Check> verify_suite(const RunConfig& config);

}  // namespace polaron
