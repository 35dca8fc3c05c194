#pragma once

#include <cstdint>
#include <string>

#include "json.hpp"
#include "polaron/model.hpp"

namespace polaron {

using json = nlohmann::json;

/// Complex numbers are [re, im]; a bare number is accepted as real.
json complex_to_json(cplx z);
cplx complex_from_json(const json& j);

/// Object keyed by monomial name ("1", "a+", ..., "b+b-"); zero entries omitted.
json grassmann_to_json(const Grassmann& x);
Grassmann grassmann_from_json(const json& j);

/// {"dim", "parity": [...], "factors": [[...], ...], "entries": [{"row", "col", "value"}]}
/// with one entry per nonzero matrix element.
json matrix_to_json(const GradedMatrix& m);
GradedMatrix matrix_from_json(const json& j);

json params_to_json(const ModelParams& p);
/// Keys: N, eta, psi_minus, psi_plus, a_minus, a_plus, b_minus, b_plus, theta.
/// Missing keys keep their defaults. Throws Error(ConfigError).
ModelParams params_from_json(const json& j);

struct RunConfig {
  ModelParams model;
  int fourier_grid = 0;       // eigencurve grid points; 0 picks 4 (2N + 4) + 2
  double fd_step = 1e-3;      // finite-difference step for t'(0)
  double tol_identity = 0.0;  // overrides every identity tolerance when positive
  std::uint64_t seed = 12345;
  int samples = 16;           // random spectral points per identity
};

/// A config object holds the model keys at top level or under "model", plus
/// the optional run keys fourier_grid, fd_step, tol_identity, seed, samples
/// and debug_corrupt_r (negative control that breaks the R-matrix).
/// Unknown keys are rejected. Throws Error(ConfigError).
RunConfig run_config_from_json(const json& j);
json run_config_to_json(const RunConfig& c);
RunConfig load_run_config(const std::string& path);

}  // namespace polaron
