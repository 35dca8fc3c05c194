#pragma once

#include <optional>
#include <string>
#include <vector>

#include "polaron/spectra.hpp"
#include "polaron/tq.hpp"

namespace polaron {

/// One eigenvalue curve of t(u) turned into a solved Bethe state.
struct SolvedLevel {
  int sector = 0;
  bool ok = false;
  std::string error;
  BetheState state;
  double residual_max = 0.0;  // bae_residuals(state).max()
  double roundtrip = 0.0;     // max |lambda_tq - measured| over the curve grid
  std::optional<Dual> energy; // body and g-coefficient (0 when g = 0); homogeneous only
};

/// Eigencurves of t(u), T-Q inversion for seeds, then solve_bae on each seed
/// with Q1 discarded so that the order-g solve is independent of the fit.
/// Levels are solved concurrently; results keep the eigencurve order.
std::vector<SolvedLevel> solve_all(const ModelParams& p, const CurveOptions& curves = {},
                                   const SolveOptions& opt = {});

/// Energies of the explicit Hamiltonian as (body, g-coefficient). Throws
/// Error(IllConditioned) when some level has a soul off the g direction.
std::vector<Dual> ed_energies(const ModelParams& p, double off_g_tol = 1e-9);

/// Minimum-cost perfect assignment of rows to columns (square cost matrix).
std::vector<int> hungarian(const std::vector<std::vector<double>>& cost);

struct LevelMatch {
  int ed_index = -1;
  int bae_index = -1;
  Dual ed;
  Dual bae;
  double delta_body = 0.0;
  double delta_g = 0.0;
};

struct Comparison {
  ModelParams params;  // the homogeneous chain that was compared
  std::vector<Dual> ed;
  std::vector<SolvedLevel> levels;
  std::vector<LevelMatch> matches;
  bool complete = false;  // every ED level matched to a solved state
  double max_delta_body = 0.0;
  double max_delta_g = 0.0;
};

/// Matches ED energies to BAE energies by body proximity (Hungarian), ties
/// broken by the g-coefficient. Runs on the homogeneous chain built from p.
Comparison compare_energies(const ModelParams& p, const CurveOptions& curves = {},
                            const SolveOptions& opt = {});

}  // namespace polaron
