#pragma once

#include <utility>
#include <vector>

#include "polaron/model.hpp"
#include "polaron/trig_poly.hpp"

namespace polaron {

struct GrassmannSpectrum {
  std::vector<Grassmann> values;
  Eigen::MatrixXcd vectors;  // body eigenvectors, one per column
  std::vector<int> sector;   // +1 / -1 per level once split, empty otherwise
};

/// Exact eigenvalues of M = M0 + M1 + M2 (body, odd, even soul):
/// lambda_n = lambda0_n + M'_nn + sum_{m outside block(n)} M'_nm M'_mn / (lambda0_n - lambda0_m)
/// in the body eigenbasis, all higher orders vanishing. Degenerate body blocks
/// are resolved by diagonalizing the effective soul matrix inside the block.
/// Throws Error(IllConditioned).
GrassmannSpectrum nilpotent_eigenvalues(const GradedMatrix& m, double degeneracy_tol = 1e-8);

/// Same with a prescribed body eigenbasis (columns of `basis`). Fails with
/// IllConditioned if the basis does not diagonalize the body.
GrassmannSpectrum nilpotent_eigenvalues_in_basis(const GradedMatrix& m,
                                                 const Eigen::MatrixXcd& basis,
                                                 double degeneracy_tol = 1e-8);

/// Tags each level with the U^z eigenvalue of its body eigenvector and
/// returns the (+, -) parts. Throws Error(MixedSector).
std::pair<GrassmannSpectrum, GrassmannSpectrum> sector_split(GrassmannSpectrum& spec,
                                                             const GradedMatrix& uz,
                                                             double tol = 1e-8);

/// Coefficient x1 in x = x0 + g x1 (least squares over the a+b-, b+a- slots)
/// together with the largest soul component not along g.
struct GPart {
  cplx coefficient{};
  double off_g = 0.0;
};
GPart g_part(const Grassmann& x, const Grassmann& g);

struct LevelCurve {
  int sector = 0;
  Eigen::VectorXcd vector;          // body eigenvector
  std::vector<double> grid;         // real u on [0, pi)
  std::vector<Grassmann> values;    // eigenvalue at each grid point
  TrigPolynomial fourier;           // fit with |k| <= 2N + 4
};

struct CurveOptions {
  int grid_points = 0;           // default 4 (2N + 4) + 2 when 0
  double overlap_min = 0.9;
  int max_refinements = 4;
  double degeneracy_tol = 1e-8;
};

/// Eigenvalue curves of t(u) tracked by body-eigenvector overlap on a uniform
/// grid over the full period [0, 2 pi), where all modes are orthogonal.
/// Throws Error(TrackingLost).
std::vector<LevelCurve> transfer_eigencurves(const ModelParams& p, const CurveOptions& opt = {});

}  // namespace polaron
