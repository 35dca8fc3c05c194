#include "polaron/spectra.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "polaron/error.hpp"
#include "polaron/transfer.hpp"

namespace polaron {

namespace {

const double kPi = std::acos(-1.0);

// Fixed weights for the generic combination used to split degenerate blocks.
constexpr std::array<double, 4> kMixWeights = {1.0, 0.7548776662, 0.5698402910, 0.4301597090};

struct Blocks {
  std::vector<int> of;                  // block id per level
  std::vector<std::vector<int>> members;
};

Blocks cluster(const Eigen::VectorXcd& lambda, double tol) {
  const int d = static_cast<int>(lambda.size());
  std::vector<int> parent(d);
  std::iota(parent.begin(), parent.end(), 0);
  const auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (int n = 0; n < d; ++n)
    for (int m = n + 1; m < d; ++m) {
      const double scale = std::max(1.0, std::max(std::abs(lambda(n)), std::abs(lambda(m))));
      if (std::abs(lambda(n) - lambda(m)) < tol * scale) parent[find(n)] = find(m);
    }
  Blocks b;
  b.of.assign(d, -1);
  std::vector<int> id(d, -1);
  for (int n = 0; n < d; ++n) {
    const int r = find(n);
    if (id[r] < 0) {
      id[r] = static_cast<int>(b.members.size());
      b.members.emplace_back();
    }
    b.of[n] = id[r];
    b.members[id[r]].push_back(n);
  }
  return b;
}

Grassmann soul_entry(const std::array<Eigen::MatrixXcd, kMonomials>& mt, int n, int m) {
  Grassmann x;
  for (int k = 1; k < kMonomials; ++k) x[k] = mt[k](n, m);
  return x;
}

}  // namespace

GrassmannSpectrum nilpotent_eigenvalues_in_basis(const GradedMatrix& m,
                                                 const Eigen::MatrixXcd& basis,
                                                 double degeneracy_tol) {
  const int d = m.dim();
  if (basis.rows() != d || basis.cols() != d)
    throw Error(ErrorCode::DimMismatch, "basis does not match the matrix");
  Eigen::FullPivLU<Eigen::MatrixXcd> lu(basis);
  if (!lu.isInvertible()) throw Error(ErrorCode::IllConditioned, "eigenbasis is singular");
  const Eigen::MatrixXcd vinv = lu.inverse();

  std::array<Eigen::MatrixXcd, kMonomials> mt;
  double soul_scale = 0.0;
  for (int k = 0; k < kMonomials; ++k) {
    if (m.component_is_zero(k)) {
      mt[k] = Eigen::MatrixXcd::Zero(d, d);
      continue;
    }
    mt[k] = vinv * m.component(k) * basis;
    if (k > 0) soul_scale = std::max(soul_scale, mt[k].cwiseAbs().maxCoeff());
  }
  const Eigen::VectorXcd lambda0 = mt[0].diagonal();
  const double body_scale = std::max(1.0, mt[0].cwiseAbs().maxCoeff());
  Eigen::MatrixXcd off = mt[0];
  off.diagonal().setZero();
  if (d > 0 && off.cwiseAbs().maxCoeff() > 1e-8 * body_scale)
    throw Error(ErrorCode::IllConditioned, "basis does not diagonalize the body");

  const Blocks blocks = cluster(lambda0, degeneracy_tol);
  GrassmannSpectrum out;
  out.values.resize(d);
  out.vectors = basis;

  for (const auto& members : blocks.members) {
    cplx center{};
    for (int n : members) center += lambda0(n);
    center /= static_cast<double>(members.size());
    const int bs = static_cast<int>(members.size());

    // Effective soul matrix on the block.
    std::vector<Grassmann> eff(bs * bs);
    for (int i = 0; i < bs; ++i)
      for (int j = 0; j < bs; ++j) {
        const int n = members[i], mm = members[j];
        Grassmann e = soul_entry(mt, n, mm);
        for (int l = 0; l < d; ++l) {
          if (blocks.of[l] == blocks.of[n]) continue;
          e += soul_entry(mt, n, l) * soul_entry(mt, l, mm) * (1.0 / (center - lambda0(l)));
        }
        eff[i * bs + j] = e;
      }

    if (bs == 1) {
      Grassmann v = eff[0];
      v[0] = lambda0(members[0]);
      out.values[members[0]] = v;
      continue;
    }

    const double tol = 1e-10 * std::max(1.0, soul_scale);
    for (const Grassmann& e : eff)
      if (e.odd_part().norm() > tol)
        throw Error(ErrorCode::IllConditioned,
                    "odd coupling inside a degenerate block has no even eigenvalue");

    std::array<Eigen::MatrixXcd, kMonomials> a;
    bool off_diagonal = false;
    for (int k = 5; k < kMonomials; ++k) {
      a[k].resize(bs, bs);
      for (int i = 0; i < bs; ++i)
        for (int j = 0; j < bs; ++j) {
          a[k](i, j) = eff[i * bs + j][k];
          if (i != j && std::abs(a[k](i, j)) > tol) off_diagonal = true;
        }
    }
    Eigen::MatrixXcd w = Eigen::MatrixXcd::Identity(bs, bs);
    if (off_diagonal) {
      Eigen::MatrixXcd mix = Eigen::MatrixXcd::Zero(bs, bs);
      for (int k = 5; k < kMonomials; ++k) mix += kMixWeights[k - 5] * a[k];
      Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(mix);
      w = es.eigenvectors();
      Eigen::FullPivLU<Eigen::MatrixXcd> wl(w);
      if (!wl.isInvertible())
        throw Error(ErrorCode::IllConditioned, "degenerate block soul is not diagonalizable");
      const Eigen::MatrixXcd winv = wl.inverse();
      for (int k = 5; k < kMonomials; ++k) {
        Eigen::MatrixXcd t = winv * a[k] * w;
        Eigen::MatrixXcd t_off = t;
        t_off.diagonal().setZero();
        if (t_off.size() > 0 && t_off.cwiseAbs().maxCoeff() > 1e-8 * std::max(1.0, soul_scale))
          throw Error(ErrorCode::IllConditioned,
                      "degenerate block souls cannot be diagonalized simultaneously");
        a[k] = t;
      }
      Eigen::MatrixXcd cols(d, bs);
      for (int i = 0; i < bs; ++i) cols.col(i) = basis.col(members[i]);
      cols = cols * w;
      for (int i = 0; i < bs; ++i) out.vectors.col(members[i]) = cols.col(i);
    }
    for (int i = 0; i < bs; ++i) {
      Grassmann v;
      v[0] = lambda0(members[i]);
      for (int k = 5; k < kMonomials; ++k) v[k] = a[k](i, i);
      out.values[members[i]] = v;
    }
  }
  return out;
}

GrassmannSpectrum nilpotent_eigenvalues(const GradedMatrix& m, double degeneracy_tol) {
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(m.body());
  if (es.info() != Eigen::Success) throw Error(ErrorCode::IllConditioned, "eigensolver failed");
  Eigen::MatrixXcd v = es.eigenvectors();
  for (int j = 0; j < v.cols(); ++j) v.col(j).normalize();
  return nilpotent_eigenvalues_in_basis(m, v, degeneracy_tol);
}

std::pair<GrassmannSpectrum, GrassmannSpectrum> sector_split(GrassmannSpectrum& spec,
                                                             const GradedMatrix& uz, double tol) {
  const int n = static_cast<int>(spec.values.size());
  spec.sector.assign(n, 0);
  GrassmannSpectrum plus, minus;
  std::vector<int> ip, im;
  for (int j = 0; j < n; ++j) {
    const Eigen::VectorXcd v = spec.vectors.col(j);
    const Eigen::VectorXcd u = uz.body() * v;
    const double nv = v.norm();
    if ((u - v).norm() < tol * nv) {
      spec.sector[j] = 1;
      ip.push_back(j);
    } else if ((u + v).norm() < tol * nv) {
      spec.sector[j] = -1;
      im.push_back(j);
    } else {
      throw Error(ErrorCode::MixedSector, "level " + std::to_string(j) +
                                              " is not a U^z eigenvector");
    }
  }
  const auto take = [&](const std::vector<int>& idx, int s) {
    GrassmannSpectrum out;
    out.vectors.resize(spec.vectors.rows(), static_cast<int>(idx.size()));
    for (std::size_t i = 0; i < idx.size(); ++i) {
      out.values.push_back(spec.values[idx[i]]);
      out.vectors.col(static_cast<int>(i)) = spec.vectors.col(idx[i]);
      out.sector.push_back(s);
    }
    return out;
  };
  return {take(ip, 1), take(im, -1)};
}

GPart g_part(const Grassmann& x, const Grassmann& g) {
  GPart r;
  const int i6 = static_cast<int>(Monomial::ApBm);
  const int i7 = static_cast<int>(Monomial::BpAm);
  const double gn = std::norm(g[i6]) + std::norm(g[i7]);
  if (gn > 0.0) r.coefficient = (x[i6] * std::conj(g[i6]) + x[i7] * std::conj(g[i7])) / gn;
  Grassmann rest = x.even_soul() - g * r.coefficient;
  r.off_g = rest.norm();
  return r;
}

namespace {

// Basis that diagonalizes the body of t at a generic real point.
Eigen::MatrixXcd reference_basis(const ModelParams& p, double degeneracy_tol) {
  const GrassmannSpectrum s = nilpotent_eigenvalues(transfer(0.4123, p), degeneracy_tol);
  return s.vectors;
}

bool diagonalizes(const Eigen::MatrixXcd& body, const Eigen::MatrixXcd& basis) {
  Eigen::FullPivLU<Eigen::MatrixXcd> lu(basis);
  if (!lu.isInvertible()) return false;
  Eigen::MatrixXcd t = lu.inverse() * body * basis;
  const double scale = std::max(1.0, t.cwiseAbs().maxCoeff());
  t.diagonal().setZero();
  return t.cwiseAbs().maxCoeff() < 1e-9 * scale;
}

// Reorders the columns of `fresh` to follow `prev` by maximal overlap.
// Returns the smallest overlap that was accepted.
double match_columns(const Eigen::MatrixXcd& prev, Eigen::MatrixXcd& fresh) {
  const int d = static_cast<int>(prev.cols());
  Eigen::MatrixXd ov(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      ov(i, j) = std::abs(prev.col(i).dot(fresh.col(j))) / (prev.col(i).norm() * fresh.col(j).norm());
  std::vector<int> assign(d, -1);
  std::vector<bool> used(d, false);
  double worst = 1.0;
  for (int step = 0; step < d; ++step) {
    double best = -1.0;
    int bi = -1, bj = -1;
    for (int i = 0; i < d; ++i) {
      if (assign[i] >= 0) continue;
      for (int j = 0; j < d; ++j)
        if (!used[j] && ov(i, j) > best) best = ov(i, j), bi = i, bj = j;
    }
    assign[bi] = bj;
    used[bj] = true;
    worst = std::min(worst, best);
  }
  Eigen::MatrixXcd out(fresh.rows(), d);
  for (int i = 0; i < d; ++i) out.col(i) = fresh.col(assign[i]);
  fresh = out;
  return worst;
}

}  // namespace

std::vector<LevelCurve> transfer_eigencurves(const ModelParams& p, const CurveOptions& opt) {
  const int max_mode = 2 * p.N + 4;
  int points = opt.grid_points > 0 ? opt.grid_points : 4 * max_mode + 2;
  const GradedMatrix uz = u_z(p.N);
  const Eigen::MatrixXcd start = reference_basis(p, opt.degeneracy_tol);

  for (int attempt = 0; attempt <= opt.max_refinements; ++attempt, points *= 2) {
    const std::vector<double> grid = uniform_grid(points, 2.0 * kPi);
    const int d = static_cast<int>(start.cols());
    std::vector<std::vector<Grassmann>> values(d, std::vector<Grassmann>(points));
    Eigen::MatrixXcd basis = start;
    bool lost = false;
    for (int j = 0; j < points && !lost; ++j) {
      const GradedMatrix t = transfer(grid[j], p);
      if (!diagonalizes(t.body(), basis)) {
        Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(t.body());
        Eigen::MatrixXcd fresh = es.eigenvectors();
        if (match_columns(basis, fresh) < opt.overlap_min) {
          lost = true;
          break;
        }
        basis = fresh;
      }
      const GrassmannSpectrum s = nilpotent_eigenvalues_in_basis(t, basis, opt.degeneracy_tol);
      for (int l = 0; l < d; ++l) values[l][j] = s.values[l];
      basis = s.vectors;
    }
    if (lost) continue;

    GrassmannSpectrum ref;
    ref.vectors = basis;
    ref.values.resize(d);
    sector_split(ref, uz);
    std::vector<LevelCurve> curves(d);
    for (int l = 0; l < d; ++l) {
      curves[l].sector = ref.sector[l];
      curves[l].vector = basis.col(l);
      curves[l].grid = grid;
      curves[l].values = values[l];
      curves[l].fourier = TrigPolynomial::fit(grid, values[l], max_mode);
    }
    return curves;
  }
  throw Error(ErrorCode::TrackingLost, "eigenvector overlap stayed below threshold");
}

}  // namespace polaron
