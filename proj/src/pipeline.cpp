#include "polaron/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>

#include "polaron/error.hpp"
#include "polaron/transfer.hpp"

namespace polaron {

namespace {

SolvedLevel solve_level(const LevelCurve& curve, const ModelParams& p, const SolveOptions& opt) {
  SolvedLevel level;
  level.sector = curve.sector;
  try {
    BetheState seed = fit_q_from_lambda(curve, p, opt);
    seed.q1 = Poly();
    level.state = solve_bae(seed, opt);
    level.residual_max = bae_residuals(level.state).max();
    for (std::size_t i = 0; i < curve.grid.size(); ++i)
      level.roundtrip = std::max(
          level.roundtrip, (lambda_tq(curve.grid[i], level.state) - curve.values[i]).norm());
    if (p.homogeneous()) {
      Dual e = energy_parts(level.state);
      // Without odd amplitudes g vanishes and so does the soul.
      if (p.diagonal()) e.e = 0.0;
      level.energy = e;
    }
    level.ok = true;
  } catch (const Error& e) {
    level.error = e.what();
  }
  return level;
}

}  // namespace

std::vector<SolvedLevel> solve_all(const ModelParams& p, const CurveOptions& curves,
                                   const SolveOptions& opt) {
  p.validate();
  const std::vector<LevelCurve> cs = transfer_eigencurves(p, curves);
  std::vector<std::future<SolvedLevel>> jobs;
  jobs.reserve(cs.size());
  for (const LevelCurve& c : cs)
    jobs.push_back(std::async(std::launch::async, [&c, &p, &opt] { return solve_level(c, p, opt); }));
  std::vector<SolvedLevel> out;
  out.reserve(jobs.size());
  for (auto& j : jobs) out.push_back(j.get());
  return out;
}

std::vector<Dual> ed_energies(const ModelParams& p, double off_g_tol) {
  const GrassmannSpectrum spec = nilpotent_eigenvalues(hamiltonian_explicit(p.with_zero_theta()));
  const Grassmann g = p.g();
  std::vector<Dual> out;
  for (const Grassmann& v : spec.values) {
    const GPart gp = g_part(v, g);
    if (gp.off_g > off_g_tol)
      throw Error(ErrorCode::IllConditioned, "energy soul is not along g");
    out.emplace_back(v.body(), gp.coefficient);
  }
  return out;
}

std::vector<int> hungarian(const std::vector<std::vector<double>>& cost) {
  // Shortest augmenting path with potentials; rows and columns 1-based inside.
  const int n = static_cast<int>(cost.size());
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
  std::vector<int> match(n + 1, 0), way(n + 1, 0);
  for (int i = 1; i <= n; ++i) {
    if (static_cast<int>(cost[i - 1].size()) != n)
      throw Error(ErrorCode::DimMismatch, "cost matrix must be square");
    match[0] = i;
    int j0 = 0;
    std::vector<double> minv(n + 1, inf);
    std::vector<char> used(n + 1, 0);
    do {
      used[j0] = 1;
      const int i0 = match[j0];
      double delta = inf;
      int j1 = 0;
      for (int j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const double cur = cost[i0 - 1][j - 1] - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (int j = 0; j <= n; ++j) {
        if (used[j]) {
          u[match[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (match[j0] != 0);
    do {
      const int j1 = way[j0];
      match[j0] = match[j1];
      j0 = j1;
    } while (j0 != 0);
  }
  std::vector<int> row_to_col(n, -1);
  for (int j = 1; j <= n; ++j)
    if (match[j] > 0) row_to_col[match[j] - 1] = j - 1;
  return row_to_col;
}

Comparison compare_energies(const ModelParams& p, const CurveOptions& curves,
                            const SolveOptions& opt) {
  Comparison cmp;
  cmp.params = p.with_zero_theta();
  cmp.ed = ed_energies(cmp.params);
  cmp.levels = solve_all(cmp.params, curves, opt);

  std::vector<int> solved;
  for (std::size_t k = 0; k < cmp.levels.size(); ++k)
    if (cmp.levels[k].ok && cmp.levels[k].energy) solved.push_back(static_cast<int>(k));
  const int n = static_cast<int>(cmp.ed.size());
  // Pad with unreachable columns when some level failed to solve.
  const double big = 1e12;
  std::vector<std::vector<double>> cost(n, std::vector<double>(n, big));
  for (int i = 0; i < n; ++i)
    for (std::size_t c = 0; c < solved.size() && static_cast<int>(c) < n; ++c) {
      const Dual e = *cmp.levels[solved[c]].energy;
      cost[i][c] = std::abs(cmp.ed[i].v - e.v) + 1e-6 * std::abs(cmp.ed[i].e - e.e);
    }
  const std::vector<int> assign = hungarian(cost);
  cmp.complete = static_cast<int>(solved.size()) == n;
  for (int i = 0; i < n; ++i) {
    LevelMatch m;
    m.ed_index = i;
    m.ed = cmp.ed[i];
    const int c = assign[i];
    if (c < static_cast<int>(solved.size())) {
      m.bae_index = solved[c];
      m.bae = *cmp.levels[m.bae_index].energy;
      m.delta_body = std::abs(m.ed.v - m.bae.v);
      m.delta_g = std::abs(m.ed.e - m.bae.e);
    } else {
      m.delta_body = m.delta_g = std::numeric_limits<double>::infinity();
    }
    cmp.max_delta_body = std::max(cmp.max_delta_body, m.delta_body);
    cmp.max_delta_g = std::max(cmp.max_delta_g, m.delta_g);
    cmp.matches.push_back(m);
  }
  return cmp;
}

}  // namespace polaron
