#pragma once

#include <random>
#include <vector>

#include "polaron/graded_matrix.hpp"
#include "polaron/model.hpp"

namespace polaron::testing {

/// Generic complex parameters with nonzero odd amplitudes and distinct
/// inhomogeneities.
inline ModelParams generic(int n) {
  ModelParams p;
  p.N = n;
  p.eta = {0.37, 0.1};
  p.psi_minus = {0.4, 0.2};
  p.psi_plus = {-0.7, 0.1};
  p.a_minus = {0.3, 0.0};
  p.a_plus = {-0.5, 0.2};
  p.b_minus = {0.8, 0.0};
  p.b_plus = {0.45, 0.0};
  const std::vector<cplx> th{{0.13, 0.0}, {-0.29, 0.0}, {0.41, 0.0}, {-0.07, 0.0}};
  p.theta.assign(th.begin(), th.begin() + n);
  return p;
}

inline ModelParams homogeneous(int n) {
  ModelParams p = generic(n);
  p.theta.clear();
  return p;
}

inline ModelParams diagonal(int n) { return homogeneous(n).with_zero_odd(); }

inline Grassmann random_grassmann(std::mt19937_64& rng, bool even_only = false) {
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  Grassmann x;
  for (int k = 0; k < kMonomials; ++k) {
    if (even_only && degree(k) == 1) continue;
    x[k] = {d(rng), d(rng)};
  }
  return x;
}

/// Random element with only the selected Grassmann degrees.
inline Grassmann random_of_degree(std::mt19937_64& rng, int deg) {
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  Grassmann x;
  for (int k = 0; k < kMonomials; ++k)
    if (degree(k) == deg) x[k] = {d(rng), d(rng)};
  return x;
}

inline GradedMatrix random_matrix(const GradedSpace& s, std::mt19937_64& rng) {
  GradedMatrix m(s);
  for (int i = 0; i < s.dim(); ++i)
    for (int j = 0; j < s.dim(); ++j) m.set(i, j, random_grassmann(rng));
  return m;
}

/// Operator of definite parity: entry (i, j) has Grassmann parity
/// [i] + [j] + parity, with an even soul where the entry is even.
inline GradedMatrix random_homogeneous(const GradedSpace& s, int parity, std::mt19937_64& rng) {
  GradedMatrix m(s);
  for (int i = 0; i < s.dim(); ++i)
    for (int j = 0; j < s.dim(); ++j) {
      if ((s.parity(i) + s.parity(j) + parity) % 2 == 1) {
        m.set(i, j, random_of_degree(rng, 1));
      } else {
        m.set(i, j, random_of_degree(rng, 0) + random_of_degree(rng, 2));
      }
    }
  return m;
}

inline double max_diff(const GradedMatrix& a, const GradedMatrix& b) { return (a - b).norm(); }
inline double max_diff(const Grassmann& a, const Grassmann& b) { return (a - b).norm(); }

}  // namespace polaron::testing
