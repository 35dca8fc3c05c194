#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "polaron/error.hpp"
#include "polaron/spectra.hpp"
#include "polaron/tq.hpp"
#include "polaron/transfer.hpp"
#include "support.hpp"

using namespace polaron;
using polaron::testing::max_diff;

namespace {

Grassmann gen(Monomial m) { return Grassmann::generator(m); }

Grassmann power(const Grassmann& x, int k) {
  Grassmann r(1.0);
  for (int i = 0; i < k; ++i) r = r * x;
  return r;
}

GradedMatrix power(const GradedMatrix& m, int k) {
  GradedMatrix r = GradedMatrix::identity(m.space());
  for (int i = 0; i < k; ++i) r = r * m;
  return r;
}

// str(M^k) = sum_n (-1)^{[v_n]} lambda_n^k for an even operator whose body
// eigenvectors have definite parity; with all parities zero this is the
// ordinary power-sum identity.
double power_sum_defect(const GradedMatrix& m, const GrassmannSpectrum& s, int k) {
  Grassmann sum;
  for (std::size_t n = 0; n < s.values.size(); ++n) {
    const Eigen::VectorXcd v = s.vectors.col(static_cast<int>(n));
    int idx = 0;
    v.cwiseAbs().maxCoeff(&idx);
    const double sign = m.space().parity(idx) ? -1.0 : 1.0;
    sum += sign * power(s.values[n], k);
  }
  return max_diff(supertrace(power(m, k)), sum);
}

GradedSpace trivial_space(int d) { return GradedSpace({Parities(d, 0)}); }

}  // namespace

TEST_SUITE("spectra") {

TEST_CASE("two-level example solved from the eigenvector equation") {
  GradedMatrix m(GradedSpace::uniform(1));
  m.set(0, 1, gen(Monomial::Ap));
  m.set(1, 0, gen(Monomial::Bm));
  m.set(1, 1, 1.0);
  const GrassmannSpectrum s = nilpotent_eigenvalues(m);
  REQUIRE(s.values.size() == 2);
  const Grassmann ab = gen(Monomial::Ap) * gen(Monomial::Bm);
  // M (1, -b-) = (1, -b-) (-a+b-) and M (a+, 1) = (a+, 1) (1 - a+b-), exactly.
  CHECK(max_diff(s.values[0], -1.0 * ab) == 0.0);
  CHECK(max_diff(s.values[1], 1.0 - ab) == 0.0);
  const Grassmann v1 = -1.0 * gen(Monomial::Bm);
  CHECK(max_diff(m.at(0, 1) * v1, s.values[0]) == 0.0);
  CHECK(max_diff(m.at(1, 0) + m.at(1, 1) * v1, v1 * s.values[0]) == 0.0);
  const Grassmann x = gen(Monomial::Ap);
  CHECK(max_diff(m.at(0, 1), x * s.values[1]) == 0.0);
  CHECK(max_diff(m.at(1, 0) * x + m.at(1, 1), s.values[1]) == 0.0);
  CHECK(power_sum_defect(m, s, 1) < 1e-15);
}

TEST_CASE("body-only diagonal matrix") {
  Eigen::MatrixXcd d = Eigen::MatrixXcd::Zero(3, 3);
  d.diagonal() << 2.0, -1.0, 0.5;
  const GrassmannSpectrum s = nilpotent_eigenvalues(GradedMatrix::from_body(trivial_space(3), d));
  std::vector<double> got;
  for (const Grassmann& v : s.values) {
    CHECK((v - Grassmann(v.body())).norm() == 0.0);
    got.push_back(v.body().real());
  }
  std::sort(got.begin(), got.end());
  CHECK(got == std::vector<double>{-1.0, 0.5, 2.0});
}

TEST_CASE("power sums for random even-soul matrices") {
  std::mt19937_64 rng(83);
  const GradedSpace s = trivial_space(8);
  for (int t = 0; t < 3; ++t) {
    GradedMatrix m(s);
    for (int i = 0; i < 8; ++i)
      for (int j = 0; j < 8; ++j) m.set(i, j, polaron::testing::random_grassmann(rng, true));
    const GrassmannSpectrum spec = nilpotent_eigenvalues(m);
    Grassmann sum;
    for (const Grassmann& v : spec.values) {
      sum += v;
      CHECK(v.odd_part().norm() == 0.0);
    }
    Grassmann tr;
    for (int i = 0; i < 8; ++i) tr += m.at(i, i);
    CHECK(max_diff(sum, tr) < 1e-12);
    for (int k = 2; k <= 3; ++k) CHECK(power_sum_defect(m, spec, k) < 1e-10);
  }
}

TEST_CASE("supertrace power sums for random even graded operators") {
  std::mt19937_64 rng(89);
  const GradedSpace s = GradedSpace::uniform(3);
  for (int t = 0; t < 3; ++t) {
    const GradedMatrix m = polaron::testing::random_homogeneous(s, 0, rng);
    const GrassmannSpectrum spec = nilpotent_eigenvalues(m);
    for (const Grassmann& v : spec.values) CHECK(v.odd_part().norm() < 1e-13);
    for (int k = 1; k <= 3; ++k) CHECK(power_sum_defect(m, spec, k) < 1e-10);
  }
}

TEST_CASE("degenerate body block") {
  std::mt19937_64 rng(97);
  std::normal_distribution<double> n01;
  const GradedSpace s = trivial_space(4);
  Eigen::MatrixXcd d = Eigen::MatrixXcd::Zero(4, 4);
  d.diagonal() << 1.0, 1.0, 2.0, -0.5;
  const Grassmann g = polaron::testing::generic(1).g();

  // Souls along a single even direction: the block is diagonalizable.
  GradedMatrix m = GradedMatrix::from_body(s, d);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) m.add_to(i, j, cplx(n01(rng), n01(rng)) * g);
  const GrassmannSpectrum spec = nilpotent_eigenvalues(m);
  for (int k = 1; k <= 4; ++k) CHECK(power_sum_defect(m, spec, k) < 1e-10);
  for (const Grassmann& v : spec.values) CHECK(g_part(v, g).off_g < 1e-12);

  // Independent souls in several directions do not commute inside the block.
  GradedMatrix mixed = GradedMatrix::from_body(s, d);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) mixed.add_to(i, j, polaron::testing::random_of_degree(rng, 2));
  try {
    nilpotent_eigenvalues(mixed);
    FAIL("expected IllConditioned");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::IllConditioned);
  }
}

TEST_CASE("basis that does not diagonalize the body is rejected") {
  Eigen::MatrixXcd d = Eigen::MatrixXcd::Zero(2, 2);
  d.diagonal() << 1.0, 2.0;
  Eigen::MatrixXcd basis(2, 2);
  basis << 1.0, 1.0, 1.0, -1.0;
  CHECK_THROWS_AS(nilpotent_eigenvalues_in_basis(GradedMatrix::from_body(trivial_space(2), d), basis),
                  Error);
  CHECK_THROWS_AS(nilpotent_eigenvalues_in_basis(GradedMatrix::from_body(trivial_space(2), d),
                                                 Eigen::MatrixXcd::Zero(2, 2)),
                  Error);
}

TEST_CASE("sector split") {
  const ModelParams p = polaron::testing::diagonal(2);
  const GradedMatrix uz = u_z(2);
  for (double x : {0.1, 0.45, 0.9, 1.7, 2.6}) {
    GrassmannSpectrum s = nilpotent_eigenvalues(transfer({x, 0.05}, p));
    const auto [plus, minus] = sector_split(s, uz);
    CHECK(plus.values.size() == 2);
    CHECK(minus.values.size() == 2);
  }
  GrassmannSpectrum su = nilpotent_eigenvalues(uz);
  const auto [up, um] = sector_split(su, uz);
  for (const Grassmann& v : up.values) CHECK(std::abs(v.body() - 1.0) < 1e-14);
  for (const Grassmann& v : um.values) CHECK(std::abs(v.body() + 1.0) < 1e-14);

  // A basis mixing parities is not a U^z eigenbasis.
  Eigen::MatrixXcd mix = Eigen::MatrixXcd::Identity(4, 4);
  mix(0, 1) = mix(1, 0) = 1.0;
  mix(1, 1) = -1.0;
  GrassmannSpectrum bad =
      nilpotent_eigenvalues_in_basis(GradedMatrix::identity(GradedSpace::uniform(2)), mix);
  CHECK_THROWS_AS(sector_split(bad, uz), Error);
}

TEST_CASE("g decomposition") {
  ModelParams p = polaron::testing::generic(2);
  const Grassmann g = p.g();
  const GPart a = g_part(2.0 + 3.0 * g, g);
  CHECK(std::abs(a.coefficient - 3.0) < 1e-14);
  CHECK(a.off_g < 1e-14);
  const GPart b = g_part(Grassmann(1.0) + gen(Monomial::ApAm), g);
  CHECK(b.off_g > 0.5);
}

TEST_CASE("eigenvalue souls lie along g") {
  const ModelParams p = polaron::testing::generic(2);
  const GrassmannSpectrum s = nilpotent_eigenvalues(transfer({0.3, 0.1}, p));
  for (const Grassmann& v : s.values) {
    CHECK(v.odd_part().norm() < 1e-12);
    CHECK(g_part(v, p.g()).off_g < 1e-10);
  }
}

TEST_CASE("eigencurves") {
  const ModelParams p = polaron::testing::generic(2);
  const std::vector<LevelCurve> curves = transfer_eigencurves(p);
  REQUIRE(curves.size() == 4);
  int plus = 0;
  for (const LevelCurve& c : curves) {
    plus += c.sector > 0;
    const TrigPolynomial& f = c.fourier;
    const int top = 2 * p.N + 4;
    double scale = 0.0;
    for (int k = -top; k <= top; ++k) scale = std::max(scale, f.coefficient(k).norm());
    CAPTURE(scale);
    CHECK(f.max_mode() == top);
    CHECK(f.fit_residual() < 1e-11 * scale);
    CHECK(max_diff(f.evaluate(0.0), Grassmann(transfer_value_at_zero(p))) < 1e-11 * scale);
    CHECK(max_diff(f.evaluate(std::numbers::pi / 2), Grassmann(transfer_value_at_half_pi(p))) <
          1e-11 * scale);
    CHECK(f.odd_mode_norm() < 1e-11 * scale);
    CHECK(f.crossing_residual(p.eta) < 1e-11 * scale);
    for (int j = 0; j < p.N; ++j) {
      const cplx th = p.theta[j];
      const Grassmann prod = f.evaluate(th) * f.evaluate(th - p.eta);
      CHECK(max_diff(prod, Grassmann(lambda_product_target(th, p))) < 1e-11 * scale * scale);
    }
    // Top mode: sector * (constant) * g in the w-normalization.
    const GPart top_mode = g_part(f.coefficient(top), p.g());
    CHECK(top_mode.off_g < 1e-11 * scale);
    CHECK(std::abs(f.coefficient(top).body()) < 1e-11 * scale);
  }
  CHECK(plus == 2);
}

}  // TEST_SUITE
