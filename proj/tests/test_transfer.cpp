#include <cmath>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "polaron/transfer.hpp"
#include "support.hpp"

using namespace polaron;
using polaron::testing::max_diff;

namespace {

constexpr double kPi = std::numbers::pi;

Eigen::MatrixXcd kron(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  Eigen::MatrixXcd k(a.rows() * b.rows(), a.cols() * b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j)
      k.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return k;
}

// Two-site Hamiltonian written out with explicit 4x4 matrices:
// c1 = |1><2| (x) sigma^z, c2 = 1 (x) |1><2|.
GradedMatrix manual_hamiltonian_two_sites(const ModelParams& p) {
  Eigen::Matrix2cd lower = Eigen::Matrix2cd::Zero(), sz = Eigen::Matrix2cd::Zero();
  lower(0, 1) = 1.0;
  sz(0, 0) = 1.0;
  sz(1, 1) = -1.0;
  const Eigen::Matrix2cd one = Eigen::Matrix2cd::Identity();
  const Eigen::MatrixXcd c1 = kron(lower, sz), c2 = kron(one, lower);
  const Eigen::MatrixXcd d1 = c1.adjoint(), d2 = c2.adjoint();
  const Eigen::MatrixXcd n1 = d1 * c1, n2 = d2 * c2;
  const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(4, 4);
  const cplx se = std::sin(p.eta), ce = std::cos(p.eta);
  Eigen::MatrixXcd h = (ce / se) * ((id - n2) * (id - n1) + n2 * n1) + (1.0 / se) * (d1 * c2 + d2 * c1);
  h += 0.5 * std::cos(p.psi_minus) / std::sin(p.psi_minus) * (id - 2.0 * n1);
  h += p.kappa_plus() * (id - n2) - p.kappa_minus() * n2;
  GradedMatrix out = GradedMatrix::from_body(GradedSpace::uniform(2), h);
  const cplx cm = 1.0 / std::sin(p.psi_minus), cp = 1.0 / std::sin(p.psi_plus);
  out.component(static_cast<int>(Monomial::Am)) = cm * p.a_minus * c1;
  out.component(static_cast<int>(Monomial::Bm)) = cm * p.b_minus * d1;
  out.component(static_cast<int>(Monomial::Ap)) = cp * p.a_plus * c2;
  out.component(static_cast<int>(Monomial::Bp)) = cp * p.b_plus * d2;
  return out;
}

GradedMatrix anticommutator(const GradedMatrix& a, const GradedMatrix& b) { return a * b + b * a; }

}  // namespace

TEST_SUITE("transfer") {

TEST_CASE("single-site monodromy is the R-matrix") {
  ModelParams p = polaron::testing::generic(1);
  p.theta = {0.0};
  const cplx u{0.23, -0.11};
  CHECK(max_diff(monodromy(u, p), r_matrix(u, p)) < 1e-15);
  p.theta = {0.3};
  CHECK(max_diff(monodromy(u, p), r_matrix(u - 0.3, p)) < 1e-15);
  CHECK(max_diff(hat_monodromy(u, p), r_matrix(u + 0.3, p)) < 1e-15);
}

TEST_CASE("RTT relation") {
  const ModelParams p = polaron::testing::generic(2);
  const GradedSpace s = GradedSpace::uniform(4);
  const cplx u{0.31, 0.07}, v{-0.44, -0.12};
  const GradedMatrix ta = monodromy_in(u, p, s, 0, 2);
  const GradedMatrix tb = monodromy_in(v, p, s, 1, 2);
  const std::vector<int> legs{0, 1};
  const SparseGradedMatrix rab = embed(r_matrix(u - v, p), legs, s);
  CHECK(max_diff(rab * (ta * tb), (tb * ta) * rab) < 1e-12);
}

TEST_CASE("transfer matrices commute") {
  for (int n : {2, 3}) {
    const ModelParams p = polaron::testing::generic(n);
    std::mt19937_64 rng(73);
    std::uniform_real_distribution<double> d(-1.5, 1.5);
    for (int t = 0; t < 3; ++t) {
      const cplx u{d(rng), d(rng) / 3.0}, v{d(rng), d(rng) / 3.0};
      CHECK(transfer_commutator_residual(u, v, p).max() < 1e-11);
      // Double-precision evaluation agrees up to roundoff of |t|^2.
      const double scale = transfer(u, p).norm() * transfer(v, p).norm();
      CHECK(commutator(transfer(u, p), transfer(v, p)).norm() < 1e-14 * scale);
    }
  }
}

TEST_CASE("extended-precision transfer matches the double evaluation") {
  for (int n : {1, 2, 3}) {
    const ModelParams p = polaron::testing::generic(n);
    const cplx u{0.61, -0.27};
    const GradedMatrix t = transfer(u, p);
    CHECK(max_diff(transfer_extended(u, p), t) < 1e-14 * t.norm());
  }
  // Negative control: a corrupted R-matrix breaks commutativity.
  ModelParams bad = polaron::testing::generic(2);
  bad.corrupt_r = true;
  CHECK(transfer_commutator_residual({0.3, 0.1}, {-0.8, 0.2}, bad).max() > 1e-3);
}

TEST_CASE("crossing and periodicity of t(u)") {
  const ModelParams p = polaron::testing::generic(2);
  const cplx u{0.52, -0.18};
  const GradedMatrix t = transfer(u, p);
  CHECK(max_diff(transfer(-u - p.eta, p), t) < 1e-11);
  CHECK(max_diff(transfer(u + kPi, p), t) < 1e-11);
}

TEST_CASE("special values of t(u)") {
  for (int n : {1, 2, 3}) {
    const ModelParams p = polaron::testing::generic(n);
    const GradedMatrix id = GradedMatrix::identity(GradedSpace::uniform(n));
    CHECK(max_diff(transfer(0.0, p), transfer_value_at_zero(p) * id) < 1e-11);
    CHECK(max_diff(transfer(kPi / 2, p), transfer_value_at_half_pi(p) * id) < 1e-11);
  }
  // Homogeneous chain: t(0) = 1.
  const ModelParams h = polaron::testing::homogeneous(2);
  CHECK(std::abs(transfer_value_at_zero(h) - 1.0) < 1e-15);
}

TEST_CASE("quantum determinant is even and vanishes where expected") {
  const ModelParams p = polaron::testing::generic(3);
  for (double x : {0.1, 0.7, -1.2}) {
    const cplx u{x, 0.2 * x};
    const cplx d = quantum_determinant(u, p);
    CHECK(std::abs(d - quantum_determinant(-u, p)) < 1e-13 * std::abs(d));
  }
  CHECK(std::abs(quantum_determinant(p.psi_plus, p)) < 1e-14);
  CHECK(std::abs(quantum_determinant(p.theta[1] + p.eta, p)) < 1e-14);
}

TEST_CASE("operator product identity") {
  for (int n : {2, 3}) {
    const ModelParams p = polaron::testing::generic(n);
    const GradedMatrix id = GradedMatrix::identity(GradedSpace::uniform(n));
    for (int j = 0; j < n; ++j) {
      const cplx th = p.theta[j];
      const GradedMatrix lhs = transfer(th, p) * transfer(th - p.eta, p) +
                               (quantum_determinant(th, p) / xi(2.0 * th, p)) * id;
      CHECK(lhs.norm() < 1e-10);
    }
    // Negative control: away from the inhomogeneities the product is not scalar.
    const cplx u{0.2, 0.05};
    const GradedMatrix off = transfer(u, p) * transfer(u - p.eta, p) +
                             (quantum_determinant(u, p) / xi(2.0 * u, p)) * id;
    CHECK(off.norm() > 1e-4);
  }
}

TEST_CASE("U^z structure") {
  for (int n : {1, 2, 3}) {
    const GradedMatrix uz = u_z(n);
    CHECK(max_diff(uz * uz, GradedMatrix::identity(GradedSpace::uniform(n))) == 0.0);
  }
  const ModelParams p = polaron::testing::generic(3);
  const GradedMatrix uz = u_z(3);
  const cplx u{0.37, -0.21};
  const GradedMatrix t = transfer(u, p);
  CHECK(max_diff(uz * t * uz, t.parity_flip()) < 1e-12);
  const GradedMatrix even = t.grade(0) + t.grade(2);
  CHECK(commutator(uz, even).norm() < 1e-12);
  // The odd part does not commute when the odd amplitudes are nonzero.
  CHECK(commutator(uz, t).norm() > 1e-6);
}

TEST_CASE("diagonal limit: t(u) is body-only and commutes with U^z") {
  const ModelParams p = polaron::testing::diagonal(2);
  const GradedMatrix t = transfer({0.4, 0.1}, p);
  CHECK(t.is_body_only());
  CHECK(commutator(u_z(2), t).norm() < 1e-12);
}

TEST_CASE("Fourier support of t(u)") {
  const ModelParams p = polaron::testing::generic(2);
  const int top = 2 * p.N + 4;
  const int points = 64;
  double inside = 0.0, outside = 0.0;
  for (int k = -points / 2 + 1; k < points / 2; ++k) {
    const double nrm = transfer_fourier_mode(p, k, points).norm();
    double& bucket = std::abs(k) <= top ? inside : outside;
    bucket = std::max(bucket, nrm);
  }
  CHECK(inside > 1e-3);
  CHECK(outside < 1e-12 * inside);

  // Top mode: c * U^z with the asymptotic coefficient.
  const GradedMatrix mode = transfer_fourier_mode(p, top, points);
  const GradedMatrix expected = asymptotic_coefficient(p) * u_z(p.N);
  CHECK(max_diff(mode, expected) < 1e-8 * expected.norm());
  CHECK(asymptotic_coefficient(p).body() == cplx(0.0));
}

TEST_CASE("fermion operators") {
  const int n = 3;
  const GradedMatrix id = GradedMatrix::identity(GradedSpace::uniform(n));
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j) {
      const GradedMatrix ac = anticommutator(annihilator(i, n), creator(j, n));
      CHECK(max_diff(ac, i == j ? id : GradedMatrix(GradedSpace::uniform(n))) < 1e-15);
      CHECK(anticommutator(annihilator(i, n), annihilator(j, n)).norm() < 1e-15);
      CHECK(anticommutator(creator(i, n), creator(j, n)).norm() < 1e-15);
    }
}

TEST_CASE("Hamiltonian from t'(0)") {
  for (int n : {2, 3, 4}) {
    const ModelParams p = polaron::testing::homogeneous(n);
    const GradedMatrix h = hamiltonian_explicit(p);
    const GradedMatrix ht = hamiltonian_from_transfer(p);
    CAPTURE(n);
    CHECK(max_diff(h, ht) < 1e-8);
    const Residual r = residual_of(h - ht);
    for (int m = 0; m < kMonomials; ++m) CHECK(r.component[m] < 1e-8);
  }
}

TEST_CASE("Hamiltonian: hand-assembled two-site operator") {
  const ModelParams p = polaron::testing::homogeneous(2);
  CHECK(max_diff(hamiltonian_explicit(p), manual_hamiltonian_two_sites(p)) < 1e-14);
  ModelParams q = p;
  q.eta = kPi / 4;
  CHECK(max_diff(hamiltonian_explicit(q), manual_hamiltonian_two_sites(q)) < 1e-14);
}

TEST_CASE("Hamiltonian: finite-difference step refinement is stable") {
  const ModelParams p = polaron::testing::homogeneous(2);
  const GradedMatrix a = hamiltonian_from_transfer(p, 2e-3);
  const GradedMatrix b = hamiltonian_from_transfer(p, 1e-3);
  CHECK(max_diff(a, b) < 1e-9);
}

TEST_CASE("Hamiltonian: diagonal limit has no odd part and is symmetric for real parameters") {
  ModelParams p = polaron::testing::diagonal(3);
  const GradedMatrix h = hamiltonian_explicit(p);
  CHECK(h.is_body_only());
  p.eta = 0.37;
  p.psi_minus = 0.4;
  p.psi_plus = -0.7;
  const Eigen::MatrixXcd b = hamiltonian_explicit(p).body();
  CHECK(b.imag().cwiseAbs().maxCoeff() < 1e-15);
  CHECK((b - b.transpose()).cwiseAbs().maxCoeff() < 1e-15);
}

}  // TEST_SUITE
