#include "polaron/verify.hpp"

#include <algorithm>
#include <cmath>

#include "polaron/error.hpp"
#include "polaron/transfer.hpp"

namespace polaron {

namespace {

const double kPi = std::acos(-1.0);

Check make(std::string name, std::string identity, double tol) {
  Check c;
  c.name = std::move(name);
  c.identity = std::move(identity);
  c.tolerance = tol;
  return c;
}

Check& finish(Check& c) {
  c.passed = std::isfinite(c.residual) && c.residual < c.tolerance;
  return c;
}

// Accumulates a matrix deviation into the check, tracking per-monomial maxima.
void absorb(Check& c, const GradedMatrix& diff) {
  const Residual r = residual_of(diff);
  if (!c.components) c.components.emplace();
  for (int m = 0; m < kMonomials; ++m)
    (*c.components)[m] = std::max((*c.components)[m], r.component[m]);
  c.residual = std::max(c.residual, r.max());
}

void absorb(Check& c, const Residual& r) {
  if (!c.components) c.components.emplace();
  for (int m = 0; m < kMonomials; ++m)
    (*c.components)[m] = std::max((*c.components)[m], r.component[m]);
  c.residual = std::max(c.residual, r.max());
}

template <class F>
Check sampled(std::string name, std::string identity, std::mt19937_64& rng, int count, double tol,
              F&& residual) {
  Check c = make(std::move(name), std::move(identity), tol);
  for (int k = 0; k < count; ++k) c.residual = std::max(c.residual, residual(random_point(rng)));
  c.samples = count;
  return finish(c);
}

GradedMatrix identity_like(const GradedMatrix& m) { return GradedMatrix::identity(m.space()); }

}  // namespace

cplx random_point(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> re(-1.5, 1.5), im(-0.5, 0.5);
  const double x = re(rng);
  return {x, im(rng)};
}

Check check_r_initial(const ModelParams& p, double tol) {
  Check c = make("r_initial", "R12(0) = P12", tol);
  c.residual = r_initial_residual(p);
  c.samples = 1;
  return finish(c);
}

Check check_r_unitarity(const ModelParams& p, std::mt19937_64& rng, int count, double tol) {
  return sampled("r_unitarity",
                 "R12(u) R21(-u) = xi(u) id, xi(u) = -sin(u-eta) sin(u+eta) / sin^2(eta)", rng,
                 count, tol, [&](cplx u) { return r_unitarity_residual(u, p); });
}

Check check_r_p_symmetry(const ModelParams& p, std::mt19937_64& rng, int count, double tol) {
  return sampled("r_p_symmetry", "R21(u) = P12 R12(u) P12 = R12(u)", rng, count, tol,
                 [&](cplx u) { return r_p_symmetry_residual(u, p); });
}

Check check_r_t_symmetry(const ModelParams& p, Transpose variant, std::mt19937_64& rng, int count,
                         double tol) {
  const bool st = variant == Transpose::St;
  return sampled(st ? "r_t_symmetry_st" : "r_t_symmetry_ist",
                 st ? "R12^{st1 st2}(u) = R21(u)" : "R12^{ist1 ist2}(u) = R21(u)", rng, count, tol,
                 [&](cplx u) { return r_t_symmetry_residual(u, p, variant); });
}

Check check_r_crossing(const ModelParams& p, std::mt19937_64& rng, int count, double tol) {
  return sampled("r_crossing", "R21^{st2}(-u-2 eta) R21^{st1}(u) = xi(u+eta) id", rng, count, tol,
                 [&](cplx u) { return r_crossing_residual(u, p); });
}

Check check_r_antisymmetry(const ModelParams& p, double tol) {
  Check c = make("r_antisymmetry", "R12(-eta) = -2 P^(-), P^(-) the antisymmetric projector", tol);
  c.residual = r_antisymmetry_residual(p);
  c.samples = 1;
  return finish(c);
}

Check check_r_periodicity(const ModelParams& p, std::mt19937_64& rng, int count, double tol) {
  return sampled("r_periodicity",
                 "R12(u+pi) = -sigma^z_1 R12(u) sigma^z_1 = -sigma^z_2 R12(u) sigma^z_2", rng,
                 count, tol, [&](cplx u) { return r_periodicity_residual(u, p); });
}

Check check_k_periodicity(const ModelParams& p, std::mt19937_64& rng, int count, double tol) {
  return sampled("k_periodicity", "K^{+/-}(u+pi) = -sigma^z K^{+/-}(u) sigma^z", rng, count, tol,
                 [&](cplx u) { return k_periodicity_residual(u, p); });
}

Check check_ybe_suite(const ModelParams& p, std::mt19937_64& rng, int count, double tol) {
  Check c = make("yang_baxter", "R12(u-v) R13(u) R23(v) = R23(v) R13(u) R12(u-v)", tol);
  for (int k = 0; k < count; ++k) {
    const cplx u = random_point(rng), v = random_point(rng);
    c.residual = std::max(c.residual, check_ybe(u, v, p));
  }
  c.samples = count;
  return finish(c);
}

Check check_reflection(const ModelParams& p, std::mt19937_64& rng, int count, double tol) {
  Check c = make("reflection",
                 "R12(u-v) K1-(u) R21(u+v) K2-(v) = K2-(v) R12(u+v) K1-(u) R21(u-v)", tol);
  for (int k = 0; k < count; ++k) {
    const cplx u = random_point(rng), v = random_point(rng);
    absorb(c, reflection_residual(u, v, p));
  }
  c.samples = count;
  return finish(c);
}

Check check_dual_reflection(const ModelParams& p, std::mt19937_64& rng, int count, double tol) {
  Check c = make("dual_reflection",
                 "R12(v-u) K1+(u) R~~21(-u-v) K2+(v) = K2+(v) R~12(-u-v) K1+(u) R21(v-u)", tol);
  for (int k = 0; k < count; ++k) {
    const cplx u = random_point(rng), v = random_point(rng);
    absorb(c, dual_reflection_residual(u, v, p));
  }
  c.samples = count;
  return finish(c);
}

Check check_commutativity(const ModelParams& p, std::mt19937_64& rng, int count, double tol) {
  Check c = make("transfer_commutativity", "[t(u), t(v)] = 0", tol);
  for (int k = 0; k < count; ++k) {
    const cplx u = random_point(rng), v = random_point(rng);
    absorb(c, transfer_commutator_residual(u, v, p));
  }
  c.samples = count;
  return finish(c);
}

Check check_transfer_crossing(const ModelParams& p, std::mt19937_64& rng, int count, double tol) {
  Check c = make("transfer_crossing", "t(-u-eta) = t(u)", tol);
  for (int k = 0; k < count; ++k) {
    const cplx u = random_point(rng);
    absorb(c, transfer(-u - p.eta, p) - transfer(u, p));
  }
  c.samples = count;
  return finish(c);
}

Check check_transfer_periodicity(const ModelParams& p, std::mt19937_64& rng, int count,
                                 double tol) {
  Check c = make("transfer_periodicity", "t(u+pi) = t(u)", tol);
  for (int k = 0; k < count; ++k) {
    const cplx u = random_point(rng);
    absorb(c, transfer(u + kPi, p) - transfer(u, p));
  }
  c.samples = count;
  return finish(c);
}

Check check_transfer_at_zero(const ModelParams& p, double tol) {
  Check c = make("transfer_at_zero",
                 "t(0) = prod_l sin(eta-theta_l) sin(eta+theta_l) / sin^2(eta) id", tol);
  const GradedMatrix t = transfer(0.0, p);
  absorb(c, t - transfer_value_at_zero(p) * identity_like(t));
  c.samples = 1;
  return finish(c);
}

Check check_transfer_at_half_pi(const ModelParams& p, double tol) {
  Check c = make("transfer_at_half_pi",
                 "t(pi/2) = cot(psi_-) cot(psi_+) prod_l sin(pi/2-theta_l+eta) "
                 "sin(pi/2+theta_l+eta) / sin^2(eta) id",
                 tol);
  const GradedMatrix t = transfer(kPi / 2.0, p);
  absorb(c, t - transfer_value_at_half_pi(p) * identity_like(t));
  c.samples = 1;
  return finish(c);
}

Check check_operator_product(const ModelParams& p, double tol) {
  Check c = make("operator_product",
                 "t(theta_j) t(theta_j-eta) = -delta(theta_j) / xi(2 theta_j) id", tol);
  for (int j = 0; j < p.N; ++j) {
    const cplx th = p.theta_at(j);
    GradedMatrix prod = transfer(th, p) * transfer(th - p.eta, p);
    prod += (quantum_determinant(th, p) / xi(2.0 * th, p)) * identity_like(prod);
    absorb(c, prod);
  }
  c.samples = p.N;
  if (p.homogeneous()) c.note = "homogeneous chain: all theta_j coincide";
  return finish(c);
}

Check check_asymptotic_mode(const ModelParams& p, double tol) {
  Check c = make("asymptotic_mode",
                 "mode e^{i(2N+4)u} of t(u) = omega_+ omega_- g e^{i(N+2)eta} / "
                 "((2i)^{2N+2} sin^{2N}(eta)) U^z",
                 tol);
  const int k = 2 * p.N + 4;
  const int points = 2 * k + 8;
  const GradedMatrix mode = transfer_fourier_mode(p, k, points);
  const GradedMatrix pred = asymptotic_coefficient(p) * u_z(p.N);
  const double scale = pred.norm();
  c.residual = (mode - pred).norm() / (scale > 0.0 ? scale : 1.0);
  c.samples = points;
  c.note = scale > 0.0 ? "relative to the predicted mode" : "g = 0: absolute";
  return finish(c);
}

Check check_uz_square(const ModelParams& p) {
  Check c = make("uz_square", "(U^z)^2 = id, U^z = prod_j sigma^z_j", 0.0);
  const GradedMatrix uz = u_z(p.N);
  c.residual = (uz * uz - identity_like(uz)).norm();
  c.samples = 1;
  c.passed = c.residual == 0.0;
  c.note = "exact";
  return c;
}

Check check_uz_automorphism(const ModelParams& p, std::mt19937_64& rng, int count, double tol) {
  Check c = make("uz_automorphism",
                 "U^z t(u) U^z = t(u) with the odd generators negated", tol);
  const GradedMatrix uz = u_z(p.N);
  for (int k = 0; k < count; ++k) {
    const GradedMatrix t = transfer(random_point(rng), p);
    absorb(c, uz * t * uz - t.parity_flip());
  }
  c.samples = count;
  return finish(c);
}

Check check_uz_even_commutation(const ModelParams& p, std::mt19937_64& rng, int count, double tol) {
  Check c = make("uz_even_commutation", "[U^z, even part of t(u)] = 0", tol);
  const GradedMatrix uz = u_z(p.N);
  for (int k = 0; k < count; ++k) {
    const GradedMatrix t = transfer(random_point(rng), p);
    const GradedMatrix even = t.grade(0) + t.grade(2);
    absorb(c, commutator(uz, even));
  }
  c.samples = count;
  return finish(c);
}

Check check_hamiltonian(const ModelParams& p, double fd_step, double tol) {
  Check c = make("hamiltonian", "1/2 t'(0) + 1/2 tan(eta) id = H at theta = 0", tol);
  const ModelParams q = p.with_zero_theta();
  absorb(c, hamiltonian_from_transfer(q, fd_step) - hamiltonian_explicit(q));
  c.samples = 1;
  if (!p.homogeneous()) c.note = "evaluated on the homogeneous chain";
  return finish(c);
}

std::vector<Check> verify_suite(const RunConfig& config) {
  const ModelParams& p = config.model;
  p.validate();
  std::mt19937_64 rng(config.seed);
  const int n = config.samples;
  const auto tol = [&](double fallback) {
    return config.tol_identity > 0.0 ? config.tol_identity : fallback;
  };
  std::vector<Check> out;
  out.push_back(check_r_initial(p, tol(1e-12)));
  out.push_back(check_r_unitarity(p, rng, n, tol(1e-12)));
  out.push_back(check_r_p_symmetry(p, rng, n, tol(1e-12)));
  out.push_back(check_r_t_symmetry(p, Transpose::St, rng, n, tol(1e-12)));
  out.push_back(check_r_t_symmetry(p, Transpose::Ist, rng, n, tol(1e-12)));
  out.push_back(check_r_crossing(p, rng, n, tol(1e-12)));
  out.push_back(check_r_antisymmetry(p, tol(1e-12)));
  out.push_back(check_r_periodicity(p, rng, n, tol(1e-12)));
  out.push_back(check_k_periodicity(p, rng, n, tol(1e-12)));
  out.push_back(check_ybe_suite(p, rng, n, tol(1e-12)));
  out.push_back(check_reflection(p, rng, n, tol(1e-12)));
  out.push_back(check_dual_reflection(p, rng, n, tol(1e-12)));
  const int chain_samples = std::max(1, n / 4);
  out.push_back(check_commutativity(p, rng, chain_samples, tol(1e-11)));
  out.push_back(check_transfer_crossing(p, rng, chain_samples, tol(1e-11)));
  out.push_back(check_transfer_periodicity(p, rng, chain_samples, tol(1e-11)));
  out.push_back(check_transfer_at_zero(p, tol(1e-11)));
  out.push_back(check_transfer_at_half_pi(p, tol(1e-11)));
  out.push_back(check_operator_product(p, tol(1e-10)));
  out.push_back(check_asymptotic_mode(p, tol(1e-8)));
  out.push_back(check_uz_square(p));
  out.push_back(check_uz_automorphism(p, rng, chain_samples, tol(1e-12)));
  out.push_back(check_uz_even_commutation(p, rng, chain_samples, tol(1e-12)));
  out.push_back(check_hamiltonian(p, config.fd_step, tol(1e-8)));
  return out;
}

}  // namespace polaron
