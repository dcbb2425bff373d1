#include <doctest.h>

#include <cmath>

#include "eacap/capacity.hpp"
#include "eacap/channels.hpp"
#include "eacap/divergences.hpp"
#include "eacap/errors.hpp"
#include "eacap/linalg.hpp"
#include "eacap/random_states.hpp"
#include "eacap/rng.hpp"
#include "oracles.hpp"

using namespace eacap;

namespace {

DensityOperator pi_state(int d) {
  return DensityOperator(cd(1.0 / d, 0.0) * ComplexOperator::identity(d));
}

DensityOperator diag_state(const std::vector<double>& d) {
  ComplexOperator m(int(d.size()), int(d.size()));
  for (size_t i = 0; i < d.size(); ++i) m.at(int(i), int(i)) = d[i];
  m.with_dims({int(d.size())});
  return DensityOperator(std::move(m));
}

std::vector<double> isotropic_spectrum(double p) {
  return {1.0 - 3.0 * p / 4.0, p / 4.0, p / 4.0, p / 4.0};
}

}  // namespace

TEST_CASE("mutual information") {
  CHECK(mutual_info(identity_channel(2), pi_state(2)) == doctest::Approx(2.0).epsilon(1e-9));
  CHECK(mutual_info(depolarizing_channel(2, 1.0), pi_state(2)) ==
        doctest::Approx(0.0).epsilon(1e-9));

  Rng rng(61);
  CHECK(std::abs(mutual_info(depolarizing_channel(2, 1.0), random_density(rng, 2))) < 1e-9);

  // eigenvalue-entropy oracle for the depolarizing family at pi
  const double p = 0.2;
  const double want = 2.0 - oracle::shannon_entropy(isotropic_spectrum(p));
  CHECK(mutual_info(depolarizing_channel(2, p), pi_state(2)) == doctest::Approx(want).epsilon(1e-9));

  // qutrit depolarizing at pi: isotropic spectrum (1-p+p/9, p/9 x 8)
  const double p3 = 0.3;
  std::vector<double> iso3(9, p3 / 9.0);
  iso3[0] = 1.0 - p3 + p3 / 9.0;
  CHECK(mutual_info(depolarizing_channel(3, p3), pi_state(3)) ==
        doctest::Approx(2.0 * std::log2(3.0) - oracle::shannon_entropy(iso3)).epsilon(1e-9));

  // independence of the purification: conjugate the canonical one on A'
  const QuantumChannel ad = amplitude_damping_channel(0.35);
  DensityOperator rho = random_density(rng, 2);
  const double base = mutual_info(ad, rho);
  PureStateVector psi = purify(rho);
  ComplexOperator lift = tensor(ComplexOperator::identity(2), random_unitary(rng, 2));
  PureStateVector rotated(apply_matrix(lift, psi.amplitudes()), psi.dims());
  DensityOperator omega = apply_left(ad, rotated.projector());
  const double alt = rel_entropy(
      omega, DensityOperator(tensor(partial_trace(omega.op(), {0}), partial_trace(omega.op(), {1}))));
  CHECK(base == doctest::Approx(alt).epsilon(1e-9));
}

TEST_CASE("mutual information variance") {
  CHECK(mutual_info_variance(identity_channel(2), pi_state(2)) == doctest::Approx(0.0).epsilon(1e-8));
  CHECK(mutual_info_variance(depolarizing_channel(2, 1.0), pi_state(2)) ==
        doctest::Approx(0.0).epsilon(1e-8));

  const double p = 0.2;
  const std::vector<double> lam = isotropic_spectrum(p);
  const double mi = 2.0 - oracle::shannon_entropy(lam);
  double want = 0.0;
  for (double x : lam) {
    const double z = std::log2(x) + 2.0 - mi;
    want += x * z * z;
  }
  CHECK(mutual_info_variance(depolarizing_channel(2, p), pi_state(2)) ==
        doctest::Approx(want).epsilon(1e-8));
}

TEST_CASE("mutual information concavity") {
  Rng rng(62);
  const QuantumChannel ad = amplitude_damping_channel(0.3);
  for (int trial = 0; trial < 10; ++trial) {
    DensityOperator a = random_density(rng, 2), b = random_density(rng, 2);
    for (double lam : {0.25, 0.5, 0.75}) {
      ComplexOperator mix = a.op();
      mix *= cd(lam, 0.0);
      ComplexOperator rest = b.op();
      rest *= cd(1.0 - lam, 0.0);
      const double lhs = mutual_info(ad, DensityOperator(mix + rest));
      const double rhs = lam * mutual_info(ad, a) + (1.0 - lam) * mutual_info(ad, b);
      CHECK(lhs >= rhs - 1e-8);
    }
  }
}

TEST_CASE("capacity optimization") {
  CapacityOptions opts;
  opts.restarts = 8;

  CapacityResult ident = optimize_capacity(identity_channel(2), opts);
  CHECK(ident.c_ea == doctest::Approx(2.0).epsilon(1e-7));
  CHECK(ident.converged);
  REQUIRE(!ident.maximizers.empty());
  CHECK(trace_distance(ident.maximizers.front(), pi_state(2)) < 1e-5);
  CHECK(ident.v_min == doctest::Approx(0.0).epsilon(1e-7));
  CHECK(ident.v_max == doctest::Approx(0.0).epsilon(1e-7));

  CapacityResult dead = optimize_capacity(depolarizing_channel(2, 1.0), opts);
  CHECK(dead.c_ea == doctest::Approx(0.0).epsilon(1e-8));

  CapacityResult dep = optimize_capacity(depolarizing_channel(2, 0.2), opts);
  const double want = 2.0 - oracle::shannon_entropy(isotropic_spectrum(0.2));
  CHECK(dep.c_ea == doctest::Approx(want).epsilon(1e-6));
  CHECK(trace_distance(dep.maximizers.front(), pi_state(2)) < 1e-5);

  // grid cross-check over diagonal inputs (covariance reduces to the spectrum)
  const QuantumChannel ch = depolarizing_channel(2, 0.2);
  double grid_best = 0.0;
  for (int k = 1; k < 1000; ++k) {
    const double a = k / 1000.0;
    grid_best = std::max(grid_best, mutual_info(ch, diag_state({a, 1.0 - a})));
  }
  CHECK(dep.c_ea >= grid_best - 1e-6);

  // amplitude damping: optimizer beats the diagonal grid as well
  const QuantumChannel ad = amplitude_damping_channel(0.3);
  CapacityResult adres = optimize_capacity(ad, opts);
  double ad_grid = 0.0;
  for (int k = 1; k < 1000; ++k) {
    const double a = k / 1000.0;
    ad_grid = std::max(ad_grid, mutual_info(ad, diag_state({a, 1.0 - a})));
  }
  CHECK(adres.c_ea >= ad_grid - 1e-6);
  CHECK(adres.c_ea <= ad_grid + 1e-4);

  CHECK_THROWS_AS(optimize_capacity(tensor_power(identity_channel(2), 4), opts), ResourceCapError);

  // qutrit depolarizing: the covariance argument pins the optimum at pi
  const double p3 = 0.3;
  std::vector<double> iso3(9, p3 / 9.0);
  iso3[0] = 1.0 - p3 + p3 / 9.0;
  CapacityResult qtr = optimize_capacity(depolarizing_channel(3, p3), {.restarts = 4});
  CHECK(qtr.c_ea ==
        doctest::Approx(2.0 * std::log2(3.0) - oracle::shannon_entropy(iso3)).epsilon(1e-6));
  CHECK(trace_distance(qtr.maximizers.front(), pi_state(3)) < 1e-4);
}

TEST_CASE("mutual information additivity") {
  Rng rng(63);
  const QuantumChannel ad = amplitude_damping_channel(0.3);
  const QuantumChannel ad2 = tensor_power(ad, 2);
  DensityOperator rho = random_density(rng, 2);
  DensityOperator rho2(tensor(rho.op(), rho.op()));
  CHECK(mutual_info(ad2, rho2) == doctest::Approx(2.0 * mutual_info(ad, rho)).epsilon(1e-8));
}

TEST_CASE("isometry channel reaches two bits per qubit") {
  // embed a qubit into a qutrit: noiseless, so C_ea = 2
  ComplexOperator v(3, 2);
  v.at(0, 0) = 1.0;
  v.at(2, 1) = 1.0;
  QuantumChannel embed({v}, false, "embed");
  CHECK(validate(embed).pass);
  CHECK(mutual_info(embed, pi_state(2)) == doctest::Approx(2.0).epsilon(1e-9));
  CapacityResult res = optimize_capacity(embed, {.restarts = 6});
  CHECK(res.c_ea == doctest::Approx(2.0).epsilon(1e-6));
}

TEST_CASE("gaussian rate") {
  CapacityResult ident = optimize_capacity(identity_channel(2), {.restarts = 4});
  for (double eps : {0.1, 0.5, 0.9})
    CHECK(gaussian_rate(ident, 10, eps) == doctest::Approx(20.0).epsilon(1e-6));

  CapacityResult dep = optimize_capacity(depolarizing_channel(2, 0.2), {.restarts = 4});
  CHECK(gaussian_rate(dep, 100, 0.5) == doctest::Approx(100.0 * dep.c_ea).epsilon(1e-9));
  CHECK(gaussian_rate(dep, 100, 0.05) ==
        doctest::Approx(100.0 * dep.c_ea +
                        std::sqrt(100.0 * dep.v_min) * normal_quantile(0.05))
            .epsilon(1e-9));
  // nondecreasing in eps
  double prev = -1e300;
  for (double eps : {0.05, 0.2, 0.4, 0.5, 0.6, 0.8, 0.95}) {
    const double g = gaussian_rate(dep, 50, eps);
    CHECK(g >= prev - 1e-9);
    prev = g;
  }
}

TEST_CASE("product hypothesis testing") {
  // commuting path against an independent binomial-enumeration oracle
  const double pe = 0.85, qe = 0.5, eps = 0.35;
  const int n = 64;
  std::vector<ClassicalAtom> atoms = {{pe, qe, 1.0}, {1.0 - pe, 1.0 - qe, 1.0}};
  HypothesisTest got = product_hypothesis_dh_classical(atoms, n, eps);

  struct Atom {
    double lp, lq;
  };
  std::vector<Atom> expanded;
  for (int k = 0; k <= n; ++k) {
    const double lc = std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
    expanded.push_back({lc / std::log(2.0) + k * std::log2(pe) + (n - k) * std::log2(1.0 - pe),
                        lc / std::log(2.0) + k * std::log2(qe) + (n - k) * std::log2(1.0 - qe)});
  }
  std::sort(expanded.begin(), expanded.end(),
            [](const Atom& a, const Atom& b) { return a.lp - a.lq > b.lp - b.lq; });
  double need = 1.0 - eps, beta = 0.0;
  for (const Atom& a : expanded) {
    const double pm = std::exp2(a.lp), qm = std::exp2(a.lq);
    if (pm < need) {
      beta += qm;
      need -= pm;
    } else {
      beta += (need / pm) * qm;
      break;
    }
  }
  CHECK(got.dh == doctest::Approx(-std::log2(beta)).epsilon(1e-10));

  // the quantum tensor path agrees with the classical one on a commuting pair
  DensityOperator rho = diag_state({0.85, 0.15});
  DensityOperator sig = diag_state({0.5, 0.5});
  HypothesisTest via_tensor = product_hypothesis_dh(rho.op(), sig.op(), 3, 0.25, {.type_cap = 2});
  HypothesisTest via_types = product_hypothesis_dh(rho.op(), sig.op(), 3, 0.25);
  CHECK(via_tensor.dh == doctest::Approx(via_types.dh).epsilon(1e-8));

  Rng ra(5), rb(6);
  DensityOperator big_rho = random_density(ra, 2), big_sig = random_density(rb, 2);
  CHECK_THROWS_AS(product_hypothesis_dh(big_rho.op(), big_sig.op(), 99, 0.5,
                                        {.type_cap = 1, .quantum_dim_cap = 8}),
                  ResourceCapError);
}

TEST_CASE("achievable bound") {
  const QuantumChannel id2 = identity_channel(2);
  const PureStateVector phi = max_entangled(2);

  // closed form through the pure-vs-product pair: beta = (1 - eps') / 4^n
  const int n = 25;
  const double eps = 0.9;
  const double eps_eff = eps - 3.0 / std::sqrt(double(n));
  const double dh = 2.0 * n - std::log2(1.0 - eps_eff);
  const double penalty = std::log2((1.0 - eps) * n) + 5.0 * std::log2(n + 1.0);
  const double got = achievable_bound_exact(id2, phi, n, eps);
  CHECK(got == doctest::Approx(dh - penalty).epsilon(1e-7));
  CHECK(got < 2.0 * n);

  CHECK_THROWS_AS(achievable_bound_exact(id2, phi, 9, 0.9), InfeasibleError);

  // commuting fast path for dephasing at n = 64 against the type oracle
  const double p = 0.3;
  const QuantumChannel deph = dephasing_channel(p);
  const int n2 = 64;
  const double eps2 = 0.6;
  const double eps2_eff = eps2 - 3.0 / std::sqrt(double(n2));
  std::vector<ClassicalAtom> atoms = {{1.0 - p, 0.25, 1.0}, {p, 0.25, 1.0}, {0.0, 0.25, 2.0}};
  const double dh2 = product_hypothesis_dh_classical(atoms, n2, eps2_eff).dh;
  const double penalty2 = std::log2((1.0 - eps2) * n2) + 5.0 * std::log2(n2 + 1.0);
  CHECK(achievable_bound_exact(deph, phi, n2, eps2) ==
        doctest::Approx(dh2 - penalty2).epsilon(1e-6));
}

TEST_CASE("covariant converse") {
  for (double eps : {0.1, 0.5, 0.9}) {
    CHECK(covariant_converse(identity_channel(2), 1, eps) ==
          doctest::Approx(2.0 - std::log2(1.0 - eps)).epsilon(1e-8));
    CHECK(covariant_converse(depolarizing_channel(2, 1.0), 1, eps) ==
          doctest::Approx(-std::log2(1.0 - eps)).epsilon(1e-8));
  }

  // n = 1 reduces to the direct quantum solver, for qubits and qutrits
  for (const QuantumChannel& ch : {depolarizing_channel(2, 0.2), depolarizing_channel(3, 0.35)}) {
    const int d = ch.d_in();
    DensityOperator omega = apply_left(ch, max_entangled(d).projector());
    DensityOperator pi = pi_state(d);
    ComplexOperator tau = tensor(apply(ch, pi).op(), pi.op());
    const double direct = hypothesis_dh(omega, tau, 0.25, {.force_quantum = true}).dh;
    CHECK(covariant_converse(ch, 1, 0.25) == doctest::Approx(direct).epsilon(1e-8));
  }
  CHECK_THROWS_AS(covariant_converse(amplitude_damping_channel(0.3), 1, 0.5),
                  std::invalid_argument);

  // converse dominates the achievable bound where both are defined
  const QuantumChannel dep = depolarizing_channel(2, 0.2);
  const PureStateVector phi = max_entangled(2);
  for (int n : {12, 16}) {
    const double eps = 0.9;
    CHECK(achievable_bound_exact(dep, phi, n, eps) <=
          covariant_converse(dep, n, eps) + 1e-6);
  }

  // a Pauli channel runs through the same classical product path
  const QuantumChannel pauli = qubit_pauli_channel(0.05, 0.1, 0.15);
  CapacityResult pres = optimize_capacity(pauli, {.restarts = 6});
  for (int n : {1, 4}) {
    const double conv = covariant_converse(pauli, n, 0.25);
    CHECK(conv >= gaussian_rate(pres, n, 0.25) - 10.0 * std::log2(n + 1.0));
  }

  // deep blocklengths stay affordable through type compression
  CapacityResult dres = optimize_capacity(dep, {.restarts = 6});
  for (int n : {256, 1024}) {
    const double conv = covariant_converse(dep, n, 0.5);
    CHECK(std::abs(conv - gaussian_rate(dres, n, 0.5)) <= 10.0 * std::log2(n + 1.0));
    // sandwich against the rigorous lower bound at eps = 0.5
    CHECK(achievable_bound_exact(dep, phi, n, 0.5) <= conv + 1e-6);
  }
}

TEST_CASE("dispersion table") {
  CapacityResult ident = optimize_capacity(identity_channel(2), {.restarts = 4});
  std::vector<RateBound> rows = dispersion_table(identity_channel(2), ident, 0.5, {4, 1, 2});
  REQUIRE(rows.size() == 3);
  CHECK(rows[0].n == 1);
  CHECK(rows[0].gaussian_bits == doctest::Approx(2.0).epsilon(1e-7));
  CHECK(rows[1].gaussian_bits == doctest::Approx(4.0).epsilon(1e-7));
  CHECK(rows[2].gaussian_bits == doctest::Approx(8.0).epsilon(1e-7));
  for (const RateBound& row : rows) {
    CHECK(!row.lower_bits.has_value());  // eps <= 3/sqrt(n) at these n
    REQUIRE(row.upper_bits.has_value());
    CHECK(*row.upper_bits == doctest::Approx(2.0 * row.n + 1.0).epsilon(1e-7));
  }

  CapacityResult dead = optimize_capacity(depolarizing_channel(2, 1.0), {.restarts = 4});
  std::vector<RateBound> zero = dispersion_table(depolarizing_channel(2, 1.0), dead, 0.5, {1, 2});
  for (const RateBound& row : zero) CHECK(std::abs(row.gaussian_bits) < 1e-7);
}

TEST_CASE("second-order convergence of the classical product path") {
  // |D_H^eps(rho^n || sigma^n) - nD - sqrt(nV) Phi^{-1}(eps)| = O(log n)
  const std::vector<double> p = {0.11, 0.89}, q = {0.5, 0.5};
  const double d = oracle::classical_kl(p, q);
  const double v = oracle::classical_kl_variance(p, q);
  std::vector<ClassicalAtom> atoms = {{p[0], q[0], 1.0}, {p[1], q[1], 1.0}};
  for (double eps : {0.1, 0.9}) {
    double prev_ratio = 1e300;
    for (int k = 3; k <= 10; ++k) {
      const int n = 1 << k;
      const double dh = product_hypothesis_dh_classical(atoms, n, eps).dh;
      const double resid = std::abs(dh - second_order_value(d, v, n, eps));
      CHECK(resid <= 4.0 * std::log2(n + 1.0));
      if (k >= 8) {
        const double ratio = resid / std::sqrt(double(n));
        CHECK(ratio < prev_ratio + 1e-12);
        prev_ratio = ratio;
      }
    }
  }
}
