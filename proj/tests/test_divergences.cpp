#include <doctest.h>

#include <cmath>

#include "eacap/divergences.hpp"
#include "eacap/errors.hpp"
#include "eacap/linalg.hpp"
#include "eacap/random_states.hpp"
#include "eacap/rng.hpp"
#include "oracles.hpp"

using namespace eacap;

namespace {

DensityOperator diag_state(const std::vector<double>& d) {
  ComplexOperator m(int(d.size()), int(d.size()));
  for (size_t i = 0; i < d.size(); ++i) m.at(int(i), int(i)) = d[i];
  m.with_dims({int(d.size())});
  return DensityOperator(std::move(m));
}

// commuting pair in a random common basis
std::pair<DensityOperator, DensityOperator> commuting_pair(Rng& rng, const std::vector<double>& p,
                                                           const std::vector<double>& q) {
  const int d = int(p.size());
  ComplexOperator u = random_unitary(rng, d);
  ComplexOperator dp(d, d), dq(d, d);
  for (int i = 0; i < d; ++i) {
    dp.at(i, i) = p[i];
    dq.at(i, i) = q[i];
  }
  return {DensityOperator(u * dp * adjoint(u)), DensityOperator(u * dq * adjoint(u))};
}

const DensityOperator kPi2 = diag_state({0.5, 0.5});

}  // namespace

TEST_CASE("relative entropy") {
  Rng rng(31);
  DensityOperator rho = random_density(rng, 3);
  CHECK(rel_entropy(rho, rho) == doctest::Approx(0.0).epsilon(1e-9));

  CHECK(rel_entropy(kPi2, diag_state({0.75, 0.25})) ==
        doctest::Approx(oracle::classical_kl({0.5, 0.5}, {0.75, 0.25})).epsilon(1e-10));
  CHECK(oracle::classical_kl({0.5, 0.5}, {0.75, 0.25}) == doctest::Approx(0.2075).epsilon(1e-4));

  DensityOperator phi = max_entangled(2).projector();
  DensityOperator pi4 = DensityOperator(tensor(kPi2.op(), kPi2.op()));
  CHECK(rel_entropy(phi, pi4) == doctest::Approx(2.0).epsilon(1e-10));

  // support violation is an infinite-divergence signal
  CHECK(std::isinf(rel_entropy(kPi2, diag_state({1.0, 0.0}))));

  // rank-deficient sigma containing the support of rho
  CHECK(rel_entropy(diag_state({1.0, 0.0, 0.0}), diag_state({0.5, 0.5, 0.0})) ==
        doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("relative entropy variance") {
  Rng rng(32);
  DensityOperator rho = random_density(rng, 3);
  CHECK(rel_entropy_variance(rho, rho) == doctest::Approx(0.0).epsilon(1e-8));

  DensityOperator phi = max_entangled(2).projector();
  DensityOperator pi4 = DensityOperator(tensor(kPi2.op(), kPi2.op()));
  CHECK(rel_entropy_variance(phi, pi4) == doctest::Approx(0.0).epsilon(1e-8));

  CHECK(rel_entropy_variance(diag_state({0.7, 0.3}), kPi2) ==
        doctest::Approx(oracle::classical_kl_variance({0.7, 0.3}, {0.5, 0.5})).epsilon(1e-9));
}

TEST_CASE("collision relative entropy") {
  // direct evaluation of the definition: D2(pi||pi) = log2 Tr[(d pi)^2 / d] = 0
  for (int d : {2, 3, 4}) {
    std::vector<double> u(d, 1.0 / d);
    CHECK(collision_d2(diag_state(u), diag_state(u)) ==
          doctest::Approx(oracle::classical_collision(u, u)).epsilon(1e-9));
    CHECK(oracle::classical_collision(u, u) == doctest::Approx(0.0));
    // pure state against the maximally mixed one picks up log2 d
    std::vector<double> pure(d, 0.0);
    pure[0] = 1.0;
    CHECK(collision_d2(diag_state(pure), diag_state(u)) ==
          doctest::Approx(std::log2(double(d))).epsilon(1e-9));
  }

  CHECK(collision_d2(diag_state({1.0, 0.0}), diag_state({1.0, 0.0})) ==
        doctest::Approx(0.0).epsilon(1e-9));

  Rng rng(33);
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<double> p{0.2 + 0.6 * rng.uniform(), 0.0, 0.0}, q{0.0, 0.0, 0.0};
    p[1] = (1.0 - p[0]) * rng.uniform();
    p[2] = 1.0 - p[0] - p[1];
    double qs = 0.0;
    for (double& x : q) {
      x = 0.1 + rng.uniform();
      qs += x;
    }
    for (double& x : q) x /= qs;
    auto [rho, sig] = commuting_pair(rng, p, q);
    CHECK(collision_d2(rho, sig) ==
          doctest::Approx(oracle::classical_collision(p, q)).epsilon(1e-8));
  }
}

TEST_CASE("information spectrum relative entropy") {
  CHECK(info_spectrum_ds(diag_state({0.8, 0.2}), kPi2, 0.5) ==
        doctest::Approx(std::log2(0.8 / 0.5)).epsilon(2e-6));
  Rng rng(34);
  DensityOperator rho = random_density(rng, 3);
  CHECK(std::abs(info_spectrum_ds(rho, rho, 0.5)) < 2e-6);

  // rank-deficient sigma with the support condition satisfied
  DensityOperator small = diag_state({0.6, 0.4, 0.0});
  DensityOperator wide = diag_state({0.3, 0.5, 0.2});
  CHECK(std::isinf(info_spectrum_ds(wide, small, 0.1)));
  DensityOperator inside = diag_state({0.9, 0.1, 0.0});
  const double ds = info_spectrum_ds(inside, small, 0.5);
  CHECK(ds == doctest::Approx(std::log2(0.9 / 0.6)).epsilon(2e-6));
  CHECK(hypothesis_dh(inside, small, 0.5).dh >= ds - 1e-6);
}

TEST_CASE("hypothesis testing relative entropy") {
  Rng rng(35);
  for (double eps : {0.1, 0.5, 0.9}) {
    DensityOperator rho = random_density(rng, 4);
    HypothesisTest ht = hypothesis_dh(rho, rho, eps, {.force_quantum = true});
    CHECK(ht.dh == doctest::Approx(-std::log2(1.0 - eps)).epsilon(1e-9));
    CHECK(ht.type1_error <= eps + 1e-9);
    CHECK(ht.duality_gap <= 1e-7);
  }

  // scaling identity on a random pair
  DensityOperator rho = random_density(rng, 3);
  ComplexOperator sig = random_density(rng, 3).op();
  ComplexOperator sig2 = sig;
  sig2 *= cd(2.0, 0.0);
  CHECK(hypothesis_dh(rho, sig2, 0.3).dh ==
        doctest::Approx(hypothesis_dh(rho, sig, 0.3).dh - 1.0).epsilon(1e-9));

  // commuting pair equals the classical solver
  auto [crho, csig] = commuting_pair(rng, {0.9, 0.1}, {0.5, 0.5});
  ClassicalPair pair;
  pair.atoms = {{0.9, 0.5, 1.0}, {0.1, 0.5, 1.0}};
  CHECK(hypothesis_dh(crho, csig, 0.1).dh ==
        doctest::Approx(classical_dh(pair, 0.1).dh).epsilon(1e-9));

  CHECK_THROWS_AS(hypothesis_dh(rho, sig, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(hypothesis_dh(rho, sig, 1.0), std::invalid_argument);
}

TEST_CASE("classical Neyman-Pearson") {
  ClassicalPair same;
  same.atoms = {{0.4, 0.4, 1.0}, {0.6, 0.6, 1.0}};
  CHECK(classical_dh(same, 0.3).beta == doctest::Approx(0.7).epsilon(1e-12));

  ClassicalPair detOne;
  detOne.atoms = {{1.0, 0.5, 1.0}, {0.0, 0.5, 1.0}};
  CHECK(classical_dh(detOne, 0.2).beta == doctest::Approx(0.4).epsilon(1e-12));

  ClassicalPair boundary;
  boundary.atoms = {{0.8, 0.5, 1.0}, {0.2, 0.5, 1.0}};
  CHECK(classical_dh(boundary, 0.2).beta == doctest::Approx(0.5).epsilon(1e-12));

  // multiplicity compression agrees with the expanded atom list
  ClassicalPair expanded, compressed;
  for (int i = 0; i < 6; ++i) expanded.atoms.push_back({0.1, 0.05, 1.0});
  expanded.atoms.push_back({0.4, 0.7, 1.0});
  compressed.atoms = {{0.1, 0.05, 6.0}, {0.4, 0.7, 1.0}};
  CHECK(classical_dh(expanded, 0.35).beta ==
        doctest::Approx(classical_dh(compressed, 0.35).beta).epsilon(1e-12));

  // brute-force oracle on random instances
  Rng rng(36);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 2 + int(rng.below(7));
    std::vector<double> p(n), q(n);
    double ps = 0.0, qs = 0.0;
    for (int i = 0; i < n; ++i) {
      p[i] = 0.01 + rng.uniform();
      q[i] = rng.uniform() < 0.15 ? 0.0 : 0.01 + rng.uniform();
      ps += p[i];
      qs += q[i];
    }
    for (int i = 0; i < n; ++i) {
      p[i] /= ps;
      if (qs > 0.0) q[i] /= qs;
    }
    ClassicalPair pair;
    for (int i = 0; i < n; ++i) pair.atoms.push_back({p[i], q[i], 1.0});
    const double eps = 0.05 + 0.9 * rng.uniform();
    const double beta = classical_dh(pair, eps).beta;
    CHECK(beta == doctest::Approx(oracle::np_beta_bruteforce(p, q, eps)).epsilon(1e-10));
  }

  ClassicalPair bad;
  bad.atoms = {{0.5, 0.5, 1.0}};
  CHECK_THROWS_AS(classical_dh(bad, 0.5), std::invalid_argument);
}

TEST_CASE("duality gap on non-commuting pairs") {
  Rng rng(37);
  for (int trial = 0; trial < 20; ++trial) {
    const int d = 2 + int(rng.below(7));
    DensityOperator rho = random_density(rng, d);
    DensityOperator sig = random_density(rng, d);
    const double eps = 0.05 + 0.9 * rng.uniform();
    HypothesisTest ht = hypothesis_dh(rho, sig.op(), eps, {.force_quantum = true});
    CHECK(ht.duality_gap <= 1e-7);
    CHECK(ht.duality_gap >= -1e-9);
    CHECK(ht.type1_error <= eps + 1e-9);
  }
}

TEST_CASE("hypothesis testing stress cases") {
  Rng rng(38);

  // pure rho against full-rank sigma, extreme eps on both sides
  for (double eps : {0.001, 0.2, 0.999}) {
    DensityOperator rho = random_pure(rng, {4}).projector();
    DensityOperator sig = random_density(rng, 4);
    HypothesisTest ht = hypothesis_dh(rho, sig.op(), eps, {.force_quantum = true});
    CHECK(ht.duality_gap <= 1e-7);
    CHECK(ht.type1_error <= eps + 1e-9);
    CHECK(ht.beta > 0.0);
  }

  // nearly-commuting pairs land continuously whichever path resolves them
  for (int trial = 0; trial < 10; ++trial) {
    const int d = 3;
    std::vector<double> p{0.5, 0.3, 0.2}, q{0.2, 0.3, 0.5};
    ComplexOperator u = random_unitary(rng, d);
    ComplexOperator dp(d, d), dq(d, d);
    for (int i = 0; i < d; ++i) {
      dp.at(i, i) = p[i];
      dq.at(i, i) = q[i];
    }
    ComplexOperator pert = random_hermitian(rng, d);
    pert *= cd(1e-9 / std::max(max_abs(pert), 1e-300), 0.0);
    DensityOperator rho(u * dp * adjoint(u));
    ComplexOperator sig = u * dq * adjoint(u) + pert * pert;  // PSD bump ~1e-18
    const double auto_path = hypothesis_dh(rho, sig, 0.3).dh;
    const double forced = hypothesis_dh(rho, sig, 0.3, {.force_quantum = true}).dh;
    CHECK(auto_path == doctest::Approx(forced).epsilon(1e-7));
  }

  // data processing: a channel cannot improve discrimination
  for (int trial = 0; trial < 10; ++trial) {
    DensityOperator rho = random_density(rng, 2);
    DensityOperator sig = random_density(rng, 2);
    const double eps = 0.1 + 0.8 * rng.uniform();
    ComplexOperator k0(2, 2), k1(2, 2);
    const double g = rng.uniform();
    k0.at(0, 0) = 1.0;
    k0.at(1, 1) = std::sqrt(1.0 - g);
    k1.at(0, 1) = std::sqrt(g);
    auto damp = [&](const DensityOperator& x) {
      return DensityOperator(k0 * x.op() * adjoint(k0) + k1 * x.op() * adjoint(k1));
    };
    CHECK(hypothesis_dh(damp(rho), damp(sig), eps).dh <=
          hypothesis_dh(rho, sig, eps).dh + 1e-7);
  }
}

TEST_CASE("normal cdf and quantile") {
  CHECK(normal_cdf(0.0) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(normal_quantile(0.5) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(normal_quantile(0.95) == doctest::Approx(oracle::normal_quantile_bisected(0.95)).epsilon(1e-9));
  CHECK(oracle::normal_quantile_bisected(0.95) == doctest::Approx(1.6448536).epsilon(1e-6));

  for (double a : {-3.0, -1.2, 0.4, 2.7})
    CHECK(normal_cdf(a) == doctest::Approx(oracle::normal_cdf_integrated(a)).epsilon(1e-11));
  for (double e : {0.01, 0.1, 0.35, 0.6, 0.99})
    CHECK(std::abs(normal_cdf(normal_quantile(e)) - e) <= 1e-10);

  CHECK_THROWS_AS(normal_quantile(0.0), std::invalid_argument);
  CHECK_THROWS_AS(normal_quantile(1.0), std::invalid_argument);
}

TEST_CASE("second-order value") {
  CHECK(second_order_value(1.5, 0.0, 7, 0.2) == doctest::Approx(10.5).epsilon(1e-12));
  CHECK(second_order_value(1.5, 2.0, 7, 0.5) == doctest::Approx(10.5).epsilon(1e-12));
  CHECK(second_order_value(1.0, 1.0, 100, 0.95) ==
        doctest::Approx(100.0 + 10.0 * 1.6448536269514722).epsilon(1e-9));
  CHECK_THROWS_AS(second_order_value(1.0, -1.0, 10, 0.5), std::invalid_argument);
}
