#include <doctest.h>

#include <cmath>

#include "eacap/coding.hpp"
#include "eacap/divergences.hpp"
#include "eacap/errors.hpp"
#include "eacap/linalg.hpp"
#include "eacap/random_states.hpp"
#include "eacap/rng.hpp"

using namespace eacap;

namespace {

std::vector<CodewordLabel> superdense_labels() {
  std::vector<CodewordLabel> labels;
  for (int x = 0; x < 2; ++x)
    for (int z = 0; z < 2; ++z) {
      CodewordLabel l;
      l.parts.push_back({x, z, 0});
      labels.push_back(l);
    }
  return labels;
}

}  // namespace

TEST_CASE("heisenberg-weyl operators") {
  ComplexOperator x1 = heisenberg_weyl(2, 1, 0);
  CHECK(x1.at(1, 0) == cd(1.0, 0.0));  // X(1)|0> = |1>
  CHECK(x1.at(0, 1) == cd(1.0, 0.0));

  ComplexOperator z1 = heisenberg_weyl(2, 0, 1);
  CHECK(std::abs(z1.at(1, 1) - cd(-1.0, 0.0)) < 1e-15);  // Z(1)|1> = -|1>

  for (auto [x, z] : {std::pair{1, 0}, std::pair{0, 1}, std::pair{2, 1}}) {
    ComplexOperator w = heisenberg_weyl(3, x, z);
    ComplexOperator cube = w * w * w;
    // X(1)^3 = Z(1)^3 = I and the same for mixed labels up to phase 1 here
    if (x == 0 || z == 0) CHECK(fro_norm(cube - ComplexOperator::identity(3)) < 1e-12);
    CHECK(fro_norm(adjoint(w) * w - ComplexOperator::identity(3)) < 1e-13);
  }

  CHECK(fro_norm(heisenberg_weyl(1, 0, 0) - ComplexOperator::identity(1)) == 0.0);
  CHECK_THROWS_AS(heisenberg_weyl(2, 2, 0), std::invalid_argument);
}

TEST_CASE("encoder unitaries") {
  SectorDecomposition dec = single_sector(2);
  CodewordLabel zero;
  zero.parts.push_back({0, 0, 0});
  CHECK(fro_norm(encoder_unitary(zero, dec) - ComplexOperator::identity(2)) < 1e-15);

  CodewordLabel xlabel;
  xlabel.parts.push_back({1, 0, 0});
  ComplexOperator pauli_x(2, 2);
  pauli_x.at(0, 1) = 1.0;
  pauli_x.at(1, 0) = 1.0;
  CHECK(fro_norm(encoder_unitary(xlabel, dec) - pauli_x) < 1e-15);

  CodewordLabel sign;
  sign.parts.push_back({0, 0, 1});
  CHECK(fro_norm(encoder_unitary(sign, dec) + ComplexOperator::identity(2)) < 1e-15);

  // two-sector decomposition: mirror transpose satisfies the transpose trick
  SectorDecomposition two;
  two.total_dim = 3;
  two.sectors.push_back({1, 0.4, {0}, {0}});
  two.sectors.push_back({2, 0.6, {1, 2}, {1, 2}});
  two.validate();
  Rng rng(51);
  const PureStateVector theta = resource_state(two);
  for (int trial = 0; trial < 50; ++trial) {
    CodewordLabel l = sample_label(two, rng);
    ComplexOperator u = encoder_unitary(l, two);
    CHECK(fro_norm(adjoint(u) * u - ComplexOperator::identity(3)) < 1e-12);
    ComplexOperator ut = encoder_unitary_mirror_transpose(l, two);
    std::vector<cd> lhs = apply_matrix(tensor(u, ComplexOperator::identity(3)), theta.amplitudes());
    std::vector<cd> rhs = apply_matrix(tensor(ComplexOperator::identity(3), ut), theta.amplitudes());
    double err = 0.0;
    for (size_t k = 0; k < lhs.size(); ++k) err += std::norm(lhs[k] - rhs[k]);
    CHECK(std::sqrt(err) < 1e-12);
  }

  CodewordLabel bad;
  bad.parts.push_back({2, 0, 0});
  CHECK_THROWS_AS(encoder_unitary(bad, dec), std::invalid_argument);
}

TEST_CASE("resource and kappa states") {
  const PureStateVector theta = resource_state(single_sector(2));
  double err = 0.0;
  for (int k = 0; k < 4; ++k)
    err += std::norm(theta.amplitudes()[k] - max_entangled(2).amplitudes()[k]);
  CHECK(std::sqrt(err) < 1e-15);

  DensityOperator kappa = kappa_state(single_sector(2));
  CHECK(fro_norm(kappa.op() - cd(0.25, 0.0) * ComplexOperator::identity(4)) < 1e-14);

  DensityOperator kd = kappa_state(diagonal_sectors({0.3, 0.7}));
  CHECK(kd.op().at(0, 0).real() == doctest::Approx(0.3));
  CHECK(kd.op().at(3, 3).real() == doctest::Approx(0.7));
}

TEST_CASE("pretty good measurement") {
  // orthogonal pure outputs: PGM elements are the projectors themselves
  std::vector<DensityOperator> ortho;
  for (int k = 0; k < 2; ++k) {
    ComplexOperator p(2, 2);
    p.at(k, k) = 1.0;
    ortho.push_back(DensityOperator(std::move(p)));
  }
  ComplexOperator completion;
  std::vector<ComplexOperator> povm = pgm_decoder(ortho, &completion);
  CHECK(fro_norm(povm[0] - ortho[0].op()) < 1e-10);
  CHECK(fro_norm(povm[1] - ortho[1].op()) < 1e-10);
  CHECK(fro_norm(completion) < 1e-10);

  // identical states: symmetric split of the support projector
  Rng rng(52);
  DensityOperator rho = random_density(rng, 3);
  std::vector<ComplexOperator> same = pgm_decoder({rho, rho}, &completion);
  CHECK(fro_norm(same[0] - same[1]) < 1e-10);
  ComplexOperator supp = support_projector(rho.op());
  CHECK(fro_norm(same[0] - cd(0.5, 0.0) * supp) < 1e-9);
  CHECK(fro_norm(completion - (ComplexOperator::identity(3) - supp)) < 1e-9);

  // completeness on a random ensemble with a rank-deficient sum
  std::vector<DensityOperator> ens = {random_density(rng, 4, 2), random_density(rng, 4, 1)};
  std::vector<ComplexOperator> lam = pgm_decoder(ens, &completion);
  ComplexOperator total = completion;
  for (const ComplexOperator& l : lam) total += l;
  CHECK(fro_norm(total - ComplexOperator::identity(4)) < 1e-10);
}

TEST_CASE("sampled codes") {
  const QuantumChannel id2 = identity_channel(2);
  const SectorDecomposition dec = single_sector(2);

  EacCode one = sample_code(id2, 1, dec, 99);
  CHECK(avg_success(one).p_succ == doctest::Approx(1.0).epsilon(1e-10));

  EacCode a = sample_code(id2, 5, dec, 1234);
  EacCode b = sample_code(id2, 5, dec, 1234);
  for (int m = 0; m < 5; ++m) {
    CHECK(a.labels[m].parts[0].x == b.labels[m].parts[0].x);
    CHECK(a.labels[m].parts[0].z == b.labels[m].parts[0].z);
    CHECK(a.labels[m].parts[0].b == b.labels[m].parts[0].b);
  }
  CHECK(avg_success(a).p_succ == doctest::Approx(avg_success(b).p_succ).epsilon(1e-15));

  // super-dense coding: the four distinct labels decode perfectly
  EacCode sd = code_from_labels(id2, superdense_labels(), dec);
  CHECK(avg_success(sd).p_succ == doctest::Approx(1.0).epsilon(1e-10));
  for (int m = 0; m < 4; ++m)
    for (int m2 = m + 1; m2 < 4; ++m2)
      CHECK(std::abs(trace(sd.outputs[m].op() * sd.outputs[m2].op()).real()) < 1e-12);

  // uniform guessing through the completely depolarizing channel
  EacCode guess = code_from_labels(depolarizing_channel(2, 1.0), superdense_labels(), dec);
  CHECK(avg_success(guess).p_succ == doctest::Approx(0.25).epsilon(1e-10));
}

TEST_CASE("success/collision identity") {
  Rng rng(53);
  const SectorDecomposition dec = single_sector(2);
  for (const QuantumChannel& ch :
       {identity_channel(2), dephasing_channel(0.3), amplitude_damping_channel(0.4)}) {
    for (int trial = 0; trial < 10; ++trial) {
      const int m = 2 + int(rng.below(7));
      EacCode code = sample_code(ch, m, dec, Rng::mix_seed(1000, trial));
      SuccessReport rep = avg_success(code);
      CHECK(rep.collision_identity_residual <= 1e-8);
    }
  }

  // cross-check the block evaluation against the full classical-quantum state
  EacCode code = sample_code(dephasing_channel(0.3), 2, dec, 77);
  SuccessReport rep = avg_success(code);
  const int bb = 4;
  // sigma_MSBB' on M (x) S (x) BB'; the M register keeps blocks orthogonal
  // even on a label collision, so distinct S slots give the same value.
  ComplexOperator full(2 * 2 * bb, 2 * 2 * bb), prod(2 * 2 * bb, 2 * 2 * bb);
  ComplexOperator sigma_bb(bb, bb);
  for (int m = 0; m < 2; ++m) sigma_bb += code.outputs[m].op();
  sigma_bb *= cd(0.5, 0.0);
  for (int m = 0; m < 2; ++m) {
    const int s = m;
    for (int i = 0; i < bb; ++i)
      for (int j = 0; j < bb; ++j) {
        full.at((m * 2 + s) * bb + i, (m * 2 + s) * bb + j) = 0.5 * code.outputs[m].op().at(i, j);
        prod.at((m * 2 + s) * bb + i, (m * 2 + s) * bb + j) = 0.5 * sigma_bb.at(i, j);
      }
  }
  CHECK(collision_d2(DensityOperator(full), DensityOperator(prod)) ==
        doctest::Approx(rep.d2_value).epsilon(1e-9));
}

TEST_CASE("twirl average") {
  // full twirl of the maximally entangled resource through the identity channel
  DensityOperator avg = twirl_average(identity_channel(2), single_sector(2));
  CHECK(fro_norm(avg.op() - cd(0.25, 0.0) * ComplexOperator::identity(4)) < 1e-12);

  // amplitude damping: N(pi) (x) pi
  const QuantumChannel ad = amplitude_damping_channel(0.3);
  DensityOperator avg_ad = twirl_average(ad, single_sector(2));
  DensityOperator pi2(cd(0.5, 0.0) * ComplexOperator::identity(2));
  ComplexOperator want = tensor(apply(ad, pi2).op(), pi2.op());
  CHECK(max_abs(avg_ad.op() - want) < 1e-11);

  // diagonal sectors give the classical mixture
  SectorDecomposition diag = diagonal_sectors({0.3, 0.7});
  DensityOperator avg_diag = twirl_average(ad, diag);
  ComplexOperator mix(4, 4);
  for (int t = 0; t < 2; ++t) {
    ComplexOperator basis(2, 2);
    basis.at(t, t) = 1.0;
    basis.with_dims({2});
    ComplexOperator term = tensor(apply(ad, DensityOperator(basis)).op(), basis);
    term *= cd(t == 0 ? 0.3 : 0.7, 0.0);
    mix += term;
  }
  CHECK(max_abs(avg_diag.op() - mix) < 1e-12);
}

TEST_CASE("one-shot achievability bounds") {
  const QuantumChannel id2 = identity_channel(2);
  const SectorDecomposition dec = single_sector(2);

  // closed form: beta_{eps'}(Phi || pi (x) pi) = (1 - eps') / 4
  const double eps = 0.9, delta = 0.2;
  const double dh = -std::log2((1.0 - (eps - 2.0 * delta)) / 4.0);
  CHECK(pgm_one_shot_bound(id2, dec, eps, delta) ==
        doctest::Approx(dh - std::log2((1.0 - eps) / (delta * delta))).epsilon(1e-8));

  const double dh_hn = -std::log2((1.0 - (eps - 0.4)) / 4.0);
  CHECK(hayashi_nagaoka_bound(id2, dec, eps, 0.4) ==
        doctest::Approx(dh_hn - std::log2(4.0 * eps / 0.16)).epsilon(1e-8));

  // equal states: the D_H term collapses to -log2(1 - eps')
  const QuantumChannel full = depolarizing_channel(2, 1.0);
  const double eps2 = 0.5, delta2 = 0.1;
  CHECK(pgm_one_shot_bound(full, dec, eps2, delta2) ==
        doctest::Approx(-std::log2(1.0 - (eps2 - 2.0 * delta2)) -
                        std::log2((1.0 - eps2) / (delta2 * delta2)))
            .epsilon(1e-8));
  CHECK(pgm_one_shot_bound(full, dec, eps2, delta2) < 0.0);

  CHECK_THROWS_AS(pgm_one_shot_bound(id2, dec, 0.4, 0.2), std::invalid_argument);
  CHECK_THROWS_AS(hayashi_nagaoka_bound(id2, dec, 0.4, 0.4), std::invalid_argument);
}

TEST_CASE("sampler matches the exact ensemble average") {
  // enumerate every M = 4 code over |S|^4 = 4096 label tuples and compare
  // the Monte-Carlo mean against the exact expectation
  const QuantumChannel ch = dephasing_channel(0.25);
  const SectorDecomposition dec = single_sector(2);
  const uint64_t s_size = label_space_size(dec);
  REQUIRE(s_size == 8);

  double exact = 0.0;
  uint64_t count = 0;
  for (uint64_t c0 = 0; c0 < s_size; ++c0)
    for (uint64_t c1 = 0; c1 < s_size; ++c1)
      for (uint64_t c2 = 0; c2 < s_size; ++c2)
        for (uint64_t c3 = 0; c3 < s_size; ++c3) {
          std::vector<CodewordLabel> labels = {
              label_from_ordinal(dec, c0), label_from_ordinal(dec, c1),
              label_from_ordinal(dec, c2), label_from_ordinal(dec, c3)};
          exact += avg_success(code_from_labels(ch, labels, dec)).p_succ;
          ++count;
        }
  exact /= double(count);

  EnsembleReport mc = ensemble_vs_bound(ch, dec, 0.5, 0.1, 2000, 31415, 4);
  CHECK(std::abs(mc.mean_p_succ - exact) <= 4.0 * mc.std_err);
  CHECK(mc.std_err < 0.01);
}

TEST_CASE("ensemble against the bound") {
  const SectorDecomposition dec = single_sector(2);

  EnsembleReport forced = ensemble_vs_bound(identity_channel(2), dec, 0.5, 0.1, 40, 7, 4);
  CHECK(forced.message_count == 4);
  CHECK(forced.mean_p_succ > 0.5);
  CHECK(forced.meets_bound);
  CHECK(forced.eqi_max_residual <= 1e-10);
  CHECK(forced.eqii_max_residual <= 1e-10);
  CHECK(forced.cq_reduction_slack >= -1e-7);

  EnsembleReport trivial = ensemble_vs_bound(depolarizing_channel(2, 1.0), dec, 0.9, 0.2, 25, 7);
  CHECK(trivial.message_count == 1);
  CHECK(trivial.mean_p_succ == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(trivial.meets_bound);

  EnsembleReport deph = ensemble_vs_bound(dephasing_channel(0.3), dec, 0.5, 0.1, 30, 11);
  CHECK(deph.meets_bound);
  CHECK(deph.eqi_max_residual <= 1e-10);
  CHECK(deph.eqii_max_residual <= 1e-10);
}
