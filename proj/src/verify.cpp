#include "eacap/verify.hpp"

#include <cmath>
#include <functional>
#include <sstream>

#include "eacap/capacity.hpp"
#include "eacap/channels.hpp"
#include "eacap/coding.hpp"
#include "eacap/divergences.hpp"
#include "eacap/errors.hpp"
#include "eacap/linalg.hpp"
#include "eacap/random_states.hpp"
#include "eacap/rng.hpp"
#include "eacap/types_toolkit.hpp"

namespace eacap {

namespace {

struct Suite {
  SuiteResult result;
  explicit Suite(std::string name) { result.name = std::move(name); }
  void check(bool ok, const std::string& what) {
    ++result.checks;
    if (!ok) {
      ++result.failures;
      result.messages.push_back(what);
    }
  }
  void check_le(double value, double bound, const std::string& what) {
    std::ostringstream os;
    os << what << " (value " << value << ", bound " << bound << ")";
    check(value <= bound, os.str());
  }
};

// ---------------------------------------------------------------------------

SuiteResult suite_linalg(const VerifyOptions& opts) {
  Suite s("linalg");
  Rng rng(opts.seed);

  for (int trial = 0; trial < 20; ++trial) {
    const int d = 2 + int(rng.below(7));
    ComplexOperator h = random_hermitian(rng, d);
    SpectralDecomposition sd = herm_eig(h);
    s.check_le(fro_norm(sd.reconstruct() - h), 1e-10 * std::max(fro_norm(h), 1e-300),
               "herm_eig reconstruction residual");
    s.check_le(fro_norm(adjoint(sd.eigenvectors) * sd.eigenvectors - ComplexOperator::identity(d)),
               1e-10, "herm_eig orthonormality");
  }

  for (int trial = 0; trial < 20; ++trial) {
    DensityOperator rho = random_density(rng, 3);
    DensityOperator sig = random_density(rng, 4);
    ComplexOperator prod = tensor(rho.op(), sig.op());
    s.check_le(fro_norm(partial_trace(prod, {0}) - rho.op()), 1e-12,
               "tensor/partial_trace round trip");
    s.check_le(std::abs((trace(prod) - trace(rho.op()) * trace(sig.op())).real()), 1e-12,
               "trace multiplicativity");
  }

  for (int trial = 0; trial < 20; ++trial) {
    PureStateVector a = random_pure(rng, {4}), b = random_pure(rng, {4});
    const double td = trace_distance(a.projector(), b.projector());
    const double f = fidelity(a.projector(), b.projector());
    s.check_le(std::abs(td - std::sqrt(std::max(1.0 - f * f, 0.0))), 1e-8,
               "pure-state trace-distance/fidelity relation");
  }

  for (int trial = 0; trial < 10; ++trial) {
    DensityOperator a = random_density(rng, 4), b = random_density(rng, 4), c = random_density(rng, 4);
    s.check_le(std::abs(fidelity(a, b) - fidelity(b, a)), 1e-9, "fidelity symmetry");
    s.check_le(trace_distance(a, c), trace_distance(a, b) + trace_distance(b, c) + 1e-9,
               "trace-distance triangle inequality");
  }

  for (int d = 2; d <= 4; ++d)
    for (int trial = 0; trial < 100; ++trial)
      s.check_le(transpose_trick_check(random_ginibre(rng, d, d), d), 1e-10, "transpose trick");

  for (int trial = 0; trial < 10; ++trial) {
    DensityOperator rho = random_density(rng, 3);
    PureStateVector psi = purify(rho);
    s.check_le(fro_norm(partial_trace(psi.projector().op(), {0}) - rho.op()), 1e-9,
               "purification reduces to the state");
    SchmidtDecomposition sd = schmidt_decompose(psi);
    std::vector<double> lam = rho.eigenvalues();
    for (size_t k = 0; k < sd.coefficients.size() && k < lam.size(); ++k)
      s.check_le(std::abs(sd.coefficients[k] * sd.coefficients[k] - lam[k]), 1e-9,
                 "Schmidt squares equal reduced eigenvalues");
  }
  return s.result;
}

// ---------------------------------------------------------------------------

SuiteResult suite_channels(const VerifyOptions& opts) {
  Suite s("channels");
  Rng rng(opts.seed + 1);

  auto validate_family = [&](const std::function<QuantumChannel(Rng&)>& make, const std::string& label) {
    for (int i = 0; i < 25; ++i) {
      QuantumChannel ch = make(rng);
      if (opts.inject_fault && i == 7) {
        std::vector<ComplexOperator> kraus = ch.kraus();
        kraus.front() *= cd(1.01, 0.0);
        ch = QuantumChannel(std::move(kraus), ch.covariant_irreducible_input(), ch.name());
      }
      ValidationReport rep = validate(ch);
      s.check(rep.pass, label + " validation (trace residual " +
                            std::to_string(rep.trace_preservation_residual) + ")");
    }
  };
  validate_family([](Rng& r) { return identity_channel(2 + int(r.below(3))); }, "identity");
  validate_family([](Rng& r) { return depolarizing_channel(2 + int(r.below(2)), r.uniform()); },
                  "depolarizing");
  validate_family([](Rng& r) { return dephasing_channel(r.uniform()); }, "dephasing");
  validate_family(
      [](Rng& r) {
        const double a = r.uniform(), b = r.uniform(), c = r.uniform();
        const double norm = std::max(a + b + c, 1.0);
        return qubit_pauli_channel(a / norm * 0.9, b / norm * 0.9, c / norm * 0.9);
      },
      "qubit_pauli");
  validate_family([](Rng& r) { return amplitude_damping_channel(r.uniform()); },
                  "amplitude_damping");

  // covariance of the flagged families: N(U rho U†) = U N(rho) U†
  std::vector<QuantumChannel> flagged = {identity_channel(2), depolarizing_channel(2, 0.3),
                                         depolarizing_channel(3, 0.45), dephasing_channel(0.25),
                                         qubit_pauli_channel(0.1, 0.2, 0.3)};
  for (const QuantumChannel& ch : flagged) {
    for (const ComplexOperator& u : covariance_group(ch)) {
      DensityOperator rho = random_density(rng, ch.d_in());
      DensityOperator lhs = apply(ch, DensityOperator(u * rho.op() * adjoint(u)));
      ComplexOperator rhs = u * apply(ch, rho).op() * adjoint(u);
      s.check_le(fro_norm(lhs.op() - rhs), 1e-10, ch.name() + " covariance");
    }
  }

  // tensor_power factorization
  for (int n = 1; n <= 3; ++n) {
    QuantumChannel ch = amplitude_damping_channel(0.35);
    QuantumChannel chn = tensor_power(ch, n);
    DensityOperator rho = random_density(rng, 2);
    ComplexOperator expect = apply(ch, rho).op();
    ComplexOperator prod = expect;
    ComplexOperator arg = rho.op();
    for (int i = 1; i < n; ++i) {
      prod = tensor(prod, expect);
      arg = tensor(arg, rho.op());
    }
    s.check_le(fro_norm(apply(chn, DensityOperator(arg)).op() - prod), 1e-10,
               "tensor_power factorization");
  }
  return s.result;
}

// ---------------------------------------------------------------------------

SuiteResult suite_entropy(const VerifyOptions& opts) {
  Suite s("entropy");
  Rng rng(opts.seed + 2);
  const int trials = opts.entropy_instances;

  // monotonicity in the second argument (item 1)
  for (int i = 0; i < trials; ++i) {
    const int d = 2 + int(rng.below(3));
    DensityOperator rho = random_density(rng, d);
    ComplexOperator sig = random_density(rng, d).op();
    ComplexOperator bump = random_ginibre(rng, d, d);
    ComplexOperator sig2 = sig + bump * adjoint(bump);
    const double eps = 0.1 + 0.8 * rng.uniform();
    s.check(hypothesis_dh(rho, sig, eps).dh >= hypothesis_dh(rho, sig2, eps).dh - 1e-7,
            "D_H antitone in sigma");
  }

  // scaling identity (item 2)
  for (int i = 0; i < trials; ++i) {
    const int d = 2 + int(rng.below(3));
    DensityOperator rho = random_density(rng, d);
    ComplexOperator sig = random_density(rng, d).op();
    const double eps = 0.1 + 0.8 * rng.uniform();
    const double base = hypothesis_dh(rho, sig, eps).dh;
    for (double alpha : {0.5, 2.0, 10.0}) {
      ComplexOperator scaled = sig;
      scaled *= cd(alpha, 0.0);
      s.check_le(std::abs(hypothesis_dh(rho, scaled, eps).dh - (base - std::log2(alpha))), 1e-8,
                 "D_H scaling identity");
    }
  }

  // classical-quantum reduction (item 3)
  for (int i = 0; i < trials; ++i) {
    const int nx = 2 + int(rng.below(2));
    const int db = 2 + int(rng.below(2));
    std::vector<double> p(nx), q(nx);
    double ps = 0.0, qs = 0.0;
    for (int x = 0; x < nx; ++x) {
      p[x] = 0.05 + rng.uniform();
      q[x] = 0.05 + rng.uniform();
      ps += p[x];
      qs += q[x];
    }
    std::vector<DensityOperator> rb;
    for (int x = 0; x < nx; ++x) rb.push_back(random_density(rng, db));
    DensityOperator sb = random_density(rng, db);
    ComplexOperator cq(nx * db, nx * db), prod(nx * db, nx * db);
    for (int x = 0; x < nx; ++x)
      for (int a = 0; a < db; ++a)
        for (int b = 0; b < db; ++b) {
          cq.at(x * db + a, x * db + b) = p[x] / ps * rb[x].op().at(a, b);
          prod.at(x * db + a, x * db + b) = q[x] / qs * sb.op().at(a, b);
        }
    cq.with_dims({nx, db});
    const double eps = 0.1 + 0.8 * rng.uniform();
    const double lhs = hypothesis_dh(DensityOperator(cq), prod, eps).dh;
    double rhs = std::numeric_limits<double>::infinity();
    for (int x = 0; x < nx; ++x) rhs = std::min(rhs, hypothesis_dh(rb[x], sb, eps).dh);
    s.check(lhs >= rhs - 1e-7, "classical-quantum reduction of D_H");
  }

  // stability under trace-distance perturbation (item 4)
  for (int i = 0; i < trials; ++i) {
    const int d = 2 + int(rng.below(3));
    DensityOperator rho = random_density(rng, d);
    DensityOperator chi = random_density(rng, d);
    const double eta = 0.02 + 0.1 * rng.uniform();
    ComplexOperator mix = rho.op();
    mix *= cd(1.0 - eta, 0.0);
    ComplexOperator rest = chi.op();
    rest *= cd(eta, 0.0);
    DensityOperator rho2(mix + rest);
    const double delta = trace_distance(rho, rho2) + 1e-12;
    ComplexOperator sig = random_density(rng, d).op();
    const double eps = 0.05 + 0.5 * rng.uniform();
    if (eps + delta >= 1.0) continue;
    s.check(hypothesis_dh(rho2, sig, eps).dh <= hypothesis_dh(rho, sig, eps + delta).dh + 1e-7,
            "D_H stability under trace-distance perturbation");
  }

  // hypothesis-testing vs information-spectrum sandwich:
  // D_H^eps >= D_s^eps and D_s^{eps+delta} >= D_H^eps + log2 delta
  for (int i = 0; i < trials; ++i) {
    const int d = 2 + int(rng.below(3));
    DensityOperator rho = random_density(rng, d);
    DensityOperator sig = random_density(rng, d);
    const double eps = 0.1, delta = 0.05;
    const double dh_eps = hypothesis_dh(rho, sig, eps).dh;
    const double ds_eps = info_spectrum_ds(rho, sig, eps);
    const double ds_up = info_spectrum_ds(rho, sig, eps + delta);
    s.check(dh_eps >= ds_eps - 1e-5, "D_H >= D_s");
    s.check(ds_up >= dh_eps + std::log2(delta) - 1e-5,
            "D_s^{eps+delta} >= D_H^eps + log2 delta");
  }

  // collision/information-spectrum relation
  for (int i = 0; i < trials; ++i) {
    const int d = 2 + int(rng.below(3));
    DensityOperator rho = random_density(rng, d);
    DensityOperator sig = random_density(rng, d);
    for (double eps : {0.1, 0.5, 0.9}) {
      const double ds = info_spectrum_ds(rho, sig, eps);
      for (double lambda : {0.1, 0.5, 0.9}) {
        ComplexOperator mixm = rho.op();
        mixm *= cd(lambda, 0.0);
        ComplexOperator rest = sig.op();
        rest *= cd(1.0 - lambda, 0.0);
        DensityOperator mix(mixm + rest);
        const double lhs = std::exp2(collision_d2(rho, mix));
        const double rhs = (1.0 - eps) / (lambda + (1.0 - lambda) * std::exp2(-ds));
        s.check(lhs >= rhs - 1e-6, "collision vs information-spectrum bound");
      }
    }
  }

  // primal-dual consistency and monotonicity in eps
  for (int i = 0; i < trials / 2 + 1; ++i) {
    const int d = 2 + int(rng.below(5));
    DensityOperator rho = random_density(rng, d);
    DensityOperator sig = random_density(rng, d);
    const double eps = 0.1 + 0.7 * rng.uniform();
    HypothesisTest ht = hypothesis_dh(rho, sig.op(), eps, {.force_quantum = true});
    s.check_le(ht.duality_gap, 1e-7, "primal-dual gap");
    s.check(ht.type1_error <= eps + 1e-9, "type-I error within eps");
    if (ht.test_operator) {
      std::vector<double> qe = herm_eigvals(*ht.test_operator);
      s.check(qe.front() <= 1.0 + 1e-9 && qe.back() >= -1e-9, "0 <= Q <= I");
      s.check_le(std::abs(trace(*ht.test_operator * sig.op()).real() - ht.beta), 1e-7,
                 "Tr(Q sigma) = beta");
      s.check(trace(*ht.test_operator * rho.op()).real() >= 1.0 - eps - 1e-9,
              "Tr(Q rho) >= 1 - eps");
    }
    const double eps2 = eps + 0.5 * (1.0 - eps) * rng.uniform() + 1e-3;
    if (eps2 < 1.0)
      s.check(hypothesis_dh(rho, sig, eps).dh <= hypothesis_dh(rho, sig, eps2).dh + 1e-8,
              "D_H monotone in eps");
  }

  // quantum path agrees with the classical solver on commuting pairs
  for (int i = 0; i < trials / 2 + 1; ++i) {
    const int d = 2 + int(rng.below(7));
    std::vector<double> p(d), q(d);
    double ps = 0.0, qs = 0.0;
    for (int k = 0; k < d; ++k) {
      p[k] = 0.01 + rng.uniform();
      q[k] = 0.01 + rng.uniform();
      ps += p[k];
      qs += q[k];
    }
    ComplexOperator u = random_unitary(rng, d);
    ComplexOperator rd(d, d), sd(d, d);
    for (int k = 0; k < d; ++k) {
      rd.at(k, k) = p[k] / ps;
      sd.at(k, k) = q[k] / qs;
    }
    DensityOperator rho(u * rd * adjoint(u));
    ComplexOperator sig = u * sd * adjoint(u);
    const double eps = 0.1 + 0.8 * rng.uniform();
    ClassicalPair pair;
    for (int k = 0; k < d; ++k) pair.atoms.push_back({p[k] / ps, q[k] / qs, 1.0});
    const double want = classical_dh(pair, eps).dh;
    const double got = hypothesis_dh(rho, sig, eps, {.force_quantum = true}).dh;
    s.check_le(std::abs(got - want), 1e-8, "quantum/classical agreement");
  }
  return s.result;
}

// ---------------------------------------------------------------------------

SuiteResult suite_types(const VerifyOptions& opts) {
  Suite s("types");
  Rng rng(opts.seed + 3);

  for (int alphabet = 2; alphabet <= 3; ++alphabet) {
    for (int n = 1; n <= opts.types_n_max; ++n) {
      std::vector<TypeDistribution> types = enumerate_types(n, alphabet);
      s.check_le(double(types.size()), std::pow(n + 1.0, alphabet), "type-count bound");

      BigInt total = 0;
      for (const TypeDistribution& t : types) {
        total += type_class_size(t);
        const double lhs = log2_type_class_size(t);
        const double rhs = n * type_entropy(t) - alphabet * std::log2(n + 1.0);
        s.check(lhs >= rhs - 1e-9, "type-class size lower bound");
      }
      BigInt full = 1;
      for (int i = 0; i < n; ++i) full *= alphabet;
      s.check(total == full, "type classes partition the sequence space");

      for (int qi = 0; qi < 20; ++qi) {
        std::vector<double> q(alphabet);
        double qs = 0.0;
        for (double& x : q) {
          x = 0.05 + rng.uniform();
          qs += x;
        }
        for (double& x : q) x /= qs;

        double mass = 0.0;
        for (const TypeDistribution& t : types) {
          mass += iid_type_mass(t, q);
          // 2^{-n H(t)} (n+1)^{|X|} >= 1/|T^t|
          const double lhs = -n * type_entropy(t) + alphabet * std::log2(n + 1.0);
          s.check(lhs >= -log2_type_class_size(t) - 1e-9, "sequence-mass lower bound");
        }
        s.check_le(std::abs(mass - 1.0), 1e-10, "type masses sum to one");

        const double mu = 0.02 + 0.3 * rng.uniform();
        TailBound tb = tail_bound_check(n, q, mu);
        s.check_le(tb.exact_tail, tb.bound + 1e-12, "large-deviation tail bound");
      }
    }
  }

  // restricted resource: norm, retained mass and fidelity gap
  for (int n : {4, 6, 8}) {
    const PureStateVector phi = max_entangled(2);
    const double mu = default_mu(n, 2);
    RestrictedResource rr = restricted_resource(phi, n, mu);
    double wsum = 0.0;
    for (double w : rr.weights) wsum += w;
    s.check_le(std::abs(wsum - 1.0), 1e-12, "restricted weights sum to one");
    s.check(rr.alpha >= 1.0 - std::exp2(-double(n) * (mu - 2.0 * std::log2(n + 1.0) / n)) - 1e-12,
            "retained mass lower bound");
    s.check_le(std::sqrt(1.0 - rr.alpha), rr.fidelity_gap_bound + 1e-12,
               "fidelity gap bound g(n,mu)");
  }
  return s.result;
}

// ---------------------------------------------------------------------------

SuiteResult suite_hw(const VerifyOptions&) {
  Suite s("hw");
  for (int d = 1; d <= 5; ++d) {
    for (int x = 0; x < d; ++x)
      for (int z = 0; z < d; ++z) {
        ComplexOperator w = heisenberg_weyl(d, x, z);
        s.check_le(fro_norm(adjoint(w) * w - ComplexOperator::identity(d)), 1e-12,
                   "Heisenberg-Weyl unitarity");
      }
    // order d: X(1)^d = Z(1)^d = I
    if (d >= 2) {
      ComplexOperator xp = ComplexOperator::identity(d), zp = ComplexOperator::identity(d);
      for (int i = 0; i < d; ++i) {
        xp = xp * heisenberg_weyl(d, 1, 0);
        zp = zp * heisenberg_weyl(d, 0, 1);
      }
      s.check_le(fro_norm(xp - ComplexOperator::identity(d)), 1e-12, "X(1)^d = I");
      s.check_le(fro_norm(zp - ComplexOperator::identity(d)), 1e-12, "Z(1)^d = I");
      // commutation X Z = e^{-2 pi i / d} Z X
      ComplexOperator xz = heisenberg_weyl(d, 1, 0) * heisenberg_weyl(d, 0, 1);
      ComplexOperator zx = heisenberg_weyl(d, 0, 1) * heisenberg_weyl(d, 1, 0);
      zx *= std::polar(1.0, -2.0 * 3.14159265358979323846 / d);
      s.check_le(fro_norm(xz - zx), 1e-12, "Weyl commutation phase");
    }
  }
  // actions on basis vectors
  ComplexOperator x1 = heisenberg_weyl(2, 1, 0);
  s.check_le(std::abs(x1.at(1, 0) - cd(1.0, 0.0)), 1e-15, "X(1)|0> = |1>");
  ComplexOperator z1 = heisenberg_weyl(2, 0, 1);
  s.check_le(std::abs(z1.at(1, 1) - cd(-1.0, 0.0)), 1e-15, "Z(1)|1> = -|1>");
  s.check_le(fro_norm(heisenberg_weyl(1, 0, 0) - ComplexOperator::identity(1)), 1e-15,
             "d=1 gives the identity");
  return s.result;
}

// ---------------------------------------------------------------------------

DensityOperator expected_twirl(const QuantumChannel& ch, const SectorDecomposition& dec) {
  const int d = dec.total_dim;
  ComplexOperator acc(ch.d_out() * d, ch.d_out() * d);
  for (const Sector& sec : dec.sectors) {
    if (sec.weight <= 0.0) continue;
    ComplexOperator pi_a(d, d), pi_ap(d, d);
    for (int k = 0; k < sec.dim; ++k) {
      pi_a.at(sec.basis_a[k], sec.basis_a[k]) = 1.0 / sec.dim;
      pi_ap.at(sec.basis_ap[k], sec.basis_ap[k]) = 1.0 / sec.dim;
    }
    pi_a.with_dims({d});
    ComplexOperator n_pi = apply(ch, DensityOperator(pi_a)).op();
    ComplexOperator term = tensor(n_pi, pi_ap);
    term *= cd(sec.weight, 0.0);
    acc += term;
  }
  acc.with_dims({ch.d_out(), d});
  return DensityOperator(std::move(acc));
}

SuiteResult suite_twirl(const VerifyOptions&) {
  Suite s("twirl");
  std::vector<QuantumChannel> channels = {identity_channel(2), depolarizing_channel(2, 0.2),
                                          dephasing_channel(0.3), amplitude_damping_channel(0.3)};
  std::vector<SectorDecomposition> decs = {single_sector(2), diagonal_sectors({0.25, 0.75})};
  for (const QuantumChannel& ch : channels)
    for (const SectorDecomposition& dec : decs) {
      DensityOperator got = twirl_average(ch, dec);
      DensityOperator want = expected_twirl(ch, dec);
      s.check_le(max_abs(got.op() - want.op()), 1e-11, "twirl decoupling (" + ch.name() + ")");
    }
  return s.result;
}

// ---------------------------------------------------------------------------

SuiteResult suite_coding(const VerifyOptions& opts) {
  Suite s("coding");
  Rng rng(opts.seed + 4);

  // encoder unitarity over random labels on a mixed-sector decomposition
  SectorDecomposition dec3;
  dec3.total_dim = 4;
  dec3.sectors.push_back({1, 0.3, {0}, {0}});
  dec3.sectors.push_back({3, 0.7, {1, 2, 3}, {1, 2, 3}});
  dec3.validate();
  for (int i = 0; i < 100; ++i) {
    CodewordLabel label = sample_label(dec3, rng);
    ComplexOperator u = encoder_unitary(label, dec3);
    s.check_le(fro_norm(adjoint(u) * u - ComplexOperator::identity(4)), 1e-12,
               "encoder unitarity");
  }

  const QuantumChannel ch = dephasing_channel(0.3);
  const SectorDecomposition dec = single_sector(2);

  // PGM completeness and the success/collision identity on sampled codes
  for (int trial = 0; trial < 40; ++trial) {
    const int m = 2 + int(rng.below(7));
    EacCode code = sample_code(ch, m, dec, Rng::mix_seed(opts.seed, 100 + trial));
    ComplexOperator sum = code.completion;
    for (const ComplexOperator& lam : code.povm) sum += lam;
    s.check_le(fro_norm(sum - ComplexOperator::identity(code.outputs.front().dim())), 1e-10,
               "PGM completeness");
    SuccessReport rep = avg_success(code);
    s.check_le(rep.collision_identity_residual, 1e-8, "success/collision identity");
  }

  // unitary pushing and invariance of the decoupled state
  EnsembleReport er = ensemble_vs_bound(ch, dec, 0.5, 0.1, 8, opts.seed + 9);
  s.check_le(er.eqi_max_residual, 1e-10, "transpose pushing of the encoder");
  s.check_le(er.eqii_max_residual, 1e-10, "invariance of the decoupled average");
  s.check(er.cq_reduction_slack >= -1e-7, "classical-quantum reduction direction");
  return s.result;
}

}  // namespace

SuiteResult run_suite(const std::string& name, const VerifyOptions& opts) {
  if (name == "linalg") return suite_linalg(opts);
  if (name == "channels") return suite_channels(opts);
  if (name == "entropy") return suite_entropy(opts);
  if (name == "types") return suite_types(opts);
  if (name == "hw") return suite_hw(opts);
  if (name == "twirl") return suite_twirl(opts);
  if (name == "coding") return suite_coding(opts);
  throw ParseError("unknown suite: " + name);
}

std::vector<std::string> suite_names() {
  return {"linalg", "channels", "entropy", "types", "hw", "twirl", "coding"};
}

std::vector<SuiteResult> run_all_suites(const VerifyOptions& opts) {
  std::vector<SuiteResult> out;
  for (const std::string& name : suite_names()) out.push_back(run_suite(name, opts));
  return out;
}

}  // namespace eacap
