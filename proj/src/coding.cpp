#include "eacap/coding.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "eacap/errors.hpp"
#include "eacap/parallel.hpp"

namespace eacap {

void SectorDecomposition::validate() const {
  if (total_dim < 1) throw std::invalid_argument("SectorDecomposition: total_dim must be >= 1");
  std::vector<bool> seen_a(total_dim, false), seen_ap(total_dim, false);
  double wsum = 0.0;
  for (const Sector& s : sectors) {
    if (s.dim < 1 || int(s.basis_a.size()) != s.dim || int(s.basis_ap.size()) != s.dim)
      throw std::invalid_argument("SectorDecomposition: sector basis size != dim");
    if (s.weight < -1e-12) throw std::invalid_argument("SectorDecomposition: negative weight");
    for (int i : s.basis_a) {
      if (i < 0 || i >= total_dim || seen_a[i])
        throw std::invalid_argument("SectorDecomposition: A bases must be disjoint and in range");
      seen_a[i] = true;
    }
    for (int i : s.basis_ap) {
      if (i < 0 || i >= total_dim || seen_ap[i])
        throw std::invalid_argument("SectorDecomposition: A' bases must be disjoint and in range");
      seen_ap[i] = true;
    }
    wsum += s.weight;
  }
  if (std::abs(wsum - 1.0) > 1e-12)
    throw std::invalid_argument("SectorDecomposition: weights must sum to 1");
}

bool SectorDecomposition::spans_full_product() const {
  long long s = 0;
  for (const Sector& sec : sectors) s += (long long)sec.dim * sec.dim;
  return s == (long long)total_dim * total_dim;
}

SectorDecomposition single_sector(int d) {
  SectorDecomposition dec;
  dec.total_dim = d;
  Sector s;
  s.dim = d;
  s.weight = 1.0;
  s.basis_a.resize(d);
  std::iota(s.basis_a.begin(), s.basis_a.end(), 0);
  s.basis_ap = s.basis_a;
  dec.sectors.push_back(std::move(s));
  dec.validate();
  return dec;
}

SectorDecomposition diagonal_sectors(const std::vector<double>& weights) {
  SectorDecomposition dec;
  dec.total_dim = int(weights.size());
  for (int i = 0; i < dec.total_dim; ++i) {
    Sector s;
    s.dim = 1;
    s.weight = weights[i];
    s.basis_a = {i};
    s.basis_ap = {i};
    dec.sectors.push_back(std::move(s));
  }
  dec.validate();
  return dec;
}

ComplexOperator heisenberg_weyl(int d, int x, int z) {
  if (d < 1) throw std::invalid_argument("heisenberg_weyl: d must be >= 1");
  if (x < 0 || z < 0 || x >= std::max(d, 1) || z >= std::max(d, 1))
    throw std::invalid_argument("heisenberg_weyl: label out of range");
  ComplexOperator m(d, d);
  const double w = 6.283185307179586476925286766559 / d;
  for (int j = 0; j < d; ++j) m.at((j + x) % d, j) = std::polar(1.0, w * z * j);
  m.with_dims({d});
  return m;
}

namespace {

void check_label(const CodewordLabel& label, const SectorDecomposition& dec) {
  if (label.parts.size() != dec.sectors.size())
    throw std::invalid_argument("codeword label: sector count mismatch");
  for (size_t t = 0; t < label.parts.size(); ++t) {
    const auto& p = label.parts[t];
    const int d = dec.sectors[t].dim;
    if (p.x < 0 || p.x >= d || p.z < 0 || p.z >= d || (p.b != 0 && p.b != 1))
      throw std::invalid_argument("codeword label: component out of range");
  }
}

}  // namespace

ComplexOperator encoder_unitary(const CodewordLabel& label, const SectorDecomposition& dec) {
  check_label(label, dec);
  ComplexOperator u(dec.total_dim, dec.total_dim);
  std::vector<bool> covered(dec.total_dim, false);
  for (size_t t = 0; t < dec.sectors.size(); ++t) {
    const Sector& sec = dec.sectors[t];
    const auto& p = label.parts[t];
    const ComplexOperator block = heisenberg_weyl(sec.dim, p.x, p.z);
    const double sign = p.b ? -1.0 : 1.0;
    for (int k = 0; k < sec.dim; ++k)
      for (int l = 0; l < sec.dim; ++l) {
        const cd v = block.at(k, l);
        if (v != cd(0.0, 0.0)) u.at(sec.basis_a[k], sec.basis_a[l]) = sign * v;
      }
    for (int i : sec.basis_a) covered[i] = true;
  }
  for (int i = 0; i < dec.total_dim; ++i)
    if (!covered[i]) u.at(i, i) = 1.0;
  u.with_dims({dec.total_dim});
  return u;
}

ComplexOperator encoder_unitary_mirror_transpose(const CodewordLabel& label,
                                                 const SectorDecomposition& dec) {
  check_label(label, dec);
  ComplexOperator u(dec.total_dim, dec.total_dim);
  std::vector<bool> covered(dec.total_dim, false);
  for (size_t t = 0; t < dec.sectors.size(); ++t) {
    const Sector& sec = dec.sectors[t];
    const auto& p = label.parts[t];
    const ComplexOperator block = heisenberg_weyl(sec.dim, p.x, p.z);
    const double sign = p.b ? -1.0 : 1.0;
    for (int k = 0; k < sec.dim; ++k)
      for (int l = 0; l < sec.dim; ++l) {
        const cd v = block.at(l, k);  // transpose within the sector pairing
        if (v != cd(0.0, 0.0)) u.at(sec.basis_ap[k], sec.basis_ap[l]) = sign * v;
      }
    for (int i : sec.basis_ap) covered[i] = true;
  }
  for (int i = 0; i < dec.total_dim; ++i)
    if (!covered[i]) u.at(i, i) = 1.0;
  u.with_dims({dec.total_dim});
  return u;
}

PureStateVector resource_state(const SectorDecomposition& dec) {
  const int d = dec.total_dim;
  std::vector<cd> amp(size_t(d) * d, cd(0.0, 0.0));
  for (const Sector& sec : dec.sectors) {
    if (sec.weight <= 0.0) continue;
    const double a = std::sqrt(sec.weight / sec.dim);
    for (int k = 0; k < sec.dim; ++k) amp[size_t(sec.basis_a[k]) * d + sec.basis_ap[k]] += a;
  }
  return PureStateVector(std::move(amp), {d, d});
}

DensityOperator kappa_state(const SectorDecomposition& dec) {
  const int d = dec.total_dim;
  ComplexOperator m(d * d, d * d);
  for (const Sector& sec : dec.sectors) {
    if (sec.weight <= 0.0) continue;
    const double w = sec.weight / (double(sec.dim) * sec.dim);
    for (int k = 0; k < sec.dim; ++k)
      for (int l = 0; l < sec.dim; ++l) {
        const int idx = sec.basis_a[k] * d + sec.basis_ap[l];
        m.at(idx, idx) += w;
      }
  }
  m.with_dims({d, d});
  return DensityOperator(std::move(m));
}

uint64_t label_space_size(const SectorDecomposition& dec, uint64_t cap) {
  long double size = 1.0L;
  for (const Sector& s : dec.sectors) size *= 2.0L * s.dim * s.dim;
  if (size > (long double)cap)
    throw ResourceCapError("label space larger than the enumeration cap; use the sector-wise analytic path");
  return uint64_t(size);
}

CodewordLabel sample_label(const SectorDecomposition& dec, Rng& rng) {
  CodewordLabel label;
  label.parts.resize(dec.sectors.size());
  for (size_t t = 0; t < dec.sectors.size(); ++t) {
    const int d = dec.sectors[t].dim;
    label.parts[t].x = int(rng.below(uint64_t(d)));
    label.parts[t].z = int(rng.below(uint64_t(d)));
    label.parts[t].b = int(rng.below(2));
  }
  return label;
}

CodewordLabel label_from_ordinal(const SectorDecomposition& dec, uint64_t ordinal) {
  CodewordLabel label;
  label.parts.resize(dec.sectors.size());
  for (size_t t = 0; t < dec.sectors.size(); ++t) {
    const uint64_t d = uint64_t(dec.sectors[t].dim);
    label.parts[t].x = int(ordinal % d);
    ordinal /= d;
    label.parts[t].z = int(ordinal % d);
    ordinal /= d;
    label.parts[t].b = int(ordinal % 2);
    ordinal /= 2;
  }
  return label;
}

std::vector<ComplexOperator> pgm_decoder(const std::vector<DensityOperator>& outputs,
                                         ComplexOperator* completion_out) {
  if (outputs.empty()) throw std::invalid_argument("pgm_decoder: no output states");
  const int n = outputs.front().dim();
  ComplexOperator s(n, n);
  for (const DensityOperator& rho : outputs) {
    if (rho.dim() != n) throw std::invalid_argument("pgm_decoder: mixed dimensions");
    s += rho.op();
  }
  const ComplexOperator inv_sqrt = op_inv_sqrt(s);
  std::vector<ComplexOperator> povm;
  povm.reserve(outputs.size());
  for (const DensityOperator& rho : outputs) povm.push_back(inv_sqrt * rho.op() * inv_sqrt);
  if (completion_out) {
    *completion_out = ComplexOperator::identity(n) - support_projector(s);
    if (!outputs.front().dims().empty()) completion_out->with_dims(outputs.front().dims());
  }
  return povm;
}

namespace {

DensityOperator encode_and_transmit(const QuantumChannel& ch, const PureStateVector& phi,
                                    const CodewordLabel& label, const SectorDecomposition& dec) {
  const ComplexOperator u = encoder_unitary(label, dec);
  const ComplexOperator lifted = tensor(u, ComplexOperator::identity(dec.total_dim));
  std::vector<cd> amp = apply_matrix(lifted, phi.amplitudes());
  PureStateVector encoded(std::move(amp), phi.dims());
  return apply_left(ch, encoded.projector());
}

EacCode build_code(const QuantumChannel& ch, std::vector<CodewordLabel> labels,
                   const SectorDecomposition& dec) {
  if (ch.d_in() != dec.total_dim)
    throw std::invalid_argument("code construction: channel input dimension != decomposition dimension");
  EacCode code{int(labels.size()), resource_state(dec), std::move(labels), {}, {}, {}};
  code.outputs.reserve(code.labels.size());
  for (const CodewordLabel& s : code.labels)
    code.outputs.push_back(encode_and_transmit(ch, code.resource, s, dec));
  code.povm = pgm_decoder(code.outputs, &code.completion);
  return code;
}

}  // namespace

EacCode sample_code(const QuantumChannel& ch, int message_count, const SectorDecomposition& dec,
                    uint64_t seed) {
  if (message_count < 1) throw std::invalid_argument("sample_code: message count must be >= 1");
  Rng rng(seed);
  std::vector<CodewordLabel> labels;
  labels.reserve(message_count);
  for (int m = 0; m < message_count; ++m) labels.push_back(sample_label(dec, rng));
  return build_code(ch, std::move(labels), dec);
}

EacCode code_from_labels(const QuantumChannel& ch, const std::vector<CodewordLabel>& labels,
                         const SectorDecomposition& dec) {
  return build_code(ch, labels, dec);
}

SuccessReport avg_success(const EacCode& code) {
  const int m = code.message_count;
  SuccessReport rep;
  double acc = 0.0;
  for (int i = 0; i < m; ++i) acc += trace(code.povm[i] * code.outputs[i].op()).real();
  rep.p_succ = acc / m;

  // Collision identity: sigma_MS is uniform over the orthogonal |m, s_m>, so
  // conjugating sigma_MSBB' by (sigma_MS (x) sigma_BB')^{-1/4} leaves a block
  // diagonal matrix whose squared Frobenius norm splits over messages.
  const int n = code.outputs.front().dim();
  ComplexOperator sigma_bb(n, n);
  for (const DensityOperator& rho : code.outputs) sigma_bb += rho.op();
  sigma_bb *= cd(1.0 / m, 0.0);
  const ComplexOperator q = op_pow(sigma_bb, -0.25, true);
  double total = 0.0;
  for (int i = 0; i < m; ++i) {
    const ComplexOperator t = q * code.outputs[i].op() * q;
    double f2 = 0.0;
    for (const cd& x : t.data()) f2 += std::norm(x);
    total += f2;
  }
  rep.d2_value = std::log2(total / m);
  rep.collision_identity_residual = std::abs(rep.p_succ - std::exp2(rep.d2_value) / m);
  return rep;
}

DensityOperator twirl_average(const QuantumChannel& ch, const SectorDecomposition& dec,
                              uint64_t enum_cap) {
  const uint64_t size = label_space_size(dec, enum_cap);
  const PureStateVector phi = resource_state(dec);
  const int out_dim = ch.d_out() * dec.total_dim;
  ComplexOperator acc(out_dim, out_dim);
  for (uint64_t s = 0; s < size; ++s) {
    const CodewordLabel label = label_from_ordinal(dec, s);
    acc += encode_and_transmit(ch, phi, label, dec).op();
  }
  acc *= cd(1.0 / double(size), 0.0);
  acc.with_dims({ch.d_out(), dec.total_dim});
  return DensityOperator(std::move(acc));
}

double pgm_one_shot_bound(const QuantumChannel& ch, const SectorDecomposition& dec, double eps,
                          double delta) {
  if (!(delta > 0.0 && 2.0 * delta < eps && eps < 1.0))
    throw std::invalid_argument("pgm_one_shot_bound: need 0 < 2 delta < eps < 1");
  const DensityOperator omega = apply_left(ch, resource_state(dec).projector());
  const DensityOperator tau = apply_left(ch, kappa_state(dec));
  const HypothesisTest ht = hypothesis_dh(omega, tau, eps - 2.0 * delta);
  return ht.dh - std::log2((1.0 - eps) / (delta * delta));
}

double hayashi_nagaoka_bound(const QuantumChannel& ch, const SectorDecomposition& dec,
                             double eps, double delta) {
  if (!(delta > 0.0 && delta < eps && eps < 1.0))
    throw std::invalid_argument("hayashi_nagaoka_bound: need 0 < delta < eps < 1");
  const DensityOperator omega = apply_left(ch, resource_state(dec).projector());
  const DensityOperator tau = apply_left(ch, kappa_state(dec));
  const HypothesisTest ht = hypothesis_dh(omega, tau, eps - delta);
  return ht.dh - std::log2(4.0 * eps / (delta * delta));
}

EnsembleReport ensemble_vs_bound(const QuantumChannel& ch, const SectorDecomposition& dec,
                                 double eps, double delta, int trials, uint64_t seed,
                                 int message_override) {
  EnsembleReport rep;
  rep.trials = trials;
  rep.bound_bits = pgm_one_shot_bound(ch, dec, eps, delta);
  rep.message_count = message_override > 0
                          ? message_override
                          : std::max(1, int(std::floor(std::exp2(rep.bound_bits))));

  rep.per_trial.assign(trials, 0.0);
  parallel_for(trials, [&](int i) {
    const EacCode code = sample_code(ch, rep.message_count, dec, Rng::mix_seed(seed, uint64_t(i)));
    rep.per_trial[i] = avg_success(code).p_succ;
  });
  rep.mean_p_succ = kahan_sum(rep.per_trial) / trials;
  double var = 0.0;
  for (double x : rep.per_trial) var += (x - rep.mean_p_succ) * (x - rep.mean_p_succ);
  rep.std_err = trials > 1 ? std::sqrt(var / (double(trials) * (trials - 1))) : 0.0;
  rep.meets_bound = rep.mean_p_succ >= 1.0 - eps - 3.0 * rep.std_err;

  // Unitary pushing (transpose onto B') and invariance of the decoupled
  // average, checked over the whole label set when enumerable.
  const PureStateVector phi = resource_state(dec);
  const DensityOperator base_out = apply_left(ch, phi.projector());
  const DensityOperator rho_bb = twirl_average(ch, dec);
  const ComplexOperator eye_b = ComplexOperator::identity(ch.d_out());
  uint64_t size = 0;
  bool enumerate = true;
  try {
    size = label_space_size(dec, 4096);
  } catch (const ResourceCapError&) {
    enumerate = false;
    size = 64;
  }
  std::vector<DensityOperator> outputs;
  outputs.reserve(size);
  Rng label_rng(Rng::mix_seed(seed, 0xE0E0E0E0ULL));
  for (uint64_t s = 0; s < size; ++s) {
    const CodewordLabel label =
        enumerate ? label_from_ordinal(dec, s) : sample_label(dec, label_rng);
    const DensityOperator out = encode_and_transmit(ch, phi, label, dec);
    const ComplexOperator w = tensor(eye_b, encoder_unitary_mirror_transpose(label, dec));
    rep.eqi_max_residual =
        std::max(rep.eqi_max_residual, fro_norm(out.op() - w * base_out.op() * adjoint(w)));
    rep.eqii_max_residual =
        std::max(rep.eqii_max_residual, fro_norm(rho_bb.op() - w * rho_bb.op() * adjoint(w)));
    outputs.push_back(out);
  }

  // Classical-quantum reduction: D_H(rho_SBB' || rho_S (x) rho_BB') >= min_s D_H(rho^s || rho_BB').
  const double eps_cq = eps - 2.0 * delta;
  const int bb = ch.d_out() * dec.total_dim;
  if (uint64_t(bb) * size <= 512) {
    ComplexOperator cq(int(size) * bb, int(size) * bb);
    for (uint64_t s = 0; s < size; ++s)
      for (int i = 0; i < bb; ++i)
        for (int j = 0; j < bb; ++j)
          cq.at(int(s) * bb + i, int(s) * bb + j) = outputs[s].op().at(i, j) / double(size);
    cq.with_dims({int(size), bb});
    const DensityOperator rho_sbb(cq);
    ComplexOperator prod(int(size) * bb, int(size) * bb);
    for (uint64_t s = 0; s < size; ++s)
      for (int i = 0; i < bb; ++i)
        for (int j = 0; j < bb; ++j)
          prod.at(int(s) * bb + i, int(s) * bb + j) = rho_bb.op().at(i, j) / double(size);
    const double lhs = hypothesis_dh(rho_sbb, prod, eps_cq).dh;
    double min_rhs = std::numeric_limits<double>::infinity();
    for (const DensityOperator& out : outputs)
      min_rhs = std::min(min_rhs, hypothesis_dh(out, rho_bb, eps_cq).dh);
    rep.cq_reduction_slack = lhs - min_rhs;
  }
  return rep;
}

}  // namespace eacap
