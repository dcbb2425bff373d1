#pragma once

#include <cstdint>
#include <vector>

#include "eacap/channels.hpp"
#include "eacap/divergences.hpp"
#include "eacap/linalg.hpp"
#include "eacap/rng.hpp"

namespace eacap {

/// One block of the direct-sum decomposition of A (x) A': a d_t-dimensional
/// subspace on each side, spanned by the listed computational basis vectors
/// (paired index-by-index), carrying weight p(t) of the resource state.
struct Sector {
  int dim = 0;
  double weight = 0.0;
  std::vector<int> basis_a;   // indices into the A basis
  std::vector<int> basis_ap;  // indices into the A' (mirror) basis
};

/// Sectors must be disjoint on each side; they may cover only part of the
/// space (encoders act as the identity off the covered support).
struct SectorDecomposition {
  int total_dim = 0;  // d_A = d_A'
  std::vector<Sector> sectors;

  void validate() const;  // throws std::invalid_argument
  bool spans_full_product() const;  // sum d_t^2 == d_A^2
};

SectorDecomposition single_sector(int d);
/// One-dimensional sectors with the given weights (classical resource).
SectorDecomposition diagonal_sectors(const std::vector<double>& weights);

/// Codeword label: per sector (x_t, z_t, b_t) with x,z in [0,d_t) and b in {0,1}.
struct CodewordLabel {
  struct Part {
    int x = 0, z = 0, b = 0;
  };
  std::vector<Part> parts;
};

/// X(x) Z(z): X(x)|j> = |j+x mod d>, Z(z)|j> = e^{2 pi i z j / d} |j>.
/// For d = 1 both are the identity.
ComplexOperator heisenberg_weyl(int d, int x, int z);

/// Block-diagonal (+-1)^{b_t} X(x_t) Z(z_t) over the sectors, identity on any
/// uncovered basis vectors. Always unitary.
ComplexOperator encoder_unitary(const CodewordLabel& label, const SectorDecomposition& dec);

/// The operator label transported to the mirror side by the transpose trick:
/// the per-sector transpose acting on the A' basis.
ComplexOperator encoder_unitary_mirror_transpose(const CodewordLabel& label,
                                                 const SectorDecomposition& dec);

/// theta = sum_t sqrt(p(t)) |Phi^t>, the sector-superposed resource state on
/// A (x) A'.
PureStateVector resource_state(const SectorDecomposition& dec);
/// kappa = sum_t p(t) pi^t (x) pi^t.
DensityOperator kappa_state(const SectorDecomposition& dec);

/// |S| = prod_t 2 d_t^2 (throws ResourceCapError above cap).
uint64_t label_space_size(const SectorDecomposition& dec, uint64_t cap = 1'000'000);
CodewordLabel sample_label(const SectorDecomposition& dec, Rng& rng);
CodewordLabel label_from_ordinal(const SectorDecomposition& dec, uint64_t ordinal);

struct EacCode {
  int message_count = 0;
  PureStateVector resource;                 // phi_{AB'}
  std::vector<CodewordLabel> labels;        // s_m
  std::vector<DensityOperator> outputs;     // rho^{s_m} on B (x) B'
  std::vector<ComplexOperator> povm;        // Lambda^m
  ComplexOperator completion;               // failure outcome, I - Pi_supp
};

/// Pretty-good measurement: Lambda^m = S^{-1/2} rho^m S^{-1/2} with
/// S = sum rho^m and support inverses; completion = I - Pi_supp.
std::vector<ComplexOperator> pgm_decoder(const std::vector<DensityOperator>& outputs,
                                         ComplexOperator* completion_out = nullptr);

/// Random code with labels i.i.d. uniform over S; reproducible from seed.
EacCode sample_code(const QuantumChannel& ch, int message_count, const SectorDecomposition& dec,
                    uint64_t seed);
/// Deterministic code from explicit labels.
EacCode code_from_labels(const QuantumChannel& ch, const std::vector<CodewordLabel>& labels,
                         const SectorDecomposition& dec);

struct SuccessReport {
  double p_succ = 0.0;
  double d2_value = 0.0;                    // D2(sigma_MSBB' || sigma_MS (x) sigma_BB')
  double collision_identity_residual = 0.0; // |p_succ - 2^{D2}/M|
};
/// Average success probability of the PGM together with the collision
/// identity evaluated on the code's classical-quantum state.
SuccessReport avg_success(const EacCode& code);

/// Exact average over all s in S of N(U(s) phi U(s)†) on BB'; decouples to
/// sum_t p(t) N(pi^t) (x) pi^t.
DensityOperator twirl_average(const QuantumChannel& ch, const SectorDecomposition& dec,
                              uint64_t enum_cap = 1'000'000);

/// One-shot achievability of the PGM random-coding construction:
/// D_H^{eps-2delta}(N(theta) || N(kappa)) - log2((1-eps)/delta^2),
/// 0 < 2 delta < eps.
double pgm_one_shot_bound(const QuantumChannel& ch, const SectorDecomposition& dec, double eps,
                          double delta);
/// Hayashi-Nagaoka one-shot bound: D_H^{eps-delta}(...) - log2(4 eps / delta^2),
/// 0 < delta < eps.
double hayashi_nagaoka_bound(const QuantumChannel& ch, const SectorDecomposition& dec, double eps,
                             double delta);

struct EnsembleReport {
  int trials = 0;
  int message_count = 0;
  double bound_bits = 0.0;       // PGM one-shot bound used to size M
  double mean_p_succ = 0.0;
  double std_err = 0.0;
  bool meets_bound = false;      // mean >= 1 - eps - 3 SE
  double eqi_max_residual = 0.0;
  double eqii_max_residual = 0.0;
  double cq_reduction_slack = 0.0;  // D_H(rho_SBB'||rho_S x rho_BB') - min_s D_H(rho^s||rho_BB')
  std::vector<double> per_trial;
};
/// Monte-Carlo over random codes at M = max(1, floor(2^bound)) (or
/// message_override), with the unitary-pushing and classical-quantum
/// reduction steps checked by direct evaluation.
EnsembleReport ensemble_vs_bound(const QuantumChannel& ch, const SectorDecomposition& dec,
                                 double eps, double delta, int trials, uint64_t seed,
                                 int message_override = 0);

}  // namespace eacap
