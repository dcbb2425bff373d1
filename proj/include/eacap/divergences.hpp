#pragma once

#include <optional>
#include <vector>

#include "eacap/linalg.hpp"

namespace eacap {

/// Result of an optimal binary test. beta is the smallest type-II error at
/// type-I error <= eps; dh = -log2 beta.
struct HypothesisTest {
  double beta = 0.0;
  double dh = 0.0;
  double dual_threshold = 0.0;   // maximizer t* of the Lagrangian dual
  double type1_error = 0.0;
  double duality_gap = 0.0;
  int projector_rank = 0;        // fully included eigendirections
  double kernel_weight = 0.0;    // fractional weight on the boundary direction
  std::optional<ComplexOperator> test_operator;  // Q, present on matrix paths
};

/// Commuting pair given by its joint eigenvalue list. mult compresses
/// repeated atoms (tensor-power types).
struct ClassicalAtom {
  double p = 0.0;
  double q = 0.0;
  double mult = 1.0;
};
struct ClassicalPair {
  std::vector<ClassicalAtom> atoms;
};

/// Atom masses in log2 (multiplicity folded in); p-mass must be finite.
struct LogAtom {
  double log2_p = 0.0;
  double log2_q = 0.0;
};

/// D(rho||sigma) in bits; +inf if supp rho is not contained in supp sigma.
double rel_entropy(const DensityOperator& rho, const DensityOperator& sigma);
/// V(rho||sigma) in bits^2; +inf on support violation.
double rel_entropy_variance(const DensityOperator& rho, const DensityOperator& sigma);
/// Collision relative entropy log2 Tr[(sigma^{-1/4} rho sigma^{-1/4})^2].
double collision_d2(const DensityOperator& rho, const DensityOperator& sigma);
/// Information-spectrum relative entropy, +-1e-6 resolution in R.
double info_spectrum_ds(const DensityOperator& rho, const DensityOperator& sigma, double eps);

struct DhOptions {
  bool force_quantum = false;     // skip the commuting fast path
  double gap_tol = 1e-7;
  int max_bracket_expansions = 24;
};

/// Quantum Neyman-Pearson: beta_eps(rho||sigma) via the concave dual
/// max_{t>=0} [t(1-eps) - Tr (t rho - sigma)_+], primal test recovered in the
/// eigenbasis of t* rho - sigma. sigma only needs to be PSD.
HypothesisTest hypothesis_dh(const DensityOperator& rho, const ComplexOperator& sigma, double eps,
                             const DhOptions& opts = {});
HypothesisTest hypothesis_dh(const DensityOperator& rho, const DensityOperator& sigma, double eps,
                             const DhOptions& opts = {});

/// Exact classical Neyman-Pearson by likelihood-ratio sorting.
HypothesisTest classical_dh(const ClassicalPair& pair, double eps);
/// Same, with masses supplied in log2 so tensor-power tails survive underflow.
HypothesisTest classical_dh_log(std::vector<LogAtom> atoms, double eps);

/// Simultaneous eigenvalues of a commuting Hermitian pair, or nullopt if the
/// pair fails the commutation check. Atoms are (eigenvalue of a, eigenvalue
/// of b) in a common eigenbasis.
std::optional<std::vector<std::pair<double, double>>> simultaneous_eigenvalues(
    const ComplexOperator& a, const ComplexOperator& b);

/// Standard normal CDF (absolute accuracy ~1e-14) and its inverse
/// (|Phi(Phi^{-1}(eps)) - eps| <= 1e-10).
double normal_cdf(double a);
double normal_quantile(double eps);

/// n D + sqrt(n V) Phi^{-1}(eps).
double second_order_value(double d, double v, double n, double eps);

}  // namespace eacap
