#pragma once

#include <string>
#include <vector>

#include "eacap/linalg.hpp"

namespace eacap {

/// CPTP map in Kraus form. Kraus operators are d_out x d_in; construction
/// checks trace preservation (sum K†K = I within 1e-9) and complete
/// positivity (Choi operator PSD within -1e-9).
class QuantumChannel {
 public:
  QuantumChannel(std::vector<ComplexOperator> kraus, bool covariant_irreducible_input = false,
                 std::string name = "");

  const std::vector<ComplexOperator>& kraus() const { return kraus_; }
  int d_in() const { return d_in_; }
  int d_out() const { return d_out_; }
  bool covariant_irreducible_input() const { return covariant_; }
  const std::string& name() const { return name_; }

 private:
  std::vector<ComplexOperator> kraus_;
  int d_in_ = 0;
  int d_out_ = 0;
  bool covariant_ = false;
  std::string name_;
};

struct ValidationReport {
  double trace_preservation_residual = 0.0;  // max |sum K†K - I|
  double choi_min_eigenvalue = 0.0;
  bool pass = false;
};

ValidationReport validate(const QuantumChannel& ch);

/// sum_k K rho K†.
DensityOperator apply(const QuantumChannel& ch, const DensityOperator& rho);

/// (N (x) id) on a state whose first tensor factor matches d_in.
DensityOperator apply_left(const QuantumChannel& ch, const DensityOperator& rho);

/// n-fold memoryless repetition; Kraus set is all n-fold tensor products.
/// Throws ResourceCapError if d_in^n * d_out^n exceeds dim_cap.
QuantumChannel tensor_power(const QuantumChannel& ch, int n, int dim_cap = 4096);

/// Choi state (N (x) id)(Phi) with the normalized maximally entangled state,
/// so the result is a DensityOperator on dims {d_out, d_in}.
DensityOperator choi(const QuantumChannel& ch);

// Named families. Covariance flags: identity, depolarizing, dephasing and
// qubit_pauli assert an irreducible covariant input representation;
// amplitude_damping does not.
QuantumChannel identity_channel(int d);
QuantumChannel depolarizing_channel(int d, double p);
QuantumChannel dephasing_channel(double p);
QuantumChannel qubit_pauli_channel(double px, double py, double pz);
QuantumChannel amplitude_damping_channel(double gamma);

struct ChannelParams {
  int d = 2;
  double p = 0.0;
  double gamma = 0.0;
  double px = 0.0, py = 0.0, pz = 0.0;
};
/// name in {identity, depolarizing, dephasing, qubit_pauli, amplitude_damping}.
QuantumChannel standard_channel(const std::string& name, const ChannelParams& params);

/// Unitaries of the covariance group declared for a named family (empty for
/// channels without the flag). For these families the output representation
/// equals the input one.
std::vector<ComplexOperator> covariance_group(const QuantumChannel& ch);

/// Channel specification files:
///   {"kind":"named","name":"depolarizing","d":2,"p":0.2}
///   {"kind":"kraus","d_in":2,"d_out":2,"kraus":[[[[re,im],...],...],...]}
/// Parse errors cite the offending field path.
QuantumChannel channel_from_json_text(const std::string& text);
QuantumChannel load_channel_file(const std::string& path);

}  // namespace eacap
