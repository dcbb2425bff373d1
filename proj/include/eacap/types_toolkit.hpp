#pragma once

#include <cstdint>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "eacap/coding.hpp"
#include "eacap/linalg.hpp"

namespace eacap {

using BigInt = boost::multiprecision::cpp_int;

/// Empirical distribution of a length-n sequence: per-symbol counts.
struct TypeDistribution {
  std::vector<int> counts;
  int n() const;
  int alphabet() const { return int(counts.size()); }
};

/// All compositions of n into `alphabet` parts, lexicographically from
/// (n,0,...,0) down to (0,...,0,n). Throws ResourceCapError past `cap` types.
std::vector<TypeDistribution> enumerate_types(int n, int alphabet, uint64_t cap = 10'000'000);

/// Exact multinomial coefficient n! / prod(counts!).
BigInt type_class_size(const TypeDistribution& t);
double log2_type_class_size(const TypeDistribution& t);

/// Shannon entropy H(t) in bits (0 log 0 = 0).
double type_entropy(const TypeDistribution& t);

/// D(t||q) in bits; q must be positive wherever t is.
double kl_divergence(const std::vector<double>& t, const std::vector<double>& q);
double kl_divergence(const TypeDistribution& t, const std::vector<double>& q);

/// log2 of the per-sequence i.i.d. mass q^n(x^n) for a sequence of type t,
/// i.e. -n (H(t) + D(t||q)).
double iid_sequence_log2_mass(const TypeDistribution& t, const std::vector<double>& q);
/// |T^t| * q^n(x^n): total probability of the type class.
double iid_type_mass(const TypeDistribution& t, const std::vector<double>& q);

struct TailBound {
  double exact_tail = 0.0;  // total mass of types with D(t||q) > mu
  double bound = 0.0;       // 2^{-n (mu - |X| log2(n+1)/n)}
};
TailBound tail_bound_check(int n, const std::vector<double>& q, double mu,
                           uint64_t cap = 10'000'000);

/// Resource state restricted to types mu-close to the Schmidt spectrum q.
struct RestrictedResource {
  std::vector<TypeDistribution> kept;
  std::vector<double> weights;       // p(t) = p'(t)/alpha
  double alpha = 0.0;                // retained mass
  double fidelity_gap_bound = 0.0;   // g(n,mu); trace distance to psi^{(x)n} is sqrt(1-alpha)
  std::vector<double> schmidt_q;     // positive Schmidt squares of psi
  int n = 0;
  double mu = 0.0;
};

/// Default mu = (|X|+1) log2(n+1) / n.
double default_mu(int n, int alphabet);

RestrictedResource restricted_resource(const PureStateVector& psi, int n, double mu,
                                       uint64_t cap = 10'000'000);

/// Type-indexed sector decomposition of the n-fold product space, consumable
/// by the coding simulator. Requires the Schmidt bases of psi to be
/// computational basis vectors (up to phase), as in the tensor-power
/// construction; sectors are the kept type classes with weights p(t).
SectorDecomposition canonical_sector_decomposition(const PureStateVector& psi, int n, double mu,
                                                   uint64_t type_cap = 10'000'000,
                                                   uint64_t dim_cap = 1u << 20);

}  // namespace eacap
