#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "eacap/channels.hpp"
#include "eacap/divergences.hpp"
#include "eacap/linalg.hpp"

namespace eacap {

/// I(A':B) of omega = (N (x) id)(purify(rho_a)); independent of the chosen
/// purification.
double mutual_info(const QuantumChannel& ch, const DensityOperator& rho_a);
double mutual_info_variance(const QuantumChannel& ch, const DensityOperator& rho_a);

struct CapacityOptions {
  int restarts = 16;          // random restarts, plus pi and pure seeds
  int max_iterations = 10000;
  double grad_tol = 1e-8;
  double fd_step = 1e-5;      // central-difference step on the Hermitian basis
  double cluster_tol = 1e-6;  // trace-distance clustering of maximizers
  uint64_t seed = 20240915;
  int d_cap = 8;
};

struct CapacityResult {
  double c_ea = 0.0;
  std::vector<DensityOperator> maximizers;  // representatives of the argmax set
  double v_min = 0.0;
  double v_max = 0.0;
  int restarts = 0;
  double exit_grad_norm = 0.0;
  bool converged = false;
  // Set when several distinct representatives remain after clustering; in
  // that case v_min/v_max only bracket the variance range over the set that
  // was found.
  bool maximizer_set_maybe_continuum = false;
};

/// Projected gradient ascent of the mutual information over input states.
CapacityResult optimize_capacity(const QuantumChannel& ch, const CapacityOptions& opts = {});

/// n C_ea + sqrt(n V_sel) Phi^{-1}(eps), V_sel = v_min below eps = 1/2 and
/// v_max at or above it (both branches agree at 1/2).
double gaussian_rate(const CapacityResult& cap, int n, double eps);

struct ProductDhOptions {
  uint64_t type_cap = 20'000'000;  // classical path: max number of types
  int quantum_dim_cap = 4096;      // explicit tensor path: max total dimension
};

/// D_H^eps(rho^(x)n || sigma^(x)n): type-compressed classical path when the
/// pair commutes, explicit tensor powers otherwise.
HypothesisTest product_hypothesis_dh(const ComplexOperator& rho, const ComplexOperator& sigma,
                                     int n, double eps, const ProductDhOptions& opts = {});

/// Classical specialization from a shared one-shot eigenvalue list.
HypothesisTest product_hypothesis_dh_classical(const std::vector<ClassicalAtom>& atoms, int n,
                                               double eps, uint64_t type_cap = 20'000'000);

/// Rigorous finite-n achievable bits over n uses:
/// D_H^{eps-3/sqrt(n)}((N(psi))^(x)n || (N(rho_A))^(x)n (x) rho_A'^(x)n)
/// - log2((1-eps) n) - (2|X|+1) log2(n+1), with |X| the Schmidt rank of psi.
/// Throws InfeasibleError when eps <= 3/sqrt(n).
double achievable_bound_exact(const QuantumChannel& ch, const PureStateVector& psi, int n,
                              double eps, const ProductDhOptions& opts = {});

/// Converse for covariant channels with irreducible input representation:
/// D_H^eps((N(Phi))^(x)n || (N(pi))^(x)n (x) pi^(x)n).
double covariant_converse(const QuantumChannel& ch, int n, double eps,
                          const ProductDhOptions& opts = {});

struct RateBound {
  int n = 0;
  double eps = 0.0;
  std::optional<double> lower_bits;  // achievable_bound_exact, when feasible
  std::optional<double> upper_bits;  // covariant_converse, when the flag is set
  double gaussian_bits = 0.0;
  double c_ea = 0.0;
  double v_sel = 0.0;
};

std::vector<RateBound> dispersion_table(const QuantumChannel& ch, const CapacityResult& cap,
                                        double eps, const std::vector<int>& n_list,
                                        const ProductDhOptions& opts = {});

}  // namespace eacap
