#include "eacap/capacity.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "eacap/errors.hpp"
#include "eacap/parallel.hpp"
#include "eacap/rng.hpp"
#include "eacap/types_toolkit.hpp"

namespace eacap {

namespace {

DensityOperator marginal_product(const DensityOperator& omega) {
  const ComplexOperator b = partial_trace(omega.op(), {0});
  const ComplexOperator ap = partial_trace(omega.op(), {1});
  return DensityOperator(tensor(b, ap));
}

DensityOperator output_state(const QuantumChannel& ch, const DensityOperator& rho_a) {
  return apply_left(ch, purify(rho_a).projector());
}

}  // namespace

double mutual_info(const QuantumChannel& ch, const DensityOperator& rho_a) {
  if (rho_a.dim() != ch.d_in()) throw std::invalid_argument("mutual_info: state dimension != d_in");
  const DensityOperator omega = output_state(ch, rho_a);
  return rel_entropy(omega, marginal_product(omega));
}

double mutual_info_variance(const QuantumChannel& ch, const DensityOperator& rho_a) {
  if (rho_a.dim() != ch.d_in())
    throw std::invalid_argument("mutual_info_variance: state dimension != d_in");
  const DensityOperator omega = output_state(ch, rho_a);
  return rel_entropy_variance(omega, marginal_product(omega));
}

// ---------------------------------------------------------------------------
// Capacity optimization

namespace {

std::vector<double> simplex_project(std::vector<double> v) {
  std::vector<double> u = v;
  std::sort(u.begin(), u.end(), std::greater<double>());
  double css = 0.0, theta = 0.0;
  int rho = 0;
  for (int k = 0; k < int(u.size()); ++k) {
    css += u[k];
    const double t = (css - 1.0) / (k + 1);
    if (u[k] - t > 0.0) {
      rho = k + 1;
      theta = t;
    }
  }
  (void)rho;
  for (double& x : v) x = std::max(x - theta, 0.0);
  return v;
}

DensityOperator project_to_density(const ComplexOperator& h) {
  SpectralDecomposition sd = herm_eig(hermitize(h));
  std::vector<double> lam = simplex_project(sd.eigenvalues);
  const int n = h.rows();
  ComplexOperator diag(n, n);
  for (int i = 0; i < n; ++i) diag.at(i, i) = lam[i];
  ComplexOperator out = sd.eigenvectors * diag * adjoint(sd.eigenvectors);
  out.with_dims({n});
  return DensityOperator(std::move(out));
}

std::vector<ComplexOperator> hermitian_basis(int d) {
  std::vector<ComplexOperator> basis;
  const double isq2 = 1.0 / std::sqrt(2.0);
  for (int i = 0; i < d; ++i) {
    ComplexOperator e(d, d);
    e.at(i, i) = 1.0;
    basis.push_back(std::move(e));
  }
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j) {
      ComplexOperator re(d, d), im(d, d);
      re.at(i, j) = isq2;
      re.at(j, i) = isq2;
      im.at(i, j) = cd(0.0, isq2);
      im.at(j, i) = cd(0.0, -isq2);
      basis.push_back(std::move(re));
      basis.push_back(std::move(im));
    }
  return basis;
}

struct AscentOutcome {
  DensityOperator rho;
  double value = 0.0;
  double grad_norm = 0.0;
  bool converged = false;
};

AscentOutcome ascend(const QuantumChannel& ch, DensityOperator rho, const CapacityOptions& opts,
                     const std::vector<ComplexOperator>& basis) {
  const int d = ch.d_in();
  const double h = opts.fd_step;
  auto value_at = [&](const ComplexOperator& m) { return mutual_info(ch, project_to_density(m)); };

  double f = mutual_info(ch, rho);
  double eta = 0.25;
  double gn = 0.0;
  bool converged = false;
  for (int iter = 0; iter < opts.max_iterations; ++iter) {
    ComplexOperator g(d, d);
    for (const ComplexOperator& e : basis) {
      ComplexOperator plus = rho.op(), minus = rho.op();
      ComplexOperator step = e;
      step *= cd(h, 0.0);
      plus += step;
      minus -= step;
      const double gk = (value_at(plus) - value_at(minus)) / (2.0 * h);
      ComplexOperator contrib = e;
      contrib *= cd(gk, 0.0);
      g += contrib;
    }
    // tangent space of the simplex: remove the trace component
    const double tr = trace(g).real() / d;
    for (int i = 0; i < d; ++i) g.at(i, i) -= tr;
    gn = fro_norm(g);
    if (gn <= opts.grad_tol) {
      converged = true;
      break;
    }
    bool moved = false;
    while (eta >= 1e-13) {
      ComplexOperator cand_m = rho.op();
      ComplexOperator step = g;
      step *= cd(eta, 0.0);
      cand_m += step;
      DensityOperator cand = project_to_density(cand_m);
      const double fc = mutual_info(ch, cand);
      if (fc > f) {
        rho = std::move(cand);
        f = fc;
        eta = std::min(eta * 1.5, 4.0);
        moved = true;
        break;
      }
      eta *= 0.5;
    }
    if (!moved) {
      converged = gn <= 10.0 * opts.grad_tol;
      break;
    }
  }
  return {std::move(rho), f, gn, converged};
}

}  // namespace

CapacityResult optimize_capacity(const QuantumChannel& ch, const CapacityOptions& opts) {
  const int d = ch.d_in();
  if (d > opts.d_cap) throw ResourceCapError("optimize_capacity: input dimension above cap");
  const std::vector<ComplexOperator> basis = hermitian_basis(d);

  std::vector<DensityOperator> seeds;
  seeds.push_back(DensityOperator(cd(1.0 / d, 0.0) * ComplexOperator::identity(d)));
  for (int i = 0; i < std::min(d, 2); ++i) {
    ComplexOperator p(d, d);
    p.at(i, i) = 1.0;
    seeds.push_back(DensityOperator(std::move(p)));
  }
  for (int r = 0; r < opts.restarts; ++r) {
    Rng rng = Rng::substream(opts.seed, uint64_t(r));
    ComplexOperator g(d, d);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) g.at(i, j) = cd(rng.normal(), rng.normal());
    ComplexOperator m = g * adjoint(g);
    const double tr = trace(m).real();
    m *= cd(1.0 / tr, 0.0);
    seeds.push_back(DensityOperator(hermitize(m)));
  }

  std::vector<std::optional<AscentOutcome>> slots(seeds.size());
  parallel_for(int(seeds.size()), [&](int i) { slots[i] = ascend(ch, seeds[i], opts, basis); });
  std::vector<AscentOutcome> runs;
  runs.reserve(slots.size());
  for (auto& s : slots) runs.push_back(std::move(*s));

  std::vector<int> order(runs.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int i, int j) { return runs[i].value > runs[j].value; });

  CapacityResult res;
  res.restarts = int(seeds.size());
  res.c_ea = runs[order.front()].value;
  res.exit_grad_norm = runs[order.front()].grad_norm;
  res.converged = runs[order.front()].converged;

  // Snap a converged point to the maximally mixed state when pi lies inside
  // its cluster ball and attains the optimum; keeps covariant channels on the
  // exact commuting fast paths downstream.
  const DensityOperator pi(cd(1.0 / d, 0.0) * ComplexOperator::identity(d));
  const double value_at_pi = mutual_info(ch, pi);
  for (int idx : order) {
    if (runs[idx].value < res.c_ea - 1e-7) break;
    DensityOperator cand = runs[idx].rho;
    if (trace_distance(cand, pi) <= opts.cluster_tol && value_at_pi >= runs[idx].value - 1e-9)
      cand = pi;
    bool fresh = true;
    for (const DensityOperator& rep : res.maximizers) {
      if (trace_distance(cand, rep) <= opts.cluster_tol) {
        fresh = false;
        break;
      }
    }
    if (fresh) res.maximizers.push_back(cand);
  }
  res.maximizer_set_maybe_continuum = res.maximizers.size() > 3;

  res.v_min = std::numeric_limits<double>::infinity();
  res.v_max = 0.0;
  for (const DensityOperator& rep : res.maximizers) {
    const double v = std::max(mutual_info_variance(ch, rep), 0.0);
    res.v_min = std::min(res.v_min, v);
    res.v_max = std::max(res.v_max, v);
  }
  if (!std::isfinite(res.v_min)) res.v_min = 0.0;
  return res;
}

double gaussian_rate(const CapacityResult& cap, int n, double eps) {
  if (n < 1) throw std::invalid_argument("gaussian_rate: n must be >= 1");
  if (eps <= 0.0 || eps >= 1.0) throw std::invalid_argument("gaussian_rate: eps must be in (0,1)");
  const double v_sel = eps < 0.5 ? cap.v_min : cap.v_max;
  return second_order_value(cap.c_ea, v_sel, double(n), eps);
}

// ---------------------------------------------------------------------------
// Hypothesis testing of i.i.d. products

HypothesisTest product_hypothesis_dh_classical(const std::vector<ClassicalAtom>& atoms, int n,
                                               double eps, uint64_t type_cap) {
  // group identical (p,q) eigenvalue pairs into weighted classes
  struct Cls {
    double p, q, log2_mult;
  };
  std::vector<Cls> classes;
  std::vector<ClassicalAtom> sorted = atoms;
  std::sort(sorted.begin(), sorted.end(), [](const ClassicalAtom& a, const ClassicalAtom& b) {
    return a.p != b.p ? a.p < b.p : a.q < b.q;
  });
  const double gtol = 1e-12;
  for (const ClassicalAtom& a : sorted) {
    if (a.p <= 0.0) continue;  // zero p-mass atoms never enter the optimal test
    if (!classes.empty() && std::abs(classes.back().p - a.p) <= gtol &&
        std::abs(classes.back().q - a.q) <= gtol) {
      classes.back().log2_mult =
          std::log2(std::exp2(classes.back().log2_mult) + a.mult);
    } else {
      classes.push_back({a.p, a.q, std::log2(a.mult)});
    }
  }
  if (classes.empty()) throw std::invalid_argument("product_hypothesis_dh_classical: no positive atoms");

  const int k = int(classes.size());
  const double ln2 = std::log(2.0);
  std::vector<LogAtom> out_atoms;
  for (const TypeDistribution& t : enumerate_types(n, k, type_cap)) {
    double lmult = std::lgamma(n + 1.0) / ln2;
    double lp = 0.0, lq = 0.0;
    bool q_zero = false;
    for (int j = 0; j < k; ++j) {
      const int c = t.counts[j];
      lmult += -std::lgamma(c + 1.0) / ln2 + c * classes[j].log2_mult;
      if (c == 0) continue;
      lp += c * std::log2(classes[j].p);
      if (classes[j].q > 0.0)
        lq += c * std::log2(classes[j].q);
      else
        q_zero = true;
    }
    LogAtom a;
    a.log2_p = lmult + lp;
    a.log2_q = q_zero ? -std::numeric_limits<double>::infinity() : lmult + lq;
    out_atoms.push_back(a);
  }
  return classical_dh_log(std::move(out_atoms), eps);
}

HypothesisTest product_hypothesis_dh(const ComplexOperator& rho, const ComplexOperator& sigma,
                                     int n, double eps, const ProductDhOptions& opts) {
  if (n < 1) throw std::invalid_argument("product_hypothesis_dh: n must be >= 1");
  if (auto sim = simultaneous_eigenvalues(rho, sigma)) {
    std::vector<ClassicalAtom> atoms;
    double total = 0.0;
    for (const auto& [p, q] : *sim) {
      atoms.push_back({std::max(p, 0.0), std::max(q, 0.0), 1.0});
      total += atoms.back().p;
    }
    for (ClassicalAtom& a : atoms) a.p /= total;
    try {
      return product_hypothesis_dh_classical(atoms, n, eps, opts.type_cap);
    } catch (const ResourceCapError&) {
      // fall through to the explicit tensor path when it is still affordable
    }
  }
  double total_dim = 1.0;
  for (int i = 0; i < n; ++i) total_dim *= rho.rows();
  if (total_dim > double(opts.quantum_dim_cap))
    throw ResourceCapError("product_hypothesis_dh: non-commuting pair and d^n above the dimension cap");
  ComplexOperator rn = rho, sn = sigma;
  for (int i = 1; i < n; ++i) {
    rn = tensor(rn, rho);
    sn = tensor(sn, sigma);
  }
  return hypothesis_dh(DensityOperator(hermitize(rn)), sn, eps);
}

// ---------------------------------------------------------------------------
// Finite-blocklength bounds

double achievable_bound_exact(const QuantumChannel& ch, const PureStateVector& psi, int n,
                              double eps, const ProductDhOptions& opts) {
  if (psi.dims().size() != 2 || psi.dims()[0] != ch.d_in() || psi.dims()[1] != ch.d_in())
    throw std::invalid_argument("achievable_bound_exact: resource must live on A (x) A' with dims d_in");
  if (n < 1) throw std::invalid_argument("achievable_bound_exact: n must be >= 1");
  const double eps_eff = eps - 3.0 / std::sqrt(double(n));
  if (eps_eff <= 0.0)
    throw InfeasibleError(
        "achievable_bound_exact: eps <= 3/sqrt(n); increase the blocklength for this error tolerance");

  SchmidtDecomposition sd = schmidt_decompose(psi);
  int x = 0;
  for (double c : sd.coefficients)
    if (c > 1e-12) ++x;

  const DensityOperator proj = psi.projector();
  const DensityOperator rho_a = DensityOperator(partial_trace(proj.op(), {0}));
  const DensityOperator rho_ap = DensityOperator(partial_trace(proj.op(), {1}));
  const DensityOperator omega = apply_left(ch, proj);
  const ComplexOperator tau = tensor(apply(ch, rho_a).op(), rho_ap.op());

  const HypothesisTest ht = product_hypothesis_dh(omega.op(), tau, n, eps_eff, opts);
  const double penalty = std::log2((1.0 - eps) * n) + (2.0 * x + 1.0) * std::log2(n + 1.0);
  return ht.dh - penalty;
}

double covariant_converse(const QuantumChannel& ch, int n, double eps,
                          const ProductDhOptions& opts) {
  if (!ch.covariant_irreducible_input())
    throw std::invalid_argument(
        "covariant_converse: channel does not assert a covariant irreducible input representation");
  if (n < 1) throw std::invalid_argument("covariant_converse: n must be >= 1");
  const int d = ch.d_in();
  const DensityOperator omega = apply_left(ch, max_entangled(d).projector());
  const DensityOperator pi = DensityOperator(cd(1.0 / d, 0.0) * ComplexOperator::identity(d));
  const ComplexOperator tau = tensor(apply(ch, pi).op(), pi.op());
  return product_hypothesis_dh(omega.op(), tau, n, eps, opts).dh;
}

std::vector<RateBound> dispersion_table(const QuantumChannel& ch, const CapacityResult& cap,
                                        double eps, const std::vector<int>& n_list,
                                        const ProductDhOptions& opts) {
  std::vector<int> ns = n_list;
  std::sort(ns.begin(), ns.end());
  std::vector<RateBound> rows;
  for (int n : ns) {
    RateBound row;
    row.n = n;
    row.eps = eps;
    row.c_ea = cap.c_ea;
    row.v_sel = eps < 0.5 ? cap.v_min : cap.v_max;
    row.gaussian_bits = gaussian_rate(cap, n, eps);
    if (!cap.maximizers.empty()) {
      try {
        row.lower_bits = achievable_bound_exact(ch, purify(cap.maximizers.front()), n, eps, opts);
      } catch (const InfeasibleError&) {
      } catch (const ResourceCapError&) {
      }
    }
    if (ch.covariant_irreducible_input()) {
      try {
        row.upper_bits = covariant_converse(ch, n, eps, opts);
      } catch (const ResourceCapError&) {
      }
    }
    rows.push_back(row);
  }
  return rows;
}

}  // namespace eacap
