#include "eacap/divergences.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "eacap/errors.hpp"

namespace eacap {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double quad_form(const ComplexOperator& m, const ComplexOperator& vecs, int col) {
  // <v|m|v> for column `col` of vecs
  const int n = m.rows();
  cd acc = 0.0;
  for (int i = 0; i < n; ++i) {
    cd row = 0.0;
    for (int j = 0; j < n; ++j) row += m.at(i, j) * vecs.at(j, col);
    acc += std::conj(vecs.at(i, col)) * row;
  }
  return acc.real();
}

// mass of rho outside the support of sigma
double kernel_mass(const DensityOperator& rho, const SpectralDecomposition& sig) {
  const double top = sig.eigenvalues.empty() ? 0.0 : std::max(sig.eigenvalues.front(), 0.0);
  const double cut = kKernelRelTol * top;
  double mass = 0.0;
  for (size_t k = 0; k < sig.eigenvalues.size(); ++k)
    if (sig.eigenvalues[k] <= cut) mass += std::max(quad_form(rho.op(), sig.eigenvectors, int(k)), 0.0);
  return mass;
}

bool support_ok(const DensityOperator& rho, const SpectralDecomposition& sig) {
  return kernel_mass(rho, sig) <= 1e-9;
}

ComplexOperator log2_from_spectral(const SpectralDecomposition& sd) {
  const int n = sd.eigenvectors.rows();
  const double top = sd.eigenvalues.empty() ? 0.0 : std::max(sd.eigenvalues.front(), 0.0);
  const double cut = kKernelRelTol * top;
  ComplexOperator lam(n, n);
  for (int i = 0; i < n; ++i) lam.at(i, i) = sd.eigenvalues[i] > cut ? std::log2(sd.eigenvalues[i]) : 0.0;
  return sd.eigenvectors * lam * adjoint(sd.eigenvectors);
}

}  // namespace

double rel_entropy(const DensityOperator& rho, const DensityOperator& sigma) {
  if (rho.dim() != sigma.dim()) throw std::invalid_argument("rel_entropy: dimension mismatch");
  const SpectralDecomposition& sig = sigma.spectral();
  if (!support_ok(rho, sig)) return kInf;
  double term1 = 0.0;
  const double cut = kKernelRelTol;
  for (double lam : rho.eigenvalues())
    if (lam > cut) term1 += lam * std::log2(lam);
  const ComplexOperator logs = log2_from_spectral(sig);
  const double term2 = trace(rho.op() * logs).real();
  return term1 - term2;
}

double rel_entropy_variance(const DensityOperator& rho, const DensityOperator& sigma) {
  if (rho.dim() != sigma.dim()) throw std::invalid_argument("rel_entropy_variance: dimension mismatch");
  const SpectralDecomposition& sig = sigma.spectral();
  if (!support_ok(rho, sig)) return kInf;
  const ComplexOperator diff = log2_from_spectral(rho.spectral()) - log2_from_spectral(sig);
  const double d = rel_entropy(rho, sigma);
  const double second = trace(rho.op() * diff * diff).real();
  return second - d * d;
}

double collision_d2(const DensityOperator& rho, const DensityOperator& sigma) {
  if (rho.dim() != sigma.dim()) throw std::invalid_argument("collision_d2: dimension mismatch");
  if (!support_ok(rho, sigma.spectral())) return kInf;
  const ComplexOperator q = op_pow(sigma.op(), -0.25, true);
  const ComplexOperator m = q * rho.op() * q;
  double f2 = 0.0;
  for (const cd& x : m.data()) f2 += std::norm(x);  // Tr(M^2) = ||M||_F^2, M Hermitian
  return std::log2(f2);
}

// ---------------------------------------------------------------------------
// Information-spectrum relative entropy

namespace {

// Tr(rho {rho <= 2^R sigma}) for operators already projected onto supp sigma.
double infospec_trace(const ComplexOperator& rho_s, const ComplexOperator& sig_s, double r) {
  const double pow2 = std::exp2(r);
  ComplexOperator a = sig_s;
  a *= cd(pow2, 0.0);
  a -= rho_s;
  SpectralDecomposition sd = herm_eig(a);
  const double scale = std::max({std::abs(sd.eigenvalues.front()), std::abs(sd.eigenvalues.back()), 1e-300});
  double mass = 0.0;
  for (size_t k = 0; k < sd.eigenvalues.size(); ++k)
    if (sd.eigenvalues[k] >= -1e-12 * scale)
      mass += std::max(quad_form(rho_s, sd.eigenvectors, int(k)), 0.0);
  return mass;
}

}  // namespace

double info_spectrum_ds(const DensityOperator& rho, const DensityOperator& sigma, double eps) {
  if (eps <= 0.0 || eps >= 1.0) throw std::invalid_argument("info_spectrum_ds: eps must be in (0,1)");
  if (rho.dim() != sigma.dim()) throw std::invalid_argument("info_spectrum_ds: dimension mismatch");
  const SpectralDecomposition& sig = sigma.spectral();
  if (!support_ok(rho, sig)) return kInf;

  // restrict to supp sigma
  const double top = std::max(sig.eigenvalues.front(), 0.0);
  const double cut = kKernelRelTol * top;
  int m = 0;
  while (m < int(sig.eigenvalues.size()) && sig.eigenvalues[m] > cut) ++m;
  ComplexOperator w(rho.dim(), m);
  for (int i = 0; i < rho.dim(); ++i)
    for (int k = 0; k < m; ++k) w.at(i, k) = sig.eigenvectors.at(i, k);
  const ComplexOperator rho_s = adjoint(w) * rho.op() * w;
  ComplexOperator sig_s(m, m);
  for (int k = 0; k < m; ++k) sig_s.at(k, k) = sig.eigenvalues[k];

  // generalized eigenvalues of (rho, sigma): spectrum of sigma^{-1/2} rho sigma^{-1/2}
  ComplexOperator isq(m, m);
  for (int k = 0; k < m; ++k) isq.at(k, k) = 1.0 / std::sqrt(sig.eigenvalues[k]);
  std::vector<double> gen = herm_eigvals(isq * rho_s * isq);

  std::vector<double> breakpoints;
  for (double g : gen)
    if (g > 1e-14) breakpoints.push_back(std::log2(g));
  if (breakpoints.empty()) breakpoints.push_back(0.0);
  const double r_lo = *std::min_element(breakpoints.begin(), breakpoints.end()) - 0.5;
  const double r_hi = *std::max_element(breakpoints.begin(), breakpoints.end()) + 0.5;

  // Tr(rho {rho <= 2^R sigma}) is not assumed monotone in R: scan singularity
  // breakpoints plus a uniform grid, then refine the last feasible point.
  std::vector<double> cand;
  cand.push_back(r_lo - 0.5);
  for (double b : breakpoints) {
    cand.push_back(b - 1e-9);
    cand.push_back(b + 1e-9);
  }
  const int kGrid = 512;
  for (int i = 0; i <= kGrid; ++i) cand.push_back(r_lo + (r_hi - r_lo) * double(i) / kGrid);
  cand.push_back(r_hi + 0.5);
  std::sort(cand.begin(), cand.end());

  double best_ok = -kInf, next_bad = kInf;
  for (double r : cand) {
    if (infospec_trace(rho_s, sig_s, r) <= eps) {
      if (r > best_ok) best_ok = r;
    }
  }
  if (best_ok == -kInf) return -kInf;
  for (double r : cand) {
    if (r > best_ok && infospec_trace(rho_s, sig_s, r) > eps) {
      next_bad = r;
      break;
    }
  }
  if (next_bad == kInf) next_bad = r_hi + 1.0;

  double lo = best_ok, hi = next_bad;
  for (int it = 0; it < 60 && hi - lo > 5e-7; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (infospec_trace(rho_s, sig_s, mid) <= eps)
      lo = mid;
    else
      hi = mid;
  }
  return lo;
}

// ---------------------------------------------------------------------------
// Classical Neyman-Pearson

HypothesisTest classical_dh_log(std::vector<LogAtom> atoms, double eps) {
  if (eps <= 0.0 || eps >= 1.0) throw std::invalid_argument("classical_dh: eps must be in (0,1)");
  struct Item {
    double lp, lq, ratio;
  };
  std::vector<Item> items;
  items.reserve(atoms.size());
  for (const LogAtom& a : atoms) {
    if (!std::isfinite(a.log2_p)) continue;  // zero p-mass atoms never enter the optimal test
    const double ratio = std::isfinite(a.log2_q) ? a.log2_p - a.log2_q : kInf;
    items.push_back({a.log2_p, a.log2_q, ratio});
  }
  std::stable_sort(items.begin(), items.end(),
                   [](const Item& a, const Item& b) { return a.ratio > b.ratio; });

  HypothesisTest out;
  double need = 1.0 - eps;
  std::vector<double> included_lq;  // log2 of q-mass contributions
  double included_p = 0.0;
  bool cut_found = false;
  for (const Item& it : items) {
    const double pm = std::exp2(it.lp);
    if (pm <= 0.0) continue;  // underflowed tail, cannot help reach the budget
    if (pm < need * (1.0 - 1e-15)) {
      if (std::isfinite(it.lq)) included_lq.push_back(it.lq);
      need -= pm;
      included_p += pm;
      ++out.projector_rank;
    } else {
      const double frac = std::min(std::max(need / pm, 0.0), 1.0);
      if (frac > 0.0 && std::isfinite(it.lq)) included_lq.push_back(it.lq + std::log2(frac));
      out.kernel_weight = frac;
      out.dual_threshold = std::isfinite(it.lq) ? std::exp2(it.lq - it.lp) : 0.0;
      included_p += frac * pm;
      need = 0.0;
      cut_found = true;
      break;
    }
  }

  double log2_beta = -kInf;
  if (!included_lq.empty()) {
    const double m = *std::max_element(included_lq.begin(), included_lq.end());
    double s = 0.0;
    for (double lq : included_lq) s += std::exp2(lq - m);
    log2_beta = m + std::log2(s);
  }
  out.beta = std::exp2(log2_beta);
  out.dh = -log2_beta;
  out.type1_error = 1.0 - included_p;

  // The sorted construction is the exact optimum; report the dual value gap
  // where it is representable in linear arithmetic.
  if (cut_found && out.beta > 1e-280 && out.dual_threshold > 0.0) {
    const double t = 1.0 / out.dual_threshold;
    double pos = 0.0;
    for (const Item& it : items) {
      const double pm = std::exp2(it.lp);
      const double qm = std::isfinite(it.lq) ? std::exp2(it.lq) : 0.0;
      pos += std::max(t * pm - qm, 0.0);
    }
    out.duality_gap = out.beta - (t * (1.0 - eps) - pos);
  }
  return out;
}

HypothesisTest classical_dh(const ClassicalPair& pair, double eps) {
  double total = 0.0;
  for (const ClassicalAtom& a : pair.atoms) total += a.p * a.mult;
  if (std::abs(total - 1.0) > 1e-9)
    throw std::invalid_argument("classical_dh: p-masses must sum to 1");
  std::vector<LogAtom> atoms;
  atoms.reserve(pair.atoms.size());
  for (const ClassicalAtom& a : pair.atoms) {
    if (a.p < 0.0 || a.q < 0.0 || a.mult <= 0.0)
      throw std::invalid_argument("classical_dh: negative atom");
    if (a.p * a.mult <= 0.0) continue;
    LogAtom la;
    la.log2_p = std::log2(a.p) + std::log2(a.mult);
    la.log2_q = a.q > 0.0 ? std::log2(a.q) + std::log2(a.mult) : -kInf;
    atoms.push_back(la);
  }
  return classical_dh_log(std::move(atoms), eps);
}

// ---------------------------------------------------------------------------
// Simultaneous diagonalization of commuting pairs

std::optional<std::vector<std::pair<double, double>>> simultaneous_eigenvalues(
    const ComplexOperator& a, const ComplexOperator& b) {
  if (!a.square() || a.rows() != b.rows() || a.cols() != b.cols()) return std::nullopt;
  const double scale = fro_norm(a) * fro_norm(b) + 1e-300;
  if (fro_norm(a * b - b * a) > 1e-11 * scale) return std::nullopt;

  SpectralDecomposition sa = herm_eig(a);
  const int n = a.rows();
  const double spread = std::max(std::abs(sa.eigenvalues.front()), std::abs(sa.eigenvalues.back()));
  const double ctol = 1e-8 * std::max(spread, 1e-300);

  ComplexOperator v = sa.eigenvectors;
  std::vector<double> bvals(n, 0.0);
  int start = 0;
  while (start < n) {
    int end = start + 1;
    while (end < n && sa.eigenvalues[end - 1] - sa.eigenvalues[end] <= ctol) ++end;
    const int k = end - start;
    if (k == 1) {
      bvals[start] = quad_form(b, v, start);
    } else {
      ComplexOperator sub(k, k);
      for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) {
          cd acc = 0.0;
          for (int r = 0; r < n; ++r) {
            cd row = 0.0;
            for (int c = 0; c < n; ++c) row += b.at(r, c) * v.at(c, start + j);
            acc += std::conj(v.at(r, start + i)) * row;
          }
          sub.at(i, j) = acc;
        }
      SpectralDecomposition sb = herm_eig(hermitize(sub));
      ComplexOperator rotated(n, k);
      for (int r = 0; r < n; ++r)
        for (int j = 0; j < k; ++j) {
          cd acc = 0.0;
          for (int i = 0; i < k; ++i) acc += v.at(r, start + i) * sb.eigenvectors.at(i, j);
          rotated.at(r, j) = acc;
        }
      for (int r = 0; r < n; ++r)
        for (int j = 0; j < k; ++j) v.at(r, start + j) = rotated.at(r, j);
      for (int j = 0; j < k; ++j) bvals[start + j] = sb.eigenvalues[j];
    }
    start = end;
  }

  // verify the common basis really diagonalizes b
  const double btol = 1e-8 * std::max(max_abs(b), 1e-300);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      cd acc = 0.0;
      for (int r = 0; r < n; ++r) {
        cd row = 0.0;
        for (int c = 0; c < n; ++c) row += b.at(r, c) * v.at(c, j);
        acc += std::conj(v.at(r, i)) * row;
      }
      if (std::abs(acc) > btol) return std::nullopt;
    }

  std::vector<std::pair<double, double>> atoms(n);
  for (int i = 0; i < n; ++i) atoms[i] = {sa.eigenvalues[i], bvals[i]};
  return atoms;
}

// ---------------------------------------------------------------------------
// Quantum Neyman-Pearson via the Lagrangian dual

namespace {

ComplexOperator dual_matrix(const ComplexOperator& rho, const ComplexOperator& sigma, double t) {
  ComplexOperator m = rho;
  m *= cd(t, 0.0);
  m -= sigma;
  return m;
}

double dual_objective(const ComplexOperator& rho, const ComplexOperator& sigma, double t,
                      double one_minus_eps) {
  std::vector<double> ev = herm_eigvals(dual_matrix(rho, sigma, t));
  double pos = 0.0;
  for (double x : ev)
    if (x > 0.0) pos += x;
  return t * one_minus_eps - pos;
}

struct PrimalTest {
  double beta = 0.0;
  double type1 = 0.0;
  int rank = 0;
  double kernel_weight = 0.0;
  ComplexOperator q;
};

// Neyman-Pearson over the diagonal masses in the eigenbasis of t rho - sigma;
// always feasible, optimal when t sits at the budget crossing.
PrimalTest primal_recover(const ComplexOperator& rho, const ComplexOperator& sigma, double t,
                          double one_minus_eps) {
  SpectralDecomposition sd = herm_eig(dual_matrix(rho, sigma, t));
  const int n = rho.rows();
  std::vector<double> r(n), s(n);
  for (int k = 0; k < n; ++k) {
    r[k] = std::max(quad_form(rho, sd.eigenvectors, k), 0.0);
    s[k] = std::max(quad_form(sigma, sd.eigenvectors, k), 0.0);
  }
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int i, int j) {
    const double ri = s[i] > 0.0 ? r[i] / s[i] : (r[i] > 0.0 ? kInf : 0.0);
    const double rj = s[j] > 0.0 ? r[j] / s[j] : (r[j] > 0.0 ? kInf : 0.0);
    return ri > rj;
  });

  PrimalTest out;
  out.q = ComplexOperator(n, n);
  double need = one_minus_eps, covered = 0.0;
  for (int idx : order) {
    double weight = 1.0;
    bool boundary = false;
    if (r[idx] < need * (1.0 - 1e-15)) {
      ++out.rank;
    } else {
      weight = r[idx] > 0.0 ? std::min(std::max(need / r[idx], 0.0), 1.0) : 0.0;
      out.kernel_weight = weight;
      boundary = true;
    }
    out.beta += weight * s[idx];
    covered += weight * r[idx];
    if (weight > 0.0)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          out.q.at(i, j) +=
              cd(weight, 0.0) * sd.eigenvectors.at(i, idx) * std::conj(sd.eigenvectors.at(j, idx));
    if (boundary) break;
    need -= r[idx];
    if (need <= 0.0) break;
  }
  out.type1 = 1.0 - covered;
  return out;
}

// Tr(rho P_{>0}(t rho - sigma)), the budget filled by the strictly positive part.
double positive_part_mass(const ComplexOperator& rho, const ComplexOperator& sigma, double t) {
  SpectralDecomposition sd = herm_eig(dual_matrix(rho, sigma, t));
  double mass = 0.0;
  for (size_t k = 0; k < sd.eigenvalues.size(); ++k)
    if (sd.eigenvalues[k] > 0.0) mass += std::max(quad_form(rho, sd.eigenvectors, int(k)), 0.0);
  return mass;
}

}  // namespace

HypothesisTest hypothesis_dh(const DensityOperator& rho, const ComplexOperator& sigma, double eps,
                             const DhOptions& opts) {
  if (eps <= 0.0 || eps >= 1.0) throw std::invalid_argument("hypothesis_dh: eps must be in (0,1)");
  if (!sigma.square() || sigma.rows() != rho.dim())
    throw std::invalid_argument("hypothesis_dh: dimension mismatch");

  if (!opts.force_quantum) {
    if (auto sim = simultaneous_eigenvalues(rho.op(), sigma)) {
      ClassicalPair pair;
      for (const auto& [p, q] : *sim)
        pair.atoms.push_back({std::max(p, 0.0), std::max(q, 0.0), 1.0});
      // clamping can perturb the mass sum at the 1e-12 level; renormalize
      double total = 0.0;
      for (auto& a : pair.atoms) total += a.p;
      for (auto& a : pair.atoms) a.p /= total;
      return classical_dh(pair, eps);
    }
  }

  const double one_minus_eps = 1.0 - eps;
  const std::vector<double>& rev = rho.eigenvalues();
  double min_pos = 0.0;
  for (double x : rev)
    if (x > kKernelRelTol * std::max(rev.front(), 0.0)) min_pos = x;  // smallest retained
  if (min_pos <= 0.0) min_pos = 1e-12;
  const std::vector<double> sev = herm_eigvals(sigma);
  const double sig_max = std::max(sev.front(), 0.0);

  double hi = 10.0 * (sig_max + 1.0) / min_pos;
  double best_t = 0.0, best_g = -kInf;
  const double invphi = 0.6180339887498948482;
  for (int expansion = 0; expansion <= opts.max_bracket_expansions; ++expansion) {
    double a = 0.0, b = hi;
    double x1 = b - invphi * (b - a);
    double x2 = a + invphi * (b - a);
    double f1 = dual_objective(rho.op(), sigma, x1, one_minus_eps);
    double f2 = dual_objective(rho.op(), sigma, x2, one_minus_eps);
    for (int it = 0; it < 220 && (b - a) > 1e-13 * std::max(1.0, b); ++it) {
      if (f1 >= f2) {
        b = x2;
        x2 = x1;
        f2 = f1;
        x1 = b - invphi * (b - a);
        f1 = dual_objective(rho.op(), sigma, x1, one_minus_eps);
      } else {
        a = x1;
        x1 = x2;
        f1 = f2;
        x2 = a + invphi * (b - a);
        f2 = dual_objective(rho.op(), sigma, x2, one_minus_eps);
      }
    }
    best_t = f1 >= f2 ? x1 : x2;
    best_g = std::max(f1, f2);
    if (best_t < 0.9 * hi) break;
    hi *= 10.0;
  }

  // Refine towards the budget crossing Tr(P_+(t) rho) = 1 - eps. Golden
  // section alone localizes a smooth interior maximum only to ~sqrt(eps_mach)
  // relative, which leaks into the fractional boundary weight of the test.
  double t_lo = best_t, t_hi = best_t;
  {
    const double start = positive_part_mass(rho.op(), sigma, best_t);
    double step = std::max(1e-9 * std::max(best_t, 1.0), 1e-14);
    if (start < one_minus_eps) {
      for (int i = 0; i < 200 && positive_part_mass(rho.op(), sigma, t_hi) < one_minus_eps; ++i) {
        t_lo = t_hi;
        t_hi += step;
        step *= 2.0;
      }
    } else {
      for (int i = 0; i < 200 && positive_part_mass(rho.op(), sigma, t_lo) >= one_minus_eps; ++i) {
        t_hi = t_lo;
        t_lo = std::max(t_lo - step, 0.0);
        step *= 2.0;
        if (t_lo == 0.0) break;
      }
    }
    for (int i = 0; i < 120 && t_hi - t_lo > 1e-16 * std::max(1.0, t_hi); ++i) {
      const double mid = 0.5 * (t_lo + t_hi);
      if (positive_part_mass(rho.op(), sigma, mid) < one_minus_eps)
        t_lo = mid;
      else
        t_hi = mid;
    }
  }

  HypothesisTest out;
  out.beta = kInf;
  for (double t : {best_t, t_lo, t_hi}) {
    best_g = std::max(best_g, dual_objective(rho.op(), sigma, t, one_minus_eps));
    PrimalTest cand = primal_recover(rho.op(), sigma, t, one_minus_eps);
    if (cand.beta < out.beta) {
      out.beta = cand.beta;
      out.type1_error = cand.type1;
      out.projector_rank = cand.rank;
      out.kernel_weight = cand.kernel_weight;
      out.test_operator = std::move(cand.q);
      out.dual_threshold = t;
    }
  }
  out.dh = out.beta > 0.0 ? -std::log2(out.beta) : kInf;
  out.duality_gap = out.beta - best_g;
  if (out.duality_gap > opts.gap_tol) {
    std::ostringstream os;
    os << "hypothesis_dh: duality gap " << out.duality_gap << " above tolerance " << opts.gap_tol
       << " (t* = " << out.dual_threshold << ", bracket hi = " << hi << ")";
    throw ConvergenceError(os.str());
  }
  return out;
}

HypothesisTest hypothesis_dh(const DensityOperator& rho, const DensityOperator& sigma, double eps,
                             const DhOptions& opts) {
  return hypothesis_dh(rho, sigma.op(), eps, opts);
}

// ---------------------------------------------------------------------------
// Standard normal CDF and quantile

double normal_cdf(double a) { return 0.5 * std::erfc(-a * 0.7071067811865475244); }

double normal_quantile(double eps) {
  if (eps <= 0.0 || eps >= 1.0) throw std::invalid_argument("normal_quantile: eps must be in (0,1)");
  // Acklam's rational approximation, then Halley refinement against erfc.
  static const double A[] = {-3.969683028665376e+01, 2.209460984245205e+02, -2.759285104469687e+02,
                             1.383577518672690e+02, -3.066479806614716e+01, 2.506628277459239e+00};
  static const double B[] = {-5.447609879822406e+01, 1.615858368580409e+02, -1.556989798598866e+02,
                             6.680131188771972e+01, -1.328068155288572e+01};
  static const double C[] = {-7.784894002430293e-03, -3.223964580411365e-01, -2.400758277161838e+00,
                             -2.549732539343734e+00, 4.374664141464968e+00, 2.938163982698783e+00};
  static const double D[] = {7.784695709041462e-03, 3.224671290700398e-01, 2.445134137142996e+00,
                             3.754408661907416e+00};
  const double p_low = 0.02425, p_high = 1.0 - p_low;
  double x;
  if (eps < p_low) {
    const double q = std::sqrt(-2.0 * std::log(eps));
    x = (((((C[0] * q + C[1]) * q + C[2]) * q + C[3]) * q + C[4]) * q + C[5]) /
        ((((D[0] * q + D[1]) * q + D[2]) * q + D[3]) * q + 1.0);
  } else if (eps <= p_high) {
    const double q = eps - 0.5, r = q * q;
    x = (((((A[0] * r + A[1]) * r + A[2]) * r + A[3]) * r + A[4]) * r + A[5]) * q /
        (((((B[0] * r + B[1]) * r + B[2]) * r + B[3]) * r + B[4]) * r + 1.0);
  } else {
    const double q = std::sqrt(-2.0 * std::log(1.0 - eps));
    x = -(((((C[0] * q + C[1]) * q + C[2]) * q + C[3]) * q + C[4]) * q + C[5]) /
        ((((D[0] * q + D[1]) * q + D[2]) * q + D[3]) * q + 1.0);
  }
  for (int i = 0; i < 2; ++i) {
    const double e = normal_cdf(x) - eps;
    const double u = e * 2.5066282746310005024 * std::exp(0.5 * x * x);
    x -= u / (1.0 + 0.5 * x * u);
  }
  return x;
}

double second_order_value(double d, double v, double n, double eps) {
  if (v < 0.0) {
    if (v < -1e-12) throw std::invalid_argument("second_order_value: negative variance");
    v = 0.0;
  }
  if (n < 1.0) throw std::invalid_argument("second_order_value: n must be >= 1");
  return n * d + std::sqrt(n * v) * normal_quantile(eps);
}

}  // namespace eacap
