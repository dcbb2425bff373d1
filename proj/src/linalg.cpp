#include "eacap/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "eacap/errors.hpp"

namespace eacap {

namespace {

int dims_product(const std::vector<int>& dims) {
  int p = 1;
  for (int d : dims) {
    if (d < 1) throw std::invalid_argument("subsystem dimension must be >= 1");
    p *= d;
  }
  return p;
}

}  // namespace

ComplexOperator::ComplexOperator(int rows, int cols)
    : rows_(rows), cols_(cols), a_(size_t(rows) * cols, cd(0.0, 0.0)) {
  if (rows < 0 || cols < 0) throw std::invalid_argument("negative matrix shape");
}

ComplexOperator::ComplexOperator(int rows, int cols, std::vector<cd> data)
    : rows_(rows), cols_(cols), a_(std::move(data)) {
  if (a_.size() != size_t(rows) * cols) throw std::invalid_argument("matrix data size mismatch");
}

ComplexOperator ComplexOperator::identity(int d) {
  ComplexOperator m(d, d);
  for (int i = 0; i < d; ++i) m.at(i, i) = 1.0;
  m.dims_ = {d};
  return m;
}

ComplexOperator ComplexOperator::identity(const std::vector<int>& dims) {
  ComplexOperator m = identity(dims_product(dims));
  m.dims_ = dims;
  return m;
}

ComplexOperator& ComplexOperator::with_dims(std::vector<int> dims) {
  if (!square()) throw std::invalid_argument("dims only apply to square operators");
  if (dims_product(dims) != rows_) throw std::invalid_argument("dims product != row count");
  dims_ = std::move(dims);
  return *this;
}

ComplexOperator& ComplexOperator::operator+=(const ComplexOperator& o) {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("shape mismatch in +");
  for (size_t i = 0; i < a_.size(); ++i) a_[i] += o.a_[i];
  return *this;
}

ComplexOperator& ComplexOperator::operator-=(const ComplexOperator& o) {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("shape mismatch in -");
  for (size_t i = 0; i < a_.size(); ++i) a_[i] -= o.a_[i];
  return *this;
}

ComplexOperator& ComplexOperator::operator*=(cd s) {
  for (auto& x : a_) x *= s;
  return *this;
}

ComplexOperator operator+(ComplexOperator a, const ComplexOperator& b) { return a += b; }
ComplexOperator operator-(ComplexOperator a, const ComplexOperator& b) { return a -= b; }
ComplexOperator operator*(cd s, ComplexOperator a) { return a *= s; }

ComplexOperator operator*(const ComplexOperator& a, const ComplexOperator& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("shape mismatch in *");
  ComplexOperator c(a.rows(), b.cols());
  const int n = a.rows(), k = a.cols(), m = b.cols();
  for (int i = 0; i < n; ++i) {
    cd* crow = &c.data()[size_t(i) * m];
    for (int l = 0; l < k; ++l) {
      const cd ail = a.at(i, l);
      if (ail == cd(0.0, 0.0)) continue;
      const cd* brow = &b.data()[size_t(l) * m];
      for (int j = 0; j < m; ++j) crow[j] += ail * brow[j];
    }
  }
  if (c.square() && a.square() && !a.dims().empty()) c.with_dims(a.dims());
  return c;
}

ComplexOperator adjoint(const ComplexOperator& a) {
  ComplexOperator b(a.cols(), a.rows());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) b.at(j, i) = std::conj(a.at(i, j));
  if (b.square() && !a.dims().empty()) b.with_dims(a.dims());
  return b;
}

ComplexOperator transpose_op(const ComplexOperator& a) {
  ComplexOperator b(a.cols(), a.rows());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) b.at(j, i) = a.at(i, j);
  if (b.square() && !a.dims().empty()) b.with_dims(a.dims());
  return b;
}

ComplexOperator conj_op(const ComplexOperator& a) {
  ComplexOperator b = a;
  for (auto& x : b.data()) x = std::conj(x);
  return b;
}

cd trace(const ComplexOperator& a) {
  if (!a.square()) throw std::invalid_argument("trace of non-square matrix");
  cd t = 0.0;
  for (int i = 0; i < a.rows(); ++i) t += a.at(i, i);
  return t;
}

double fro_norm(const ComplexOperator& a) {
  double s = 0.0;
  for (const cd& x : a.data()) s += std::norm(x);
  return std::sqrt(s);
}

double max_abs(const ComplexOperator& a) {
  double m = 0.0;
  for (const cd& x : a.data()) m = std::max(m, std::abs(x));
  return m;
}

double herm_residual(const ComplexOperator& a) {
  if (!a.square()) throw std::invalid_argument("hermiticity check on non-square matrix");
  double m = 0.0;
  for (int i = 0; i < a.rows(); ++i)
    for (int j = i; j < a.cols(); ++j)
      m = std::max(m, std::abs(a.at(i, j) - std::conj(a.at(j, i))));
  return m;
}

ComplexOperator hermitize(const ComplexOperator& a) {
  if (!a.square()) throw std::invalid_argument("hermitize of non-square matrix");
  ComplexOperator b(a.rows(), a.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j)
      b.at(i, j) = 0.5 * (a.at(i, j) + std::conj(a.at(j, i)));
  if (!a.dims().empty()) b.with_dims(a.dims());
  return b;
}

ComplexOperator tensor(const ComplexOperator& a, const ComplexOperator& b) {
  ComplexOperator c(a.rows() * b.rows(), a.cols() * b.cols());
  for (int ia = 0; ia < a.rows(); ++ia)
    for (int ja = 0; ja < a.cols(); ++ja) {
      const cd va = a.at(ia, ja);
      if (va == cd(0.0, 0.0)) continue;
      for (int ib = 0; ib < b.rows(); ++ib)
        for (int jb = 0; jb < b.cols(); ++jb)
          c.at(ia * b.rows() + ib, ja * b.cols() + jb) = va * b.at(ib, jb);
    }
  if (c.square() && a.square() && b.square()) {
    std::vector<int> dims = a.dims().empty() ? std::vector<int>{a.rows()} : a.dims();
    const std::vector<int> bd = b.dims().empty() ? std::vector<int>{b.rows()} : b.dims();
    dims.insert(dims.end(), bd.begin(), bd.end());
    c.with_dims(dims);
  }
  return c;
}

ComplexOperator partial_trace(const ComplexOperator& m, const std::vector<int>& keep) {
  if (!m.square()) throw std::invalid_argument("partial_trace of non-square matrix");
  const std::vector<int> dims = m.dims().empty() ? std::vector<int>{m.rows()} : m.dims();
  const int k = int(dims.size());
  std::vector<bool> kept(k, false);
  for (int idx : keep) {
    if (idx < 0 || idx >= k) throw std::invalid_argument("partial_trace: subsystem index out of range");
    if (kept[idx]) throw std::invalid_argument("partial_trace: duplicate subsystem index");
    kept[idx] = true;
  }
  std::vector<int> out_dims;
  for (int s = 0; s < k; ++s)
    if (kept[s]) out_dims.push_back(dims[s]);
  if (out_dims.empty()) throw std::invalid_argument("partial_trace: keep set must be nonempty");

  // strides for the full space and the kept space
  std::vector<int> stride(k, 1);
  for (int s = k - 2; s >= 0; --s) stride[s] = stride[s + 1] * dims[s + 1];
  std::vector<int> out_stride(out_dims.size(), 1);
  for (int s = int(out_dims.size()) - 2; s >= 0; --s)
    out_stride[s] = out_stride[s + 1] * out_dims[s + 1];

  const int n = m.rows();
  ComplexOperator out(dims_product(out_dims), dims_product(out_dims));
  std::vector<int> ri(k), ci(k);
  for (int r = 0; r < n; ++r) {
    int rr = r;
    for (int s = 0; s < k; ++s) {
      ri[s] = rr / stride[s];
      rr %= stride[s];
    }
    for (int c = 0; c < n; ++c) {
      int cc = c;
      bool diag_on_traced = true;
      for (int s = 0; s < k; ++s) {
        ci[s] = cc / stride[s];
        cc %= stride[s];
        if (!kept[s] && ci[s] != ri[s]) {
          diag_on_traced = false;
        }
      }
      if (!diag_on_traced) continue;
      int orow = 0, ocol = 0, pos = 0;
      for (int s = 0; s < k; ++s) {
        if (kept[s]) {
          orow += ri[s] * out_stride[pos];
          ocol += ci[s] * out_stride[pos];
          ++pos;
        }
      }
      out.at(orow, ocol) += m.at(r, c);
    }
  }
  out.with_dims(out_dims);
  return out;
}

// ---------------------------------------------------------------------------
// Hermitian eigensolver: cyclic complex Jacobi.

namespace {

void jacobi_sweeps(std::vector<cd>& a, int n, std::vector<cd>* v) {
  double scale = 0.0;
  for (const cd& x : a) scale += std::norm(x);
  scale = std::sqrt(scale);
  if (scale == 0.0) return;

  const double tol = 1e-14;
  for (int sweep = 0; sweep < 80; ++sweep) {
    double off2 = 0.0;
    for (int p = 0; p < n; ++p)
      for (int q = p + 1; q < n; ++q) off2 += std::norm(a[size_t(p) * n + q]);
    if (std::sqrt(2.0 * off2) <= tol * scale) return;

    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const cd apq = a[size_t(p) * n + q];
        const double r = std::abs(apq);
        if (r <= 1e-18 * scale) continue;
        const double app = a[size_t(p) * n + p].real();
        const double aqq = a[size_t(q) * n + q].real();
        const double zeta = (aqq - app) / (2.0 * r);
        const double t = (zeta >= 0.0 ? 1.0 : -1.0) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        const cd phase = apq / r;  // e^{i phi}

        // U = [[c, s], [-conj(phase) s, conj(phase) c]] on columns (p,q)
        const cd u10 = -std::conj(phase) * s;
        const cd u11 = std::conj(phase) * c;
        for (int i = 0; i < n; ++i) {
          const cd aip = a[size_t(i) * n + p];
          const cd aiq = a[size_t(i) * n + q];
          a[size_t(i) * n + p] = c * aip + u10 * aiq;
          a[size_t(i) * n + q] = s * aip + u11 * aiq;
        }
        for (int j = 0; j < n; ++j) {
          const cd apj = a[size_t(p) * n + j];
          const cd aqj = a[size_t(q) * n + j];
          a[size_t(p) * n + j] = c * apj + std::conj(u10) * aqj;
          a[size_t(q) * n + j] = s * apj + std::conj(u11) * aqj;
        }
        if (v) {
          for (int i = 0; i < n; ++i) {
            const cd vip = (*v)[size_t(i) * n + p];
            const cd viq = (*v)[size_t(i) * n + q];
            (*v)[size_t(i) * n + p] = c * vip + u10 * viq;
            (*v)[size_t(i) * n + q] = s * vip + u11 * viq;
          }
        }
      }
    }
  }
}

void check_hermitian(const ComplexOperator& h) {
  if (!h.square()) throw std::invalid_argument("herm_eig: non-square input");
  // absolute floor keeps numerically-zero matrices acceptable
  const double tol = std::max(1e-9 * max_abs(h), 1e-13);
  if (herm_residual(h) > tol) throw std::invalid_argument("herm_eig: input is not Hermitian");
}

}  // namespace

SpectralDecomposition herm_eig(const ComplexOperator& h) {
  check_hermitian(h);
  const int n = h.rows();
  ComplexOperator hs = hermitize(h);
  std::vector<cd> a = hs.data();
  std::vector<cd> v(size_t(n) * n, cd(0.0, 0.0));
  for (int i = 0; i < n; ++i) v[size_t(i) * n + i] = 1.0;
  jacobi_sweeps(a, n, &v);

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int i, int j) {
    return a[size_t(i) * n + i].real() > a[size_t(j) * n + j].real();
  });

  SpectralDecomposition out;
  out.eigenvalues.resize(n);
  out.eigenvectors = ComplexOperator(n, n);
  for (int k = 0; k < n; ++k) {
    const int src = order[k];
    out.eigenvalues[k] = a[size_t(src) * n + src].real();
    // phase convention: first component with magnitude > 1e-8 made real positive
    cd ph(1.0, 0.0);
    for (int i = 0; i < n; ++i) {
      const cd x = v[size_t(i) * n + src];
      if (std::abs(x) > 1e-8) {
        ph = std::conj(x) / std::abs(x);
        break;
      }
    }
    for (int i = 0; i < n; ++i) out.eigenvectors.at(i, k) = v[size_t(i) * n + src] * ph;
  }
  if (!h.dims().empty()) out.eigenvectors.with_dims(h.dims());
  return out;
}

std::vector<double> herm_eigvals(const ComplexOperator& h) {
  check_hermitian(h);
  const int n = h.rows();
  ComplexOperator hs = hermitize(h);
  std::vector<cd> a = hs.data();
  jacobi_sweeps(a, n, nullptr);
  std::vector<double> ev(n);
  for (int i = 0; i < n; ++i) ev[i] = a[size_t(i) * n + i].real();
  std::sort(ev.begin(), ev.end(), std::greater<double>());
  return ev;
}

ComplexOperator SpectralDecomposition::reconstruct() const {
  const int n = eigenvectors.rows();
  ComplexOperator lam(n, n);
  for (int i = 0; i < n; ++i) lam.at(i, i) = eigenvalues[i];
  return eigenvectors * lam * adjoint(eigenvectors);
}

ComplexOperator op_func(const ComplexOperator& h, const std::function<double(double)>& f,
                        bool support_only) {
  SpectralDecomposition sd = herm_eig(h);
  const int n = h.rows();
  const double lam_max = sd.eigenvalues.empty() ? 0.0 : sd.eigenvalues.front();
  const double cut = kKernelRelTol * std::max(lam_max, 0.0);
  ComplexOperator lam(n, n);
  for (int i = 0; i < n; ++i) {
    const double x = sd.eigenvalues[i];
    if (support_only && x <= cut) {
      lam.at(i, i) = 0.0;
      continue;
    }
    const double y = f(x);
    if (!std::isfinite(y)) throw std::domain_error("op_func: function not finite at retained eigenvalue");
    lam.at(i, i) = y;
  }
  ComplexOperator out = sd.eigenvectors * lam * adjoint(sd.eigenvectors);
  if (!h.dims().empty()) out.with_dims(h.dims());
  return out;
}

ComplexOperator op_sqrt(const ComplexOperator& h) {
  return op_func(h, [](double x) { return std::sqrt(std::max(x, 0.0)); }, true);
}

ComplexOperator op_log2(const ComplexOperator& h) {
  return op_func(h, [](double x) { return std::log2(x); }, true);
}

ComplexOperator op_inv_sqrt(const ComplexOperator& h) {
  return op_func(h, [](double x) { return 1.0 / std::sqrt(x); }, true);
}

ComplexOperator op_pow(const ComplexOperator& h, double e, bool support_only) {
  return op_func(h, [e](double x) { return std::pow(x, e); }, support_only);
}

ComplexOperator support_projector(const ComplexOperator& h) {
  return op_func(h, [](double) { return 1.0; }, true);
}

// ---------------------------------------------------------------------------

DensityOperator::DensityOperator(ComplexOperator op) : op_(std::move(op)) {
  if (!op_.square()) throw std::invalid_argument("DensityOperator: non-square matrix");
  if (op_.dims().empty()) op_.with_dims({op_.rows()});
  const double scale = std::max(max_abs(op_), 1e-300);
  if (herm_residual(op_) > 1e-9 * scale)
    throw std::invalid_argument("DensityOperator: matrix is not Hermitian");
  op_ = hermitize(op_);
  const double tr = trace(op_).real();
  if (std::abs(tr - 1.0) > 1e-10)
    throw std::invalid_argument("DensityOperator: trace differs from 1");
  spec_ = herm_eig(op_);
  if (!spec_.eigenvalues.empty() && spec_.eigenvalues.back() < -1e-10)
    throw std::invalid_argument("DensityOperator: negative eigenvalue beyond tolerance");
  bool clamped = false;
  for (auto& ev : spec_.eigenvalues) {
    if (ev < 0.0) {
      ev = 0.0;
      clamped = true;
    }
  }
  if (clamped) {
    auto dims = op_.dims();
    op_ = spec_.reconstruct();
    op_.with_dims(dims);
  }
  pure_ = spec_.eigenvalues.size() < 2 || spec_.eigenvalues[1] <= 1e-10;
}

PureStateVector::PureStateVector(std::vector<cd> amplitudes, std::vector<int> dims)
    : amp_(std::move(amplitudes)), dims_(std::move(dims)) {
  if (dims_.empty()) dims_ = {int(amp_.size())};
  if (size_t(dims_product(dims_)) != amp_.size())
    throw std::invalid_argument("PureStateVector: dims product != length");
  double n2 = 0.0;
  for (const cd& x : amp_) n2 += std::norm(x);
  if (std::abs(std::sqrt(n2) - 1.0) > 1e-10)
    throw std::invalid_argument("PureStateVector: not normalized");
}

DensityOperator PureStateVector::projector() const {
  const int n = dim();
  ComplexOperator p(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) p.at(i, j) = amp_[i] * std::conj(amp_[j]);
  p.with_dims(dims_);
  return DensityOperator(std::move(p));
}

double trace_distance(const DensityOperator& rho, const DensityOperator& sigma) {
  if (rho.dim() != sigma.dim()) throw std::invalid_argument("trace_distance: dimension mismatch");
  std::vector<double> ev = herm_eigvals(rho.op() - sigma.op());
  double pos = 0.0;
  for (double x : ev)
    if (x > 0.0) pos += x;
  return pos;
}

SingularValueDecomposition sv_decompose(const ComplexOperator& a, double rank_tol) {
  const int m = a.rows(), n = a.cols();
  ComplexOperator w = a;                       // columns orthogonalized in place
  ComplexOperator v = ComplexOperator::identity(n);

  auto col_dot = [&](const ComplexOperator& x, int p, int q) {
    cd acc = 0.0;
    for (int i = 0; i < x.rows(); ++i) acc += std::conj(x.at(i, p)) * x.at(i, q);
    return acc;
  };

  for (int sweep = 0; sweep < 60; ++sweep) {
    bool rotated = false;
    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const double app = col_dot(w, p, p).real();
        const double aqq = col_dot(w, q, q).real();
        const cd apq = col_dot(w, p, q);
        const double r = std::abs(apq);
        if (r <= 1e-14 * std::sqrt(std::max(app * aqq, 0.0)) || r == 0.0) continue;
        rotated = true;
        const double zeta = (aqq - app) / (2.0 * r);
        const double t = (zeta >= 0.0 ? 1.0 : -1.0) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
        const double cs = 1.0 / std::sqrt(1.0 + t * t);
        const double sn = t * cs;
        const cd phase = apq / r;
        const cd u10 = -std::conj(phase) * sn;
        const cd u11 = std::conj(phase) * cs;
        for (int i = 0; i < m; ++i) {
          const cd wip = w.at(i, p), wiq = w.at(i, q);
          w.at(i, p) = cs * wip + u10 * wiq;
          w.at(i, q) = sn * wip + u11 * wiq;
        }
        for (int i = 0; i < n; ++i) {
          const cd vip = v.at(i, p), viq = v.at(i, q);
          v.at(i, p) = cs * vip + u10 * viq;
          v.at(i, q) = sn * vip + u11 * viq;
        }
      }
    }
    if (!rotated) break;
  }

  std::vector<double> norms(n);
  for (int k = 0; k < n; ++k) {
    double s2 = 0.0;
    for (int i = 0; i < m; ++i) s2 += std::norm(w.at(i, k));
    norms[k] = std::sqrt(s2);
  }
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int i, int j) { return norms[i] > norms[j]; });

  const double top = norms.empty() ? 0.0 : norms[order.front()];
  int rank = 0;
  for (int k = 0; k < n; ++k)
    if (norms[order[k]] > rank_tol * top && norms[order[k]] > 0.0) ++rank;

  SingularValueDecomposition out;
  out.values.resize(rank);
  out.left = ComplexOperator(m, rank);
  out.right = ComplexOperator(n, rank);
  for (int k = 0; k < rank; ++k) {
    const int src = order[k];
    out.values[k] = norms[src];
    cd ph(1.0, 0.0);
    for (int i = 0; i < m; ++i) {
      const cd x = w.at(i, src);
      if (std::abs(x) > 1e-8 * norms[src]) {
        ph = std::conj(x) / std::abs(x);
        break;
      }
    }
    for (int i = 0; i < m; ++i) out.left.at(i, k) = w.at(i, src) * ph / norms[src];
    for (int i = 0; i < n; ++i) out.right.at(i, k) = v.at(i, src) * ph;
  }
  return out;
}

double fidelity(const DensityOperator& rho, const DensityOperator& sigma) {
  if (rho.dim() != sigma.dim()) throw std::invalid_argument("fidelity: dimension mismatch");
  const SingularValueDecomposition sv = sv_decompose(op_sqrt(rho.op()) * op_sqrt(sigma.op()));
  double f = 0.0;
  for (double s : sv.values) f += s;
  return std::min(f, 1.0);
}

SchmidtDecomposition schmidt_decompose(const PureStateVector& psi) {
  if (psi.dims().size() != 2) throw std::invalid_argument("schmidt_decompose: input is not bipartite");
  const int da = psi.dims()[0], db = psi.dims()[1];
  ComplexOperator c(da, db);
  for (int i = 0; i < da; ++i)
    for (int j = 0; j < db; ++j) c.at(i, j) = psi.amplitudes()[size_t(i) * db + j];

  // |psi> = sum_k s_k |u_k> (x) |conj(v_k)>
  const SingularValueDecomposition sv = sv_decompose(c, 1e-10);
  SchmidtDecomposition out;
  out.coefficients = sv.values;
  out.left = sv.left;
  out.right = conj_op(sv.right);
  return out;
}

PureStateVector purify(const DensityOperator& rho) {
  const int d = rho.dim();
  const SpectralDecomposition& sd = rho.spectral();
  std::vector<cd> amp(size_t(d) * d, cd(0.0, 0.0));
  for (int k = 0; k < d; ++k) {
    const double lam = std::max(sd.eigenvalues[k], 0.0);
    if (lam <= 0.0) continue;
    const double r = std::sqrt(lam);
    for (int i = 0; i < d; ++i) amp[size_t(i) * d + k] += r * sd.eigenvectors.at(i, k);
  }
  // normalize away clamping residue
  double n2 = 0.0;
  for (const cd& x : amp) n2 += std::norm(x);
  const double inv = 1.0 / std::sqrt(n2);
  for (cd& x : amp) x *= inv;
  return PureStateVector(std::move(amp), {d, d});
}

PureStateVector max_entangled(int d) {
  if (d < 1) throw std::invalid_argument("max_entangled: d must be >= 1");
  std::vector<cd> amp(size_t(d) * d, cd(0.0, 0.0));
  const double r = 1.0 / std::sqrt(double(d));
  for (int i = 0; i < d; ++i) amp[size_t(i) * d + i] = r;
  return PureStateVector(std::move(amp), {d, d});
}

std::vector<cd> apply_matrix(const ComplexOperator& m, const std::vector<cd>& v) {
  if (size_t(m.cols()) != v.size()) throw std::invalid_argument("apply_matrix: shape mismatch");
  std::vector<cd> out(m.rows(), cd(0.0, 0.0));
  for (int i = 0; i < m.rows(); ++i) {
    cd acc = 0.0;
    for (int j = 0; j < m.cols(); ++j) acc += m.at(i, j) * v[j];
    out[i] = acc;
  }
  return out;
}

double transpose_trick_check(const ComplexOperator& m, int d) {
  if (m.rows() != d || m.cols() != d) throw std::invalid_argument("transpose_trick_check: shape mismatch");
  const PureStateVector phi = max_entangled(d);
  const ComplexOperator eye = ComplexOperator::identity(d);
  const std::vector<cd> lhs = apply_matrix(tensor(m, eye), phi.amplitudes());
  const std::vector<cd> rhs = apply_matrix(tensor(eye, transpose_op(m)), phi.amplitudes());
  double n2 = 0.0;
  for (size_t i = 0; i < lhs.size(); ++i) n2 += std::norm(lhs[i] - rhs[i]);
  return std::sqrt(n2);
}

}  // namespace eacap
