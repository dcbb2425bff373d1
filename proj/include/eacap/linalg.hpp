#pragma once

#include <complex>
#include <functional>
#include <vector>

namespace eacap {

using cd = std::complex<double>;

// Shared kernel cutoff: eigenvalues below this fraction of the largest one
// count as zero for support projections, inverse powers and logs.
inline constexpr double kKernelRelTol = 1e-10;

/// Dense complex matrix, row-major. Square operators may carry an ordered
/// list of subsystem dimensions whose product equals the row count; the list
/// is what tensor/partial_trace operate against.
class ComplexOperator {
 public:
  ComplexOperator() = default;
  ComplexOperator(int rows, int cols);
  ComplexOperator(int rows, int cols, std::vector<cd> data);

  static ComplexOperator identity(int d);
  static ComplexOperator identity(const std::vector<int>& dims);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  bool square() const { return rows_ == cols_ && rows_ > 0; }

  cd& at(int r, int c) { return a_[size_t(r) * cols_ + c]; }
  const cd& at(int r, int c) const { return a_[size_t(r) * cols_ + c]; }
  std::vector<cd>& data() { return a_; }
  const std::vector<cd>& data() const { return a_; }

  const std::vector<int>& dims() const { return dims_; }
  // Sets the subsystem dimensions; their product must equal the row count.
  ComplexOperator& with_dims(std::vector<int> dims);

  ComplexOperator& operator+=(const ComplexOperator& o);
  ComplexOperator& operator-=(const ComplexOperator& o);
  ComplexOperator& operator*=(cd s);

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<cd> a_;
  std::vector<int> dims_;
};

ComplexOperator operator+(ComplexOperator a, const ComplexOperator& b);
ComplexOperator operator-(ComplexOperator a, const ComplexOperator& b);
ComplexOperator operator*(cd s, ComplexOperator a);
ComplexOperator operator*(const ComplexOperator& a, const ComplexOperator& b);

ComplexOperator adjoint(const ComplexOperator& a);
ComplexOperator transpose_op(const ComplexOperator& a);
ComplexOperator conj_op(const ComplexOperator& a);
cd trace(const ComplexOperator& a);
double fro_norm(const ComplexOperator& a);
double max_abs(const ComplexOperator& a);
// max |a - a†|, square input
double herm_residual(const ComplexOperator& a);
ComplexOperator hermitize(const ComplexOperator& a);

/// Kronecker product; for square operators the dims lists concatenate.
ComplexOperator tensor(const ComplexOperator& a, const ComplexOperator& b);

/// Trace out every subsystem not listed in `keep` (0-based indices into
/// dims()). Result carries the restricted dims.
ComplexOperator partial_trace(const ComplexOperator& m, const std::vector<int>& keep);

struct SpectralDecomposition {
  std::vector<double> eigenvalues;   // descending
  ComplexOperator eigenvectors;      // orthonormal columns, matching order
  ComplexOperator reconstruct() const;
};

/// Hermitian eigendecomposition by cyclic complex Jacobi rotations.
/// Deterministic ordering: eigenvalues descending, each eigenvector phased so
/// its first component above 1e-8 in magnitude is real positive.
SpectralDecomposition herm_eig(const ComplexOperator& h);
/// Eigenvalues only (descending); cheaper for scalar objectives.
std::vector<double> herm_eigvals(const ComplexOperator& h);

/// f applied to the spectrum. With support_only set, eigenvalues at or below
/// kKernelRelTol * (max eigenvalue) map to 0 and f is never evaluated there.
/// Throws std::domain_error if f is non-finite on a retained eigenvalue.
ComplexOperator op_func(const ComplexOperator& h, const std::function<double(double)>& f,
                        bool support_only);
ComplexOperator op_sqrt(const ComplexOperator& h);
ComplexOperator op_log2(const ComplexOperator& h);           // support convention
ComplexOperator op_inv_sqrt(const ComplexOperator& h);       // support convention
ComplexOperator op_pow(const ComplexOperator& h, double e, bool support_only);
ComplexOperator support_projector(const ComplexOperator& h);

/// Positive unit-trace Hermitian operator. Construction validates trace and
/// spectrum (eigenvalues >= -1e-10), then clamps stray negatives to zero.
class DensityOperator {
 public:
  explicit DensityOperator(ComplexOperator op);

  const ComplexOperator& op() const { return op_; }
  const std::vector<int>& dims() const { return op_.dims(); }
  int dim() const { return op_.rows(); }
  bool is_pure() const { return pure_; }
  const SpectralDecomposition& spectral() const { return spec_; }
  const std::vector<double>& eigenvalues() const { return spec_.eigenvalues; }

 private:
  ComplexOperator op_;
  SpectralDecomposition spec_;
  bool pure_ = false;
};

/// Normalized state vector over a tensor factorization.
class PureStateVector {
 public:
  PureStateVector(std::vector<cd> amplitudes, std::vector<int> dims);

  const std::vector<cd>& amplitudes() const { return amp_; }
  const std::vector<int>& dims() const { return dims_; }
  int dim() const { return int(amp_.size()); }
  DensityOperator projector() const;

 private:
  std::vector<cd> amp_;
  std::vector<int> dims_;
};

/// 1/2 ||rho - sigma||_1, evaluated as the positive-part trace of rho - sigma.
double trace_distance(const DensityOperator& rho, const DensityOperator& sigma);
/// F = || sqrt(rho) sqrt(sigma) ||_1.
double fidelity(const DensityOperator& rho, const DensityOperator& sigma);

struct SingularValueDecomposition {
  std::vector<double> values;   // descending, above the rank cutoff
  ComplexOperator left;         // m x r, orthonormal columns
  ComplexOperator right;        // n x r, orthonormal columns; a = left diag(values) right†
};

/// One-sided Jacobi SVD. Computes small singular values directly as column
/// norms (no normal-matrix squaring), so rank-deficient inputs do not leak
/// sqrt(eps)-sized spurious values. Values at or below rank_tol * (largest
/// value) are dropped.
SingularValueDecomposition sv_decompose(const ComplexOperator& a, double rank_tol = 1e-13);

struct SchmidtDecomposition {
  std::vector<double> coefficients;  // nonnegative, descending, squares sum to 1
  ComplexOperator left;              // columns, one per retained coefficient
  ComplexOperator right;
};
/// Bipartite input only (exactly two dims).
SchmidtDecomposition schmidt_decompose(const PureStateVector& psi);

/// Canonical purification sum_i sqrt(lambda_i) |e_i>|i> on A (x) A'.
PureStateVector purify(const DensityOperator& rho);

/// |Phi_d> = d^{-1/2} sum_i |ii>.
PureStateVector max_entangled(int d);

std::vector<cd> apply_matrix(const ComplexOperator& m, const std::vector<cd>& v);

/// || (M (x) I)|Phi> - (I (x) M^T)|Phi> ||, contract <= 1e-10.
double transpose_trick_check(const ComplexOperator& m, int d);

}  // namespace eacap
