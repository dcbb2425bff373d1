#pragma once

#include "eacap/linalg.hpp"
#include "eacap/rng.hpp"

namespace eacap {

inline ComplexOperator random_ginibre(Rng& rng, int rows, int cols) {
  ComplexOperator g(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) g.at(i, j) = cd(rng.normal(), rng.normal());
  return g;
}

inline ComplexOperator random_hermitian(Rng& rng, int d) {
  return hermitize(random_ginibre(rng, d, d));
}

/// Full-rank random density operator (Ginibre ensemble).
inline DensityOperator random_density(Rng& rng, int d, int rank = 0) {
  if (rank <= 0 || rank > d) rank = d;
  ComplexOperator g = random_ginibre(rng, d, rank);
  ComplexOperator m = g * adjoint(g);
  const double tr = trace(m).real();
  m *= cd(1.0 / tr, 0.0);
  return DensityOperator(hermitize(m));
}

inline PureStateVector random_pure(Rng& rng, const std::vector<int>& dims) {
  int n = 1;
  for (int d : dims) n *= d;
  std::vector<cd> amp(n);
  double norm2 = 0.0;
  for (cd& x : amp) {
    x = cd(rng.normal(), rng.normal());
    norm2 += std::norm(x);
  }
  const double inv = 1.0 / std::sqrt(norm2);
  for (cd& x : amp) x *= inv;
  return PureStateVector(std::move(amp), dims);
}

/// Haar-ish random unitary via Gram-Schmidt on a Ginibre matrix.
inline ComplexOperator random_unitary(Rng& rng, int d) {
  ComplexOperator g = random_ginibre(rng, d, d);
  for (int c = 0; c < d; ++c) {
    for (int prev = 0; prev < c; ++prev) {
      cd ip = 0.0;
      for (int i = 0; i < d; ++i) ip += std::conj(g.at(i, prev)) * g.at(i, c);
      for (int i = 0; i < d; ++i) g.at(i, c) -= ip * g.at(i, prev);
    }
    double n2 = 0.0;
    for (int i = 0; i < d; ++i) n2 += std::norm(g.at(i, c));
    const double inv = 1.0 / std::sqrt(n2);
    for (int i = 0; i < d; ++i) g.at(i, c) *= inv;
  }
  g.with_dims({d});
  return g;
}

}  // namespace eacap
