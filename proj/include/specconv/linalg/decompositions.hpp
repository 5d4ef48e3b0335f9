#pragma once

#include "specconv/linalg/matrix.hpp"

namespace specconv {

struct SymEigResult {
  Vec eigenvalues;     ///< non-increasing
  Matrix eigenvectors; ///< orthonormal columns, M = Q diag(eigenvalues) Q'
};

/// Cyclic Jacobi eigendecomposition. Throws InputError unless M is symmetric to 1e-12.
SymEigResult sym_eig(const Matrix& m);

struct SvdResult {
  Matrix u;                ///< m x m orthogonal
  Vec singular_values;     ///< min(m, n) entries, non-increasing, non-negative
  Matrix v;                ///< n x n orthogonal
};

/// Full SVD M = U Sigma V' via one-sided (Hestenes) Jacobi.
SvdResult svd(const Matrix& m);

/// Completes the orthonormal columns of `q` (rows x k) to a rows x rows orthogonal matrix.
Matrix complete_orthonormal(const Matrix& q);

}  // namespace specconv
