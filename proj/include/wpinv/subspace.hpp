#pragma once

// Range and null-space comparisons by rank of concatenations. Each residual
// is the first singular value beyond rank(Y) of [Y/||Y|| | X/||X||], relative
// to the largest; it is (numerically) zero exactly when the inclusion holds.

#include "wpinv/core.hpp"

namespace wpinv {

/// Residual of R(x) ⊆ R(y).
double range_inclusion_residual(const CMatrix& x, const CMatrix& y, double tol);

/// Residual of N(x) ⊆ N(y), evaluated as R(y*) ⊆ R(x*).
double null_inclusion_residual(const CMatrix& x, const CMatrix& y, double tol);

/// Residual of R(x) = R(y) (max of both inclusions).
double range_equality_residual(const CMatrix& x, const CMatrix& y, double tol);

/// Residual of N(x) = N(y).
double null_equality_residual(const CMatrix& x, const CMatrix& y, double tol);

/// Orthonormal basis of R(m) from a column-pivoted QR with relative threshold tol.
CMatrix range_basis(const CMatrix& m, double tol);

/// Orthonormal basis of N(m) from the complete orthogonal decomposition.
CMatrix null_basis(const CMatrix& m, double tol);

}  // namespace wpinv
