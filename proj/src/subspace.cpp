#include "wpinv/subspace.hpp"

#include <algorithm>

namespace wpinv {

double range_inclusion_residual(const CMatrix& x, const CMatrix& y, double tol) {
  if (x.rows() != y.rows()) throw DimensionMismatch("range comparison needs equal row counts");
  const double nx = x.norm();
  if (nx == 0.0) return 0.0;
  const double ny = y.norm();
  const Eigen::Index ry = ny == 0.0 ? 0 : rank(y, tol);
  CMatrix stacked(x.rows(), x.cols() + y.cols());
  stacked << (ny == 0.0 ? y : CMatrix(y / ny)), x / nx;
  const RVector s = singular_values(stacked);
  if (ry >= s.size()) return 0.0;
  return s(ry) / s(0);
}

double null_inclusion_residual(const CMatrix& x, const CMatrix& y, double tol) {
  if (x.cols() != y.cols()) throw DimensionMismatch("null-space comparison needs equal column counts");
  return range_inclusion_residual(y.adjoint(), x.adjoint(), tol);
}

double range_equality_residual(const CMatrix& x, const CMatrix& y, double tol) {
  return std::max(range_inclusion_residual(x, y, tol), range_inclusion_residual(y, x, tol));
}

double null_equality_residual(const CMatrix& x, const CMatrix& y, double tol) {
  return std::max(null_inclusion_residual(x, y, tol), null_inclusion_residual(y, x, tol));
}

CMatrix range_basis(const CMatrix& m, double tol) {
  Eigen::ColPivHouseholderQR<CMatrix> qr(m);
  qr.setThreshold(tol);
  const Eigen::Index r = qr.rank();
  CMatrix q = qr.householderQ();
  return q.leftCols(r);
}

CMatrix null_basis(const CMatrix& m, double tol) {
  // N(m) is the orthogonal complement of R(m*).
  Eigen::ColPivHouseholderQR<CMatrix> qr(m.adjoint());
  qr.setThreshold(tol);
  const Eigen::Index r = qr.rank();
  CMatrix q = qr.householderQ();
  return q.rightCols(m.cols() - r);
}

}  // namespace wpinv
