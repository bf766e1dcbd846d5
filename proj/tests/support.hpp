#pragma once

// Helpers shared by the unit tests: literal matrices, closeness assertions
// and oracles that do not go through the library's SVD path.

#include <gtest/gtest.h>

#include <initializer_list>
#include <string>

#include <Eigen/QR>

#include "wpinv/core.hpp"

namespace wpinv::test {

/// Row-major literal; entries may be real or complex.
inline CMatrix mat(std::initializer_list<std::initializer_list<Complex>> rows) {
  const auto r = static_cast<Eigen::Index>(rows.size());
  const auto c = static_cast<Eigen::Index>(rows.begin()->size());
  CMatrix m(r, c);
  Eigen::Index i = 0;
  for (const auto& row : rows) {
    Eigen::Index j = 0;
    for (const auto& v : row) m(i, j++) = v;
    ++i;
  }
  return m;
}

inline CMatrix diag(std::initializer_list<Complex> d) {
  CMatrix m = CMatrix::Zero(static_cast<Eigen::Index>(d.size()), static_cast<Eigen::Index>(d.size()));
  Eigen::Index i = 0;
  for (const auto& v : d) {
    m(i, i) = v;
    ++i;
  }
  return m;
}

inline ::testing::AssertionResult close(const CMatrix& actual, const CMatrix& expected, double tol) {
  if (actual.rows() != expected.rows() || actual.cols() != expected.cols()) {
    return ::testing::AssertionFailure() << "shape " << actual.rows() << "x" << actual.cols()
                                         << " vs " << expected.rows() << "x" << expected.cols();
  }
  const double err = (actual - expected).cwiseAbs().maxCoeff();
  if (err <= tol) return ::testing::AssertionSuccess();
  return ::testing::AssertionFailure() << "max entry error " << err << " > " << tol << "\nactual:\n"
                                       << actual << "\nexpected:\n" << expected;
}

/// Moore-Penrose inverse through a complete orthogonal decomposition; shares
/// no code with the SVD-based routines under test.
inline CMatrix cod_pinv(const CMatrix& m, double threshold = 1e-10) {
  Eigen::CompleteOrthogonalDecomposition<CMatrix> cod;
  cod.setThreshold(threshold);
  cod.compute(m);
  return cod.pseudoInverse();
}

/// Hermitian square root through the library-independent self-adjoint solver.
inline CMatrix hpd_power(const CMatrix& p, double power) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(p);
  return es.eigenvectors() * es.eigenvalues().array().pow(power).matrix().asDiagonal() *
         es.eigenvectors().adjoint();
}

}  // namespace wpinv::test
