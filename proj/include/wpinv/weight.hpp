#pragma once

#include "wpinv/core.hpp"

namespace wpinv {

/// A hermitian positive definite weight together with its principal square
/// root and inverse square root, computed once from one eigendecomposition.
class Weight {
 public:
  /// Minimum admissible ratio of smallest to largest eigenvalue.
  static constexpr double kMinEigenRatio = 1e-12;

  /// Validates w (hermitian to kKernelTol relative, eigenvalue ratio above
  /// kMinEigenRatio). Throws NotHermitian or NotPositiveDefinite.
  static Weight from_matrix(const CMatrix& w);
  static Weight identity(Eigen::Index n);

  const CMatrix& matrix() const noexcept { return w_; }
  const CMatrix& sqrt() const noexcept { return sqrt_; }
  const CMatrix& inv_sqrt() const noexcept { return inv_sqrt_; }
  CMatrix inverse() const { return inv_sqrt_ * inv_sqrt_; }
  Eigen::Index dim() const noexcept { return w_.rows(); }
  const RVector& eigenvalues() const noexcept { return eigenvalues_; }
  double condition() const;

 private:
  Weight() = default;

  CMatrix w_;
  CMatrix sqrt_;
  CMatrix inv_sqrt_;
  RVector eigenvalues_;
};

}  // namespace wpinv
