#include "wpinv/weight.hpp"

#include <string>

namespace wpinv {

Weight Weight::from_matrix(const CMatrix& w) {
  require_square(w, "weight");
  require_finite(w, "weight");
  if (w.size() == 0) throw InvalidArgument("weight must be non-empty");
  if ((w - w.adjoint()).norm() > kKernelTol * w.norm()) throw NotHermitian("weight is not hermitian");

  Weight out;
  out.w_ = 0.5 * (w + w.adjoint());
  Eigen::SelfAdjointEigenSolver<CMatrix> es(out.w_);
  if (es.info() != Eigen::Success) throw ConvergenceFailure("weight eigensolver did not converge");
  out.eigenvalues_ = es.eigenvalues();
  const double wmin = out.eigenvalues_(0);
  const double wmax = out.eigenvalues_(out.eigenvalues_.size() - 1);
  if (!(wmax > 0.0) || wmin <= kMinEigenRatio * wmax) {
    throw NotPositiveDefinite("weight eigenvalues span [" + std::to_string(wmin) + ", " +
                              std::to_string(wmax) + "]");
  }
  const CMatrix& v = es.eigenvectors();
  const RVector root = out.eigenvalues_.cwiseSqrt();
  out.sqrt_ = v * root.asDiagonal() * v.adjoint();
  out.inv_sqrt_ = v * root.cwiseInverse().asDiagonal() * v.adjoint();
  out.sqrt_ = 0.5 * (out.sqrt_ + out.sqrt_.adjoint()).eval();
  out.inv_sqrt_ = 0.5 * (out.inv_sqrt_ + out.inv_sqrt_.adjoint()).eval();
  return out;
}

Weight Weight::identity(Eigen::Index n) {
  Weight out;
  out.w_ = wpinv::identity(n);
  out.sqrt_ = out.w_;
  out.inv_sqrt_ = out.w_;
  out.eigenvalues_ = RVector::Ones(n);
  return out;
}

double Weight::condition() const {
  return eigenvalues_(eigenvalues_.size() - 1) / eigenvalues_(0);
}

}  // namespace wpinv
