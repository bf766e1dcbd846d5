#include "wpinv/core.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <unsupported/Eigen/MatrixFunctions>

namespace wpinv {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::NotHermitian: return "NotHermitian";
    case ErrorKind::NotPositiveDefinite: return "NotPositiveDefinite";
    case ErrorKind::ConvergenceFailure: return "ConvergenceFailure";
    case ErrorKind::CriterionMismatch: return "CriterionMismatch";
    case ErrorKind::VerificationFailure: return "VerificationFailure";
    case ErrorKind::InconsistentProjectors: return "InconsistentProjectors";
    case ErrorKind::SingularCore: return "SingularCore";
    case ErrorKind::PreconditionUnmet: return "PreconditionUnmet";
    case ErrorKind::WitnessFailure: return "WitnessFailure";
    case ErrorKind::Defective: return "Defective";
    case ErrorKind::NotInvariant: return "NotInvariant";
    case ErrorKind::ParseError: return "ParseError";
  }
  return "Error";
}

std::string_view to_string(NormKind kind) {
  switch (kind) {
    case NormKind::Induced1: return "1";
    case NormKind::Induced2: return "2";
    case NormKind::InducedInf: return "inf";
    case NormKind::Frobenius: return "fro";
  }
  return "?";
}

NormKind norm_kind_from_string(std::string_view text) {
  if (text == "1") return NormKind::Induced1;
  if (text == "2") return NormKind::Induced2;
  if (text == "inf") return NormKind::InducedInf;
  if (text == "fro") return NormKind::Frobenius;
  throw InvalidArgument("unknown norm '" + std::string(text) + "' (expected 1, 2, inf or fro)");
}

bool is_finite(const CMatrix& m) {
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      if (!std::isfinite(m(i, j).real()) || !std::isfinite(m(i, j).imag())) return false;
    }
  }
  return true;
}

void require_finite(const CMatrix& m, std::string_view what) {
  if (!is_finite(m)) throw InvalidArgument(std::string(what) + " has non-finite entries");
}

void require_square(const CMatrix& m, std::string_view what) {
  if (m.rows() != m.cols()) {
    throw DimensionMismatch(std::string(what) + " must be square, got " + std::to_string(m.rows()) +
                            "x" + std::to_string(m.cols()));
  }
}

CMatrix identity(Eigen::Index n) { return CMatrix::Identity(n, n); }

double rel_gap(const CMatrix& x, const CMatrix& y, double scale) {
  const double diff = (x - y).norm();
  if (diff == 0.0) return 0.0;
  if (scale <= 0.0) return std::numeric_limits<double>::infinity();
  return diff / scale;
}

double rel_gap(const CMatrix& x, const CMatrix& y) {
  return rel_gap(x, y, std::max(x.norm(), y.norm()));
}

RVector singular_values(const CMatrix& m) {
  if (m.size() == 0) return RVector();
  Eigen::JacobiSVD<CMatrix> svd(m);
  return svd.singularValues();
}

double induced_norm(const CMatrix& m, NormKind kind) {
  if (m.size() == 0) return 0.0;
  switch (kind) {
    case NormKind::Induced1: return m.cwiseAbs().colwise().sum().maxCoeff();
    case NormKind::InducedInf: return m.cwiseAbs().rowwise().sum().maxCoeff();
    case NormKind::Induced2: return singular_values(m)(0);
    case NormKind::Frobenius: return m.norm();
  }
  return 0.0;
}

CMatrix svd_pinv(const CMatrix& m, double tol) {
  if (!(tol > 0.0)) throw InvalidArgument("svd_pinv tolerance must be positive");
  CMatrix out = CMatrix::Zero(m.cols(), m.rows());
  if (m.size() == 0) return out;
  Eigen::JacobiSVD<CMatrix> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const RVector& s = svd.singularValues();
  if (s(0) == 0.0) return out;
  const double cutoff = tol * s(0);
  for (Eigen::Index i = 0; i < s.size() && s(i) > cutoff; ++i) {
    out.noalias() += (svd.matrixV().col(i) / s(i)) * svd.matrixU().col(i).adjoint();
  }
  return out;
}

std::array<double, 4> penrose_residuals(const CMatrix& m, const CMatrix& b) {
  const CMatrix mb = m * b;
  const CMatrix bm = b * m;
  return {rel_gap(mb * m, m, m.norm()), rel_gap(bm * b, b, b.norm()),
          rel_gap(mb.adjoint(), mb, mb.norm()), rel_gap(bm.adjoint(), bm, bm.norm())};
}

CMatrix principal_sqrt_hpd(const CMatrix& p, double tol) {
  require_square(p, "principal_sqrt_hpd input");
  require_finite(p, "principal_sqrt_hpd input");
  if (p.size() == 0) return p;
  const double scale = p.norm();
  if ((p - p.adjoint()).norm() > tol * scale) throw NotHermitian("matrix is not hermitian");
  const CMatrix h = 0.5 * (p + p.adjoint());
  Eigen::SelfAdjointEigenSolver<CMatrix> es(h);
  if (es.info() != Eigen::Success) throw ConvergenceFailure("hermitian eigensolver did not converge");
  const RVector& w = es.eigenvalues();  // ascending
  const double wmax = w(w.size() - 1);
  if (!(wmax > 0.0) || w(0) <= tol * wmax) {
    throw NotPositiveDefinite("minimum eigenvalue " + std::to_string(w(0)) +
                              " not above tol * max eigenvalue");
  }
  const CMatrix& v = es.eigenvectors();
  CMatrix s = v * w.cwiseSqrt().asDiagonal() * v.adjoint();
  return 0.5 * (s + s.adjoint());
}

SpectralData eig(const CMatrix& m) {
  require_square(m, "eig input");
  require_finite(m, "eig input");
  SpectralData out;
  if (m.size() == 0) return out;
  Eigen::ComplexEigenSolver<CMatrix> es(m, true);
  if (es.info() != Eigen::Success) throw ConvergenceFailure("complex eigensolver did not converge");
  out.eigenvalues = es.eigenvalues();
  out.eigenvectors = es.eigenvectors();
  for (Eigen::Index j = 0; j < out.eigenvectors.cols(); ++j) {
    const double nrm = out.eigenvectors.col(j).norm();
    if (nrm > 0.0) out.eigenvectors.col(j) /= nrm;
  }
  const RVector s = singular_values(out.eigenvectors);
  const double smin = s(s.size() - 1);
  out.condition = smin > 0.0 ? s(0) / smin : std::numeric_limits<double>::infinity();
  const CMatrix av = m * out.eigenvectors;
  const CMatrix vl = out.eigenvectors * out.eigenvalues.asDiagonal();
  out.residual = rel_gap(av, vl, m.norm());
  return out;
}

CMatrix matrix_exp(const CMatrix& m) {
  require_square(m, "matrix_exp input");
  require_finite(m, "matrix_exp input");
  const Eigen::Index n = m.rows();
  if (m.isZero(0.0)) return identity(n);
  // Eigenvector path for well conditioned (typically normal) inputs, Pade
  // scaling and squaring otherwise.
  constexpr double kMaxEigenvectorCondition = 1e6;
  try {
    const SpectralData sd = eig(m);
    if (sd.condition < kMaxEigenvectorCondition) {
      const CVector ex = sd.eigenvalues.array().exp();
      return (sd.eigenvectors * ex.asDiagonal()) * sd.eigenvectors.inverse();
    }
  } catch (const ConvergenceFailure&) {
  }
  return m.exp();
}

Eigen::Index rank(const CMatrix& m, double tol) {
  if (!(tol > 0.0)) throw InvalidArgument("rank tolerance must be positive");
  if (m.size() == 0) return 0;
  const RVector s = singular_values(m);
  if (s(0) == 0.0) return 0;
  return (s.array() > tol * s(0)).count();
}

CMatrix matrix_power(const CMatrix& m, int k) {
  require_square(m, "matrix_power input");
  if (k < 0) throw InvalidArgument("matrix_power exponent must be non-negative");
  CMatrix result = identity(m.rows());
  CMatrix base = m;
  while (k > 0) {
    if (k & 1) result = result * base;
    k >>= 1;
    if (k > 0) base = base * base;
  }
  return result;
}

}  // namespace wpinv
