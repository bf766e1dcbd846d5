#include "wpinv/geninv.hpp"

#include <algorithm>
#include <string>

#include "wpinv/subspace.hpp"

namespace wpinv {

namespace {

void require_weights(const CMatrix& a, const Weight& e, const Weight& f) {
  require_finite(a, "A");
  if (e.dim() != a.rows() || f.dim() != a.cols()) {
    throw DimensionMismatch("weights must be " + std::to_string(a.rows()) + "x" +
                            std::to_string(a.rows()) + " and " + std::to_string(a.cols()) + "x" +
                            std::to_string(a.cols()));
  }
}

double hermitian_gap(const CMatrix& weight, const CMatrix& x) {
  const CMatrix wx = weight * x;
  return rel_gap(wx.adjoint(), wx, weight.norm() * x.norm());
}

std::string describe(const std::array<double, 4>& r) {
  return "residuals [" + std::to_string(r[0]) + ", " + std::to_string(r[1]) + ", " +
         std::to_string(r[2]) + ", " + std::to_string(r[3]) + "]";
}

}  // namespace

double WeightedPinvResult::max_residual() const {
  return *std::max_element(residuals.begin(), residuals.end());
}

std::array<double, 4> weighted_penrose_residuals(const CMatrix& a, const CMatrix& b,
                                                 const Weight& e, const Weight& f) {
  const CMatrix ab = a * b;
  const CMatrix ba = b * a;
  return {rel_gap(ab * a, a, a.norm()), rel_gap(ba * b, b, b.norm()),
          hermitian_gap(e.matrix(), ab), hermitian_gap(f.matrix(), ba)};
}

WeightedPinvResult weighted_pinv_candidate(const CMatrix& a, const Weight& e, const Weight& f,
                                           double tol) {
  require_weights(a, e, f);
  WeightedPinvResult out;
  out.tol = tol;
  const CMatrix core = e.sqrt() * a * f.inv_sqrt();
  out.B = f.inv_sqrt() * svd_pinv(core, tol) * e.sqrt();
  out.P = a * out.B;
  out.Q = out.B * a;
  out.residuals = weighted_penrose_residuals(a, out.B, e, f);
  return out;
}

WeightedPinvResult weighted_pinv(const CMatrix& a, const Weight& e, const Weight& f, double tol) {
  WeightedPinvResult out = weighted_pinv_candidate(a, e, f, tol);
  if (!out.success()) {
    throw VerificationFailure("weighted pseudoinverse misses tolerance " + std::to_string(tol) +
                              ": " + describe(out.residuals));
  }
  return out;
}

std::pair<CMatrix, CMatrix> projectors_of(const CMatrix& a, const Weight& e, const Weight& f,
                                          double tol) {
  const WeightedPinvResult r = weighted_pinv(a, e, f, tol);
  const CMatrix& p = r.P;
  const CMatrix& q = r.Q;
  const double checks[] = {
      rel_gap(p * p, p, p.norm() * p.norm()),
      rel_gap(q * q, q, q.norm() * q.norm()),
      hermitian_gap(e.matrix(), p),
      hermitian_gap(f.matrix(), q),
      range_equality_residual(p, a, tol),
      null_equality_residual(q, a, tol),
  };
  const double worst = *std::max_element(std::begin(checks), std::end(checks));
  if (worst > tol) {
    throw VerificationFailure("projector pair fails its defining properties (worst residual " +
                              std::to_string(worst) + ")");
  }
  return {p, q};
}

CMatrix pinv_from_projectors(const CMatrix& a, const CMatrix& p, const CMatrix& q, double tol) {
  require_square(a, "A");
  if (p.rows() != a.rows() || p.cols() != a.rows() || q.rows() != a.cols() ||
      q.cols() != a.cols()) {
    throw DimensionMismatch("projector shapes do not match A");
  }
  const double idem_p = rel_gap(p * p, p, p.norm() * p.norm());
  const double idem_q = rel_gap(q * q, q, q.norm() * q.norm());
  const double range = range_equality_residual(p, a, tol);
  const double null = null_equality_residual(q, a, tol);
  if (std::max({idem_p, idem_q, range, null}) > tol) {
    throw InconsistentProjectors("need P² = P, Q² = Q, R(P) = R(A), N(Q) = N(A); residuals " +
                                 std::to_string(idem_p) + ", " + std::to_string(idem_q) + ", " +
                                 std::to_string(range) + ", " + std::to_string(null));
  }
  if (a.isZero(0.0)) return CMatrix::Zero(a.cols(), a.rows());

  // Orthonormal bases of R(P) = R(A) and R(Q); A maps the second onto the first.
  const CMatrix range_p = range_basis(p, tol);
  const CMatrix range_q = range_basis(q, tol);
  if (range_p.cols() != range_q.cols()) {
    throw InconsistentProjectors("rank(P) differs from rank(Q)");
  }
  const CMatrix restricted = range_p.adjoint() * a * range_q;
  Eigen::FullPivLU<CMatrix> lu(restricted);
  lu.setThreshold(tol);
  if (!lu.isInvertible()) throw InconsistentProjectors("A restricted to R(Q) -> R(A) is singular");
  // x = range_p y + (component in N(P)) has y = range_p* P x.
  return range_q * lu.solve(range_p.adjoint() * p);
}

bool reverse_weights_identity_check(const CMatrix& a, const Weight& e, const Weight& f, double tol) {
  const CMatrix b = weighted_pinv(a, e, f, tol).B;
  const CMatrix back = weighted_pinv(b, f, e, tol).B;
  return (back - a).norm() <= tol * a.norm();
}

GroupInvResult group_inverse(const CMatrix& a, double tol) {
  require_square(a, "A");
  require_finite(a, "A");
  GroupInvResult out;
  const Eigen::Index n = a.rows();
  out.rank_A = rank(a, tol);
  out.rank_A2 = rank(a * a, tol);
  out.exists = out.rank_A == out.rank_A2;
  if (!out.exists) return out;
  if (out.rank_A == 0) {
    out.sharp = CMatrix::Zero(n, n);
    return out;
  }
  const Eigen::Index r = out.rank_A;
  Eigen::JacobiSVD<CMatrix> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const CMatrix c = svd.matrixU().leftCols(r) * svd.singularValues().head(r).asDiagonal();
  const CMatrix rr = svd.matrixV().leftCols(r).adjoint();
  const CMatrix core = rr * c;
  if (rank(core, tol) < r) {
    throw SingularCore("RC is numerically singular while rank(A) = rank(A²) = " + std::to_string(r));
  }
  const Eigen::PartialPivLU<CMatrix> lu(core);
  const CMatrix inv_core = lu.inverse();
  const CMatrix s = c * (inv_core * inv_core) * rr;
  out.sharp = s;
  out.residuals = {rel_gap(a * s * a, a, a.norm()), rel_gap(s * a * s, s, s.norm()),
                   rel_gap(a * s, s * a, a.norm() * s.norm())};
  const double worst = *std::max_element(out.residuals.begin(), out.residuals.end());
  if (worst > tol) {
    throw VerificationFailure("group inverse identities miss tolerance (worst " +
                              std::to_string(worst) + ")");
  }
  return out;
}

}  // namespace wpinv
