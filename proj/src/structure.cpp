#include "wpinv/structure.hpp"

#include <algorithm>
#include <string>

#include "wpinv/geninv.hpp"

namespace wpinv {

LiftedOperator left_mult_lift(const CMatrix& a) {
  require_square(a, "A");
  const Eigen::Index n = a.rows();
  LiftedOperator out;
  out.source = a;
  out.L = CMatrix::Zero(n * n, n * n);
  for (Eigen::Index b = 0; b < n; ++b) out.L.block(b * n, b * n, n, n) = a;
  return out;
}

CVector vec(const CMatrix& x) {
  return Eigen::Map<const CVector>(x.data(), x.size());
}

TheoremCheck verify_lift_theorem(const CMatrix& a, const Weight& e, const Weight& f, double tol) {
  const CMatrix b = weighted_pinv(a, e, f, tol).B;
  const Weight le = Weight::from_matrix(left_mult_lift(e.matrix()).L);
  const Weight lf = Weight::from_matrix(left_mult_lift(f.matrix()).L);
  const CMatrix lifted_inverse = weighted_pinv(left_mult_lift(a).L, le, lf, tol).B;
  TheoremCheck out;
  out.gap = rel_gap(lifted_inverse, left_mult_lift(b).L);
  out.holds = out.gap <= tol;
  return out;
}

BlockModel::BlockModel(CMatrix t, Eigen::Index k) : t_(std::move(t)), k_(k) {
  require_square(t_, "block model matrix");
  if (k_ < 1 || k_ >= t_.rows()) {
    throw InvalidArgument("leading block size must satisfy 1 <= k < n, got k = " +
                          std::to_string(k_) + ", n = " + std::to_string(t_.rows()));
  }
  invariance_residual_ = t_.bottomLeftCorner(t_.rows() - k_, k_).norm();
}

std::pair<CMatrix, CMatrix> restriction_blocks(const BlockModel& m, double tol) {
  if (!m.invariant(tol)) {
    throw NotInvariant("lower-left block has norm " + std::to_string(m.invariance_residual()));
  }
  return {m.leading(), m.trailing()};
}

namespace {

enum class Side { Leading, Trailing };

CMatrix block_of(const CMatrix& m, Eigen::Index k, Side side) {
  const Eigen::Index n = m.rows();
  return side == Side::Leading ? CMatrix(m.topLeftCorner(k, k))
                               : CMatrix(m.bottomRightCorner(n - k, n - k));
}

double root_compatibility(const BlockModel& w, const Weight& full, const Weight& part, Side side) {
  return std::max(rel_gap(part.sqrt(), block_of(full.sqrt(), w.k(), side)),
                  rel_gap(part.inv_sqrt(), block_of(full.inv_sqrt(), w.k(), side)));
}

TheoremCheck verify_block_theorem(const BlockModel& t, const BlockModel& e, const BlockModel& f,
                                  double tol, Side side) {
  if (e.n() != t.n() || f.n() != t.n() || e.k() != t.k() || f.k() != t.k()) {
    throw DimensionMismatch("T, E and F must share n and the leading block size");
  }
  if (!t.invariant(tol)) throw NotInvariant("Y is not invariant for T");
  // An HPD weight leaving Y invariant also leaves Y-perp invariant.
  for (const BlockModel* w : {&e, &f}) {
    if (!w->invariant(tol) || w->upper_right().norm() > tol * w->matrix().norm()) {
      throw NotInvariant("weights must be block diagonal with respect to Y");
    }
  }
  const Weight we = Weight::from_matrix(e.matrix());
  const Weight wf = Weight::from_matrix(f.matrix());
  const CMatrix b = weighted_pinv(t.matrix(), we, wf, tol).B;
  const BlockModel b_model(b, t.k());
  if (!b_model.invariant(tol)) {
    throw NotInvariant("Y is not invariant for the weighted inverse (lower-left block norm " +
                       std::to_string(b_model.invariance_residual()) + ")");
  }
  const Weight e_part = Weight::from_matrix(block_of(e.matrix(), t.k(), side));
  const Weight f_part = Weight::from_matrix(block_of(f.matrix(), t.k(), side));
  const CMatrix part_inverse = weighted_pinv(block_of(t.matrix(), t.k(), side), e_part, f_part, tol).B;

  TheoremCheck out;
  out.gap = rel_gap(part_inverse, block_of(b, t.k(), side));
  out.sqrt_gap = std::max(root_compatibility(e, we, e_part, side),
                          root_compatibility(f, wf, f_part, side));
  out.holds = out.gap <= tol && out.sqrt_gap <= tol;
  return out;
}

}  // namespace

TheoremCheck verify_restriction_theorem(const BlockModel& t, const BlockModel& e,
                                        const BlockModel& f, double tol) {
  return verify_block_theorem(t, e, f, tol, Side::Leading);
}

TheoremCheck verify_quotient_theorem(const BlockModel& t, const BlockModel& e,
                                     const BlockModel& f, double tol) {
  return verify_block_theorem(t, e, f, tol, Side::Trailing);
}

}  // namespace wpinv
