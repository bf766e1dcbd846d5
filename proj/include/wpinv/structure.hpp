#pragma once

// Structural compatibility of the weighted inverse with the left-regular
// representation, with restriction to an invariant subspace and with the
// induced quotient operator. Invariant subspaces are leading coordinate
// blocks: Y = span(e_1..e_k), restriction is the leading k×k block and the
// quotient X/Y is the trailing block.

#include <utility>

#include "wpinv/core.hpp"
#include "wpinv/weight.hpp"

namespace wpinv {

struct LiftedOperator {
  CMatrix L;       // n²×n² matrix of X -> source·X under column stacking
  CMatrix source;  // n×n
};

/// kron(I_n, A): block diagonal with n copies of A.
LiftedOperator left_mult_lift(const CMatrix& a);

/// vec(X) by column stacking.
CVector vec(const CMatrix& x);

struct TheoremCheck {
  bool holds = false;
  double gap = 0.0;       // relative gap between the two sides of the identity
  double sqrt_gap = 0.0;  // square-root/block compatibility (block theorems only)
};

/// Compares the weighted inverse of lift(A) for weights lift(E), lift(F) with
/// lift(A†_{E,F}). Propagates VerificationFailure.
TheoremCheck verify_lift_theorem(const CMatrix& a, const Weight& e, const Weight& f,
                                 double tol = kVerdictTol);

class BlockModel {
 public:
  /// Requires T square and 1 <= k < n.
  BlockModel(CMatrix t, Eigen::Index k);

  const CMatrix& matrix() const noexcept { return t_; }
  Eigen::Index k() const noexcept { return k_; }
  Eigen::Index n() const noexcept { return t_.rows(); }
  /// ||lower-left block||_F (absolute).
  double invariance_residual() const noexcept { return invariance_residual_; }
  bool invariant(double tol) const { return invariance_residual_ <= tol * t_.norm(); }

  CMatrix leading() const { return t_.topLeftCorner(k_, k_); }
  CMatrix trailing() const { return t_.bottomRightCorner(n() - k_, n() - k_); }
  CMatrix upper_right() const { return t_.topRightCorner(k_, n() - k_); }

 private:
  CMatrix t_;
  Eigen::Index k_;
  double invariance_residual_;
};

/// (restriction T', quotient T~). Throws NotInvariant.
std::pair<CMatrix, CMatrix> restriction_blocks(const BlockModel& m, double tol = kVerdictTol);

/// (T')†_{E',F'} against the leading block of T†_{E,F}; also checks that the
/// square root and inverse square root of E and F commute with taking the
/// leading block. Throws NotInvariant when a hypothesis fails (Y not invariant
/// for T or T†_{E,F}, or E, F not block diagonal).
TheoremCheck verify_restriction_theorem(const BlockModel& t, const BlockModel& e,
                                        const BlockModel& f, double tol = kVerdictTol);

/// Quotient analogue on the trailing blocks.
TheoremCheck verify_quotient_theorem(const BlockModel& t, const BlockModel& e,
                                     const BlockModel& f, double tol = kVerdictTol);

}  // namespace wpinv
