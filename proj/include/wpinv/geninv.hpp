#pragma once

// Weighted Moore-Penrose inverse A†_{E,F}: the normalized generalized inverse
// B of A (ABA = A, BAB = B) with E·AB and F·BA hermitian. Computed two ways,
// by the square-root conjugation formula and from the pair of idempotents
// P = AB, Q = BA, plus the group inverse A♯.

#include <array>
#include <optional>
#include <utility>

#include "wpinv/core.hpp"
#include "wpinv/weight.hpp"

namespace wpinv {

struct WeightedPinvResult {
  CMatrix B;
  CMatrix P;  // A B
  CMatrix Q;  // B A
  /// ||ABA - A||/||A||, ||BAB - B||/||B||,
  /// ||(E·AB)* - E·AB||/(||E|| ||AB||), ||(F·BA)* - F·BA||/(||F|| ||BA||).
  std::array<double, 4> residuals{};
  double tol = kVerdictTol;

  double max_residual() const;
  bool success() const { return max_residual() <= tol; }
};

/// Residuals of an arbitrary candidate B against the four defining conditions.
std::array<double, 4> weighted_penrose_residuals(const CMatrix& a, const CMatrix& b,
                                                 const Weight& e, const Weight& f);

/// B = F^{-1/2} (E^{1/2} A F^{-1/2})† E^{1/2} with the residuals filled in;
/// never throws on a failed verification.
WeightedPinvResult weighted_pinv_candidate(const CMatrix& a, const Weight& e, const Weight& f,
                                           double tol = kVerdictTol);

/// As weighted_pinv_candidate, but throws VerificationFailure when any
/// residual exceeds tol.
WeightedPinvResult weighted_pinv(const CMatrix& a, const Weight& e, const Weight& f,
                                 double tol = kVerdictTol);

/// P = AB and Q = BA, verified idempotent, E- resp. F-hermitian, with
/// R(P) = R(A) and N(Q) = N(A). Throws VerificationFailure.
std::pair<CMatrix, CMatrix> projectors_of(const CMatrix& a, const Weight& e, const Weight& f,
                                          double tol = kVerdictTol);

/// The inverse built from the idempotents alone: zero on N(P), and the
/// inverse of A: R(Q) -> R(A) on R(A) = R(P). Throws InconsistentProjectors.
CMatrix pinv_from_projectors(const CMatrix& a, const CMatrix& p, const CMatrix& q,
                             double tol = kVerdictTol);

/// ||(A†_{E,F})†_{F,E} - A|| <= tol ||A||.
bool reverse_weights_identity_check(const CMatrix& a, const Weight& e, const Weight& f,
                                    double tol = kVerdictTol);

struct GroupInvResult {
  bool exists = false;
  std::optional<CMatrix> sharp;
  Eigen::Index rank_A = 0;
  Eigen::Index rank_A2 = 0;
  /// ||ASA - A||/||A||, ||SAS - S||/||S||, ||AS - SA||/(||A|| ||S||) when it exists.
  std::array<double, 3> residuals{};
};

/// Group inverse through a full-rank factorization A = C R from the SVD:
/// A♯ = C (RC)^{-2} R. Exists iff rank(A) = rank(A²). Throws SingularCore when
/// RC is numerically singular although the ranks agree, VerificationFailure
/// when a defining identity misses tol.
GroupInvResult group_inverse(const CMatrix& a, double tol = kVerdictTol);

}  // namespace wpinv
