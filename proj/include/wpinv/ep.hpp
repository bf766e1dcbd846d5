#pragma once

// Weighted-EP decisions. A is weighted EP with weights E, F when A†_{E,F}
// commutes with A. The characterization battery evaluates every clause of the
// three equivalence theorems (operator form with 16 and 19 clauses, algebra
// form with 38) as a residual; on any instance where both A†_{E,F} and A♯
// exist the clauses must agree.

#include <cstdint>
#include <string>
#include <vector>

#include "wpinv/core.hpp"
#include "wpinv/weight.hpp"

namespace wpinv {

struct ClauseParams {
  int k = 2;
  int l = 2;
  Complex lambda{1.0, 1.0};
  double tol = kVerdictTol;

  void validate() const;
};

enum class Consensus { AllTrue, AllFalse, Mixed };

std::string_view to_string(Consensus c);

struct ClauseResult {
  std::string id;  // e.g. "op19.x[k=2]" or "alg38.xvii"
  bool holds = false;
  double residual = 0.0;
  /// "exact" or "probe-supported" (finite commutant probe, true verdict only).
  std::string support = "exact";
};

struct ClauseReport {
  std::vector<ClauseResult> clauses;
  Consensus consensus = Consensus::Mixed;
  bool ep_verdict = false;
  /// Clauses whose verdict differs from ep_verdict (non-empty iff mixed).
  std::vector<std::string> disagreeing;
  ClauseParams params;

  double worst_true_residual() const;   // max residual among holding clauses
  double best_false_residual() const;   // min residual among failing clauses
};

/// ||AB - BA|| <= tol ||A|| ||B|| with B = A†_{E,F}.
bool is_weighted_ep(const CMatrix& a, const Weight& e, const Weight& f, double tol = kVerdictTol);

/// Relative commutator ||AB - BA|| / (||A|| ||B||) of A with A†_{E,F}.
double weighted_ep_residual(const CMatrix& a, const Weight& e, const Weight& f,
                            double tol = kVerdictTol);

/// Runs every clause. Runs the k-dependent clauses at params.k and, when
/// params.k != 1, again at k = 1. Throws PreconditionUnmet if A♯ does not
/// exist; propagates VerificationFailure.
ClauseReport characterization_battery(const CMatrix& a, const Weight& e, const Weight& f,
                                      const ClauseParams& params = {});

struct FactorWitness {
  CMatrix U;  // A² + I - BA, with A = B U
  CMatrix V;  // A² + I - AB, with A = V B
  /// ||A - BU||, ||A - VB||, ||U (B² + I - BA) - I||, ||V (B² + I - AB) - I||, relative.
  std::array<double, 4> residuals{};
};

/// Residuals of the invertible-factor construction without any verdict.
FactorWitness factor_witness_candidate(const CMatrix& a, const CMatrix& b);

/// Requires A weighted EP (PreconditionUnmet otherwise). Throws WitnessFailure
/// if U or V is singular or a residual exceeds tol.
FactorWitness invertible_factor_witness(const CMatrix& a, const Weight& e, const Weight& f,
                                        double tol = kVerdictTol);

struct SpectralWitness {
  /// Interpolation nodes: 0 first, then one representative per cluster of
  /// nonzero eigenvalues.
  std::vector<Complex> nodes;
  /// Newton divided-difference coefficients over nodes.
  std::vector<Complex> newton;
  /// ||p(A) - A†_{E,F}|| / ||A†_{E,F}||.
  double residual = 0.0;

  /// Monomial coefficients, ascending powers.
  std::vector<Complex> coefficients() const;
  Complex operator()(Complex x) const;
  CMatrix evaluate(const CMatrix& a) const;
};

/// Polynomial p with p(0) = 0 and p(λ) = 1/λ on the nonzero eigenvalues, so
/// that p(A) = A†_{E,F} for weighted-EP A. Throws PreconditionUnmet when A is
/// not weighted EP, Defective when the eigenvector condition is >= 1e6, and
/// WitnessFailure when the residual exceeds tol.
SpectralWitness spectral_pinv_witness(const CMatrix& a, const Weight& e, const Weight& f,
                                      double tol = kVerdictTol);

/// Worst relative commutator of A†_{E,F} with probes from the commutant of A:
/// A itself, seeded random polynomials in A, and spectral projectors when A is
/// diagonalizable.
double commutant_probe_residual(const CMatrix& a, const CMatrix& b, int n_probes,
                                std::uint64_t seed);

bool commutant_probe(const CMatrix& a, const Weight& e, const Weight& f, int n_probes,
                     std::uint64_t seed, double tol = kVerdictTol);

}  // namespace wpinv
