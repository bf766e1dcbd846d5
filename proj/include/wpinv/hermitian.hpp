#pragma once

// Hermiticity and positivity of a matrix regarded as an element of the
// Banach algebra (M_n, ||.||) for a chosen operator norm: a is hermitian when
// ||exp(ita)|| = 1 for every real t. The test runs on a finite symmetric grid.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "wpinv/core.hpp"
#include "wpinv/weight.hpp"

namespace wpinv {

struct GridOptions {
  double t_max = 8.0;
  int steps = 129;
  double tol = kVerdictTol;
};

struct HermitianReport {
  bool verdict = false;
  double max_deviation = 0.0;  // max over grid of | ||exp(itA)|| - 1 |
  double worst_t = 0.0;
  std::vector<double> grid;
  NormKind norm_kind = NormKind::Induced2;
  double tol = kVerdictTol;
  /// "exact" when the spectral-norm criterion confirms the verdict,
  /// "grid-supported" for a positive grid verdict without an exact criterion,
  /// "refuted" when some grid point violates the unit-norm condition.
  std::string support;
  /// Only for Induced2: ||A - A*||_2 <= tol ||A||_2.
  std::optional<bool> exact_verdict;
  std::optional<double> exact_residual;

  bool criterion_mismatch() const { return exact_verdict && *exact_verdict != verdict; }
};

/// Symmetric grid over [-t_max, t_max] that always contains 0 (an even step
/// count is bumped by one).
std::vector<double> symmetric_grid(double t_max, int steps);

/// Grid evaluation without raising on a criterion mismatch.
HermitianReport hermitian_grid_report(const CMatrix& a, NormKind kind, const GridOptions& opt = {});

/// Throws CriterionMismatch when the grid and the exact spectral-norm
/// criterion disagree (Induced2 only).
HermitianReport is_banach_hermitian(const CMatrix& a, NormKind kind, const GridOptions& opt = {});

/// Hermitian in (M_n, ||.||_W) with ||x||_W = ||W^{1/2} x W^{-1/2}||.
HermitianReport is_banach_hermitian_weighted(const CMatrix& x, const Weight& w, NormKind kind,
                                             const GridOptions& opt = {});

/// Hermitian verdict plus spectrum in the closed right half line.
bool is_positive(const CMatrix& a, NormKind kind, double tol = kVerdictTol);

double weighted_norm(const CMatrix& x, const Weight& w, NormKind kind);

/// ||(Wx)* - Wx|| <= tol ||Wx||.
bool is_weighted_hermitian(const CMatrix& x, const Weight& w, double tol = kVerdictTol);

struct FieldOfValuesSample {
  std::vector<Complex> samples;
  double max_imag = 0.0;  // max |Im x*Ax|
  double min_real = 0.0;
};

/// Values x*Ax over seeded random unit vectors plus the eigenvectors of the
/// hermitian part of A.
FieldOfValuesSample field_of_values_sample(const CMatrix& a, int n_samples, std::uint64_t seed);

}  // namespace wpinv
