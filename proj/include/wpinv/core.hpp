#pragma once

// Dense complex matrix kernel: norms, pseudoinverse, principal square root,
// exponential, eigendecomposition and numerical rank.

#include <array>
#include <complex>
#include <string_view>

#include <Eigen/Dense>

#include "wpinv/errors.hpp"

namespace wpinv {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;

/// Default relative cutoff for kernel decisions (rank, pseudoinverse).
inline constexpr double kKernelTol = 1e-10;
/// Default tolerance for theorem verdicts.
inline constexpr double kVerdictTol = 1e-8;

enum class NormKind { Induced1, Induced2, InducedInf, Frobenius };

std::string_view to_string(NormKind kind);
NormKind norm_kind_from_string(std::string_view text);

struct SpectralData {
  CVector eigenvalues;
  CMatrix eigenvectors;  // unit-norm columns
  double condition = 0.0;  // 2-norm condition number of the eigenvector matrix
  double residual = 0.0;   // ||A V - V diag(lambda)||_F / ||A||_F
};

bool is_finite(const CMatrix& m);
void require_finite(const CMatrix& m, std::string_view what);
void require_square(const CMatrix& m, std::string_view what);

CMatrix identity(Eigen::Index n);

/// Frobenius norm. Used for all relative residuals; it is submultiplicative
/// and far cheaper than the spectral norm inside clause batteries.
inline double fro(const CMatrix& m) { return m.norm(); }

/// ||x - y||_F / scale, with 0/0 read as 0.
double rel_gap(const CMatrix& x, const CMatrix& y, double scale);

/// ||x - y||_F / max(||x||_F, ||y||_F).
double rel_gap(const CMatrix& x, const CMatrix& y);

double induced_norm(const CMatrix& m, NormKind kind);

RVector singular_values(const CMatrix& m);

/// Moore-Penrose inverse by SVD. Singular values at or below
/// tol * sigma_max are treated as zero.
CMatrix svd_pinv(const CMatrix& m, double tol = kKernelTol);

/// Four Penrose residuals of b as the pseudoinverse of m, each relative:
/// ||mbm - m||/||m||, ||bmb - b||/||b||, ||(mb)* - mb||/||mb||, ||(bm)* - bm||/||bm||.
std::array<double, 4> penrose_residuals(const CMatrix& m, const CMatrix& b);

/// Principal square root of a hermitian positive definite matrix.
/// Throws NotHermitian or NotPositiveDefinite.
CMatrix principal_sqrt_hpd(const CMatrix& p, double tol = kKernelTol);

CMatrix matrix_exp(const CMatrix& m);

SpectralData eig(const CMatrix& m);

/// Number of singular values strictly above tol * sigma_max.
Eigen::Index rank(const CMatrix& m, double tol = kKernelTol);

CMatrix matrix_power(const CMatrix& m, int k);

}  // namespace wpinv
