#include "wpinv/hermitian.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <unsupported/Eigen/MatrixFunctions>

#include "wpinv/rng.hpp"

namespace wpinv {

std::vector<double> symmetric_grid(double t_max, int steps) {
  if (!(t_max > 0.0)) throw InvalidArgument("t_max must be positive");
  if (steps < 8) throw InvalidArgument("grid needs at least 8 steps");
  if (steps % 2 == 0) ++steps;
  std::vector<double> grid(static_cast<std::size_t>(steps));
  const int half = steps / 2;
  grid[static_cast<std::size_t>(half)] = 0.0;
  for (int j = 1; j <= half; ++j) {
    const double t = t_max * static_cast<double>(j) / static_cast<double>(half);
    grid[static_cast<std::size_t>(half + j)] = t;
    grid[static_cast<std::size_t>(half - j)] = -t;
  }
  return grid;
}

namespace {

// exp(itA) over the whole grid from one eigendecomposition when it is well
// conditioned; per-point Pade otherwise.
class ExpFamily {
 public:
  explicit ExpFamily(const CMatrix& a) : a_(a) {
    constexpr double kMaxEigenvectorCondition = 1e6;
    if (a.isZero(0.0)) {
      zero_ = true;
      return;
    }
    try {
      SpectralData sd = eig(a);
      if (sd.condition < kMaxEigenvectorCondition) {
        v_ = std::move(sd.eigenvectors);
        v_inv_ = v_.inverse();
        lambda_ = std::move(sd.eigenvalues);
        diagonal_ = true;
      }
    } catch (const ConvergenceFailure&) {
    }
  }

  CMatrix at(double t) const {
    if (zero_) return identity(a_.rows());
    if (diagonal_) {
      const CVector ex = (Complex(0.0, t) * lambda_).array().exp();
      return (v_ * ex.asDiagonal()) * v_inv_;
    }
    const CMatrix arg = Complex(0.0, t) * a_;
    return arg.exp();
  }

 private:
  const CMatrix& a_;
  bool zero_ = false;
  bool diagonal_ = false;
  CMatrix v_;
  CMatrix v_inv_;
  CVector lambda_;
};

}  // namespace

HermitianReport hermitian_grid_report(const CMatrix& a, NormKind kind, const GridOptions& opt) {
  require_square(a, "hermitian test input");
  require_finite(a, "hermitian test input");
  if (kind == NormKind::Frobenius) {
    throw InvalidArgument("the Frobenius norm is not an algebra norm with ||1|| = 1; use 1, 2 or inf");
  }
  HermitianReport report;
  report.norm_kind = kind;
  report.tol = opt.tol;
  report.grid = symmetric_grid(opt.t_max, opt.steps);

  const ExpFamily family(a);
  for (double t : report.grid) {
    const double dev = std::abs(induced_norm(family.at(t), kind) - 1.0);
    if (dev > report.max_deviation) {
      report.max_deviation = dev;
      report.worst_t = t;
    }
  }
  report.verdict = report.max_deviation <= opt.tol;

  if (kind == NormKind::Induced2) {
    const double scale = induced_norm(a, NormKind::Induced2);
    const double skew = induced_norm(a - a.adjoint(), NormKind::Induced2);
    report.exact_residual = scale > 0.0 ? skew / scale : 0.0;
    report.exact_verdict = skew <= opt.tol * scale;
  }
  if (!report.verdict) {
    report.support = "refuted";
  } else {
    report.support = kind == NormKind::Induced2 ? "exact" : "grid-supported";
  }
  return report;
}

HermitianReport is_banach_hermitian(const CMatrix& a, NormKind kind, const GridOptions& opt) {
  HermitianReport report = hermitian_grid_report(a, kind, opt);
  if (report.criterion_mismatch()) {
    throw CriterionMismatch("grid verdict " + std::string(report.verdict ? "true" : "false") +
                            " disagrees with ||A - A*|| criterion (relative skew " +
                            std::to_string(*report.exact_residual) + ")");
  }
  return report;
}

HermitianReport is_banach_hermitian_weighted(const CMatrix& x, const Weight& w, NormKind kind,
                                             const GridOptions& opt) {
  if (w.dim() != x.rows()) throw DimensionMismatch("weight and matrix dimensions differ");
  return is_banach_hermitian(w.sqrt() * x * w.inv_sqrt(), kind, opt);
}

bool is_positive(const CMatrix& a, NormKind kind, double tol) {
  GridOptions opt;
  opt.tol = tol;
  if (!is_banach_hermitian(a, kind, opt).verdict) return false;
  if (a.size() == 0) return true;
  const double scale = induced_norm(a, kind);
  const SpectralData sd = eig(a);
  for (Eigen::Index i = 0; i < sd.eigenvalues.size(); ++i) {
    const Complex l = sd.eigenvalues(i);
    if (l.real() < -tol * scale || std::abs(l.imag()) > tol * scale) return false;
  }
  return true;
}

double weighted_norm(const CMatrix& x, const Weight& w, NormKind kind) {
  if (x.rows() != x.cols() || w.dim() != x.rows()) {
    throw DimensionMismatch("weighted_norm needs a square matrix matching the weight");
  }
  return induced_norm(w.sqrt() * x * w.inv_sqrt(), kind);
}

bool is_weighted_hermitian(const CMatrix& x, const Weight& w, double tol) {
  if (x.rows() != x.cols() || w.dim() != x.rows()) {
    throw DimensionMismatch("is_weighted_hermitian needs a square matrix matching the weight");
  }
  const CMatrix wx = w.matrix() * x;
  return (wx.adjoint() - wx).norm() <= tol * wx.norm();
}

FieldOfValuesSample field_of_values_sample(const CMatrix& a, int n_samples, std::uint64_t seed) {
  require_square(a, "field of values input");
  if (n_samples < 1) throw InvalidArgument("n_samples must be at least 1");
  FieldOfValuesSample out;
  const Eigen::Index n = a.rows();
  if (n == 0) return out;
  Rng rng(seed);
  auto push = [&](const CVector& x) { out.samples.push_back(x.dot(a * x)); };
  for (int i = 0; i < n_samples; ++i) push(rng.unit_vector(n));
  const CMatrix herm = 0.5 * (a + a.adjoint());
  Eigen::SelfAdjointEigenSolver<CMatrix> es(herm);
  for (Eigen::Index j = 0; j < n; ++j) push(es.eigenvectors().col(j).normalized());

  out.min_real = std::numeric_limits<double>::infinity();
  for (const Complex& s : out.samples) {
    out.max_imag = std::max(out.max_imag, std::abs(s.imag()));
    out.min_real = std::min(out.min_real, s.real());
  }
  return out;
}

}  // namespace wpinv
