// Acceptance suite: one pass/fail line per criterion, nonzero exit when any
// criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include <Eigen/QR>

#include "wpinv/ep.hpp"
#include "wpinv/geninv.hpp"
#include "wpinv/hermitian.hpp"
#include "wpinv/rng.hpp"
#include "wpinv/structure.hpp"
#include "wpinv/testkit.hpp"

using namespace wpinv;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

struct Timer {
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  }
};

std::string fmt(const char* f, double a, double b = 0, double c = 0, double d = 0, double e = 0) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, a, b, c, d, e);
  return buf;
}

CMatrix hpd_power(const CMatrix& p, double power) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(p);
  return es.eigenvectors() * es.eigenvalues().array().pow(power).matrix().asDiagonal() *
         es.eigenvectors().adjoint();
}

CMatrix cod_pinv(const CMatrix& m, double threshold) {
  Eigen::CompleteOrthogonalDecomposition<CMatrix> cod;
  cod.setThreshold(threshold);
  cod.compute(m);
  return cod.pseudoInverse();
}

constexpr int kPenroseCount = 1000;
constexpr std::uint64_t kPenroseSeed = 0xa11ce;

std::vector<testkit::Triple> penrose_corpus() {
  std::vector<testkit::Triple> out;
  out.reserve(kPenroseCount);
  for (int i = 0; i < kPenroseCount; ++i) out.push_back(testkit::penrose_instance(mix_seed(kPenroseSeed, i)));
  return out;
}

Outcome penrose_residuals_criterion(const std::vector<testkit::Triple>& corpus) {
  Timer t;
  int ok = 0;
  double worst = 0.0;
  for (const auto& inst : corpus) {
    try {
      const WeightedPinvResult r = weighted_pinv(inst.A, inst.E, inst.F, 1e-8);
      worst = std::max(worst, r.max_residual());
      ok += r.max_residual() <= 1e-8;
    } catch (const VerificationFailure&) {
      worst = std::max(worst, 1.0);
    }
  }
  const double s = t.seconds();
  return {ok == kPenroseCount && s < 10.0,
          fmt("%.0f/%.0f instances, worst residual %.2e (limit 1e-8), %.2f s (limit 10 s)", ok,
              kPenroseCount, worst, s)};
}

Outcome uniqueness_criterion(const std::vector<testkit::Triple>& corpus) {
  int ok = 0;
  double worst = 0.0;
  for (const auto& inst : corpus) {
    try {
      const CMatrix b = weighted_pinv(inst.A, inst.E, inst.F, 1e-8).B;
      const auto [p, q] = projectors_of(inst.A, inst.E, inst.F, 1e-8);
      const double gap = rel_gap(b, pinv_from_projectors(inst.A, p, q, 1e-8));
      worst = std::max(worst, gap);
      ok += gap <= 1e-9;
    } catch (const Error&) {
      worst = std::max(worst, 1.0);
    }
  }
  return {ok == kPenroseCount,
          fmt("%.0f/%.0f instances, worst cross-path gap %.2e (limit 1e-9)", ok, kPenroseCount, worst)};
}

Outcome involution_criterion(const std::vector<testkit::Triple>& corpus) {
  int ok = 0;
  double worst = 0.0;
  for (const auto& inst : corpus) {
    try {
      const CMatrix b = weighted_pinv(inst.A, inst.E, inst.F, 1e-8).B;
      const CMatrix back = weighted_pinv(b, inst.F, inst.E, 1e-8).B;
      const double gap = rel_gap(back, inst.A, inst.A.norm());
      worst = std::max(worst, gap);
      ok += gap <= 1e-9;
    } catch (const Error&) {
      worst = std::max(worst, 1.0);
    }
  }
  return {ok == kPenroseCount,
          fmt("%.0f/%.0f instances, worst gap %.2e (limit 1e-9)", ok, kPenroseCount, worst)};
}

Outcome reduction_criterion(const std::vector<testkit::Triple>& corpus) {
  int ok = 0;
  double worst_unit = 0.0;
  double worst_equal = 0.0;
  for (const auto& inst : corpus) {
    try {
      const Eigen::Index n = inst.A.rows();
      const Weight unit = Weight::from_matrix(CMatrix::Identity(n, n));
      const double g1 = rel_gap(weighted_pinv(inst.A, unit, unit, 1e-8).B, svd_pinv(inst.A, 1e-8));
      // Reference assembled from an independent eigen-solve and a complete
      // orthogonal decomposition.
      const CMatrix& e = inst.E.matrix();
      const CMatrix es = hpd_power(e, 0.5);
      const CMatrix ei = hpd_power(e, -0.5);
      const CMatrix ref = ei * cod_pinv(es * inst.A * ei, 1e-9) * es;
      const double g2 = rel_gap(weighted_pinv(inst.A, inst.E, inst.E, 1e-8).B, ref);
      worst_unit = std::max(worst_unit, g1);
      worst_equal = std::max(worst_equal, g2);
      ok += g1 <= 1e-11 && g2 <= 1e-9;
    } catch (const Error&) {
      worst_equal = std::max(worst_equal, 1.0);
    }
  }
  return {ok == kPenroseCount,
          fmt("%.0f/%.0f instances, unit weights worst %.2e (limit 1e-11), equal weights worst %.2e (limit 1e-9)",
              ok, kPenroseCount, worst_unit, worst_equal)};
}

Outcome lift_criterion() {
  Timer t;
  constexpr int kCount = 200;
  int ok = 0;
  double worst = 0.0;
  for (int i = 0; i < kCount; ++i) {
    const std::uint64_t seed = mix_seed(0x11f7, i);
    const Eigen::Index n = 2 + static_cast<Eigen::Index>(i % 5);
    const testkit::Triple inst = testkit::penrose_instance(seed, n);
    try {
      const TheoremCheck c = verify_lift_theorem(inst.A, inst.E, inst.F, 1e-8);
      worst = std::max(worst, c.gap);
      ok += c.holds && c.gap <= 1e-8;
    } catch (const Error&) {
      worst = std::max(worst, 1.0);
    }
  }
  const double s = t.seconds();
  return {ok == kCount && s < 30.0,
          fmt("%.0f/%.0f instances (n 2..6), worst gap %.2e (limit 1e-8), %.2f s (limit 30 s)", ok, kCount, worst, s)};
}

Outcome block_criterion() {
  constexpr int kCount = 200;
  int ok = 0;
  double worst = 0.0;
  double worst_sqrt = 0.0;
  for (int i = 0; i < kCount; ++i) {
    Rng rng(mix_seed(0xb10c, i));
    const int n = rng.uniform_int(2, 8);
    const int k = rng.uniform_int(1, n - 1);
    const testkit::BlockInstance b = testkit::random_block_instance(n, k, rng.next_u64());
    try {
      const TheoremCheck r = verify_restriction_theorem(b.T, b.E, b.F, 1e-8);
      const TheoremCheck q = verify_quotient_theorem(b.T, b.E, b.F, 1e-8);
      worst = std::max({worst, r.gap, q.gap});
      worst_sqrt = std::max({worst_sqrt, r.sqrt_gap, q.sqrt_gap});
      ok += r.holds && q.holds && std::max(r.gap, q.gap) <= 1e-8 && std::max(r.sqrt_gap, q.sqrt_gap) <= 1e-10;
    } catch (const Error&) {
      worst = std::max(worst, 1.0);
    }
  }
  return {ok == kCount, fmt("%.0f/%.0f instances (n 2..8), worst gap %.2e (limit 1e-8), worst square-root gap "
                            "%.2e (limit 1e-10)",
                            ok, kCount, worst, worst_sqrt)};
}

struct EpCorpus {
  std::vector<testkit::Triple> ep;
  std::vector<testkit::Triple> non_ep;
};

EpCorpus ep_corpus() {
  EpCorpus c;
  for (int i = 0; i < 500; ++i) {
    Rng rng(mix_seed(0xe9, i));
    const int n = rng.uniform_int(2, 6);
    c.ep.push_back(testkit::constructed_ep_triple(n, rng.next_u64()));
    c.non_ep.push_back(testkit::generic_index_one_triple(rng.uniform_int(2, 6), rng.next_u64()));
  }
  return c;
}

Outcome consensus_criterion(const EpCorpus& corpus) {
  Timer t;
  int mixed = 0;
  int mismatched = 0;
  int errors = 0;
  double worst_true = 0.0;
  double best_false = std::numeric_limits<double>::infinity();
  ClauseParams params;
  params.tol = 1e-8;
  auto run = [&](const testkit::Triple& inst, bool expect) {
    try {
      const ClauseReport r = characterization_battery(inst.A, inst.E, inst.F, params);
      mixed += r.consensus == Consensus::Mixed;
      mismatched += r.ep_verdict != (r.consensus == Consensus::AllTrue) || r.ep_verdict != expect;
      if (r.consensus == Consensus::AllTrue) worst_true = std::max(worst_true, r.worst_true_residual());
      if (r.consensus == Consensus::AllFalse) best_false = std::min(best_false, r.best_false_residual());
    } catch (const Error&) {
      ++errors;
    }
  };
  for (const auto& inst : corpus.ep) run(inst, true);
  for (const auto& inst : corpus.non_ep) run(inst, false);
  const double s = t.seconds();
  return {mixed == 0 && mismatched == 0 && errors == 0 && s < 60.0,
          fmt("500 EP + 500 non-EP: %.0f mixed, %.0f verdict mismatches, %.0f errors; worst true-clause residual "
              "%.2e, smallest false-clause residual %.2e",
              mixed, mismatched, errors, worst_true, best_false) +
              fmt(", %.2f s (limit 60 s)", s)};
}

Outcome witness_criterion(const EpCorpus& corpus) {
  int checked = 0;
  int ok = 0;
  double worst_factor = 0.0;
  double worst_spectral = 0.0;
  for (const auto& inst : corpus.ep) {
    if (eig(inst.A).condition >= 1e6) continue;
    ++checked;
    try {
      const FactorWitness f = invertible_factor_witness(inst.A, inst.E, inst.F, 1e-8);
      const CMatrix b = weighted_pinv(inst.A, inst.E, inst.F, 1e-8).B;
      const double explicit_form = rel_gap(f.U * b, inst.A, inst.A.norm());  // a = (a² + 1 - a†a) a†
      double factor = explicit_form;
      for (double r : f.residuals) factor = std::max(factor, r);
      const SpectralWitness w = spectral_pinv_witness(inst.A, inst.E, inst.F, 1e-7);
      worst_factor = std::max(worst_factor, factor);
      worst_spectral = std::max(worst_spectral, w.residual);
      ok += factor <= 1e-8 && w.residual <= 1e-7;
    } catch (const Error&) {
      worst_factor = std::max(worst_factor, 1.0);
    }
  }
  return {ok == checked && checked > 0,
          fmt("%.0f/%.0f diagonalizable EP instances, worst factor residual %.2e (limit 1e-8), worst "
              "polynomial residual %.2e (limit 1e-7)",
              ok, checked, worst_factor, worst_spectral)};
}

Outcome hermiticity_criterion() {
  int agree = 0;
  for (int i = 0; i < 1000; ++i) {
    Rng rng(mix_seed(0x4e4e, i));
    const int n = rng.uniform_int(2, 8);
    const bool herm = i < 500;
    const CMatrix a = herm ? testkit::random_hermitian(n, rng.next_u64()) : testkit::random_generic(n, rng.next_u64());
    const HermitianReport r = hermitian_grid_report(a, NormKind::Induced2);
    const bool exact = induced_norm(a - a.adjoint(), NormKind::Induced2) <= 1e-8 * induced_norm(a, NormKind::Induced2);
    agree += r.verdict == exact && exact == herm;
  }
  CMatrix jordan = CMatrix::Zero(2, 2);
  jordan(0, 1) = 1.0;
  GridOptions g;
  g.t_max = 1.0;
  g.steps = 9;
  const HermitianReport j = hermitian_grid_report(jordan, NormKind::Induced2, g);
  const double miss = std::abs(j.max_deviation - (std::numbers::phi - 1.0));
  const bool jordan_ok = !j.verdict && std::abs(j.worst_t) == 1.0 && miss <= 1e-6;
  return {agree == 1000 && jordan_ok,
          fmt("%.0f/1000 grid verdicts equal the exact criterion; Jordan deviation %.12f at t = %.0f (error %.1e, "
              "limit 1e-6)",
              agree, j.max_deviation, std::abs(j.worst_t), miss)};
}

Outcome hand_values_criterion() {
  auto m2 = [](Complex a, Complex b, Complex c, Complex d) {
    CMatrix m(2, 2);
    m << a, b, c, d;
    return m;
  };
  struct Case {
    CMatrix a, e, f, expected;
  };
  const std::vector<Case> cases = {
      {m2(0, 1, 0, 0), m2(1, 0, 0, 4), m2(9, 0, 0, 1), m2(0, 0, 1, 0)},
      {m2(1, 0, 0, 0), m2(2, 1, 1, 1), m2(1, 0, 0, 1), m2(1, 0.5, 0, 0)},
  };
  double worst = 0.0;
  for (const auto& c : cases) {
    const Weight e = Weight::from_matrix(c.e);
    const Weight f = Weight::from_matrix(c.f);
    const CMatrix b = weighted_pinv(c.a, e, f, 1e-8).B;
    const CMatrix oracle = testkit::oracle_penrose_solve_2x2(c.a, e, f);
    worst = std::max({worst, (b - c.expected).cwiseAbs().maxCoeff(), (oracle - c.expected).cwiseAbs().maxCoeff()});
  }
  // Third value: the projector-path inverse of the second case.
  const CMatrix s = pinv_from_projectors(cases[1].a, m2(1, 0.5, 0, 0), m2(1, 0, 0, 0), 1e-8);
  const CMatrix oracle = testkit::oracle_penrose_solve_2x2(cases[1].a, Weight::from_matrix(cases[1].e),
                                                           Weight::from_matrix(cases[1].f));
  worst = std::max({worst, (s - cases[1].expected).cwiseAbs().maxCoeff(), (s - oracle).cwiseAbs().maxCoeff()});
  return {worst <= 1e-12, fmt("3 closed-form values, worst entry error %.2e (limit 1e-12)", worst)};
}

}  // namespace

int main() {
  const Timer total;
  int failures = 0;
  auto report = [&](int id, const char* name, const std::function<Outcome()>& fn) {
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o = {false, std::string("unexpected error: ") + e.what()};
    }
    failures += !o.pass;
    std::printf("criterion %2d %s %-28s %s\n", id, o.pass ? "PASS" : "FAIL", name, o.detail.c_str());
    std::fflush(stdout);
  };

  const auto corpus = penrose_corpus();
  report(1, "penrose-residuals", [&] { return penrose_residuals_criterion(corpus); });
  report(2, "uniqueness-cross-path", [&] { return uniqueness_criterion(corpus); });
  report(3, "weight-involution", [&] { return involution_criterion(corpus); });
  report(4, "reduction", [&] { return reduction_criterion(corpus); });
  report(5, "lift-theorem", lift_criterion);
  report(6, "restriction-quotient", block_criterion);
  const EpCorpus ep = ep_corpus();
  report(7, "ep-clause-consensus", [&] { return consensus_criterion(ep); });
  report(8, "ep-witnesses", [&] { return witness_criterion(ep); });
  report(9, "hermiticity", hermiticity_criterion);
  report(10, "hand-derived-values", hand_values_criterion);
  std::printf("%d of 10 criteria passed in %.1f s\n", 10 - failures, total.seconds());
  return failures == 0 ? 0 : 1;
}
