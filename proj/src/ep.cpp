#include "wpinv/ep.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <optional>

#include "wpinv/geninv.hpp"
#include "wpinv/rng.hpp"
#include "wpinv/subspace.hpp"

namespace wpinv {

void ClauseParams::validate() const {
  if (k < 1 || l < 1) throw InvalidArgument("clause parameters k and l must be >= 1");
  if (lambda == Complex(0.0, 0.0)) throw InvalidArgument("clause parameter lambda must be nonzero");
  if (!(tol > 0.0)) throw InvalidArgument("clause tolerance must be positive");
}

std::string_view to_string(Consensus c) {
  switch (c) {
    case Consensus::AllTrue: return "all-true";
    case Consensus::AllFalse: return "all-false";
    case Consensus::Mixed: return "mixed";
  }
  return "?";
}

double ClauseReport::worst_true_residual() const {
  double worst = 0.0;
  for (const auto& c : clauses) {
    if (c.holds) worst = std::max(worst, c.residual);
  }
  return worst;
}

double ClauseReport::best_false_residual() const {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& c : clauses) {
    if (!c.holds) best = std::min(best, c.residual);
  }
  return best;
}

namespace {

// Eigenvalues closer than this (relative to ||A||_2) share an interpolation
// node; eigenvalues this small count as zero.
constexpr double kClusterRel = 1e-6;
constexpr double kMaxEigenvectorCondition = 1e6;
constexpr int kBatteryProbes = 8;
constexpr std::uint64_t kBatteryProbeSeed = 0x5eed'c0de;

double commutator(const CMatrix& x, const CMatrix& y) {
  return rel_gap(x * y, y * x, x.norm() * y.norm());
}

// A matrix value with a submultiplicative bound on its size; products
// multiply bounds, sums add them. Identities between products are then
// compared relative to the larger bound.
struct Term {
  CMatrix v;
  double s;
};

Term operator*(const Term& x, const Term& y) { return {x.v * y.v, x.s * y.s}; }
Term operator+(const Term& x, const Term& y) { return {x.v + y.v, x.s + y.s}; }
Term operator*(Complex c, const Term& t) { return {c * t.v, std::abs(c) * t.s}; }

Term power(const Term& t, int k) {
  Term out{identity(t.v.rows()), 1.0};
  for (int i = 0; i < k; ++i) out = out * t;
  return out;
}

double eq(const Term& x, const Term& y) { return rel_gap(x.v, y.v, std::max(x.s, y.s)); }

double eq(const Term& x, const Term& y, const Term& z) { return std::max(eq(x, y), eq(y, z)); }

struct Cluster {
  Complex value;
  std::vector<Eigen::Index> members;
};

std::vector<Cluster> cluster_eigenvalues(const CVector& lambda, double threshold) {
  std::vector<Cluster> out;
  for (Eigen::Index i = 0; i < lambda.size(); ++i) {
    auto it = std::find_if(out.begin(), out.end(), [&](const Cluster& c) {
      return std::abs(c.value - lambda(i)) <= threshold;
    });
    if (it == out.end()) {
      out.push_back({lambda(i), {i}});
    } else {
      it->members.push_back(i);
    }
  }
  return out;
}

// f(A) for f = 1/z away from 0 and f = 0 near 0, through the eigenvector
// basis. Empty when A is not numerically diagonalizable.
std::optional<CMatrix> holomorphic_group_inverse(const CMatrix& a) {
  const SpectralData sd = eig(a);
  if (sd.condition >= kMaxEigenvectorCondition) return std::nullopt;
  const double zero = kClusterRel * induced_norm(a, NormKind::Induced2);
  CVector f(sd.eigenvalues.size());
  for (Eigen::Index i = 0; i < f.size(); ++i) {
    const Complex l = sd.eigenvalues(i);
    f(i) = std::abs(l) <= zero ? Complex(0.0) : 1.0 / l;
  }
  return CMatrix((sd.eigenvectors * f.asDiagonal()) * sd.eigenvectors.inverse());
}

class Battery {
 public:
  Battery(const CMatrix& a, const Weight& e, const Weight& f, const ClauseParams& p)
      : e_(e), f_(f), p_(p) {
    const GroupInvResult g = group_inverse(a, p.tol);
    if (!g.exists) {
      throw PreconditionUnmet("A has no group inverse (rank A = " + std::to_string(g.rank_A) +
                              ", rank A² = " + std::to_string(g.rank_A2) + ")");
    }
    a_ = {a, a.norm()};
    b_ = term(weighted_pinv(a, e, f, p.tol).B);
    s_ = term(*g.sharp);
    b_ee_ = term(weighted_pinv(a, e, e, p.tol).B);
    b_ff_ = term(weighted_pinv(a, f, f, p.tol).B);
    b_fe_ = term(weighted_pinv(a, f, e, p.tol).B);
    id_ = {identity(a.rows()), 1.0};
  }

  const Term& A() const { return a_; }
  const Term& B() const { return b_; }
  const Term& S() const { return s_; }
  const Term& Bee() const { return b_ee_; }
  const Term& Bff() const { return b_ff_; }
  const Term& Bfe() const { return b_fe_; }
  const Term& I() const { return id_; }
  Complex lambda() const { return p_.lambda; }
  double tol() const { return p_.tol; }
  const Weight& E() const { return e_; }
  const Weight& F() const { return f_; }

  // Commutator of x with its own weighted inverse for weights (g, h).
  double ep_with(const CMatrix& x, const Weight& g, const Weight& h) const {
    return commutator(x, weighted_pinv(x, g, h, p_.tol).B);
  }

 private:
  static Term term(const CMatrix& m) { return {m, m.norm()}; }

  const Weight& e_;
  const Weight& f_;
  ClauseParams p_;
  Term a_, b_, s_, b_ee_, b_ff_, b_fe_, id_;
};

enum class Arity { None, K, KL };

struct ClauseSpec {
  std::string id;
  Arity arity;
  std::function<double(const Battery&, int, int)> eval;
  bool probe = false;
};

// Shared evaluators; several clauses of the algebra theorem restate operator
// clauses and reuse them under their own id.
namespace eval {

using B = Battery;

double definition(const B& c, int, int) { return commutator(c.A().v, c.B().v); }

double ranges_equal(const B& c, int, int) {
  return std::max(range_equality_residual(c.B().v, c.A().v, c.tol()),
                  null_equality_residual(c.B().v, c.A().v, c.tol()));
}
// R(B) ⊆ R(A), N(A) ⊆ N(B)
double incl_iii(const B& c, int, int) {
  return std::max(range_inclusion_residual(c.B().v, c.A().v, c.tol()),
                  null_inclusion_residual(c.A().v, c.B().v, c.tol()));
}
// R(A) ⊆ R(B), N(A) ⊆ N(B)
double incl_iv(const B& c, int, int) {
  return std::max(range_inclusion_residual(c.A().v, c.B().v, c.tol()),
                  null_inclusion_residual(c.A().v, c.B().v, c.tol()));
}
// R(B) ⊆ R(A), N(B) ⊆ N(A)
double incl_v(const B& c, int, int) {
  return std::max(range_inclusion_residual(c.B().v, c.A().v, c.tol()),
                  null_inclusion_residual(c.B().v, c.A().v, c.tol()));
}
// R(A) ⊆ R(B), N(B) ⊆ N(A)
double incl_vi(const B& c, int, int) {
  return std::max(range_inclusion_residual(c.A().v, c.B().v, c.tol()),
                  null_inclusion_residual(c.B().v, c.A().v, c.tol()));
}

double pinv_is_sharp(const B& c, int, int) { return eq(c.B(), c.S()); }

double b_eq_abb_bba(const B& c, int, int) {
  return eq(c.B(), c.A() * c.B() * c.B(), c.B() * c.B() * c.A());
}

double a_eq_baa_aab(const B& c, int, int) {
  return eq(c.A(), c.B() * c.A() * c.A(), c.A() * c.A() * c.B());
}

double pinv_ep_swapped_and_involutive(const B& c, int, int) {
  const CMatrix back = weighted_pinv(c.B().v, c.F(), c.E(), c.tol()).B;
  return std::max(commutator(c.B().v, back), rel_gap(back, c.A().v));
}

double pinv_ep_swapped(const B& c, int, int) { return c.ep_with(c.B().v, c.F(), c.E()); }

double ep_swapped(const B& c, int, int) { return commutator(c.A().v, c.Bfe().v); }

double ep_equal_weights(const B& c, int, int) {
  return std::max(commutator(c.A().v, c.Bee().v), commutator(c.A().v, c.Bff().v));
}

double power_ep(const B& c, int k, int) {
  return c.ep_with(power(c.A(), k).v, c.E(), c.F());
}

double sharp_ep(const B& c, int, int) { return c.ep_with(c.S().v, c.E(), c.F()); }

double projector_equal_weights(const B& c, int, int) {
  return eq(c.A() * c.S(), c.A() * c.Bee(), c.A() * c.Bff());
}
double projector_equal_weights_alt(const B& c, int, int) {
  return eq(c.A() * c.S(), c.Bee() * c.A(), c.Bff() * c.A());
}
double projector_mixed_weights(const B& c, int, int) {
  return eq(c.A() * c.S(), c.A() * c.B(), c.A() * c.Bfe());
}
double projector_mixed_weights_alt(const B& c, int, int) {
  return eq(c.A() * c.S(), c.Bfe() * c.A(), c.B() * c.A());
}

double asb_bsa(const B& c, int, int) {
  return eq(c.A() * c.S() * c.B(), c.B() * c.S() * c.A());
}
double abba_baab(const B& c, int, int) {
  return eq(c.A() * c.B() * c.B() * c.A(), c.B() * c.A() * c.A() * c.B());
}
double average_pinv(const B& c, int, int) {
  return eq(c.B() * c.S() * c.A() + c.A() * c.S() * c.B(), Complex(2.0) * c.B());
}
double bbs_bsb_sbb(const B& c, int, int) {
  return eq(c.B() * c.B() * c.S(), c.B() * c.S() * c.B(), c.S() * c.B() * c.B());
}
double abb_s_bba(const B& c, int, int) {
  return eq(c.A() * c.B() * c.B(), c.S(), c.B() * c.B() * c.A());
}
double power_absorbs(const B& c, int k, int) {
  const Term ak = power(c.A(), k);
  return eq(ak, c.B() * c.A() * ak, ak * c.A() * c.B());
}
double pinv_power_is_sharp_power(const B& c, int k, int) {
  return eq(power(c.B(), k), power(c.S(), k));
}
double sharp_power_commutes(const B& c, int k, int) {
  const Term sk = power(c.S(), k);
  return eq(sk * c.B(), c.B() * sk);
}
double power_commutes(const B& c, int k, int) {
  const Term ak = power(c.A(), k);
  return eq(ak * c.B(), c.B() * ak);
}
double odd_power_sandwich(const B& c, int k, int) {
  return eq(power(c.A(), 2 * k - 1), c.B() * power(c.A(), 2 * k + 1) * c.B());
}
double sharp_power_projector(const B& c, int k, int) {
  return eq(power(c.S(), k) * c.B() * c.A(), power(c.B(), k));
}
double shifted_power(const B& c, int k, int) {
  const Term bk1 = power(c.B(), k + 1);
  return eq(c.A() * bk1, power(c.S(), k), bk1 * c.A());
}
double average_power(const B& c, int k, int) {
  const Term ak = power(c.A(), k);
  return eq(ak * c.A() * c.B() + c.B() * c.A() * ak, Complex(2.0) * ak);
}
double mixed_powers(const B& c, int k, int l) {
  const Term skm1 = power(c.S(), k - 1);
  const Term bl = power(c.B(), l);
  return eq(power(c.S(), k + l - 1), bl * skm1, skm1 * bl);
}
double mixed_powers_projector(const B& c, int k, int l) {
  const Term bk = power(c.B(), k);
  const Term sl = power(c.S(), l);
  return eq(c.A() * c.B() * power(c.S(), k + l - 1), bk * sl * c.A(), sl * c.A() * bk);
}
double lambda_range_projector(const B& c, int k, int) {
  const Term x = power(c.A(), k) + c.lambda() * c.B();
  const Term p = c.A() * c.B();
  return eq(p * x, x * p);
}
double lambda_null_projector(const B& c, int k, int) {
  const Term x = power(c.A(), k) + c.lambda() * c.B();
  const Term q = c.B() * c.A();
  return eq(q * x, x * q);
}
double lambda_subspaces_equal_weights(const B& c, int, int) {
  const CMatrix& a = c.A().v;
  const CMatrix x1 = a + c.lambda() * c.Bee().v;
  const CMatrix x2 = a + c.lambda() * c.Bff().v;
  const CMatrix y = c.lambda() * a + a * a * a;
  const double t = c.tol();
  return std::max({range_equality_residual(x1, y, t), range_equality_residual(x2, y, t),
                   null_equality_residual(x1, y, t), null_equality_residual(x2, y, t)});
}
double lambda_subspaces(const B& c, int, int) {
  const CMatrix& a = c.A().v;
  const CMatrix x = a + c.lambda() * c.B().v;
  const CMatrix y = c.lambda() * a + a * a * a;
  return std::max(range_equality_residual(x, y, c.tol()), null_equality_residual(x, y, c.tol()));
}

double invertible_factors(const B& c, int, int) {
  const FactorWitness w = factor_witness_candidate(c.A().v, c.B().v);
  const Eigen::Index n = c.A().v.rows();
  if (rank(w.U, c.tol()) < n || rank(w.V, c.tol()) < n) {
    return std::numeric_limits<double>::infinity();
  }
  return *std::max_element(w.residuals.begin(), w.residuals.end());
}

double commutant(const B& c, int, int) {
  return commutant_probe_residual(c.A().v, c.B().v, kBatteryProbes, kBatteryProbeSeed);
}

double holomorphic(const B& c, int, int) {
  const std::optional<CMatrix> fa = holomorphic_group_inverse(c.A().v);
  return rel_gap(fa ? *fa : c.S().v, c.B().v);
}

}  // namespace eval

const std::vector<ClauseSpec>& clause_table() {
  using A = Arity;
  static const std::vector<ClauseSpec> table = {
      {"op16.i", A::None, eval::definition},
      {"op16.ii", A::None, eval::ranges_equal},
      {"op16.iii", A::None, eval::incl_iii},
      {"op16.iv", A::None, eval::incl_iv},
      {"op16.v", A::None, eval::incl_v},
      {"op16.vi", A::None, eval::incl_vi},
      {"op16.vii", A::None, eval::pinv_is_sharp},
      {"op16.viii", A::None, eval::b_eq_abb_bba},
      {"op16.ix", A::None, eval::a_eq_baa_aab},
      {"op16.x", A::None, eval::pinv_ep_swapped_and_involutive},
      {"op16.xi", A::None, eval::ep_swapped},
      {"op16.xii", A::None, eval::ep_equal_weights},
      {"op16.xiii", A::K, eval::power_ep},
      {"op16.xiv", A::None, eval::sharp_ep},
      {"op16.xv", A::None, eval::projector_equal_weights},
      {"op16.xv-alt", A::None, eval::projector_equal_weights_alt},
      {"op16.xvi", A::None, eval::projector_mixed_weights},
      {"op16.xvi-alt", A::None, eval::projector_mixed_weights_alt},

      {"op19.i", A::None, eval::asb_bsa},
      {"op19.ii", A::None, eval::abba_baab},
      {"op19.iii", A::None, eval::average_pinv},
      {"op19.iv", A::None, eval::bbs_bsb_sbb},
      {"op19.v", A::None, eval::abb_s_bba},
      {"op19.vi", A::K, eval::power_absorbs},
      {"op19.vii", A::K, eval::pinv_power_is_sharp_power},
      {"op19.viii", A::K, eval::sharp_power_commutes},
      {"op19.ix", A::K, eval::power_commutes},
      {"op19.x", A::K, eval::odd_power_sandwich},
      {"op19.xi", A::K, eval::sharp_power_projector},
      {"op19.xii", A::K, eval::shifted_power},
      {"op19.xiii", A::K, eval::average_power},
      {"op19.xiv", A::KL, eval::mixed_powers},
      {"op19.xv", A::KL, eval::mixed_powers_projector},
      {"op19.xvi", A::K, eval::lambda_range_projector},
      {"op19.xvii", A::K, eval::lambda_null_projector},
      {"op19.xviii", A::None, eval::lambda_subspaces_equal_weights},
      {"op19.xix", A::None, eval::lambda_subspaces},

      {"alg38.i", A::None, eval::definition},
      {"alg38.ii", A::None, eval::ranges_equal},
      {"alg38.iii", A::None, eval::incl_iii},
      {"alg38.iv", A::None, eval::incl_iv},
      {"alg38.v", A::None, eval::incl_v},
      {"alg38.vi", A::None, eval::incl_vi},
      {"alg38.vii", A::None, eval::b_eq_abb_bba},
      {"alg38.viii", A::None, eval::pinv_ep_swapped},
      {"alg38.ix", A::None, eval::average_pinv},
      {"alg38.x", A::None, eval::bbs_bsb_sbb},
      {"alg38.xi", A::None, eval::abb_s_bba},
      {"alg38.xii", A::None, eval::abba_baab},
      {"alg38.xiii", A::None, eval::asb_bsa},
      {"alg38.xiv", A::None, eval::invertible_factors},
      // In finite dimensions surjective and injective factors are invertible,
      // so (xv) and (xvi) both reduce to R(A) ⊆ R(B) and N(B) ⊆ N(A).
      {"alg38.xv", A::None, eval::incl_vi},
      {"alg38.xvi", A::None, eval::incl_vi},
      {"alg38.xvii", A::None, eval::commutant, true},
      {"alg38.xviii", A::None, eval::holomorphic},
      {"alg38.xix", A::K, eval::sharp_power_projector},
      {"alg38.xx", A::K, eval::power_absorbs},
      {"alg38.xxi", A::K, eval::pinv_power_is_sharp_power},
      {"alg38.xxii", A::K, eval::sharp_power_commutes},
      {"alg38.xxiii", A::K, eval::power_commutes},
      {"alg38.xxiv", A::K, eval::odd_power_sandwich},
      {"alg38.xxv", A::K, eval::shifted_power},
      {"alg38.xxvi", A::K, eval::average_power},
      {"alg38.xxvii", A::KL, eval::mixed_powers},
      {"alg38.xxviii", A::KL, eval::mixed_powers_projector},
      {"alg38.xxix", A::None, eval::ep_swapped},
      {"alg38.xxx", A::None, eval::ep_equal_weights},
      {"alg38.xxxi", A::K, eval::power_ep},
      {"alg38.xxxii", A::None, eval::sharp_ep},
      {"alg38.xxxiii", A::None, eval::projector_equal_weights},
      {"alg38.xxxiii-alt", A::None, eval::projector_equal_weights_alt},
      {"alg38.xxxiv", A::None, eval::projector_mixed_weights},
      {"alg38.xxxiv-alt", A::None, eval::projector_mixed_weights_alt},
      {"alg38.xxxv", A::K, eval::lambda_range_projector},
      {"alg38.xxxvi", A::K, eval::lambda_null_projector},
      {"alg38.xxxvii", A::None, eval::lambda_subspaces_equal_weights},
      {"alg38.xxxviii", A::None, eval::lambda_subspaces},
  };
  return table;
}

}  // namespace

double weighted_ep_residual(const CMatrix& a, const Weight& e, const Weight& f, double tol) {
  require_square(a, "A");
  return commutator(a, weighted_pinv(a, e, f, tol).B);
}

bool is_weighted_ep(const CMatrix& a, const Weight& e, const Weight& f, double tol) {
  return weighted_ep_residual(a, e, f, tol) <= tol;
}

ClauseReport characterization_battery(const CMatrix& a, const Weight& e, const Weight& f,
                                      const ClauseParams& params) {
  params.validate();
  require_square(a, "A");
  const Battery battery(a, e, f, params);

  ClauseReport report;
  report.params = params;
  report.ep_verdict = eval::definition(battery, 1, 1) <= params.tol;

  auto run = [&](const ClauseSpec& spec, int k, int l, std::string id) {
    ClauseResult r;
    r.id = std::move(id);
    r.residual = spec.eval(battery, k, l);
    r.holds = r.residual <= params.tol;
    if (spec.probe && r.holds) r.support = "probe-supported";
    report.clauses.push_back(std::move(r));
  };
  const auto suffix = [](int k, int l, Arity arity) {
    std::string s = "[k=" + std::to_string(k);
    if (arity == Arity::KL) s += ",l=" + std::to_string(l);
    return s + "]";
  };

  for (const ClauseSpec& spec : clause_table()) {
    if (spec.arity == Arity::None) {
      run(spec, params.k, params.l, spec.id);
      continue;
    }
    run(spec, params.k, params.l, spec.id + suffix(params.k, params.l, spec.arity));
    if (params.k != 1) run(spec, 1, params.l, spec.id + suffix(1, params.l, spec.arity));
  }

  std::size_t n_true = 0;
  for (const auto& c : report.clauses) {
    if (c.holds) ++n_true;
    if (c.holds != report.ep_verdict) report.disagreeing.push_back(c.id);
  }
  if (n_true == report.clauses.size()) {
    report.consensus = Consensus::AllTrue;
  } else if (n_true == 0) {
    report.consensus = Consensus::AllFalse;
  } else {
    report.consensus = Consensus::Mixed;
  }
  return report;
}

FactorWitness factor_witness_candidate(const CMatrix& a, const CMatrix& b) {
  require_square(a, "A");
  const Eigen::Index n = a.rows();
  const CMatrix id = identity(n);
  const CMatrix a2 = a * a;
  const CMatrix b2 = b * b;
  const CMatrix ab = a * b;
  const CMatrix ba = b * a;
  FactorWitness w;
  w.U = a2 + id - ba;
  w.V = a2 + id - ab;
  const CMatrix u_inv = b2 + id - ba;
  const CMatrix v_inv = b2 + id - ab;
  const double nb = b.norm();
  w.residuals = {
      rel_gap(a, b * w.U, std::max(a.norm(), nb * w.U.norm())),
      rel_gap(a, w.V * b, std::max(a.norm(), nb * w.V.norm())),
      rel_gap(w.U * u_inv, id, w.U.norm() * u_inv.norm()),
      rel_gap(w.V * v_inv, id, w.V.norm() * v_inv.norm()),
  };
  return w;
}

FactorWitness invertible_factor_witness(const CMatrix& a, const Weight& e, const Weight& f,
                                        double tol) {
  const CMatrix b = weighted_pinv(a, e, f, tol).B;
  if (commutator(a, b) > tol) throw PreconditionUnmet("A is not weighted EP for these weights");
  FactorWitness w = factor_witness_candidate(a, b);
  const Eigen::Index n = a.rows();
  if (rank(w.U, tol) < n || rank(w.V, tol) < n) {
    throw WitnessFailure("factor A² + I - A†A or A² + I - AA† is singular");
  }
  const double worst = *std::max_element(w.residuals.begin(), w.residuals.end());
  if (worst > tol) {
    throw WitnessFailure("invertible factorization residual " + std::to_string(worst) +
                         " exceeds tolerance");
  }
  return w;
}

std::vector<Complex> SpectralWitness::coefficients() const {
  // Expand the Newton form c0 + (x - x0)(c1 + (x - x1)(c2 + ...)).
  std::vector<Complex> poly;
  for (std::size_t j = newton.size(); j-- > 0;) {
    // poly <- poly * (x - nodes[j]) + newton[j]
    std::vector<Complex> next(poly.size() + 1, Complex(0.0));
    for (std::size_t i = 0; i < poly.size(); ++i) {
      next[i + 1] += poly[i];
      next[i] -= nodes[j] * poly[i];
    }
    next[0] += newton[j];
    poly = std::move(next);
  }
  return poly;
}

Complex SpectralWitness::operator()(Complex x) const {
  Complex acc(0.0);
  for (std::size_t j = newton.size(); j-- > 0;) acc = acc * (x - nodes[j]) + newton[j];
  return acc;
}

CMatrix SpectralWitness::evaluate(const CMatrix& a) const {
  const Eigen::Index n = a.rows();
  CMatrix acc = CMatrix::Zero(n, n);
  for (std::size_t j = newton.size(); j-- > 0;) {
    acc = acc * (a - nodes[j] * identity(n));
    acc.diagonal().array() += newton[j];
  }
  return acc;
}

SpectralWitness spectral_pinv_witness(const CMatrix& a, const Weight& e, const Weight& f,
                                      double tol) {
  const CMatrix b = weighted_pinv(a, e, f, tol).B;
  if (commutator(a, b) > tol) throw PreconditionUnmet("A is not weighted EP for these weights");
  const SpectralData sd = eig(a);
  if (sd.condition >= kMaxEigenvectorCondition) {
    throw Defective("eigenvector condition " + std::to_string(sd.condition) + " >= 1e6");
  }
  const double scale = induced_norm(a, NormKind::Induced2);
  SpectralWitness w;
  w.nodes.push_back(Complex(0.0));
  std::vector<Complex> values{Complex(0.0)};
  for (const Cluster& c : cluster_eigenvalues(sd.eigenvalues, kClusterRel * scale)) {
    if (std::abs(c.value) <= kClusterRel * scale) continue;
    w.nodes.push_back(c.value);
    values.push_back(1.0 / c.value);
  }
  // Divided differences in place.
  w.newton = values;
  const std::size_t m = w.nodes.size();
  for (std::size_t level = 1; level < m; ++level) {
    for (std::size_t i = m - 1; i >= level; --i) {
      w.newton[i] = (w.newton[i] - w.newton[i - 1]) / (w.nodes[i] - w.nodes[i - level]);
    }
  }
  w.residual = rel_gap(w.evaluate(a), b, b.norm());
  if (w.residual > tol) {
    throw WitnessFailure("p(A) misses A† by " + std::to_string(w.residual));
  }
  return w;
}

double commutant_probe_residual(const CMatrix& a, const CMatrix& b, int n_probes,
                                std::uint64_t seed) {
  require_square(a, "A");
  const Eigen::Index n = a.rows();
  double worst = commutator(a, b);
  const double scale = a.norm();
  if (scale == 0.0) return worst;

  Rng rng(seed);
  const CMatrix unit = a / scale;
  for (int p = 0; p < n_probes; ++p) {
    // Random polynomial of degree n - 1 in A / ||A||, by Horner.
    CMatrix probe = CMatrix::Zero(n, n);
    for (Eigen::Index d = 0; d < n; ++d) {
      probe = probe * unit;
      probe.diagonal().array() += rng.complex_normal();
    }
    worst = std::max(worst, commutator(probe, b));
  }

  const SpectralData sd = eig(a);
  if (sd.condition < kMaxEigenvectorCondition) {
    const CMatrix v_inv = sd.eigenvectors.inverse();
    const double threshold = kClusterRel * induced_norm(a, NormKind::Induced2);
    for (const Cluster& c : cluster_eigenvalues(sd.eigenvalues, threshold)) {
      CMatrix proj = CMatrix::Zero(n, n);
      for (Eigen::Index i : c.members) proj += sd.eigenvectors.col(i) * v_inv.row(i);
      worst = std::max(worst, commutator(proj, b));
    }
  }
  return worst;
}

bool commutant_probe(const CMatrix& a, const Weight& e, const Weight& f, int n_probes,
                     std::uint64_t seed, double tol) {
  if (n_probes < 0) throw InvalidArgument("n_probes must be non-negative");
  const CMatrix b = weighted_pinv(a, e, f, tol).B;
  return commutant_probe_residual(a, b, n_probes, seed) <= tol;
}

}  // namespace wpinv
