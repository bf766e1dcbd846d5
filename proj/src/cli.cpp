#include "wpinv/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <optional>

#include <CLI11.hpp>

#include "wpinv/ep.hpp"
#include "wpinv/geninv.hpp"
#include "wpinv/hermitian.hpp"
#include "wpinv/matrix_io.hpp"
#include "wpinv/report.hpp"
#include "wpinv/structure.hpp"
#include "wpinv/testkit.hpp"

namespace wpinv {

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NotHermitian:
    case ErrorKind::NotPositiveDefinite:
      return kExitInvalidWeight;
    case ErrorKind::CriterionMismatch:
      return kExitAlarm;
    case ErrorKind::VerificationFailure:
    case ErrorKind::InconsistentProjectors:
    case ErrorKind::SingularCore:
    case ErrorKind::WitnessFailure:
    case ErrorKind::Defective:
    case ErrorKind::ConvergenceFailure:
      return kExitVerification;
    case ErrorKind::InvalidArgument:
    case ErrorKind::DimensionMismatch:
    case ErrorKind::PreconditionUnmet:
    case ErrorKind::NotInvariant:
    case ErrorKind::ParseError:
      return kExitUsage;
  }
  return kExitUsage;
}

namespace {

constexpr double kUniquenessGap = 1e-9;
constexpr double kSqrtGap = 1e-10;

double parse_double(std::string_view text, std::string_view what) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (text.empty() || ec != std::errc() || ptr != text.data() + text.size() || !std::isfinite(v)) {
    throw ParseError("cannot parse " + std::string(what) + " '" + std::string(text) + "'");
  }
  return v;
}

double default_tol() {
  const char* env = std::getenv("WPINV_DEFAULT_TOL");
  if (env == nullptr || *env == '\0') return kVerdictTol;
  const double v = parse_double(env, "WPINV_DEFAULT_TOL");
  if (!(v > 0.0)) throw InvalidArgument("WPINV_DEFAULT_TOL must be positive");
  return v;
}

Complex parse_lambda(const std::string& text) {
  const auto comma = text.find(',');
  if (comma == std::string::npos) throw ParseError("--lambda expects re,im");
  return {parse_double(std::string_view(text).substr(0, comma), "--lambda"),
          parse_double(std::string_view(text).substr(comma + 1), "--lambda")};
}

nlohmann::json clause_report_json(const ClauseReport& r) {
  nlohmann::json clauses = nlohmann::json::array();
  for (const auto& c : r.clauses) {
    clauses.push_back(
        {{"id", c.id}, {"holds", c.holds}, {"residual", c.residual}, {"support", c.support}});
  }
  return {{"consensus", to_string(r.consensus)},
          {"ep_verdict", r.ep_verdict},
          {"disagreeing", r.disagreeing},
          {"params",
           {{"k", r.params.k},
            {"l", r.params.l},
            {"lambda", {r.params.lambda.real(), r.params.lambda.imag()}},
            {"tol", r.params.tol}}},
          {"clauses", std::move(clauses)}};
}

nlohmann::json hermitian_report_json(const HermitianReport& r) {
  nlohmann::json j = {{"verdict", r.verdict},
                      {"max_deviation", r.max_deviation},
                      {"worst_t", r.worst_t},
                      {"grid_points", r.grid.size()},
                      {"t_max", r.grid.empty() ? 0.0 : r.grid.back()},
                      {"norm", to_string(r.norm_kind)},
                      {"tol", r.tol},
                      {"support", r.support}};
  if (r.exact_verdict) j["exact_verdict"] = *r.exact_verdict;
  if (r.exact_residual) j["exact_residual"] = *r.exact_residual;
  return j;
}

struct Options {
  std::optional<double> tol;
  std::string out;
  std::string matrix_out;
  std::string input;
  std::vector<std::string> weights;
  std::string norm = "2";
  double t_max = GridOptions{}.t_max;
  int steps = GridOptions{}.steps;
  int k = 2;
  int l = 2;
  bool k_given = false;
  std::string lambda = "1,1";
  std::string via = "formula";
  bool check_unique = false;
  std::string mode;
  int n = 0;
  int count = 100;
  std::uint64_t seed = 0;
  std::string manifest;
  std::string replay;
};

class Runner {
 public:
  Runner(const Options& opt, RunReport& report) : opt_(opt), report_(report) {
    tol_ = opt.tol ? *opt.tol : default_tol();
    if (!(tol_ > 0.0)) throw InvalidArgument("--tol must be positive");
    report_.tolerances["tol"] = tol_;
  }

  int pinv();
  int wpinv();
  int group();
  int ep();
  int hermitian();
  int lift_check();
  int block_check();
  int corpus();

 private:
  CMatrix load(const std::string& path) {
    const std::string bytes = io::read_file(path);
    report_.inputs.push_back({path, hex64(fnv1a64(bytes))});
    try {
      return io::format_for(path) == io::MatrixFormat::Csv ? io::parse_csv_matrix(bytes)
                                                           : io::parse_json_matrix(bytes);
    } catch (const ParseError& e) {
      throw ParseError(path + ": " + e.detail());
    }
  }

  std::pair<Weight, Weight> weights(const CMatrix& a) {
    if (opt_.weights.empty()) return {Weight::identity(a.rows()), Weight::identity(a.cols())};
    return {Weight::from_matrix(load(opt_.weights[0])), Weight::from_matrix(load(opt_.weights[1]))};
  }

  void emit_matrix(const std::string& name, const CMatrix& m) {
    report_.outputs[name] = io::matrix_to_json(m);
  }

  void write_primary(const CMatrix& m) {
    if (!opt_.matrix_out.empty()) io::write_matrix(opt_.matrix_out, m);
  }

  void put_penrose(const std::array<double, 4>& r) {
    report_.residuals["aba"] = r[0];
    report_.residuals["bab"] = r[1];
    report_.residuals["ab_hermitian"] = r[2];
    report_.residuals["ba_hermitian"] = r[3];
  }

  int fail(int code, const std::string& note) {
    report_.notes.push_back(note);
    return code;
  }

  int corpus_ep(const std::vector<std::pair<std::size_t, std::uint64_t>>& work, int n,
                std::vector<nlohmann::json>& failing);

  const Options& opt_;
  RunReport& report_;
  double tol_ = kVerdictTol;
};

int Runner::pinv() {
  const CMatrix a = load(opt_.input);
  const CMatrix b = svd_pinv(a, tol_);
  const auto r = penrose_residuals(a, b);
  emit_matrix("B", b);
  put_penrose(r);
  write_primary(b);
  if (*std::max_element(r.begin(), r.end()) > tol_) {
    return fail(kExitVerification, "pseudoinverse residuals exceed tolerance");
  }
  return kExitOk;
}

int Runner::wpinv() {
  const CMatrix a = load(opt_.input);
  const auto [e, f] = weights(a);
  const WeightedPinvResult formula = weighted_pinv_candidate(a, e, f, tol_);
  if (opt_.via == "formula" || opt_.check_unique) {
    emit_matrix("B", formula.B);
    emit_matrix("P", formula.P);
    emit_matrix("Q", formula.Q);
    put_penrose(formula.residuals);
  }
  if (!formula.success()) {
    write_primary(formula.B);
    return fail(kExitVerification, "weighted pseudoinverse residuals exceed tolerance");
  }
  CMatrix primary = formula.B;
  if (opt_.via == "projectors" || opt_.check_unique) {
    const auto [p, q] = projectors_of(a, e, f, tol_);
    const CMatrix b = pinv_from_projectors(a, p, q, tol_);
    const auto r = weighted_penrose_residuals(a, b, e, f);
    if (opt_.check_unique) {
      emit_matrix("B_projectors", b);
      const double gap = rel_gap(formula.B, b);
      report_.residuals["unique_gap"] = gap;
      if (gap > tol_) {
        write_primary(primary);
        return fail(kExitVerification, "formula and projector paths disagree");
      }
    } else {
      primary = b;
      emit_matrix("B", b);
      emit_matrix("P", p);
      emit_matrix("Q", q);
      put_penrose(r);
      if (*std::max_element(r.begin(), r.end()) > tol_) {
        write_primary(b);
        return fail(kExitVerification, "projector-path residuals exceed tolerance");
      }
    }
  }
  write_primary(primary);
  return kExitOk;
}

int Runner::group() {
  const CMatrix a = load(opt_.input);
  const GroupInvResult g = group_inverse(a, tol_);
  report_.outputs["exists"] = g.exists;
  report_.outputs["rank_A"] = g.rank_A;
  report_.outputs["rank_A2"] = g.rank_A2;
  if (!g.exists) {
    report_.notes.push_back("group inverse does not exist: rank(A) != rank(A^2)");
    return kExitOk;
  }
  emit_matrix("sharp", *g.sharp);
  report_.residuals["asa"] = g.residuals[0];
  report_.residuals["sas"] = g.residuals[1];
  report_.residuals["commutator"] = g.residuals[2];
  write_primary(*g.sharp);
  return kExitOk;
}

int Runner::ep() {
  const CMatrix a = load(opt_.input);
  const auto [e, f] = weights(a);
  ClauseParams params;
  params.k = opt_.k;
  params.l = opt_.l;
  params.lambda = parse_lambda(opt_.lambda);
  params.tol = tol_;
  params.validate();
  const double commutator = weighted_ep_residual(a, e, f, tol_);
  report_.residuals["commutator"] = commutator;
  report_.outputs["weighted_ep"] = commutator <= tol_;
  try {
    const ClauseReport r = characterization_battery(a, e, f, params);
    report_.outputs["battery"] = clause_report_json(r);
    report_.residuals["worst_true_residual"] = r.worst_true_residual();
    report_.residuals["best_false_residual"] = r.best_false_residual();
    if (r.consensus == Consensus::Mixed) {
      return fail(kExitAlarm, "mixed consensus among equivalent clauses");
    }
  } catch (const PreconditionUnmet& e) {
    report_.notes.push_back("battery skipped: " + e.detail());
  }
  return kExitOk;
}

int Runner::hermitian() {
  const CMatrix a = load(opt_.input);
  GridOptions g;
  g.t_max = opt_.t_max;
  g.steps = opt_.steps;
  g.tol = tol_;
  const HermitianReport r = hermitian_grid_report(a, norm_kind_from_string(opt_.norm), g);
  report_.outputs["hermitian"] = hermitian_report_json(r);
  report_.residuals["max_deviation"] = r.max_deviation;
  if (r.exact_residual) report_.residuals["exact_residual"] = *r.exact_residual;
  if (r.criterion_mismatch()) {
    return fail(kExitAlarm, "grid verdict contradicts the exact self-adjointness criterion");
  }
  return kExitOk;
}

int Runner::lift_check() {
  const CMatrix a = load(opt_.input);
  const auto [e, f] = weights(a);
  const TheoremCheck c = verify_lift_theorem(a, e, f, tol_);
  report_.outputs["holds"] = c.holds;
  report_.residuals["gap"] = c.gap;
  return c.holds ? kExitOk : fail(kExitVerification, "lift identity misses tolerance");
}

int Runner::block_check() {
  if (!opt_.k_given) throw InvalidArgument("block-check needs --k (size of the leading block)");
  const CMatrix t = load(opt_.input);
  const auto [e, f] = weights(t);
  const BlockModel tm(t, opt_.k);
  const BlockModel em(e.matrix(), opt_.k);
  const BlockModel fm(f.matrix(), opt_.k);
  const TheoremCheck res = verify_restriction_theorem(tm, em, fm, tol_);
  const TheoremCheck quo = verify_quotient_theorem(tm, em, fm, tol_);
  report_.outputs["restriction"] = res.holds;
  report_.outputs["quotient"] = quo.holds;
  report_.residuals["restriction_gap"] = res.gap;
  report_.residuals["restriction_sqrt_gap"] = res.sqrt_gap;
  report_.residuals["quotient_gap"] = quo.gap;
  report_.residuals["quotient_sqrt_gap"] = quo.sqrt_gap;
  if (!res.holds || !quo.holds) return fail(kExitVerification, "block identity misses tolerance");
  return kExitOk;
}

int Runner::corpus() {
  std::string mode = opt_.mode;
  int n = opt_.n;
  std::vector<std::pair<std::size_t, std::uint64_t>> work;  // (index, instance seed)
  if (!opt_.replay.empty()) {
    nlohmann::json m;
    try {
      m = nlohmann::json::parse(io::read_file(opt_.replay));
      mode = m.at("mode").get<std::string>();
      n = m.at("n").get<int>();
      tol_ = m.at("tol").get<double>();
      for (const auto& item : m.at("failing")) {
        work.emplace_back(item.at("index").get<std::size_t>(), item.at("seed").get<std::uint64_t>());
      }
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(opt_.replay + ": malformed manifest: " + e.what());
    }
    report_.tolerances["tol"] = tol_;
    report_.notes.push_back("replaying " + std::to_string(work.size()) + " instance(s)");
  } else {
    if (opt_.count < 0) throw InvalidArgument("--count must be nonnegative");
    for (int i = 0; i < opt_.count; ++i) {
      work.emplace_back(static_cast<std::size_t>(i), mix_seed(opt_.seed, static_cast<std::uint64_t>(i)));
    }
  }
  static const std::vector<std::string> kModes = {"ep-battery", "uniqueness", "lift", "blocks",
                                                  "hermitian"};
  if (std::find(kModes.begin(), kModes.end(), mode) == kModes.end()) {
    throw InvalidArgument("unknown corpus mode '" + mode + "'");
  }
  if (n < 0 || n == 1) throw InvalidArgument("--n must be 0 (random) or at least 2");

  const auto start = std::chrono::steady_clock::now();
  std::vector<nlohmann::json> failing;
  std::size_t passed = 0;
  double worst = 0.0;
  double worst_sqrt = 0.0;
  std::optional<double> best_false;
  auto pick_n = [&](Rng& rng, int hi) { return n > 0 ? n : rng.uniform_int(2, hi); };

  for (const auto& [index, seed] : work) {
    bool ok = false;
    std::string why;
    try {
      Rng rng(seed);
      const std::uint64_t inner = rng.next_u64();
      if (mode == "ep-battery") {
        const bool expect_ep = index % 2 == 0;
        const int dim = pick_n(rng, 6);
        const testkit::Triple t = expect_ep ? testkit::constructed_ep_triple(dim, inner)
                                            : testkit::generic_index_one_triple(dim, inner);
        ClauseParams params;
        params.tol = tol_;
        const ClauseReport r = characterization_battery(t.A, t.E, t.F, params);
        worst = std::max(worst, r.worst_true_residual());
        if (r.consensus == Consensus::AllFalse) {
          best_false = std::min(best_false.value_or(r.best_false_residual()), r.best_false_residual());
        }
        ok = r.consensus != Consensus::Mixed && r.ep_verdict == expect_ep;
        if (!ok) why = std::string("consensus ") + std::string(to_string(r.consensus));
      } else if (mode == "uniqueness") {
        const testkit::Triple t = testkit::penrose_instance(inner, n);
        const WeightedPinvResult w = weighted_pinv(t.A, t.E, t.F, tol_);
        const auto [p, q] = projectors_of(t.A, t.E, t.F, tol_);
        const double gap = rel_gap(w.B, pinv_from_projectors(t.A, p, q, tol_));
        worst = std::max(worst, gap);
        ok = gap <= kUniquenessGap;
        if (!ok) why = "cross-path gap " + std::to_string(gap);
      } else if (mode == "lift") {
        const testkit::Triple t = testkit::penrose_instance(inner, pick_n(rng, 6));
        const TheoremCheck c = verify_lift_theorem(t.A, t.E, t.F, tol_);
        worst = std::max(worst, c.gap);
        ok = c.holds;
        if (!ok) why = "lift gap " + std::to_string(c.gap);
      } else if (mode == "blocks") {
        const int dim = pick_n(rng, 8);
        const int k = rng.uniform_int(1, dim - 1);
        const testkit::BlockInstance b = testkit::random_block_instance(dim, k, inner);
        const TheoremCheck res = verify_restriction_theorem(b.T, b.E, b.F, tol_);
        const TheoremCheck quo = verify_quotient_theorem(b.T, b.E, b.F, tol_);
        worst = std::max({worst, res.gap, quo.gap});
        worst_sqrt = std::max({worst_sqrt, res.sqrt_gap, quo.sqrt_gap});
        ok = res.holds && quo.holds && std::max(res.sqrt_gap, quo.sqrt_gap) <= kSqrtGap;
        if (!ok) why = "block gap " + std::to_string(std::max(res.gap, quo.gap));
      } else {
        const bool expect_hermitian = index % 2 == 0;
        const int dim = pick_n(rng, 8);
        const CMatrix a = expect_hermitian ? testkit::random_hermitian(dim, inner)
                                           : testkit::random_generic(dim, inner);
        GridOptions g;
        g.tol = tol_;
        const HermitianReport r = hermitian_grid_report(a, NormKind::Induced2, g);
        worst = std::max(worst, expect_hermitian ? r.max_deviation : 0.0);
        ok = !r.criterion_mismatch() && r.verdict == expect_hermitian;
        if (!ok) why = "grid verdict " + std::string(r.verdict ? "true" : "false");
      }
    } catch (const Error& e) {
      why = e.what();
    }
    if (ok) {
      ++passed;
    } else {
      failing.push_back({{"index", index}, {"seed", seed}, {"reason", why}});
    }
  }
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  report_.outputs["mode"] = mode;
  report_.outputs["n"] = n;
  report_.outputs["count"] = work.size();
  report_.outputs["passed"] = passed;
  report_.outputs["failed"] = failing.size();
  report_.outputs["failing"] = failing;
  report_.outputs["seconds"] = seconds;
  report_.residuals["worst"] = worst;
  if (mode == "blocks") report_.residuals["worst_sqrt"] = worst_sqrt;
  if (best_false) report_.residuals["best_false_residual"] = *best_false;
  if (mode == "uniqueness") report_.tolerances["gap"] = kUniquenessGap;
  if (mode == "blocks") report_.tolerances["sqrt_gap"] = kSqrtGap;

  if (!opt_.manifest.empty()) {
    nlohmann::json m = {{"mode", mode}, {"n", n}, {"tol", tol_}, {"seed", opt_.seed},
                        {"failing", failing}};
    std::ofstream f(opt_.manifest);
    if (!f) throw ParseError("cannot write " + opt_.manifest);
    f << m.dump(2) << "\n";
  }
  if (!failing.empty()) {
    return fail(kExitCorpusFailure,
                std::to_string(failing.size()) + " of " + std::to_string(work.size()) + " instances failed");
  }
  return kExitOk;
}

void emit(const RunReport& report, const std::string& path, std::ostream& out, std::ostream& err) {
  const std::string text = to_json(report).dump(2) + "\n";
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(path);
  if (!f) {
    err << "error: cannot write report to " << path << "\n";
    out << text;
    return;
  }
  f << text;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Weighted Moore-Penrose inverses, group inverses and weighted-EP checks", "wpinv"};
  app.require_subcommand(1);
  Options opt;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--tol", opt.tol, "Tolerance for cutoffs and verdicts")
        ->check(CLI::PositiveNumber);
    sub->add_option("--out", opt.out, "Write the run report here instead of stdout");
  };
  auto with_input = [&](CLI::App* sub) {
    common(sub);
    sub->add_option("input", opt.input, "Matrix file (.json or .csv)")->required();
  };
  auto with_weights = [&](CLI::App* sub) {
    sub->add_option("--weights", opt.weights, "Weight files E F")->expected(2);
  };

  auto* pinv = app.add_subcommand("pinv", "Moore-Penrose inverse");
  with_input(pinv);
  pinv->add_option("--matrix-out", opt.matrix_out, "Also write the inverse as a matrix file");

  auto* wpinv = app.add_subcommand("wpinv", "Weighted Moore-Penrose inverse");
  with_input(wpinv);
  with_weights(wpinv);
  wpinv->add_option("--via", opt.via, "Computation path")
      ->check(CLI::IsMember({"formula", "projectors"}));
  wpinv->add_flag("--check-unique", opt.check_unique, "Run both paths and compare");
  wpinv->add_option("--matrix-out", opt.matrix_out, "Also write the inverse as a matrix file");

  auto* group = app.add_subcommand("group", "Group inverse");
  with_input(group);
  group->add_option("--matrix-out", opt.matrix_out, "Also write the inverse as a matrix file");

  auto* ep = app.add_subcommand("ep", "Weighted-EP decision and clause battery");
  with_input(ep);
  with_weights(ep);
  ep->add_option("--k", opt.k, "Power k")->check(CLI::PositiveNumber);
  ep->add_option("--l", opt.l, "Power l")->check(CLI::PositiveNumber);
  ep->add_option("--lambda", opt.lambda, "Nonzero scalar as re,im");

  auto* herm = app.add_subcommand("hermitian", "Banach-algebra hermiticity on a time grid");
  with_input(herm);
  herm->add_option("--norm", opt.norm, "Operator norm")->check(CLI::IsMember({"1", "2", "inf"}));
  herm->add_option("--t-max", opt.t_max, "Grid half-width")->check(CLI::PositiveNumber);
  herm->add_option("--steps", opt.steps, "Grid points")->check(CLI::PositiveNumber);

  auto* lift = app.add_subcommand("lift-check", "Left-multiplication lift identity");
  with_input(lift);
  with_weights(lift);

  auto* block = app.add_subcommand("block-check", "Restriction and quotient identities");
  with_input(block);
  with_weights(block);
  block->add_option("--k", opt.k, "Size of the leading invariant block");

  auto* corpus = app.add_subcommand("corpus", "Seeded corpus run");
  common(corpus);
  corpus->add_option("--mode", opt.mode, "ep-battery, uniqueness, lift, blocks or hermitian");
  corpus->add_option("--n", opt.n, "Dimension (0 draws one per instance)");
  corpus->add_option("--count", opt.count, "Number of instances");
  corpus->add_option("--seed", opt.seed, "Base seed");
  corpus->add_option("--manifest", opt.manifest, "Write failing seeds here");
  corpus->add_option("--replay", opt.replay, "Rerun the failing seeds of a manifest");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }
  if (corpus->parsed() && opt.mode.empty() && opt.replay.empty()) {
    err << "error: corpus needs --mode or --replay\n";
    return kExitUsage;
  }
  opt.k_given = block->count("--k") > 0;

  RunReport report;
  report.command = args;
  int status = kExitOk;
  try {
    Runner run(opt, report);
    if (pinv->parsed()) status = run.pinv();
    else if (wpinv->parsed()) status = run.wpinv();
    else if (group->parsed()) status = run.group();
    else if (ep->parsed()) status = run.ep();
    else if (herm->parsed()) status = run.hermitian();
    else if (lift->parsed()) status = run.lift_check();
    else if (block->parsed()) status = run.block_check();
    else status = run.corpus();
  } catch (const Error& e) {
    status = exit_code_for(e.kind());
    report.notes.push_back(e.what());
    err << "error: " << e.what() << "\n";
  } catch (const std::exception& e) {
    status = kExitUsage;
    report.notes.push_back(e.what());
    err << "error: " << e.what() << "\n";
  }
  report.exit_status = status;
  emit(report, opt.out, out, err);
  return status;
}

}  // namespace wpinv
