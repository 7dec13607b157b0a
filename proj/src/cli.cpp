#include "lofo/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <functional>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "lofo/bounds.hpp"
#include "lofo/concentration.hpp"
#include "lofo/errors.hpp"
#include "lofo/harness.hpp"
#include "lofo/io.hpp"
#include "lofo/lattice.hpp"
#include "lofo/spread.hpp"

namespace lofo {
namespace {

struct Sink {
  std::ostream& out;
  std::string path;

  void emit(const std::string& text) const {
    if (path.empty()) {
      out << text;
    } else {
      write_file_atomic(path, text);
    }
  }
  void emit(const Json& j) const { emit(canonical_dump(j) + "\n"); }
};

SpreadModel model_of(const AnyDist& d, const SpreadOptions& opts) {
  if (const auto* f = std::get_if<FiniteDist>(&d)) return SpreadModel::of(symmetrize(*f));
  return SpreadModel::of(symmetrize(std::get<AnalyticDist>(d)), opts);
}

WeightVector weights_or_unit(const std::string& path) {
  return path.empty() ? WeightVector({1.0}) : read_weights(path);
}

void require(bool ok, const std::string& what) {
  if (!ok) throw PreconditionError(what);
}

// --- q ----------------------------------------------------------------------

struct QArgs {
  std::string dist, weights, method = "auto";
  double lambda = 0.0;
  std::size_t samples = 100'000;
  std::uint64_t seed = 1;
  std::size_t budget = kDefaultSupportBudget;
};

Json run_q(const QArgs& a) {
  const AnyDist law = read_dist(a.dist);
  const WeightVector w = weights_or_unit(a.weights);
  const bool finite = std::holds_alternative<FiniteDist>(law);
  std::string method = a.method;
  if (method == "auto") {
    if (finite) {
      method = "exact";
    } else {
      method = std::get<AnalyticDist>(law).is_gaussian() ? "closed_form" : "monte_carlo";
    }
  }
  if (method == "exact") {
    require(finite, "exact Q needs a finite law");
    const auto& f = std::get<FiniteDist>(law);
    return to_json(q_exact(weighted_sum_dist(f, w, a.budget), a.lambda));
  }
  if (method == "closed_form") {
    require(!finite && std::get<AnalyticDist>(law).is_gaussian(), "closed-form Q needs a Gaussian law");
    const auto& g = std::get<Gaussian>(std::get<AnalyticDist>(law).kind());
    return to_json(q_closed_form_gaussian(g.sigma * w.norm(), a.lambda));
  }
  if (method == "monte_carlo") {
    if (finite) return to_json(q_monte_carlo(std::get<FiniteDist>(law), w, a.lambda, a.samples, a.seed));
    return to_json(q_monte_carlo(std::get<AnalyticDist>(law), w, a.lambda, a.samples, a.seed));
  }
  throw PreconditionError("unknown method '" + method + "'");
}

// --- lcd --------------------------------------------------------------------

struct LcdArgs {
  std::string weights, variant = "d_star";
  double L = 1.0, tol = 1e-6;
};

Json run_lcd(const LcdArgs& a) {
  return to_json(lcd(read_weights(a.weights), a.L, parse_variant(a.variant), a.tol));
}

// --- tau0 -------------------------------------------------------------------

struct Tau0Args {
  std::string dist, weights;
  double L = 0.0;
  std::optional<double> tol;
  std::size_t samples = 1'000'000;
  std::uint64_t seed = 20130101;
};

Json run_tau0(const Tau0Args& a) {
  const AnyDist law = read_dist(a.dist);
  SpreadOptions opts;
  opts.samples = a.samples;
  opts.seed = a.seed;
  const SpreadModel model = model_of(law, opts);
  const double tol = a.tol.value_or(model.method() == Method::exact ? 1e-10 : 1e-6);
  RootSolution r = solve_tau0(model, a.L, tol);
  if (!a.weights.empty()) {
    const WeightVector w = read_weights(a.weights);
    r.eps0 = r.tau0 / lcd(w, a.L, LcdVariant::D_star, 1e-9).value;
  }
  return to_json(r);
}

// --- bound ------------------------------------------------------------------

struct BoundArgs {
  std::string shape, dist, weights;
  std::optional<double> lambda, L, D, M, norm_a, norm_inf, p, eps;
  std::vector<double> lambda_k, q_k, m_k;
  std::size_t samples = 1'000'000;
  std::uint64_t seed = 20130101;
};

double need(const std::optional<double>& v, const char* flag, const std::string& shape) {
  if (!v) throw PreconditionError(std::string("shape ") + shape + " needs " + flag);
  return *v;
}

Json run_bound(const BoundArgs& a) {
  const std::string& s = a.shape;
  if (s == "optimal" || s == "optimal_small_eps" || s == "optimal_large_eps" || s == "optimal_atom") {
    require(!a.dist.empty() && !a.weights.empty(), "shape " + s + " needs --dist and --weights");
    const AnyDist law = read_dist(a.dist);
    const WeightVector w = read_weights(a.weights);
    const double L = need(a.L, "--L", s);
    const double eps = need(a.eps, "--eps", s);
    SpreadOptions opts;
    opts.samples = a.samples;
    opts.seed = a.seed;
    const SpreadModel model = model_of(law, opts);
    const double dstar = a.D ? *a.D : lcd(w, L, LcdVariant::D_star, 1e-9).value;
    RootSolution root = solve_tau0(model, L, model.method() == Method::exact ? 1e-10 : 1e-6);
    root.eps0 = root.tau0 / dstar;
    const BoundShape shape = shape_optimal(model, w.norm(), L, eps, dstar, root);
    if (s != "optimal" && s != to_string(shape.id)) {
      throw PreconditionError("shape " + s + " does not apply at eps = " + std::to_string(eps) + " (eps0 = " +
                              std::to_string(root.eps0) + "); use --shape optimal");
    }
    return to_json(shape);
  }
  switch (parse_shape(s)) {
    case ShapeId::kolmogorov_rogozin:
      return to_json(shape_kr(need(a.lambda, "--lambda", s), a.lambda_k, a.q_k));
    case ShapeId::esseen:
      return to_json(shape_esseen(need(a.lambda, "--lambda", s), a.lambda_k, a.m_k));
    case ShapeId::vershynin:
      return to_json(shape_vershynin(need(a.L, "--L", s), need(a.D, "--D", s)));
    case ShapeId::lcd_unit:
      return to_json(shape_lcd_unit(need(a.D, "--D", s), need(a.M, "--M", s)));
    case ShapeId::lcd_general:
      return to_json(shape_lcd_general(need(a.D, "--D", s), need(a.norm_a, "--norm-a", s), need(a.M, "--M", s)));
    case ShapeId::lcd_scaled:
      return to_json(shape_lcd_scaled(need(a.D, "--D", s), need(a.norm_a, "--norm-a", s), need(a.M, "--M", s)));
    case ShapeId::no_arithmetic:
      return to_json(
          shape_no_arithmetic(need(a.norm_a, "--norm-a", s), need(a.norm_inf, "--norm-inf", s), need(a.M, "--M", s)));
    case ShapeId::bernoulli_min:
      return to_json(shape_bernoulli_min(need(a.p, "--p", s), need(a.eps, "--eps", s), need(a.D, "--D", s)));
    default:
      break;
  }
  throw PreconditionError("unknown shape '" + s + "'");
}

// --- verify -----------------------------------------------------------------

struct VerifyArgs {
  std::string family = "sparse", bound = "optimal", format = "json";
  std::uint64_t seed = 1;
  double L = 2.0;
  std::size_t eps_points = 40;
};

std::string run_verify(const VerifyArgs& a) {
  const bool csv = a.format == "csv";
  if (a.bound == "lower_binomial") {
    require(a.family == "sparse" || a.family == "sparse_core", "lower_binomial runs on the sparse families");
    const InstanceFamily fam = make_family(a.family, a.seed);
    std::vector<std::size_t> s;
    std::vector<double> p;
    for (const auto& inst : fam.instances) {
      if (std::find(s.begin(), s.end(), inst.s) == s.end()) s.push_back(inst.s);
      if (std::find(p.begin(), p.end(), inst.p) == p.end()) p.push_back(inst.p);
    }
    const LowerBoundReport r = check_lower_binomial(s, p, a.eps_points);
    return csv ? to_csv(r) : canonical_dump(to_json(r)) + "\n";
  }
  if (a.bound == "improvement") {
    const ImprovementReport r = improvement_report(make_family(a.family, a.seed), a.L);
    return csv ? to_csv(r) : canonical_dump(to_json(r)) + "\n";
  }
  const CalibrationReport r =
      calibrate_upper(parse_calibrated_bound(a.bound), make_family(a.family, a.seed), a.L, a.eps_points);
  return csv ? to_csv(r) : canonical_dump(to_json(r)) + "\n";
}

// --- report -----------------------------------------------------------------

struct ReportArgs {
  std::string in, long_out;
};

std::string run_report(const ReportArgs& a, std::string& long_csv) {
  Json j;
  try {
    j = Json::parse(read_file(a.in));
  } catch (const Json::parse_error& e) {
    throw PreconditionError("'" + a.in + "' is not valid JSON: " + e.what());
  }
  const std::string kind = j.is_object() ? j.value("kind", "") : "";
  if (kind == "calibration") {
    const CalibrationReport r = calibration_report_from_json(j);
    long_csv = to_long_csv(r);
    return to_csv(r);
  }
  require(a.long_out.empty(), "--long applies to calibration reports only");
  if (kind == "lower_binomial") return to_csv(lower_bound_report_from_json(j));
  if (kind == "improvement") return to_csv(improvement_report_from_json(j));
  throw PreconditionError("'" + a.in + "' is not a report produced by verify");
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Concentration functions, least common denominators and Littlewood-Offord bounds", "lofo"};
  app.require_subcommand(1);
  std::string out_path;

  QArgs qa;
  auto* q = app.add_subcommand("q", "Concentration function Q(F_a, lambda)");
  q->add_option("--dist", qa.dist, "Distribution JSON file")->required();
  q->add_option("--weights", qa.weights, "Weight vector file (JSON array or one number per line); default a = (1)");
  q->add_option("--lambda", qa.lambda, "Window length")->required()->check(CLI::NonNegativeNumber);
  q->add_option("--method", qa.method, "auto, exact, closed_form or monte_carlo")
      ->check(CLI::IsMember({"auto", "exact", "closed_form", "monte_carlo"}));
  q->add_option("--samples", qa.samples, "Monte-Carlo sample size (>= 10000)")->check(CLI::Range(10'000ul, 1ul << 40));
  q->add_option("--seed", qa.seed, "Monte-Carlo seed");
  q->add_option("--budget", qa.budget, "Support budget for exact convolution")->check(CLI::PositiveNumber);
  q->add_option("--out", out_path, "Output file (default stdout)");

  LcdArgs la;
  auto* l = app.add_subcommand("lcd", "Least common denominator D(a) or D*(a)");
  l->add_option("--weights", la.weights, "Weight vector file")->required();
  l->add_option("--L", la.L, "Parameter L")->required()->check(CLI::PositiveNumber);
  l->add_option("--variant", la.variant, "d or d_star")->check(CLI::IsMember({"d", "d_star"}));
  l->add_option("--tol", la.tol, "Bracket width")->check(CLI::PositiveNumber);
  l->add_option("--out", out_path, "Output file (default stdout)");

  Tau0Args ta;
  auto* t = app.add_subcommand("tau0", "Solve L^2 = 1/M(tau0)");
  t->add_option("--dist", ta.dist, "Distribution JSON file (the law of X, not of X~)")->required();
  t->add_option("--L", ta.L, "Parameter L")->required()->check(CLI::PositiveNumber);
  t->add_option("--weights", ta.weights, "Weight vector file; adds eps0 = tau0 / D*(a)");
  t->add_option("--tol", ta.tol, "Residual tolerance")->check(CLI::PositiveNumber);
  t->add_option("--samples", ta.samples, "Draws for Monte-Carlo M")->check(CLI::Range(10'000ul, 1ul << 40));
  t->add_option("--seed", ta.seed, "Seed for Monte-Carlo M");
  t->add_option("--out", out_path, "Output file (default stdout)");

  BoundArgs ba;
  auto* b = app.add_subcommand("bound", "Evaluate a bound shape");
  std::vector<std::string> shape_names{"optimal"};
  for (ShapeId id : all_shapes()) shape_names.emplace_back(to_string(id));
  b->add_option("--shape", ba.shape, "Shape id")->required()->check(CLI::IsMember(shape_names));
  b->add_option("--lambda", ba.lambda, "Window length lambda")->check(CLI::PositiveNumber);
  b->add_option("--lambda-k", ba.lambda_k, "Comma-separated lambda_k")->delimiter(',');
  b->add_option("--q-k", ba.q_k, "Comma-separated Q_k")->delimiter(',');
  b->add_option("--m-k", ba.m_k, "Comma-separated M_k")->delimiter(',');
  b->add_option("--L", ba.L, "Parameter L")->check(CLI::PositiveNumber);
  b->add_option("--D", ba.D, "Least common denominator")->check(CLI::PositiveNumber);
  b->add_option("--M", ba.M, "Value of M(tau)")->check(CLI::Range(0.0, 1.0));
  b->add_option("--norm-a", ba.norm_a, "Euclidean norm of a")->check(CLI::PositiveNumber);
  b->add_option("--norm-inf", ba.norm_inf, "Max norm of a")->check(CLI::PositiveNumber);
  b->add_option("--p", ba.p, "Bernoulli parameter")->check(CLI::Range(0.0, 1.0));
  b->add_option("--eps", ba.eps, "Window eps")->check(CLI::NonNegativeNumber);
  b->add_option("--dist", ba.dist, "Distribution JSON file (optimal shapes)");
  b->add_option("--weights", ba.weights, "Weight vector file (optimal shapes)");
  b->add_option("--samples", ba.samples, "Draws for Monte-Carlo M")->check(CLI::Range(10'000ul, 1ul << 40));
  b->add_option("--seed", ba.seed, "Seed for Monte-Carlo M");
  b->add_option("--out", out_path, "Output file (default stdout)");

  VerifyArgs va;
  auto* v = app.add_subcommand("verify", "Run a calibration or lower-bound check over an instance family");
  std::vector<std::string> verify_bounds{"optimal",         "bernoulli_min",  "kolmogorov_rogozin", "esseen",
                                         "no_arithmetic",   "lower_binomial", "improvement"};
  v->add_option("--family", va.family, "Instance family")->check(CLI::IsMember(family_ids()));
  v->add_option("--bound", va.bound, "Bound to check")->check(CLI::IsMember(verify_bounds));
  v->add_option("--seed", va.seed, "Family seed (random family only)");
  v->add_option("--L", va.L, "Parameter L")->check(CLI::PositiveNumber);
  v->add_option("--eps-points", va.eps_points, "Windows per instance")->check(CLI::Range(1ul, 100'000ul));
  v->add_option("--format", va.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  v->add_option("--out", out_path, "Output file (default stdout)");

  ReportArgs ra;
  std::string long_path;
  auto* r = app.add_subcommand("report", "Render a verify report as CSV");
  r->add_option("--in", ra.in, "Report JSON")->required();
  r->add_option("--out", out_path, "CSV output, one row per instance window (default stdout)");
  r->add_option("--long", long_path, "Long-format CSV (eps, Q, shape, ratio) for calibration reports");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitPrecondition;
  }

  const Sink sink{out, out_path};
  try {
    if (*q) {
      sink.emit(run_q(qa));
    } else if (*l) {
      sink.emit(run_lcd(la));
    } else if (*t) {
      sink.emit(run_tau0(ta));
    } else if (*b) {
      sink.emit(run_bound(ba));
    } else if (*v) {
      sink.emit(run_verify(va));
    } else if (*r) {
      ra.long_out = long_path;
      std::string long_csv;
      const std::string csv = run_report(ra, long_csv);
      sink.emit(csv);
      if (!long_path.empty()) write_file_atomic(long_path, long_csv);
    }
  } catch (const PreconditionError& e) {
    err << "error: " << e.what() << '\n';
    return kExitPrecondition;
  } catch (const CapacityError& e) {
    err << "error: " << e.what() << '\n';
    return kExitOperational;
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kExitOperational;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitOperational;
  }
  return kExitOk;
}

}  // namespace lofo
