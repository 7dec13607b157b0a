#include "lofo/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <sstream>
#include <thread>

#include "lofo/concentration.hpp"
#include "lofo/errors.hpp"
#include "lofo/lattice.hpp"
#include "lofo/rng.hpp"
#include "lofo/spread.hpp"

namespace lofo {
namespace {

constexpr double kLcdTol = 1e-9;

// Sup of Q/shape over the reference corpus (sparse, perturbed and random with
// seed 1) at L = 2 with 40 windows per instance, rounded up to the next 0.01.
constexpr double kFixtureOptimal = 1.13;
constexpr double kFixtureBernoulliMin = 1.01;
constexpr double kFixtureKr = 0.57;
constexpr double kFixtureEsseen = 1.12;
constexpr double kFixtureNoArithmetic = 1.12;

template <class Fn>
void parallel_for(std::size_t n, Fn&& fn) {
  const std::size_t workers = std::min(harness_threads(), n);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (std::size_t i = w; i < n; i += workers) fn(i);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

double summand_sd(const Instance& inst) {
  return inst.p > 0.0 ? std::sqrt(inst.p * (1.0 - inst.p)) : std::sqrt(inst.law.variance());
}

std::vector<double> window_grid(double sd, std::size_t points) {
  std::vector<double> eps(points);
  for (std::size_t i = 0; i < points; ++i) {
    eps[i] = points == 1 ? 0.0 : 4.0 * sd * static_cast<double>(i) / static_cast<double>(points - 1);
  }
  return eps;
}

std::vector<CalibrationRow> calibrate_instance(CalibratedBound bound, const Instance& inst, double L,
                                               std::size_t eps_points) {
  std::vector<CalibrationRow> rows;
  const double sd = summand_sd(inst);
  const auto grid = window_grid(sd, eps_points);
  auto excluded = [&](double eps, double q, const std::string& why) {
    CalibrationRow r;
    r.instance = inst.id;
    r.eps = eps;
    r.q = q;
    r.condition = why;
    rows.push_back(std::move(r));
  };

  const FiniteDist fa = weighted_sum_dist(inst.law, inst.a);
  const FiniteDist g = symmetrize(inst.law);
  const SpreadModel model = SpreadModel::of(g);
  const double P = model.survival();
  if (P == 0.0) {
    for (double eps : grid) excluded(eps, q_exact(fa, eps).value, "degenerate law: M = 0");
    return rows;
  }

  std::optional<RootSolution> root;
  double dstar = 0.0;
  std::string lattice_note;
  const bool needs_lcd = bound == CalibratedBound::optimal || bound == CalibratedBound::bernoulli_min;
  if (needs_lcd) {
    if (!(1.0 / (L * L) < P)) {
      for (double eps : grid) excluded(eps, q_exact(fa, eps).value, "L^2 <= 1/P");
      return rows;
    }
    if (bound == CalibratedBound::bernoulli_min && !(inst.p > 0.0)) {
      for (double eps : grid) excluded(eps, q_exact(fa, eps).value, "not a Bernoulli law");
      return rows;
    }
    root = solve_tau0(model, L);
    const LcdResult d = lcd(inst.a, L, LcdVariant::D_star, kLcdTol);
    dstar = d.value;
    const ConditionCheck cc = check_lattice_condition(inst.a, L, dstar);
    if (!cc.holds) {
      for (double eps : grid) excluded(eps, q_exact(fa, eps).value, "lattice condition fails below D*");
      return rows;
    }
    lattice_note = cc.vacuous ? "lattice:vacuous" : (cc.marginal ? "lattice:marginal" : "lattice:certified");
  }

  for (double eps : grid) {
    const double q = q_exact(fa, eps).value;
    CalibrationRow r;
    r.instance = inst.id;
    r.eps = eps;
    r.q = q;
    try {
      switch (bound) {
        case CalibratedBound::optimal: {
          const BoundShape s = shape_optimal(model, inst.a.norm(), L, eps, dstar, *root);
          r.shape = s.value;
          r.branch = to_string(s.id);
          const double eps0 = root->tau0 / dstar;
          r.condition = "L^2>1/P;" + std::string(eps <= eps0 ? "eps<=eps0;" : "eps>eps0;") + lattice_note +
                        ";D*=" + fmt(dstar);
          break;
        }
        case CalibratedBound::bernoulli_min: {
          const BoundShape s = shape_bernoulli_min(inst.p, eps, dstar);
          r.shape = s.value;
          r.branch = to_string(s.id);
          r.condition = "L^2>1/P;" + lattice_note + ";D*=" + fmt(dstar);
          break;
        }
        case CalibratedBound::kolmogorov_rogozin:
        case CalibratedBound::esseen: {
          if (eps == 0.0) throw PreconditionError("window 0: shape undefined");
          std::vector<double> lam, factor;
          for (double ak : inst.a.coords()) {
            if (ak == 0.0) continue;
            lam.push_back(eps);
            const double scaled = eps / std::abs(ak);
            factor.push_back(bound == CalibratedBound::esseen ? m_functional(g, scaled)
                                                              : q_exact(inst.law, scaled).value);
          }
          const BoundShape s = bound == CalibratedBound::esseen ? shape_esseen(eps, lam, factor)
                                                                : shape_kr(eps, lam, factor);
          r.shape = s.value;
          r.branch = to_string(s.id);
          r.condition = "lambda_k=lambda";
          break;
        }
        case CalibratedBound::no_arithmetic: {
          if (eps == 0.0) throw PreconditionError("window 0: shape undefined");
          const double tau = eps / inst.a.norm_inf();
          const BoundShape s = shape_no_arithmetic(inst.a.norm(), inst.a.norm_inf(), model.m(tau));
          r.shape = s.value;
          r.branch = to_string(s.id);
          r.condition = "tau=" + fmt(tau);
          break;
        }
      }
      r.included = true;
      r.ratio = q / r.shape;
    } catch (const PreconditionError& e) {
      r.shape = 0.0;
      r.ratio = 0.0;
      r.included = false;
      r.condition = e.what();
    }
    rows.push_back(std::move(r));
  }
  return rows;
}

double t_quantile_975(std::size_t dof) {
  // Cornish-Fisher expansion around the normal quantile.
  const double z = 1.959963984540054;
  const double v = static_cast<double>(dof);
  const double z3 = z * z * z;
  const double z5 = z3 * z * z;
  return z + (z3 + z) / (4.0 * v) + (5.0 * z5 + 16.0 * z3 + 3.0 * z) / (96.0 * v * v);
}

}  // namespace

std::size_t harness_threads() {
  if (const char* env = std::getenv("LOFO_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && v >= 1) return static_cast<std::size_t>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

// ---------------------------------------------------------------------------
// Families

InstanceFamily gen_sparse_family(std::span<const std::size_t> s_list, std::size_t n, std::span<const double> p_list,
                                 std::optional<double> eta) {
  InstanceFamily fam;
  fam.id = "sparse";
  fam.description = "s^{-1/2} on the first s of n coordinates, Bernoulli(p) summands";
  for (std::size_t s : s_list) {
    const std::size_t dim = n == 0 ? s : n;
    if (s == 0 || s > dim) throw PreconditionError("sparse family needs 1 <= s <= n");
    for (double p : p_list) {
      if (!(p > 0.0 && p < 1.0)) throw PreconditionError("p must lie in (0, 1)");
      char id[64];
      std::snprintf(id, sizeof id, "s%zu_n%zu_p%.4g", s, dim, p);
      fam.instances.push_back({id, FiniteDist::bernoulli(p), WeightVector::sparse(s, dim), p, s, 0.0});
      if (dim > s) {
        const double h = eta.value_or(std::pow(static_cast<double>(s), -3.0));
        if (!(h > 0.0)) throw PreconditionError("perturbation eta must be positive");
        std::snprintf(id, sizeof id, "s%zu_n%zu_p%.4g_eta%.3g", s, dim, p, h);
        fam.instances.push_back({id, FiniteDist::bernoulli(p), WeightVector::sparse(s, dim, h), p, s, h});
      }
    }
  }
  return fam;
}

InstanceFamily gen_random_family(std::size_t count, std::uint64_t seed) {
  InstanceFamily fam;
  fam.id = "random";
  fam.description = "random unit weights (3..10 coordinates), Bernoulli(p), p in [0.15, 0.5]";
  Engine rng(seed);
  for (std::size_t i = 0; i < count; ++i) {
    const std::size_t n = 3 + static_cast<std::size_t>(uniform01(rng) * 8.0);
    std::vector<double> a(n);
    for (double& x : a) x = 0.2 + 0.8 * uniform01(rng);
    const double p = 0.15 + 0.35 * uniform01(rng);
    char id[64];
    std::snprintf(id, sizeof id, "r%llu_%zu", static_cast<unsigned long long>(seed), i);
    fam.instances.push_back({id, FiniteDist::bernoulli(p), WeightVector(std::move(a)).normalized(), p, 0, 0.0});
  }
  return fam;
}

std::vector<std::string> family_ids() { return {"sparse", "sparse_core", "perturbed", "random"}; }

InstanceFamily make_family(const std::string& id, std::uint64_t seed) {
  std::vector<double> p_grid;
  for (int i = 1; i <= 10; ++i) p_grid.push_back(0.05 * i);
  InstanceFamily fam;
  if (id == "sparse") {
    const std::vector<std::size_t> s{4, 8, 16, 32, 64, 128, 256};
    fam = gen_sparse_family(s, 0, p_grid);
  } else if (id == "sparse_core") {
    const std::vector<std::size_t> s{4, 16, 64, 256};
    fam = gen_sparse_family(s, 0, p_grid);
  } else if (id == "perturbed") {
    const std::vector<double> p{0.2, 0.35, 0.5};
    for (std::size_t s : {4, 8, 16}) {
      const std::vector<std::size_t> one{s};
      auto part = gen_sparse_family(one, s + 4, p);
      fam.instances.insert(fam.instances.end(), part.instances.begin(), part.instances.end());
    }
    fam.description = "sparse vectors with and without a tail of 4 coordinates equal to s^-3";
  } else if (id == "random") {
    fam = gen_random_family(200, seed);
  } else {
    throw PreconditionError("unknown family '" + id + "'");
  }
  fam.id = id;
  return fam;
}

// ---------------------------------------------------------------------------
// Calibration

const char* to_string(CalibratedBound b) noexcept {
  switch (b) {
    case CalibratedBound::optimal: return "optimal";
    case CalibratedBound::bernoulli_min: return "bernoulli_min";
    case CalibratedBound::kolmogorov_rogozin: return "kolmogorov_rogozin";
    case CalibratedBound::esseen: return "esseen";
    case CalibratedBound::no_arithmetic: return "no_arithmetic";
  }
  return "unknown";
}

CalibratedBound parse_calibrated_bound(const std::string& name) {
  for (auto b : {CalibratedBound::optimal, CalibratedBound::bernoulli_min, CalibratedBound::kolmogorov_rogozin,
                 CalibratedBound::esseen, CalibratedBound::no_arithmetic}) {
    if (name == to_string(b)) return b;
  }
  throw PreconditionError("unknown calibrated bound '" + name + "'");
}

double calibration_fixture(CalibratedBound b) {
  switch (b) {
    case CalibratedBound::optimal: return kFixtureOptimal;
    case CalibratedBound::bernoulli_min: return kFixtureBernoulliMin;
    case CalibratedBound::kolmogorov_rogozin: return kFixtureKr;
    case CalibratedBound::esseen: return kFixtureEsseen;
    case CalibratedBound::no_arithmetic: return kFixtureNoArithmetic;
  }
  return 0.0;
}

CalibrationReport calibrate_upper(CalibratedBound bound, const InstanceFamily& family, double L,
                                  std::size_t eps_points) {
  if (!(L > 0.0)) throw PreconditionError("L must be positive");
  if (eps_points == 0) throw PreconditionError("eps_points must be positive");
  std::vector<std::vector<CalibrationRow>> parts(family.instances.size());
  parallel_for(parts.size(),
               [&](std::size_t i) { parts[i] = calibrate_instance(bound, family.instances[i], L, eps_points); });

  CalibrationReport rep;
  rep.bound = to_string(bound);
  rep.family = family.id;
  rep.L = L;
  rep.fixture = calibration_fixture(bound);
  rep.ratio_inf = std::numeric_limits<double>::infinity();
  for (auto& part : parts) {
    for (auto& row : part) {
      if (row.included) {
        ++rep.included;
        rep.ratio_sup = std::max(rep.ratio_sup, row.ratio);
        rep.ratio_inf = std::min(rep.ratio_inf, row.ratio);
      } else {
        ++rep.excluded;
      }
      rep.rows.push_back(std::move(row));
    }
  }
  if (rep.included == 0) rep.ratio_inf = 0.0;
  rep.pass = rep.included > 0 && std::isfinite(rep.ratio_sup) && rep.ratio_sup <= rep.fixture;
  return rep;
}

// ---------------------------------------------------------------------------
// Binomial lower bound

LowerBoundReport check_lower_binomial(std::span<const std::size_t> s_list, std::span<const double> p_list,
                                      std::size_t eps_points) {
  LowerBoundReport rep;
  rep.c_low = kLowerBoundConstant;
  rep.ratio_inf = std::numeric_limits<double>::infinity();
  bool chain_ok = true;
  for (std::size_t s : s_list) {
    const WeightVector a = WeightVector::sparse(s, s);
    const double inv_root_s = 1.0 / std::sqrt(static_cast<double>(s));
    for (double p : p_list) {
      const FiniteDist fa = weighted_sum_dist(FiniteDist::bernoulli(p), a);
      const double sd = std::sqrt(p * (1.0 - p));
      const double mean = fa.mean();

      for (double eps : window_grid(sd, eps_points)) {
        LowerBoundRow row{s, p, eps, q_exact(fa, eps).value, 0.0, 0.0};
        row.min_form = std::min((eps + inv_root_s) / sd, 1.0);
        row.ratio = row.q / row.min_form;
        rep.ratio_inf = std::min(rep.ratio_inf, row.ratio);
        rep.rows.push_back(row);
      }

      LowerBoundChain c;
      c.s = s;
      c.p = p;
      // Strict inequality; points at the boundary up to rounding count as outside.
      const double radius = 2.0 * sd * (1.0 - 1e-12);
      long double inside = 0.0L;
      for (std::size_t i = 0; i < fa.size(); ++i) {
        if (std::abs(fa.atoms()[i] - mean) < radius) inside += fa.masses()[i];
      }
      c.chebyshev_mass = static_cast<double>(inside);
      c.chebyshev_ok = c.chebyshev_mass >= 0.75;

      const double wide = 4.0 * sd;
      const double q_wide = q_exact(fa, wide).value;
      c.wide_window_ok = q_wide >= 0.75;
      c.linear_ok = true;
      for (double eps : window_grid(sd, eps_points)) {
        if (eps == 0.0) continue;
        const RegularityReport reg = q_regularity_check(fa, eps, wide);
        c.wide_window_ok = c.wide_window_ok && reg.holds;
        c.linear_ok = c.linear_ok && reg.q_lambda >= 3.0 / 32.0 * eps / sd;
      }
      const double q0 = q_exact(fa, 0.0).value;
      if (static_cast<double>(s) * p * (1.0 - p) > 1.0) {
        const double q_step = q_exact(fa, inv_root_s).value;
        c.atom_ok = q0 >= 0.5 * q_step && q_step >= 3.0 / 32.0 * inv_root_s / sd &&
                    q0 >= 3.0 / 64.0 / std::sqrt(static_cast<double>(s) * p * (1.0 - p));
      } else {
        c.atom_ok = q0 >= 3.0 / 20.0;
      }
      chain_ok = chain_ok && c.all_ok();
      rep.chain.push_back(c);
    }
  }
  if (rep.rows.empty()) rep.ratio_inf = 0.0;
  rep.pass = !rep.rows.empty() && chain_ok && rep.ratio_inf >= rep.c_low;
  return rep;
}

// ---------------------------------------------------------------------------
// Studies

ScalingReport study_tau0_scaling(std::span<const double> alpha_list, std::span<const double> L_grid,
                                 std::uint64_t seed, std::size_t samples) {
  if (L_grid.size() < 3) throw PreconditionError("scaling study needs at least three L values");
  const auto [lo, hi] = std::minmax_element(L_grid.begin(), L_grid.end());
  if (*hi < 100.0 * *lo) throw PreconditionError("L grid must span at least two decades");
  ScalingReport rep;
  rep.samples = samples;
  rep.seed = seed;
  rep.rows.resize(alpha_list.size());
  parallel_for(alpha_list.size(), [&](std::size_t i) {
    const double alpha = alpha_list[i];
    if (!(alpha > 0.0 && alpha <= 2.0)) throw PreconditionError("alpha must lie in (0, 2]");
    SpreadOptions opts;
    opts.samples = samples;
    opts.seed = seed;
    const SpreadModel model = SpreadModel::of(symmetrize(AnalyticDist::stable(alpha, 1.0)), opts);
    ScalingRow& row = rep.rows[i];
    row.alpha = alpha;
    row.expected = 2.0 / alpha;
    std::vector<double> x, y;
    for (double L : L_grid) {
      const RootSolution r = solve_tau0(model, L);
      row.L.push_back(L);
      row.tau0.push_back(r.tau0);
      x.push_back(std::log(L));
      y.push_back(std::log(r.tau0));
    }
    const double n = static_cast<double>(x.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t k = 0; k < x.size(); ++k) {
      mx += x[k];
      my += y[k];
    }
    mx /= n;
    my /= n;
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t k = 0; k < x.size(); ++k) {
      sxx += (x[k] - mx) * (x[k] - mx);
      sxy += (x[k] - mx) * (y[k] - my);
    }
    row.slope = sxy / sxx;
    double ssr = 0.0;
    for (std::size_t k = 0; k < x.size(); ++k) {
      const double e = y[k] - my - row.slope * (x[k] - mx);
      ssr += e * e;
    }
    const double se = std::sqrt(ssr / (n - 2.0) / sxx);
    row.half_width = t_quantile_975(x.size() - 2) * se;
    row.inconclusive = row.half_width > 0.1 * row.expected;
  });
  return rep;
}

GaussianWindowReport study_gaussian_window(std::span<const double> sigma_list, const WeightVector& a, double dstar,
                                           double L, std::size_t eps_points) {
  if (!(dstar > 1.0)) throw PreconditionError("D* must exceed 1 for a nonempty window range");
  if (eps_points < 2) throw PreconditionError("eps_points must be at least 2");
  GaussianWindowReport rep;
  rep.dstar = dstar;
  rep.L = L;
  rep.shape_scaled_min = std::numeric_limits<double>::infinity();
  for (double sigma : sigma_list) {
    if (!(sigma > 0.0)) throw PreconditionError("sigma must be positive");
    const SpreadModel model = SpreadModel::of(symmetrize(AnalyticDist::gaussian(sigma)));
    const RootSolution root = solve_tau0(model, L, 1e-6);
    const double lo = sigma / dstar;
    for (std::size_t i = 0; i < eps_points; ++i) {
      const double eps = lo * std::pow(sigma / lo, static_cast<double>(i) / static_cast<double>(eps_points - 1));
      GaussianWindowRow row;
      row.sigma = sigma;
      row.eps = eps;
      row.q = q_closed_form_gaussian(sigma * a.norm(), eps).value;
      row.q_scaled = row.q * sigma / eps;
      row.shape = shape_optimal(model, a.norm(), L, eps, dstar, root).value;
      row.shape_scaled = row.shape * sigma / eps;
      row.ratio = row.q / row.shape;
      rep.q_scaled_max = std::max(rep.q_scaled_max, row.q_scaled);
      rep.shape_scaled_min = std::min(rep.shape_scaled_min, row.shape_scaled);
      rep.shape_scaled_max = std::max(rep.shape_scaled_max, row.shape_scaled);
      rep.ratio_max = std::max(rep.ratio_max, row.ratio);
      rep.rows.push_back(row);
    }
  }
  return rep;
}

std::vector<SpreadRelationRow> gaussian_spread_relation(double sigma, double lo, double hi, std::size_t points) {
  if (!(sigma > 0.0 && lo > 0.0 && hi > lo) || points < 2) {
    throw PreconditionError("need sigma > 0, 0 < lo < hi and at least two points");
  }
  const SpreadModel model = SpreadModel::of(symmetrize(AnalyticDist::gaussian(sigma)));
  std::vector<SpreadRelationRow> rows;
  for (std::size_t i = 0; i < points; ++i) {
    const double r = lo * std::pow(hi / lo, static_cast<double>(i) / static_cast<double>(points - 1));
    const double m = model.m(r * sigma);
    rows.push_back({r, m, 1.0 / std::sqrt(m) / (1.0 + r)});
  }
  return rows;
}

ImprovementReport improvement_report(const InstanceFamily& family, double L) {
  ImprovementReport rep;
  rep.L = L;
  for (const Instance& inst : family.instances) {
    const double m1 = m_functional(symmetrize(inst.law), 1.0);
    if (m1 == 0.0) continue;
    ImprovementRow row;
    row.instance = inst.id;
    row.m1 = m1;
    row.L = L;
    const WeightVector unit = inst.a.normalized();
    row.D = lcd(unit, L, LcdVariant::D_star, kLcdTol).value;
    row.lcd_shape = shape_lcd_unit(row.D, m1).value;
    row.vershynin_shape = shape_vershynin(L, row.D).value;
    row.ratio = row.lcd_shape / row.vershynin_shape;
    row.hypothesis = L * L * m1 >= 1.0 && check_unit_lattice_condition(unit, L, row.D).holds;
    rep.rows.push_back(row);
  }
  return rep;
}

// ---------------------------------------------------------------------------
// CSV

std::string to_csv(const CalibrationReport& r) {
  std::ostringstream out;
  out << "bound,family,L,instance,eps,q,shape,ratio,included,branch,condition\n";
  for (const auto& row : r.rows) {
    out << r.bound << ',' << r.family << ',' << fmt(r.L) << ',' << csv_field(row.instance) << ',' << fmt(row.eps)
        << ',' << fmt(row.q) << ',' << fmt(row.shape) << ',' << fmt(row.ratio) << ','
        << (row.included ? "true" : "false") << ',' << row.branch << ',' << csv_field(row.condition) << '\n';
  }
  return out.str();
}

std::string to_long_csv(const CalibrationReport& r) {
  std::ostringstream out;
  out << "family,instance,eps,q,shape,ratio\n";
  for (const auto& row : r.rows) {
    if (!row.included) continue;
    out << r.family << ',' << csv_field(row.instance) << ',' << fmt(row.eps) << ',' << fmt(row.q) << ','
        << fmt(row.shape) << ',' << fmt(row.ratio) << '\n';
  }
  return out.str();
}

std::string to_csv(const LowerBoundReport& r) {
  std::ostringstream out;
  out << "s,p,eps,q,min_form,ratio\n";
  for (const auto& row : r.rows) {
    out << row.s << ',' << fmt(row.p) << ',' << fmt(row.eps) << ',' << fmt(row.q) << ',' << fmt(row.min_form) << ','
        << fmt(row.ratio) << '\n';
  }
  return out.str();
}

std::string to_csv(const ImprovementReport& r) {
  std::ostringstream out;
  out << "instance,M1,L,D,lcd_shape,vershynin_shape,ratio,hypothesis\n";
  for (const auto& row : r.rows) {
    out << csv_field(row.instance) << ',' << fmt(row.m1) << ',' << fmt(row.L) << ',' << fmt(row.D) << ','
        << fmt(row.lcd_shape) << ',' << fmt(row.vershynin_shape) << ',' << fmt(row.ratio) << ','
        << (row.hypothesis ? "true" : "false") << '\n';
  }
  return out.str();
}

}  // namespace lofo
