// Acceptance checks. `acceptance` runs every criterion, `acceptance 3 7` runs
// a subset. One line per criterion; the exit status is nonzero if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "lofo/bounds.hpp"
#include "lofo/characteristic.hpp"
#include "lofo/concentration.hpp"
#include "lofo/harness.hpp"
#include "lofo/lattice.hpp"
#include "lofo/spread.hpp"
#include "oracles.hpp"

using namespace lofo;

namespace {

// Frozen fixtures. Each is the observed extreme over the reference run,
// rounded outward to two digits.
constexpr double kSparseLcdLow = 0.73;     // D*(a_s)/sqrt(s), s = 4..256, L = 2: min 0.73963
constexpr double kSparseLcdHigh = 0.86;    //                                      max 0.85715
constexpr double kEsseenRatioLow = 0.42;   // Q / Esseen integral, seeds 11, 22, 33: min 0.42877
constexpr double kEsseenRatioHigh = 1.26;  //                                        max 1.25522
constexpr double kSpreadRelLow = 0.54;     // 1/sqrt(M(tau)) / (1 + tau/sigma): min 0.54202
constexpr double kSpreadRelHigh = 1.0;     //                                    max 0.99197
constexpr double kWindowShapeLow = 0.74;   // two-regime shape * sigma / eps: min 0.74540
constexpr double kWindowShapeHigh = 1.25;  //                                 max 1.24830

struct Outcome {
  bool pass = false;
  std::string detail;
};

struct Criterion {
  int id;
  const char* name;
  double limit_s;
  std::function<Outcome()> run;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

std::vector<double> p_grid() {
  std::vector<double> p;
  for (int i = 1; i <= 10; ++i) p.push_back(0.05 * i);
  return p;
}

std::vector<double> log_grid(double lo, double hi, std::size_t n) {
  std::vector<double> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = lo * std::pow(hi / lo, double(i) / double(n - 1));
  return v;
}

Outcome bernoulli_spread() {
  double worst = 0.0;
  std::size_t points = 0;
  for (double p : p_grid()) {
    const FiniteDist g = symmetrize(FiniteDist::bernoulli(p));
    const double pq2 = 2.0 * p * (1.0 - p);
    for (int i = 1; i <= 100; ++i) {
      const double tau = 0.1 * i;
      const double expect = tau < 1.0 ? pq2 : pq2 / (tau * tau);
      worst = std::max(worst, std::abs(m_functional(g, tau) - expect));
      ++points;
    }
  }
  return {worst <= 1e-12, fmt("%zu points, max abs error %.3g (tol 1e-12)", points, worst)};
}

Outcome tau0_closed_form() {
  double worst = 0.0;
  std::size_t points = 0;
  for (double p : p_grid()) {
    const SpreadModel model = SpreadModel::of(symmetrize(FiniteDist::bernoulli(p)));
    const double pq2 = 2.0 * p * (1.0 - p);
    for (double L : {1.5, 2.0, 3.0, 5.0, 10.0, 20.0, 50.0, 100.0}) {
      if (!(L * L > 1.0 / pq2)) continue;
      const double expect = L * std::sqrt(pq2);
      worst = std::max(worst, std::abs(solve_tau0(model, L).tau0 - expect) / expect);
      ++points;
    }
  }
  return {worst <= 1e-9 && points > 0, fmt("%zu (p, L) pairs, max rel error %.3g (tol 1e-9)", points, worst)};
}

Outcome lcd_certification() {
  const LcdResult r = lcd(WeightVector({1.0}), 1.0, LcdVariant::D_star, 1e-6);
  const double err = std::abs(r.value - 6.0 / 7.0);
  // Dense scan: first t on a 1e-7 grid with |t - round(t)| < t/6.
  double scan = -1.0;
  for (long k = 5'000'000; k <= 10'000'000; ++k) {
    const double t = 1e-7 * double(k);
    if (std::abs(t - std::round(t)) < t / 6.0) {
      scan = t;
      break;
    }
  }
  const double scan_err = std::abs(scan - r.value);
  double worst_scale = 0.0;
  for (const std::vector<double>& c : {std::vector<double>{1.0}, std::vector<double>{0.3, 0.9, 0.45, 0.2},
                                       std::vector<double>{0.5, 0.5, 0.5, 0.5}}) {
    const WeightVector a(c);
    const double base = lcd(a, 1.0, LcdVariant::D_star, 1e-10).value;
    for (double lambda : {0.5, 2.0, 10.0}) {
      const double v = lcd(a.scaled(lambda), 1.0, LcdVariant::D_star, 1e-10).value;
      worst_scale = std::max(worst_scale, std::abs(v * lambda - base) / base);
    }
  }
  const bool ok = err <= 1e-6 && scan_err <= 1e-6 && worst_scale <= 1e-6;
  return {ok, fmt("D* = %.9f (|D* - 6/7| = %.2g), scan %.7f, scaling rel error %.2g", r.value, err, scan, worst_scale)};
}

Outcome sparse_lcd() {
  double lo = 1e300, hi = 0.0;
  for (std::size_t s : {4u, 16u, 64u, 256u}) {
    const double v = lcd(WeightVector::sparse(s, s), 2.0, LcdVariant::D_star, 1e-6).value / std::sqrt(double(s));
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  const double ext = lcd(WeightVector::sparse(1024, 1024), 2.0, LcdVariant::D_star, 1e-6).value / std::sqrt(1024.0);
  const bool ok = lo >= kSparseLcdLow && hi <= kSparseLcdHigh && ext >= 0.9 * kSparseLcdLow && ext <= 1.1 * kSparseLcdHigh;
  return {ok, fmt("ratio in [%.5f, %.5f] vs [%.2f, %.2f]; s = 1024: %.5f vs [%.3f, %.3f]", lo, hi, kSparseLcdLow,
                  kSparseLcdHigh, ext, 0.9 * kSparseLcdLow, 1.1 * kSparseLcdHigh)};
}

Outcome q_oracles() {
  Engine rng(505);
  std::size_t compared = 0, mismatches = 0;
  std::vector<FiniteDist> laws;
  for (int i = 0; i < 100; ++i) {
    laws.push_back(oracle::random_law(rng, 20));
    const FiniteDist& f = laws.back();
    const double span = f.atoms().back() - f.atoms().front();
    for (double frac : {0.02, 0.1, 0.3}) {
      const double lambda = frac * span;
      const double scan = oracle::q_grid_scan(f, lambda, 1e-4 * span);
      ++compared;
      if (std::abs(scan - q_exact(f, lambda).value) > 1e-12) ++mismatches;
    }
  }
  const WeightVector a({1.0, 0.5, 0.25});
  std::size_t covered = 0;
  for (std::uint64_t rep = 0; rep < 200; ++rep) {
    const FiniteDist& f = laws[rep % 100];
    const double span = f.atoms().back() - f.atoms().front();
    const double lambda = 0.1 * span;
    const double exact = q_exact(weighted_sum_dist(f, a), lambda).value;
    const QEstimate mc = q_monte_carlo(f, a, lambda, 100'000, 9000 + rep);
    if (std::abs(mc.value - exact) <= mc.error_radius) ++covered;
  }
  return {mismatches == 0 && covered >= 198,
          fmt("grid scan: %zu/%zu windows equal; Monte Carlo N = 1e5 covers %zu/200 (need 198)", compared - mismatches,
              compared, covered)};
}

std::pair<double, double> esseen_bracket(std::initializer_list<std::uint64_t> seeds) {
  double lo = 1e300, hi = 0.0;
  for (std::uint64_t seed : seeds) {
    Engine rng(seed);
    for (int i = 0; i < 50; ++i) {
      const FiniteDist g = symmetrize(oracle::random_law(rng, 5));
      for (double lambda : {0.1, 1.0, 10.0}) {
        const double r = q_exact(g, lambda).value / esseen_integral(g, WeightVector({1.0}), lambda);
        lo = std::min(lo, r);
        hi = std::max(hi, r);
      }
    }
  }
  return {lo, hi};
}

Outcome esseen_relation() {
  const auto [lo_a, hi_a] = esseen_bracket({11, 22, 33});
  const auto [lo_b, hi_b] = esseen_bracket({44, 55, 66});
  const bool ok = lo_a >= kEsseenRatioLow && hi_a <= kEsseenRatioHigh && lo_b >= 0.9 * kEsseenRatioLow &&
                  hi_b <= 1.1 * kEsseenRatioHigh;
  return {ok, fmt("seeds A [%.5f, %.5f] vs [%.2f, %.2f]; seeds B [%.5f, %.5f] vs [%.3f, %.3f]", lo_a, hi_a,
                  kEsseenRatioLow, kEsseenRatioHigh, lo_b, hi_b, 0.9 * kEsseenRatioLow, 1.1 * kEsseenRatioHigh)};
}

Outcome gadgets() {
  Engine rng(707);
  std::vector<double> t;
  for (int i = 0; i <= 2000; ++i) t.push_back(-25.0 + 0.025 * i);
  std::vector<double> tpos;
  for (int i = 0; i <= 2000; ++i) tpos.push_back(0.025 * i);
  std::size_t cf = 0, h = 0, beta = 0, probes = 0;
  for (int i = 0; i < 100; ++i) {
    const FiniteDist f = oracle::random_law(rng, 2 + i % 7);
    const GadgetReport r = gadget_cf_bound(f, t);
    cf += r.violations;
    probes += r.points;

    std::vector<double> c(2 + i % 9);
    for (double& x : c) x = 2.0 * uniform01(rng) - 1.0;
    const WeightVector a = WeightVector(c).normalized();
    const HChecks hc = gadget_h_checks(a, 0.5 + 3.0 * uniform01(rng), 0.5 + 3.0 * uniform01(rng),
                                       0.1 + 4.0 * uniform01(rng), tpos);
    h += hc.rescaling.violations + hc.power.violations + hc.lattice.violations + hc.near_origin.violations;
    probes += hc.rescaling.points + hc.power.points + hc.lattice.points + hc.near_origin.points;

    const MixtureDecomposition m = mixture_decompose(symmetrize(oracle::random_law(rng, 2 + i % 6)));
    if (!(m.certified && m.beta >= m.m1 / 2.0)) ++beta;
    ++probes;
  }
  return {cf + h + beta == 0,
          fmt("%zu probes; violations: cf bound %zu, H identities/inequalities %zu, beta %zu", probes, cf, h, beta)};
}

// Sup of Q/shape over instances with s <= s_max.
double sup_up_to(const CalibrationReport& r, const InstanceFamily& fam, std::size_t s_max) {
  double sup = 0.0;
  for (const auto& row : r.rows) {
    if (!row.included) continue;
    for (const auto& inst : fam.instances) {
      if (inst.id == row.instance && inst.s <= s_max) sup = std::max(sup, row.ratio);
    }
  }
  return sup;
}

Outcome optimal_calibration() {
  const InstanceFamily fam = make_family("sparse", 1);
  const InstanceFamily fam2 = make_family("sparse", 2);
  const CalibrationReport r = calibrate_upper(CalibratedBound::optimal, fam, 2.0, 40);
  const CalibrationReport r2 = calibrate_upper(CalibratedBound::optimal, fam2, 2.0, 40);
  const bool same = to_csv(r) == to_csv(r2) && r.ratio_sup == r2.ratio_sup;
  double worst_growth = 0.0;
  std::string steps;
  double prev = 0.0;
  for (std::size_t s = 4; s <= 256; s *= 2) {
    const double cur = sup_up_to(r, fam, s);
    if (prev > 0.0) worst_growth = std::max(worst_growth, cur / prev - 1.0);
    steps += fmt("%s%.4f", steps.empty() ? "" : " ", cur);
    prev = cur;
  }
  const double ext = sup_up_to(r, fam, 256) / sup_up_to(r, fam, 64) - 1.0;
  const bool ok = std::isfinite(r.ratio_sup) && r.ratio_sup > 0.0 && r.included > 0 && worst_growth < 0.10 &&
                  ext < 0.10 && same && r.ratio_sup <= calibration_fixture(CalibratedBound::optimal);
  return {ok, fmt("sup %.5f over %zu windows (%zu excluded); sup by s <= 4..256: %s; max growth per doubling %.1f%%, "
                  "64 -> 256 %.1f%%; rerun identical: %s",
                  r.ratio_sup, r.included, r.excluded, steps.c_str(), 100.0 * worst_growth, 100.0 * ext,
                  same ? "yes" : "no")};
}

Outcome lower_bound() {
  const std::vector<std::size_t> s{4, 8, 16, 32, 64, 128, 256};
  const LowerBoundReport r = check_lower_binomial(s, p_grid(), 40);
  std::size_t chain_fail = 0;
  double min_cheb = 1.0;
  for (const auto& c : r.chain) {
    if (!c.all_ok()) ++chain_fail;
    min_cheb = std::min(min_cheb, c.chebyshev_mass);
  }
  return {r.pass && chain_fail == 0 && r.ratio_inf >= r.c_low,
          fmt("inf Q/min-form %.5f >= c_low %.2f over %zu rows; chain failures %zu/%zu; min two-sd mass %.5f", r.ratio_inf,
              r.c_low, r.rows.size(), chain_fail, r.chain.size(), min_cheb)};
}

Outcome stable_scaling() {
  const std::vector<double> alpha{1.0, 0.5};
  const ScalingReport r = study_tau0_scaling(alpha, log_grid(2.0, 200.0, 13), 20130101, 1'000'000);
  const double d1 = std::abs(r.rows[0].slope - 2.0);
  const double d2 = std::abs(r.rows[1].slope - 4.0);
  return {d1 <= 0.1 && d2 <= 0.2,
          fmt("alpha 1: slope %.4f (+-%.3f), alpha 0.5: slope %.4f (+-%.3f)", r.rows[0].slope, r.rows[0].half_width,
              r.rows[1].slope, r.rows[1].half_width)};
}

Outcome gaussian_relation() {
  const auto rows = gaussian_spread_relation(1.0, 0.01, 100.0, 401);
  double lo = 1e300, hi = 0.0;
  for (const auto& row : rows) {
    lo = std::min(lo, row.ratio);
    hi = std::max(hi, row.ratio);
  }
  const WeightVector a = WeightVector::sparse(16, 16);
  const double dstar = lcd(a, 2.0, LcdVariant::D_star, 1e-9).value;
  const std::vector<double> sigma{0.5, 1.0, 2.0};
  const GaussianWindowReport w = study_gaussian_window(sigma, a, dstar, 2.0, 25);
  const double density = 1.0 / (a.norm() * std::sqrt(2.0 * std::numbers::pi));
  const bool ok = lo >= kSpreadRelLow && hi <= kSpreadRelHigh && w.q_scaled_max <= density &&
                  w.shape_scaled_min >= kWindowShapeLow && w.shape_scaled_max <= kWindowShapeHigh;
  return {ok, fmt("relation in [%.5f, %.5f] vs [%.2f, %.2f]; Q sigma/eps max %.5f <= %.5f; shape sigma/eps in "
                  "[%.4f, %.4f] vs [%.2f, %.2f]",
                  lo, hi, kSpreadRelLow, kSpreadRelHigh, w.q_scaled_max, density, w.shape_scaled_min,
                  w.shape_scaled_max, kWindowShapeLow, kWindowShapeHigh)};
}

Outcome improvement() {
  std::size_t rows = 0, held = 0, bad = 0;
  for (const char* id : {"sparse_core", "random"}) {
    const InstanceFamily fam = make_family(id, 1);
    for (double L : {2.0, 4.0, 10.0}) {
      for (const auto& row : improvement_report(fam, L).rows) {
        ++rows;
        if (!row.hypothesis) continue;
        ++held;
        const double expect = 1.0 / (L * std::sqrt(row.m1));
        const bool strict = L > 1.0 / std::sqrt(row.m1);
        if (std::abs(row.ratio - expect) > 1e-12 * expect || row.ratio > 1.0 || (strict && !(row.ratio < 1.0))) ++bad;
      }
    }
  }
  // Boundary: L = 1/sqrt(M(1)) gives ratio 1.
  InstanceFamily one;
  one.instances.push_back({"b", FiniteDist::bernoulli(0.5), WeightVector::sparse(4, 4), 0.5, 4, 0.0});
  const double edge = improvement_report(one, 1.0 / std::sqrt(0.5)).rows[0].ratio;
  return {bad == 0 && held > 0 && std::abs(edge - 1.0) <= 1e-12,
          fmt("%zu rows, %zu meet the hypothesis, %zu violations; ratio at L = 1/sqrt(M(1)): %.15f", rows, held, bad,
              edge)};
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> all{
      {1, "Bernoulli spread closed form", 1.0, bernoulli_spread},
      {2, "tau0 closed form", 1.0, tau0_closed_form},
      {3, "LCD certification and scaling", 5.0, lcd_certification},
      {4, "sparse LCD order", 60.0, sparse_lcd},
      {5, "exact Q against oracles", 120.0, q_oracles},
      {6, "Esseen two-sided relation", 120.0, esseen_relation},
      {7, "proof gadgets", 60.0, gadgets},
      {8, "two-regime bound calibration", 300.0, optimal_calibration},
      {9, "binomial lower bound", 60.0, lower_bound},
      {10, "stable tau0 scaling", 600.0, stable_scaling},
      {11, "Gaussian relation and window", 30.0, gaussian_relation},
      {12, "improvement over L/D", 1.0, improvement},
  };
  std::vector<int> wanted;
  for (int i = 1; i < argc; ++i) wanted.push_back(std::atoi(argv[i]));
  int failed = 0;
  for (const auto& c : all) {
    if (!wanted.empty() && std::find(wanted.begin(), wanted.end(), c.id) == wanted.end()) continue;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool in_time = secs < c.limit_s;
    const bool pass = o.pass && in_time;
    if (!pass) ++failed;
    std::printf("[%s] %2d %s: %s; %.2f s (limit %.0f s)\n", pass ? "PASS" : "FAIL", c.id, c.name, o.detail.c_str(), secs,
                c.limit_s);
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
