#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "lofo/bounds.hpp"
#include "lofo/characteristic.hpp"
#include "lofo/concentration.hpp"
#include "lofo/errors.hpp"
#include "lofo/lattice.hpp"
#include "oracles.hpp"

using namespace lofo;

namespace {

std::vector<double> linspace(double lo, double hi, std::size_t n) {
  std::vector<double> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = lo + (hi - lo) * double(i) / double(n - 1);
  return v;
}

SpreadModel bernoulli_model(double p) { return SpreadModel::of(symmetrize(FiniteDist::bernoulli(p))); }

}  // namespace

TEST_CASE("sum shapes") {
  const std::vector<double> one{2.0}, zero{0.0}, half{1.0};
  CHECK(shape_kr(2.0, one, zero).value == doctest::Approx(1.0));
  CHECK(shape_esseen(2.0, one, half).value == doctest::Approx(1.0));

  // n equal terms with Q_k = q give (n(1 - q))^{-1/2}.
  for (std::size_t n : {1u, 5u, 40u}) {
    const std::vector<double> lam(n, 0.7), q(n, 0.3);
    CHECK(shape_kr(0.7, lam, q).value == doctest::Approx(1.0 / std::sqrt(n * 0.7)).epsilon(1e-14));
    const std::vector<double> m(n, 0.25);
    CHECK(shape_esseen(0.7, lam, m).value == doctest::Approx(1.0 / std::sqrt(n * 0.25)).epsilon(1e-14));
  }

  CHECK_THROWS_AS(shape_kr(1.0, one, zero), PreconditionError);  // lambda_k > lambda
  const std::vector<double> ones{1.0, 1.0}, lam2{0.5, 0.5};
  CHECK_THROWS_AS(shape_kr(1.0, lam2, ones), PreconditionError);
  CHECK_THROWS_AS(shape_esseen(1.0, lam2, std::vector<double>{0.0, 0.0}), PreconditionError);
  CHECK_THROWS_AS(shape_kr(1.0, lam2, std::vector<double>{0.1}), PreconditionError);
}

// M(tau) >= P(|X~| > tau) termwise. A window of length tau centred at 0
// holds P(|X~| <= tau/2) <= Q(G, tau), and M(tau) >= P(|X~| > tau/2)/4, so
// M >= (1 - Q(G))/4 >= (1 - Q(F))/4 and the Esseen shape is at most twice KR.
TEST_CASE("Esseen shape is dominated by Kolmogorov-Rogozin") {
  Engine rng(31);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 2 + trial % 6;
    std::vector<FiniteDist> laws;
    std::vector<double> lam(n), q(n), m(n);
    const double lambda = 0.2 + uniform01(rng);
    for (std::size_t k = 0; k < n; ++k) {
      laws.push_back(oracle::random_law(rng, 2 + k % 4));
      lam[k] = lambda * (0.1 + 0.9 * uniform01(rng));
      const FiniteDist g = symmetrize(laws[k]);
      q[k] = q_exact(laws[k], lam[k]).value;
      m[k] = m_functional(g, lam[k]);
      // M >= 1 - Q(G) >= 1 - Q(F)
      double tail = 0.0;
      for (std::size_t j = 0; j < g.size(); ++j) tail += std::abs(g.atoms()[j]) > lam[k] ? g.masses()[j] : 0.0;
      CHECK(m[k] >= tail - 1e-12);
      CHECK(m[k] >= (1.0 - q_exact(g, lam[k]).value) / 4.0 - 1e-12);
      CHECK(1.0 - q_exact(g, lam[k]).value >= 1.0 - q[k] - 1e-12);
    }
    bool kr_defined = false;
    for (double v : q) kr_defined |= v < 1.0;
    if (!kr_defined) continue;
    CHECK(shape_esseen(lambda, lam, m).value <= 2.0 * shape_kr(lambda, lam, q).value * (1.0 + 1e-12));
  }
}

TEST_CASE("Esseen reduces to the no-arithmetic shape") {
  const FiniteDist x = FiniteDist::bernoulli(0.3);
  const FiniteDist g = symmetrize(x);
  const WeightVector a({0.5, 1.0, 0.25, 0.75});
  const double tau = 0.8;
  std::vector<double> lam, m;
  for (double ak : a.coords()) {
    lam.push_back(ak * tau);
    m.push_back(m_functional(g, tau));  // M of a_k X~ at a_k tau equals M(tau)
  }
  const double es = shape_esseen(a.norm_inf() * tau, lam, m).value;
  const double na = shape_no_arithmetic(a.norm(), a.norm_inf(), m_functional(g, tau)).value;
  CHECK(es == doctest::Approx(na).epsilon(1e-14));
  // i.i.d. equal weights: 1/sqrt(n M(tau)).
  const std::vector<double> eq(9, tau), meq(9, m_functional(g, tau));
  CHECK(shape_esseen(tau, eq, meq).value == doctest::Approx(1.0 / std::sqrt(9 * m_functional(g, tau))));
}

TEST_CASE("lattice shapes") {
  CHECK(shape_lcd_unit(1.0, 1.0).value == 1.0);
  CHECK(shape_lcd_unit(10.0, m_functional(symmetrize(FiniteDist::bernoulli(0.5)), 1.0)).value ==
        doctest::Approx(0.14142).epsilon(1e-4));
  CHECK(shape_lcd_scaled(1.0, 1.0, 1.0).value == 1.0);
  CHECK(shape_lcd_scaled(4.0, 1.0, m_functional(symmetrize(FiniteDist::bernoulli(0.5)), 0.5)).value ==
        doctest::Approx(0.35355).epsilon(1e-4));
  CHECK(shape_lcd_general(3.0, 2.0, 0.25).value == doctest::Approx(1.0 / 3.0));
  for (double c : {0.1, 3.0, 17.0}) {
    CHECK(shape_lcd_scaled(4.0 / c, 1.5 * c, 0.3).value == doctest::Approx(shape_lcd_scaled(4.0, 1.5, 0.3).value));
  }
  CHECK(shape_vershynin(2.0, 8.0).value == 0.25);
  for (double m1 : {0.1, 0.5, 1.0}) {
    for (double L : {1.0 / std::sqrt(m1), 2.0 / std::sqrt(m1)}) {
      CHECK(shape_lcd_unit(5.0, m1).value <= shape_vershynin(L, 5.0).value * (1.0 + 1e-15));
    }
  }
  CHECK_THROWS_AS(shape_lcd_unit(1.0, 0.0), PreconditionError);
  CHECK_THROWS_AS(shape_lcd_scaled(1.0, 1.0, 0.0), PreconditionError);
  CHECK_THROWS_AS(shape_lcd_unit(0.0, 0.5), PreconditionError);

  CHECK(shape_bernoulli_min(0.5, 0.1, 10.0).value == doctest::Approx(0.4));
  CHECK(shape_bernoulli_min(0.5, 2.0, 10.0).value == 1.0);

  for (ShapeId id : all_shapes()) CHECK(parse_shape(to_string(id)) == id);
  CHECK_THROWS_AS(parse_shape("nonsense"), PreconditionError);
}

TEST_CASE("tau0 for Bernoulli laws is L sqrt(2p(1-p))") {
  for (double p : {0.1, 0.3, 0.5, 0.8}) {
    const double pq2 = 2.0 * p * (1.0 - p);
    for (double L : {1.1 / std::sqrt(pq2), 2.0 / std::sqrt(pq2), 30.0}) {
      const RootSolution r = solve_tau0(bernoulli_model(p), L);
      CHECK(r.tau0 == doctest::Approx(L * std::sqrt(pq2)).epsilon(1e-12));
      CHECK(r.residual <= 1e-10);
      CHECK(r.L == L);
    }
    // At or below 1/sqrt(P) there is no root.
    CHECK_THROWS_AS(solve_tau0(bernoulli_model(p), 0.999 / std::sqrt(pq2)), PreconditionError);
    CHECK_THROWS_AS(solve_tau0(bernoulli_model(p), 0.5), PreconditionError);
  }
  CHECK(solve_tau0(bernoulli_model(0.5), 2.0).tau0 == doctest::Approx(std::numbers::sqrt2).epsilon(1e-14));
  try {
    solve_tau0(bernoulli_model(0.5), 1.0);
    FAIL("expected a precondition error");
  } catch (const PreconditionError& e) {
    CHECK(std::string(e.what()).find("L^2 <= 1/P") != std::string::npos);
  }
}

TEST_CASE("tau0 round trip on random laws") {
  Engine rng(33);
  for (int i = 0; i < 40; ++i) {
    const FiniteDist g = symmetrize(oracle::random_law(rng, 2 + i % 6));
    const SpreadModel model = SpreadModel::of(g);
    const double m1 = oracle::m_sum(g, 1.0);
    if (m1 >= atom_survival(g) * (1.0 - 1e-12)) continue;  // M flat near tau = 1: root not unique
    const RootSolution r = solve_tau0(model, 1.0 / std::sqrt(m1));
    CHECK(r.tau0 == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(std::abs(oracle::m_sum(g, r.tau0) - m1) <= 1e-10);
    const RootSolution r2 = solve_tau0(g, 3.0 / std::sqrt(atom_survival(g)));
    CHECK(std::abs(oracle::m_sum(g, r2.tau0) - atom_survival(g) / 9.0) <= 1e-10);
  }
}

TEST_CASE("tau0 for the Gaussian increases with L") {
  const SpreadModel model = SpreadModel::of(symmetrize(AnalyticDist::gaussian(1.0)));
  double prev = 0.0;
  for (double L = 1.05; L < 60.0; L *= 1.3) {
    const RootSolution r = solve_tau0(model, L);
    CHECK(r.tau0 > prev);
    prev = r.tau0;
    CHECK(std::abs(oracle::gaussian_m(std::numbers::sqrt2, r.tau0) - 1.0 / (L * L)) <= 1e-9);
  }
}

TEST_CASE("D0") {
  const SpreadModel model = bernoulli_model(0.5);
  CHECK(solve_D0(model, 2.0, 0.1) == doctest::Approx(14.1421356).epsilon(1e-8));
  CHECK(solve_D0(model, 2.0, 0.2) == doctest::Approx(solve_D0(model, 2.0, 0.1) / 2.0).epsilon(1e-14));
  Engine rng(35);
  for (int i = 0; i < 20; ++i) {
    const FiniteDist g = symmetrize(oracle::random_law(rng, 3 + i % 4));
    const SpreadModel m = SpreadModel::of(g);
    const double L = 1.5 / std::sqrt(atom_survival(g));
    const double eps = 0.01 + uniform01(rng);
    CHECK(solve_D0(m, L, eps) == doctest::Approx(solve_D0_direct(m, L, eps)).epsilon(1e-8));
  }
  const WeightVector a = WeightVector::sparse(16, 16);
  const double dstar = lcd(a, 2.0, LcdVariant::D_star, 1e-10).value;
  const RootSolution r = solve_tau0(model, 2.0);
  CHECK(solve_D0(model, 2.0, r.tau0 / dstar) == doctest::Approx(dstar).epsilon(1e-12));
  CHECK_THROWS_AS(solve_D0(model, 2.0, 0.0), PreconditionError);
}

TEST_CASE("optimal shape: branches and continuity") {
  Engine rng(37);
  for (int i = 0; i < 30; ++i) {
    const FiniteDist g = symmetrize(oracle::random_law(rng, 2 + i % 5));
    const SpreadModel model = SpreadModel::of(g);
    const double L = (1.2 + 3.0 * uniform01(rng)) / std::sqrt(atom_survival(g));
    const double norm = 0.5 + uniform01(rng);
    const double dstar = 1.0 + 10.0 * uniform01(rng);
    RootSolution root = solve_tau0(model, L);
    root.eps0 = root.tau0 / dstar;
    const double e0 = root.eps0;
    const BoundShape at = shape_optimal(model, norm, L, e0, dstar, root);
    CHECK(at.value == doctest::Approx(L / (norm * dstar)).epsilon(1e-9));
    const BoundShape below = shape_optimal(model, norm, L, std::nextafter(e0, 0.0), dstar, root);
    const BoundShape above = shape_optimal(model, norm, L, std::nextafter(e0, 1e300), dstar, root);
    CHECK(below.id == ShapeId::optimal_small_eps);
    CHECK(above.id == ShapeId::optimal_large_eps);
    CHECK(std::abs(below.value - above.value) <= 1e-12 * above.value);
    const BoundShape atom = shape_optimal(model, norm, L, 0.0, dstar, root);
    CHECK(atom.id == ShapeId::optimal_atom);
    CHECK(atom.value == doctest::Approx(1.0 / (norm * dstar * std::sqrt(atom_survival(g)))).epsilon(1e-12));
    // Monotone in eps, and the small-eps branch approaches the atom form.
    double prev = atom.value;
    for (double eps : linspace(1e-9, 3.0 * e0, 60)) {
      const double v = shape_optimal(model, norm, L, eps, dstar, root).value;
      CHECK(v >= prev * (1.0 - 1e-12));
      prev = v;
    }
  }
}

TEST_CASE("optimal shape: Bernoulli reductions") {
  for (double p : {0.2, 0.5}) {
    const SpreadModel model = bernoulli_model(p);
    const double s = std::sqrt(2.0 * p * (1.0 - p));
    const double L = 4.0;
    const double dstar = 12.0;
    RootSolution root = solve_tau0(model, L);
    root.eps0 = root.tau0 / dstar;
    for (double eps : linspace(1e-4, 2.0 * root.eps0, 200)) {
      const double v = shape_optimal(model, 1.0, L, eps, dstar, root).value;
      // Flat at 1/(D* s) up to 1/D*, then linear eps/s.
      CHECK(v == doctest::Approx(std::max(eps, 1.0 / dstar) / s).epsilon(1e-12));
      const double mf = shape_bernoulli_min(p, eps, dstar).value;
      CHECK(std::min(v, 1.0) <= std::numbers::sqrt2 * mf * (1.0 + 1e-12));
      CHECK(mf <= 2.0 * std::min(v * std::numbers::sqrt2, 1.0) + 1e-12);
    }
  }
}

TEST_CASE("optimal shape beats naive rescaling") {
  Engine rng(39);
  for (int i = 0; i < 20; ++i) {
    const FiniteDist g = symmetrize(oracle::random_law(rng, 3 + i % 4));
    const SpreadModel model = SpreadModel::of(g);
    const double L = 2.0 / std::sqrt(atom_survival(g));
    const double dstar = 2.0 + 5.0 * uniform01(rng);
    RootSolution root = solve_tau0(model, L);
    root.eps0 = root.tau0 / dstar;
    const auto grid = linspace(root.eps0 / 50.0, root.eps0, 50);
    for (std::size_t j = 0; j < grid.size(); ++j) {
      const double e1 = grid[j];
      const double s1 = shape_optimal(model, 1.0, L, e1, dstar, root).value;
      for (std::size_t k = j + 1; k < grid.size(); ++k) {
        const double e = grid[k];
        CHECK(shape_optimal(model, 1.0, L, e, dstar, root).value <= (e / e1) * s1 * (1.0 + 1e-12));
      }
    }
  }
}

TEST_CASE("characteristic function gadget") {
  const auto t = linspace(-20.0, 20.0, 4001);
  const GadgetReport b = gadget_cf_bound(FiniteDist::bernoulli(0.5), t);
  CHECK(b.holds());
  CHECK(b.points == 4001);
  const std::vector<double> zero{0.0};
  CHECK(gadget_cf_bound(FiniteDist::bernoulli(0.3), zero).holds());
  Engine rng(41);
  for (int i = 0; i < 100; ++i) CHECK(gadget_cf_bound(oracle::random_law(rng, 5), t).holds());
}

TEST_CASE("H gadget") {
  const WeightVector one({1.0});
  CHECK(gadget_h(one, std::numbers::pi, 1.0, 0.0) == 1.0);
  CHECK(gadget_h(one, std::numbers::pi, 1.0, 1.0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(dist_to_lattice(1.0, one) == 0.0);

  Engine rng(43);
  const auto t = linspace(0.0, 50.0, 5001);
  for (int i = 0; i < 10; ++i) {
    std::vector<double> c(8);
    for (double& x : c) x = 2.0 * uniform01(rng) - 1.0;
    const WeightVector a = WeightVector(c).normalized();
    const HChecks h = gadget_h_checks(a, 1.0 + uniform01(rng), 0.5 + uniform01(rng), 0.1 + 3.0 * uniform01(rng), t);
    CHECK(h.all_hold());
    CHECK(h.lattice.points == t.size());
    CHECK(h.near_origin.points > 0);
    CHECK(h.near_origin.points < t.size());
  }
  // Direct closed form against the definition.
  const WeightVector a({0.6, 0.8});
  const double v = gadget_h(a, 2.0, 3.0, 0.7);
  const double direct = std::exp(-1.5 * ((1.0 - std::cos(2.0 * 0.6 * 2.0 * 0.7)) + (1.0 - std::cos(2.0 * 0.8 * 2.0 * 0.7))));
  CHECK(v == doctest::Approx(direct).epsilon(1e-14));
}
