#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "lofo/bounds.hpp"
#include "lofo/concentration.hpp"
#include "lofo/errors.hpp"
#include "lofo/harness.hpp"
#include "lofo/io.hpp"
#include "lofo/lattice.hpp"
#include "lofo/spread.hpp"

namespace py = pybind11;
using namespace lofo;

namespace {

// Reports cross the boundary as canonical JSON text; the Python side parses it.
template <class T>
std::string dump(const T& r) {
  return canonical_dump(to_json(r));
}

WeightVector weights(const std::vector<double>& a) { return WeightVector(a); }

SpreadModel spread_model(const FiniteDist& law) { return SpreadModel::of(symmetrize(law)); }

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Concentration functions, least common denominators and Littlewood-Offord bounds";

  py::register_exception<PreconditionError>(m, "PreconditionError", PyExc_ValueError);
  py::register_exception<CapacityError>(m, "CapacityError", PyExc_MemoryError);
  py::register_exception<QuadratureError>(m, "QuadratureError", PyExc_ArithmeticError);

  py::class_<FiniteDist>(m, "FiniteDist")
      .def(py::init<std::vector<double>, std::vector<double>>(), py::arg("atoms"), py::arg("masses"))
      .def_static("bernoulli", &FiniteDist::bernoulli, py::arg("p"))
      .def_static("point_mass", &FiniteDist::point_mass, py::arg("x"))
      .def_static("uniform", &FiniteDist::uniform, py::arg("points"))
      .def_property_readonly("atoms", [](const FiniteDist& f) { return std::vector<double>(f.atoms().begin(), f.atoms().end()); })
      .def_property_readonly("masses", [](const FiniteDist& f) { return std::vector<double>(f.masses().begin(), f.masses().end()); })
      .def("mass_at", &FiniteDist::mass_at)
      .def("mean", &FiniteDist::mean)
      .def("variance", &FiniteDist::variance)
      .def("is_symmetric", &FiniteDist::is_symmetric, py::arg("tol") = 1e-12)
      .def("__len__", &FiniteDist::size)
      .def("__eq__", [](const FiniteDist& a, const FiniteDist& b) { return a == b; })
      .def("__repr__", [](const FiniteDist& f) { return "<FiniteDist with " + std::to_string(f.size()) + " atoms>"; });

  m.def("symmetrize", py::overload_cast<const FiniteDist&>(&symmetrize), py::arg("law"),
        "Law of X1 - X2 for independent copies of X.");
  m.def(
      "weighted_sum", [](const FiniteDist& law, const std::vector<double>& a, std::size_t budget) {
        return weighted_sum_dist(law, weights(a), budget);
      },
      py::arg("law"), py::arg("a"), py::arg("budget") = kDefaultSupportBudget);

  m.def(
      "q_exact", [](const FiniteDist& law, double lambda) { return q_exact(law, lambda).value; }, py::arg("law"),
      py::arg("lam"), "Largest mass of a closed window of length lam.");
  m.def(
      "q_sum", [](const FiniteDist& law, const std::vector<double>& a, double lambda) {
        return q_exact(weighted_sum_dist(law, weights(a)), lambda).value;
      },
      py::arg("law"), py::arg("a"), py::arg("lam"));
  m.def(
      "q_monte_carlo",
      [](const FiniteDist& law, const std::vector<double>& a, double lambda, std::size_t samples, std::uint64_t seed) {
        const QEstimate q = q_monte_carlo(law, weights(a), lambda, samples, seed);
        return py::make_tuple(q.value, q.error_radius);
      },
      py::arg("law"), py::arg("a"), py::arg("lam"), py::arg("samples") = 100'000, py::arg("seed") = 1,
      "(estimate, error radius) from sampled sums.");

  m.def(
      "spread", [](const FiniteDist& law, double tau) { return m_functional(symmetrize(law), tau); }, py::arg("law"),
      py::arg("tau"), "E min(X~^2/tau^2, 1) for X~ = X1 - X2.");
  m.def(
      "atom_survival", [](const FiniteDist& law) { return atom_survival(symmetrize(law)); }, py::arg("law"));

  m.def(
      "dist_to_lattice", [](double t, const std::vector<double>& a) { return dist_to_lattice(t, weights(a)); },
      py::arg("t"), py::arg("a"));
  m.def(
      "lcd",
      [](const std::vector<double>& a, double L, const std::string& variant, double tol) {
        const LcdResult r = lcd(weights(a), L, parse_variant(variant), tol);
        return py::make_tuple(r.value, r.error_radius);
      },
      py::arg("a"), py::arg("L"), py::arg("variant") = "d_star", py::arg("tol") = 1e-9,
      "Certified (value, error radius) of the least common denominator.");

  m.def(
      "solve_tau0", [](const FiniteDist& law, double L) { return solve_tau0(spread_model(law), L).tau0; },
      py::arg("law"), py::arg("L"), "tau0 with L^2 = 1/M(tau0).");
  m.def(
      "optimal_bound",
      [](const FiniteDist& law, const std::vector<double>& a, double L, double eps, double d_star) {
        const SpreadModel model = spread_model(law);
        RootSolution root = solve_tau0(model, L);
        root.eps0 = root.tau0 / d_star;
        const BoundShape s = shape_optimal(model, weights(a).norm(), L, eps, d_star, root);
        return py::make_tuple(s.value, std::string(to_string(s.id)));
      },
      py::arg("law"), py::arg("a"), py::arg("L"), py::arg("eps"), py::arg("d_star"),
      "(value, branch) of the two-regime bound with constant 1.");

  m.def("family_ids", &family_ids);
  m.def(
      "calibrate",
      [](const std::string& bound, const std::string& family, double L, std::size_t eps_points, std::uint64_t seed) {
        py::gil_scoped_release release;
        return dump(calibrate_upper(parse_calibrated_bound(bound), make_family(family, seed), L, eps_points));
      },
      py::arg("bound"), py::arg("family"), py::arg("L") = 2.0, py::arg("eps_points") = 40, py::arg("seed") = 1);
  m.def(
      "lower_binomial",
      [](const std::vector<std::size_t>& s, const std::vector<double>& p, std::size_t eps_points) {
        py::gil_scoped_release release;
        return dump(check_lower_binomial(s, p, eps_points));
      },
      py::arg("s"), py::arg("p"), py::arg("eps_points") = 40);
}
