#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "otsuki/bounds.hpp"
#include "otsuki/geometry.hpp"
#include "otsuki/profile.hpp"
#include "otsuki/shrinker.hpp"

namespace py = pybind11;

using namespace otsuki;

namespace {

geo::RotationSpec make_spec(int p, int s) { return {p, s}; }

prof::ProfilePath integrate_for(int n, int p, int s, double tol, int nodes, int ode_steps) {
  const auto summary = geo::summarize(n, make_spec(p, s), tol, nodes);
  return prof::integrate_profile({summary.n, summary.a}, ode_steps);
}

}  // namespace

// Exceptions cross the boundary through the standard mapping: the input
// hierarchy derives from std::invalid_argument (ValueError), the numerical
// one from std::runtime_error (RuntimeError).
PYBIND11_MODULE(_core, m) {
  m.doc() = "Rotational minimal hypersurfaces in the unit sphere: period map, "
            "areas, certificates, cone entropies, and profile exports.";

  py::class_<geo::RotationSpec>(m, "RotationSpec")
      .def(py::init(&make_spec), py::arg("p"), py::arg("s"))
      .def_readonly("p", &geo::RotationSpec::p)
      .def_readonly("s", &geo::RotationSpec::s)
      .def("admissible", &geo::RotationSpec::admissible)
      .def("__repr__", [](const geo::RotationSpec& spec) {
        std::ostringstream out;
        out << "RotationSpec(p=" << spec.p << ", s=" << spec.s << ")";
        return out.str();
      });

  py::class_<geo::GeometrySummary>(m, "GeometrySummary")
      .def_readonly("n", &geo::GeometrySummary::n)
      .def_readonly("p", &geo::GeometrySummary::p)
      .def_readonly("s", &geo::GeometrySummary::s)
      .def_readonly("a", &geo::GeometrySummary::a)
      .def_readonly("T", &geo::GeometrySummary::T)
      .def_readonly("K", &geo::GeometrySummary::K)
      .def_readonly("w", &geo::GeometrySummary::w)
      .def_readonly("area", &geo::GeometrySummary::area)
      .def_readonly("entropy", &geo::GeometrySummary::entropy)
      .def_readonly("clifford_ratio", &geo::GeometrySummary::clifford_ratio)
      .def("__repr__", [](const geo::GeometrySummary& g) {
        std::ostringstream out;
        out << "GeometrySummary(n=" << g.n << ", p=" << g.p << ", s=" << g.s
            << ", a=" << g.a << ", area=" << g.area << ")";
        return out.str();
      });

  py::class_<bounds::CertificateReport>(m, "CertificateReport")
      .def_readonly("claim", &bounds::CertificateReport::claim)
      .def_readonly("passed", &bounds::CertificateReport::passed)
      .def_readonly("margin", &bounds::CertificateReport::margin)
      .def_readonly("samples", &bounds::CertificateReport::samples)
      .def_readonly("detail", &bounds::CertificateReport::detail)
      .def("__repr__", [](const bounds::CertificateReport& r) {
        std::ostringstream out;
        out << "CertificateReport(claim='" << r.claim << "', passed="
            << (r.passed ? "True" : "False") << ", margin=" << r.margin << ")";
        return out.str();
      });

  py::class_<shrink::EntropyRecord>(m, "EntropyRecord")
      .def_readonly("n", &shrink::EntropyRecord::n)
      .def_readonly("source", &shrink::EntropyRecord::source)
      .def_readonly("spec", &shrink::EntropyRecord::spec)
      .def_readonly("a", &shrink::EntropyRecord::a)
      .def_readonly("area", &shrink::EntropyRecord::area)
      .def_readonly("entropy", &shrink::EntropyRecord::entropy)
      .def("__repr__", [](const shrink::EntropyRecord& r) {
        std::ostringstream out;
        out << "EntropyRecord(source='" << r.source << "', entropy=" << r.entropy << ")";
        return out.str();
      });

  m.def("critical_parameter", &geo::critical_parameter, py::arg("n"),
        "Degenerate modulus (n-1)^(n-1)/n^n where the family meets the clifford member.");
  m.def("sphere_area", &geo::sphere_area, py::arg("m"), "Area of the unit m-sphere.");
  m.def("clifford_area", &geo::clifford_area, py::arg("n"), py::arg("k") = 1,
        "Area of the (k, n-k) product hypersurface in the unit (n+1)-sphere.");

  m.def(
      "period",
      [](int n, double a, int nodes) { return geo::period_T({n, a}, nodes); },
      py::arg("n"), py::arg("a"), py::arg("nodes") = 128,
      "Radial period of the profile flow at modulus a.");
  m.def(
      "rotation_angle",
      [](int n, double a, int nodes) { return geo::rotation_angle({n, a}, nodes); },
      py::arg("n"), py::arg("a"), py::arg("nodes") = 128,
      "Rotation angle accumulated over one period; increases from pi to sqrt(2) pi.");
  m.def(
      "area_density",
      [](int n, double a, int nodes) { return geo::area_density({n, a}, nodes); },
      py::arg("n"), py::arg("a"), py::arg("nodes") = 128,
      "w(a); the area of a closed member at this modulus is w(a) * p.");

  m.def(
      "solve_shape",
      [](int n, int p, int s, double tol, int nodes) {
        return geo::solve_shape(n, make_spec(p, s), tol, nodes);
      },
      py::arg("n"), py::arg("p"), py::arg("s"), py::arg("tol") = 1e-10,
      py::arg("nodes") = 128,
      "Modulus whose rotation angle equals 2 pi p / s, to within tol.");
  m.def(
      "summarize",
      [](int n, int p, int s, double tol, int nodes) {
        return geo::summarize(n, make_spec(p, s), tol, nodes);
      },
      py::arg("n"), py::arg("p"), py::arg("s"), py::arg("tol") = 1e-10,
      py::arg("nodes") = 128, "Full summary of the closed member with data (p, s).");
  m.def("admissible_specs", &geo::admissible_specs, py::arg("s_max"),
        "All admissible (p, s) with s <= s_max, ordered by s then p.");
  m.def("catalog", &geo::catalog, py::arg("n"), py::arg("s_max"),
        py::arg("tol") = 1e-10, py::arg("nodes") = 128,
        "Summaries of every admissible member with s <= s_max, sorted by area.");

  m.def("cone_entropy", &shrink::cone_entropy, py::arg("n"), py::arg("area"),
        "Gaussian density of the cone over a minimal hypersurface of this area.");
  m.def("gaussian_moment", &shrink::gaussian_moment, py::arg("n"),
        "Moment integral of r^n against the gaussian weight on the half-line.");
  m.def("entropy_threshold", &shrink::entropy_threshold, py::arg("n"),
        "4 (pi - 1) sigma_{n-1} sqrt(a0) / sigma_n; every catalog cone exceeds it.");
  m.def("entropy_table", &shrink::entropy_table, py::arg("n"), py::arg("s_max"),
        py::arg("tol") = 1e-10, py::arg("nodes") = 128,
        "Entropy rows: round sphere, clifford, then the catalog members.");

  m.def("default_a_grid", &bounds::default_a_grid, py::arg("n"), py::arg("points"),
        "Geometric modulus grid inside (a0 * 1e-6, a0 * (1 - 1e-6)).");
  m.def(
      "certify_theorem1",
      [](int n, int grid_points, int nodes) {
        const auto grid = bounds::default_a_grid(n, grid_points);
        return bounds::certify_theorem1(n, grid, nodes);
      },
      py::arg("n"), py::arg("grid_points") = 200, py::arg("nodes") = 128,
      "Area integral stays above (2 - 2/pi) A0 pi across the modulus grid.");
  m.def("certify_corollary2", &bounds::certify_corollary2, py::arg("n"),
        py::arg("s_max") = 10, py::arg("tol") = 1e-10, py::arg("nodes") = 128,
        "Every catalog member except (2,3) has clifford_ratio above 3 (1 - 1/pi).");
  m.def("certify_theorem3", &bounds::certify_theorem3, py::arg("n"),
        py::arg("s_max") = 50, py::arg("tol") = 1e-10, py::arg("nodes") = 128,
        "The area minimum over the catalog is attained at (2,3) or (3,5).");
  m.def("certify_theorem4", &bounds::certify_theorem4, py::arg("n"),
        py::arg("tol") = 1e-10, py::arg("nodes") = 128,
        "The (2,3) member stays below three clifford areas.");
  m.def(
      "certify_envelopes",
      [](int n, const std::vector<double>& a_list, int samples) {
        return bounds::certify_envelopes(n, a_list, samples);
      },
      py::arg("n"), py::arg("a_list"), py::arg("samples") = 10000,
      "Sign certificates for the two envelope gaps over a list of moduli.");

  m.def(
      "profile_curve_csv",
      [](int n, int p, int s, int ode_steps, std::optional<int> copies, double tol,
         int nodes) {
        const auto path = integrate_for(n, p, s, tol, nodes, ode_steps);
        std::ostringstream out;
        prof::write_curve_csv(out, prof::export_profile_curve(path, copies.value_or(s)));
        return out.str();
      },
      py::arg("n"), py::arg("p"), py::arg("s"), py::arg("ode_steps") = 4096,
      py::arg("copies") = std::nullopt, py::arg("tol") = 1e-10, py::arg("nodes") = 128,
      "Planar profile curve as CSV text; copies defaults to s, which closes the curve.");
  m.def(
      "profile_mesh_obj",
      [](int n, int p, int s, int ode_steps, int circle_samples, int t_steps, double tol,
         int nodes) {
        const auto path = integrate_for(n, p, s, tol, nodes, ode_steps);
        std::ostringstream out;
        prof::write_mesh_obj(out, prof::export_mesh_s3(path, make_spec(p, s),
                                                       circle_samples, t_steps));
        return out.str();
      },
      py::arg("n"), py::arg("p"), py::arg("s"), py::arg("ode_steps") = 4096,
      py::arg("circle_samples") = 64, py::arg("t_steps") = 256, py::arg("tol") = 1e-10,
      py::arg("nodes") = 128,
      "Stereographically projected surface in S^3 as Wavefront OBJ text; n = 2 only.");
}
