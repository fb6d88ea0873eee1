#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include "otsuki/errors.hpp"
#include "otsuki/geometry.hpp"
#include "otsuki/profile.hpp"

using namespace otsuki;
using doctest::Approx;

namespace {

constexpr double kPi = 3.14159265358979323846;

double energy_defect(const geo::ShapeParameter& shape, const prof::ProfileSample& s) {
  const double q = 1.0 - s.r * s.r - shape.a / geo::ipow(s.r, 2 * shape.n - 2);
  return s.r_dot * s.r_dot - q;
}

double unit_speed_defect(const geo::ShapeParameter& shape,
                         const prof::ProfileSample& s) {
  const double rd2 = s.r_dot * s.r_dot;
  const double one_minus = 1.0 - s.r * s.r;
  return rd2 + s.r * s.r * rd2 / one_minus +
         shape.a / (geo::ipow(s.r, 2 * shape.n - 2) * one_minus) - 1.0;
}

}  // namespace

TEST_CASE("profile flow returns to the inner turning point after one period") {
  for (const int n : {2, 3, 4}) {
    const double a0 = geo::critical_parameter(n);
    for (const double a : {a0 / 4.0, a0 / 2.0, 3.0 * a0 / 4.0}) {
      CAPTURE(n);
      CAPTURE(a);
      const geo::ShapeParameter shape{n, a};
      const auto roots = geo::find_roots(shape);
      const double r1 = std::sqrt(roots.x1);
      const double r2 = std::sqrt(roots.x2);
      const auto path = prof::integrate_profile(shape, 4096);

      REQUIRE(path.samples.size() == 4097);
      CHECK(path.T == Approx(geo::period_T(shape)).epsilon(1e-15));
      CHECK(path.samples.front().r == r1);
      CHECK(path.samples.front().r_dot == 0.0);
      CHECK(path.samples.front().theta == 0.0);
      CHECK(std::abs(path.samples.back().r - r1) <= 1e-6);
      CHECK(std::abs(path.samples.back().r_dot) <= 1e-6);
      // Half way through, the flow sits at the outer turning point.
      CHECK(std::abs(path.samples[2048].r - r2) <= 1e-6);
      CHECK(path.samples[2048].t == Approx(path.T / 2.0).epsilon(1e-12));
      for (std::size_t i = 1; i < path.samples.size(); ++i) {
        CHECK(path.samples[i].t > path.samples[i - 1].t);
      }
    }
  }
}

TEST_CASE("rotation angle from the flow matches the quadrature value") {
  for (const int n : {2, 3, 4}) {
    const double a0 = geo::critical_parameter(n);
    for (const double a : {a0 / 4.0, a0 / 2.0, 3.0 * a0 / 4.0}) {
      CAPTURE(n);
      CAPTURE(a);
      const geo::ShapeParameter shape{n, a};
      const auto path = prof::integrate_profile(shape, 4096);
      CHECK(path.samples.back().theta ==
            Approx(geo::rotation_angle(shape)).epsilon(1e-6));
    }
  }
}

TEST_CASE("energy and unit-speed identities hold along the flow") {
  for (const int n : {2, 3, 4}) {
    const double a0 = geo::critical_parameter(n);
    for (const double a : {a0 / 4.0, a0 / 2.0, 3.0 * a0 / 4.0}) {
      CAPTURE(n);
      CAPTURE(a);
      const geo::ShapeParameter shape{n, a};
      const auto path = prof::integrate_profile(shape, 4096);
      double worst_energy = 0.0;
      double worst_speed = 0.0;
      for (const auto& s : path.samples) {
        worst_energy = std::max(worst_energy, std::abs(energy_defect(shape, s)));
        worst_speed =
            std::max(worst_speed, std::abs(unit_speed_defect(shape, s)));
      }
      CHECK(worst_energy <= 1e-8);
      CHECK(worst_speed <= 1e-8);
      for (std::size_t i = 1; i < path.samples.size(); ++i) {
        CHECK(path.samples[i].theta > path.samples[i - 1].theta);
      }
    }
  }
}

TEST_CASE("fundamental portion area matches the analytic pipeline") {
  for (const auto& [n, spec] : {std::pair<int, geo::RotationSpec>{2, {2, 3}},
                                std::pair<int, geo::RotationSpec>{3, {3, 5}}}) {
    CAPTURE(n);
    const auto summary = geo::summarize(n, spec);
    const auto path = prof::integrate_profile({n, summary.a}, 4096);
    const double total = spec.s * prof::fundamental_area(path);
    CHECK(total == Approx(summary.area).epsilon(1e-6));
  }

  // Grid refinement is already converged at the default resolution.
  const auto summary = geo::summarize(2, geo::RotationSpec{2, 3});
  const auto coarse = prof::integrate_profile({2, summary.a}, 4096);
  const auto fine = prof::integrate_profile({2, summary.a}, 8192);
  CHECK(prof::fundamental_area(fine) ==
        Approx(prof::fundamental_area(coarse)).epsilon(1e-8));

  // Odd interval counts take the mixed Simpson + 3/8 path.
  const auto odd = prof::integrate_profile({2, summary.a}, 1001);
  CHECK(prof::fundamental_area(odd) ==
        Approx(prof::fundamental_area(fine)).epsilon(1e-9));

  // Near the critical modulus the flow degenerates onto the Clifford torus.
  const double a0 = geo::critical_parameter(2);
  const auto near = prof::integrate_profile({2, a0 * (1.0 - 1e-6)}, 4096);
  const double w_ode =
      prof::fundamental_area(near) * 2.0 * kPi / near.samples.back().theta;
  CHECK(w_ode == Approx(geo::clifford_area(2, 1)).epsilon(1e-4));
}

TEST_CASE("curve export closes after s copies") {
  const auto summary = geo::summarize(2, geo::RotationSpec{2, 3});
  const auto path = prof::integrate_profile({2, summary.a}, 4096);

  const auto rows = prof::export_profile_curve(path, 3);
  REQUIRE(rows.size() == 3 * 4096 + 1);
  const double r1 = path.samples.front().r;
  CHECK(rows.front().t == 0.0);
  CHECK(rows.front().r == r1);
  CHECK(rows.front().theta == 0.0);
  CHECK(rows.front().alpha_x == std::sqrt(1.0 - r1 * r1));
  CHECK(rows.front().alpha_y == 0.0);
  CHECK(std::abs(rows.back().theta - 4.0 * kPi) <= 1e-5);
  CHECK(rows.back().t == Approx(3.0 * path.T).epsilon(1e-12));
  for (std::size_t i = 1; i < rows.size(); ++i) {
    CHECK(rows[i].theta > rows[i - 1].theta);
    CHECK(rows[i].t > rows[i - 1].t);
  }
  for (const auto& row : rows) {
    CHECK(std::abs(row.alpha_x * row.alpha_x + row.alpha_y * row.alpha_y -
                   (1.0 - row.r * row.r)) < 1e-12);
  }

  const auto one = prof::export_profile_curve(path, 1);
  CHECK(one.size() == 4097);
  CHECK(one.back().t == path.T);
}

TEST_CASE("mesh lives on the unit sphere and closes into a torus") {
  const auto summary = geo::summarize(2, geo::RotationSpec{2, 3});
  const auto path = prof::integrate_profile({2, summary.a}, 4096);
  const auto mesh = prof::export_mesh_s3(path, geo::RotationSpec{2, 3});

  const int v_count = 3 * 256 * 64;
  REQUIRE(mesh.vertices.size() == static_cast<std::size_t>(v_count));
  REQUIRE(mesh.sphere_points.size() == mesh.vertices.size());
  REQUIRE(mesh.faces.size() == 2 * mesh.vertices.size());
  CHECK(mesh.n == 2);
  CHECK(mesh.p == 2);
  CHECK(mesh.s == 3);
  CHECK(mesh.copies == 3);
  CHECK(mesh.a == summary.a);

  double worst = 0.0;
  for (const auto& u : mesh.sphere_points) {
    const double norm2 = u[0] * u[0] + u[1] * u[1] + u[2] * u[2] + u[3] * u[3];
    worst = std::max(worst, std::abs(norm2 - 1.0));
  }
  CHECK(worst <= 1e-10);

  // Each directed edge must appear exactly once and its reverse exactly once:
  // a closed oriented surface. Euler characteristic then comes out 0.
  std::unordered_map<long long, int> directed;
  directed.reserve(mesh.faces.size() * 3);
  bool indices_ok = true;
  for (const auto& f : mesh.faces) {
    for (int e = 0; e < 3; ++e) {
      const int from = f[e];
      const int to = f[(e + 1) % 3];
      indices_ok = indices_ok && from >= 0 && from < v_count && to >= 0 &&
                   to < v_count && from != to;
      ++directed[static_cast<long long>(from) * v_count + to];
    }
  }
  CHECK(indices_ok);
  bool oriented = true;
  long long undirected = 0;
  for (const auto& [key, count] : directed) {
    oriented = oriented && count == 1;
    const int from = static_cast<int>(key / v_count);
    const int to = static_cast<int>(key % v_count);
    if (from < to) {
      ++undirected;
      oriented = oriented &&
                 directed.count(static_cast<long long>(to) * v_count + from) == 1;
    }
  }
  CHECK(oriented);
  CHECK(undirected == 3LL * v_count);
  const long long euler = static_cast<long long>(mesh.vertices.size()) -
                          undirected + static_cast<long long>(mesh.faces.size());
  CHECK(euler == 0);

  // No degenerate triangles at the default resolution.
  bool nondegenerate = true;
  for (const auto& f : mesh.faces) {
    const auto& a = mesh.vertices[f[0]];
    const auto& b = mesh.vertices[f[1]];
    const auto& c = mesh.vertices[f[2]];
    const double abx = b[0] - a[0], aby = b[1] - a[1], abz = b[2] - a[2];
    const double acx = c[0] - a[0], acy = c[1] - a[1], acz = c[2] - a[2];
    const double cx = aby * acz - abz * acy;
    const double cy = abz * acx - abx * acz;
    const double cz = abx * acy - aby * acx;
    nondegenerate = nondegenerate && (cx * cx + cy * cy + cz * cz) > 1e-20;
  }
  CHECK(nondegenerate);
}

TEST_CASE("writers emit the documented formats byte for byte") {
  const auto summary = geo::summarize(2, geo::RotationSpec{2, 3});
  const auto path = prof::integrate_profile({2, summary.a}, 1024);

  const auto rows = prof::export_profile_curve(path, 1);
  std::ostringstream csv;
  prof::write_curve_csv(csv, rows);
  const std::string text = csv.str();
  CHECK(text.rfind("t,r,theta,alpha_x,alpha_y\n", 0) == 0);
  CHECK(text.find('\r') == std::string::npos);
  CHECK(std::count(text.begin(), text.end(), '\n') ==
        static_cast<long>(rows.size()) + 1);
  // 17 significant digits give exact round trips.
  const std::size_t line_start = text.find('\n') + 1;
  const std::string first_line =
      text.substr(line_start, text.find('\n', line_start) - line_start);
  double t = 0.0, r = 0.0, theta = 0.0, ax = 0.0, ay = 0.0;
  REQUIRE(std::sscanf(first_line.c_str(), "%lf,%lf,%lf,%lf,%lf", &t, &r, &theta,
                      &ax, &ay) == 5);
  CHECK(t == rows[0].t);
  CHECK(r == rows[0].r);
  CHECK(theta == rows[0].theta);
  CHECK(ax == rows[0].alpha_x);
  CHECK(ay == rows[0].alpha_y);

  std::ostringstream again;
  prof::write_curve_csv(again, rows);
  CHECK(again.str() == text);

  const auto mesh = prof::export_mesh_s3(path, geo::RotationSpec{2, 3}, 16, 32);
  std::ostringstream obj;
  prof::write_mesh_obj(obj, mesh);
  const std::string objtext = obj.str();
  CHECK(objtext.rfind("# ", 0) == 0);
  CHECK(objtext.find("n=2") != std::string::npos);
  CHECK(objtext.find("p=2") != std::string::npos);
  CHECK(objtext.find("s=3") != std::string::npos);
  std::istringstream lines(objtext);
  std::string line;
  long v_lines = 0, f_lines = 0;
  bool f_ok = true;
  while (std::getline(lines, line)) {
    if (line.rfind("v ", 0) == 0) ++v_lines;
    if (line.rfind("f ", 0) == 0) {
      ++f_lines;
      int i = 0, j = 0, k = 0;
      f_ok = f_ok && std::sscanf(line.c_str(), "f %d %d %d", &i, &j, &k) == 3;
      f_ok = f_ok && i >= 1 && j >= 1 && k >= 1 &&
             i <= static_cast<int>(mesh.vertices.size()) &&
             j <= static_cast<int>(mesh.vertices.size()) &&
             k <= static_cast<int>(mesh.vertices.size());
    }
  }
  CHECK(v_lines == static_cast<long>(mesh.vertices.size()));
  CHECK(f_lines == static_cast<long>(mesh.faces.size()));
  CHECK(f_ok);
}

TEST_CASE("profile validation taxonomy") {
  CHECK_THROWS_AS(prof::integrate_profile({2, 0.1}, 999), DomainError);
  CHECK_THROWS_AS(prof::integrate_profile({2, 0.3}, 4096), DegenerateShape);
  CHECK_THROWS_AS(prof::integrate_profile({1, 0.1}, 4096), InvalidDimension);
  CHECK_THROWS_AS(prof::fundamental_area(prof::ProfilePath{}), DomainError);

  const auto path = prof::integrate_profile({2, 0.1}, 1024);
  CHECK_THROWS_AS(prof::export_profile_curve(path, 0), DomainError);
  CHECK_THROWS_AS(prof::export_mesh_s3(path, geo::RotationSpec{2, 3}, 15, 32),
                  DomainError);
  CHECK_THROWS_AS(prof::export_mesh_s3(path, geo::RotationSpec{2, 3}, 16, 2000),
                  DomainError);
  CHECK_THROWS_AS(prof::export_mesh_s3(path, geo::RotationSpec{1, 2}, 16, 32),
                  TargetOutOfRange);

  const auto path3 = prof::integrate_profile({3, 0.05}, 1024);
  CHECK_THROWS_AS(prof::export_mesh_s3(path3, geo::RotationSpec{2, 3}, 16, 32),
                  DimensionUnsupported);

  // A corrupted path whose points sit at the projection pole.
  prof::ProfilePath bad;
  bad.shape = {2, 0.1};
  bad.T = 1.0;
  bad.samples.resize(300);
  for (std::size_t i = 0; i < bad.samples.size(); ++i) {
    bad.samples[i] = {static_cast<double>(i) / 299.0, 1e-8, 0.0, kPi / 2.0};
  }
  CHECK_THROWS_AS(prof::export_mesh_s3(bad, geo::RotationSpec{2, 3}, 16, 32),
                  PoleCollision);
}
