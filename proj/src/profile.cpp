#include "otsuki/profile.hpp"

#include <cmath>
#include <cstdio>
#include <span>

#include "otsuki/errors.hpp"
#include "otsuki/numerics.hpp"

namespace otsuki::prof {

namespace {

constexpr double kPi = 3.14159265358979323846;

void write_g17(std::ostream& out, double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  out << buf;
}

}  // namespace

ProfilePath integrate_profile(const geo::ShapeParameter& shape,
                              int steps_per_period) {
  if (steps_per_period < 1000) {
    throw DomainError("integrate_profile: steps_per_period must be at least 1000");
  }
  const auto roots = geo::find_roots(shape);
  const double r1 = std::sqrt(roots.x1);
  const double r2 = std::sqrt(roots.x2);
  const double half_r1 = 0.5 * r1;
  const double a = shape.a;
  const int n = shape.n;
  const double sqrt_a = std::sqrt(a);

  const num::OdeRhs rhs = [a, n, sqrt_a, half_r1](double, std::span<const double> y,
                                                  std::span<double> dy) {
    const double r = y[0];
    if (r < half_r1) {
      throw TurningPointStall(
          "integrate_profile: radius collapsed toward the rotation axis");
    }
    dy[0] = y[1];
    dy[1] = -r + a * (n - 1.0) / geo::ipow(r, 2 * n - 1);
    dy[2] = sqrt_a / (geo::ipow(r, n - 1) * (1.0 - r * r));
  };

  num::OdeState start;
  start.t = 0.0;
  start.components = {r1, 0.0, 0.0};
  const double T = geo::period_T(shape);
  const auto states = num::integrate_ode(rhs, start, T, steps_per_period);

  ProfilePath path;
  path.shape = shape;
  path.T = T;
  path.samples.reserve(states.size());
  const double lo = r1 * (1.0 - 1e-3);
  const double hi = r2 * (1.0 + 1e-3);
  for (const auto& state : states) {
    const double r = state.components[0];
    if (r < lo || r > hi) {
      throw TurningPointStall(
          "integrate_profile: radius left the turning-point envelope");
    }
    path.samples.push_back(
        {state.t, r, state.components[1], state.components[2]});
  }
  return path;
}

double fundamental_area(const ProfilePath& path) {
  if (path.samples.size() < 5 || !(path.T > 0.0)) {
    throw DomainError("fundamental_area: path carries no usable sample grid");
  }
  const int n = path.shape.n;
  const std::size_t intervals = path.samples.size() - 1;
  const double h = path.T / static_cast<double>(intervals);
  const auto g = [&](std::size_t i) {
    return geo::ipow(path.samples[i].r, n - 1);
  };
  // Composite Simpson; when the interval count is odd, the last three
  // intervals go through the 3/8 rule so the whole sum stays fourth order.
  const std::size_t simpson_end = (intervals % 2 == 0) ? intervals : intervals - 3;
  double sum = 0.0;
  for (std::size_t i = 0; i + 2 <= simpson_end; i += 2) {
    sum += h / 3.0 * (g(i) + 4.0 * g(i + 1) + g(i + 2));
  }
  if (intervals % 2 != 0) {
    sum += 3.0 * h / 8.0 *
           (g(intervals - 3) + 3.0 * g(intervals - 2) + 3.0 * g(intervals - 1) +
            g(intervals));
  }
  return geo::sphere_area(n - 1) * sum;
}

std::vector<CurveRow> export_profile_curve(const ProfilePath& path, int copies) {
  if (copies < 1) {
    throw DomainError("export_profile_curve: copies must be at least 1");
  }
  if (path.samples.size() < 2) {
    throw DomainError("export_profile_curve: path carries no samples");
  }
  const std::size_t steps = path.samples.size() - 1;
  const double theta_period = path.samples.back().theta;
  std::vector<CurveRow> rows;
  rows.reserve(static_cast<std::size_t>(copies) * steps + 1);
  for (int copy = 0; copy < copies; ++copy) {
    const double t_base = copy * path.T;
    const double theta_base = copy * theta_period;
    // The seam sample closes the previous copy and opens this one; emit once.
    for (std::size_t i = (copy == 0) ? 0 : 1; i <= steps; ++i) {
      const auto& s = path.samples[i];
      const double theta = theta_base + s.theta;
      const double rho = std::sqrt(1.0 - s.r * s.r);
      rows.push_back({t_base + s.t, s.r, theta, rho * std::cos(theta),
                      rho * std::sin(theta)});
    }
  }
  return rows;
}

MeshArtifact export_mesh_s3(const ProfilePath& path, const geo::RotationSpec& spec,
                            int circle_samples, int t_steps) {
  if (path.shape.n != 2) {
    throw DimensionUnsupported(
        "export_mesh_s3: the stereographic mesh is defined for n = 2 only");
  }
  if (circle_samples < 16) {
    throw DomainError("export_mesh_s3: circle_samples must be at least 16");
  }
  if (t_steps < 2 || static_cast<std::size_t>(t_steps) + 1 > path.samples.size()) {
    throw DomainError("export_mesh_s3: t_steps must fit the sample grid");
  }
  if (!spec.admissible()) {
    throw TargetOutOfRange(
        "export_mesh_s3: rotation spec is not admissible: need coprime p, s "
        "with 1/2 < p/s < sqrt(2)/2");
  }

  const std::size_t steps = path.samples.size() - 1;
  const double theta_period = path.samples.back().theta;
  MeshArtifact mesh;
  mesh.n = path.shape.n;
  mesh.p = spec.p;
  mesh.s = spec.s;
  mesh.a = path.shape.a;
  mesh.copies = spec.s;

  const int rows_total = spec.s * t_steps;
  mesh.sphere_points.reserve(static_cast<std::size_t>(rows_total) * circle_samples);
  mesh.vertices.reserve(mesh.sphere_points.capacity());
  for (int row = 0; row < rows_total; ++row) {
    const int copy = row / t_steps;
    const int j = row % t_steps;
    const std::size_t idx =
        (static_cast<std::size_t>(j) * steps) / static_cast<std::size_t>(t_steps);
    const auto& smp = path.samples[idx];
    const double theta = copy * theta_period + smp.theta;
    const double rho = std::sqrt(1.0 - smp.r * smp.r);
    const double u3 = rho * std::cos(theta);
    const double u4 = rho * std::sin(theta);
    for (int k = 0; k < circle_samples; ++k) {
      const double psi = 2.0 * kPi * k / circle_samples;
      const std::array<double, 4> u{smp.r * std::cos(psi), smp.r * std::sin(psi),
                                    u3, u4};
      if (u[3] > 1.0 - 1e-9) {
        throw PoleCollision("export_mesh_s3: vertex reached the projection pole");
      }
      mesh.sphere_points.push_back(u);
      const double den = 1.0 - u[3];
      mesh.vertices.push_back({u[0] / den, u[1] / den, u[2] / den});
    }
  }

  // Quad grid with wraparound in both t and the circle angle; each quad is
  // split along the same diagonal so orientations stay consistent.
  mesh.faces.reserve(2 * mesh.vertices.size());
  for (int row = 0; row < rows_total; ++row) {
    const int next_row = (row + 1) % rows_total;
    for (int k = 0; k < circle_samples; ++k) {
      const int k2 = (k + 1) % circle_samples;
      const int v00 = row * circle_samples + k;
      const int v10 = next_row * circle_samples + k;
      const int v11 = next_row * circle_samples + k2;
      const int v01 = row * circle_samples + k2;
      mesh.faces.push_back({v00, v10, v11});
      mesh.faces.push_back({v00, v11, v01});
    }
  }
  return mesh;
}

void write_curve_csv(std::ostream& out, const std::vector<CurveRow>& rows) {
  out << "t,r,theta,alpha_x,alpha_y\n";
  for (const auto& row : rows) {
    write_g17(out, row.t);
    out << ',';
    write_g17(out, row.r);
    out << ',';
    write_g17(out, row.theta);
    out << ',';
    write_g17(out, row.alpha_x);
    out << ',';
    write_g17(out, row.alpha_y);
    out << '\n';
  }
}

void write_mesh_obj(std::ostream& out, const MeshArtifact& mesh) {
  out << "# otsuki rotational surface n=" << mesh.n << " p=" << mesh.p
      << " s=" << mesh.s << " a=";
  write_g17(out, mesh.a);
  out << " copies=" << mesh.copies << '\n';
  for (const auto& v : mesh.vertices) {
    out << "v ";
    write_g17(out, v[0]);
    out << ' ';
    write_g17(out, v[1]);
    out << ' ';
    write_g17(out, v[2]);
    out << '\n';
  }
  for (const auto& f : mesh.faces) {
    out << "f " << f[0] + 1 << ' ' << f[1] + 1 << ' ' << f[2] + 1 << '\n';
  }
}

}  // namespace otsuki::prof
