#pragma once

#include <array>
#include <ostream>
#include <vector>

#include "otsuki/geometry.hpp"

namespace otsuki::prof {

struct ProfileSample {
  double t = 0.0;      // arclength parameter
  double r = 0.0;      // profile radius, in [r1, r2]
  double r_dot = 0.0;  // dr/dt
  double theta = 0.0;  // accumulated rotation angle
};

struct ProfilePath {
  geo::ShapeParameter shape;
  std::vector<ProfileSample> samples;  // uniform t-grid over [0, T]
  double T = 0.0;                      // full radial period
};

struct CurveRow {
  double t = 0.0;
  double r = 0.0;
  double theta = 0.0;
  double alpha_x = 0.0;
  double alpha_y = 0.0;
};

struct MeshArtifact {
  std::vector<std::array<double, 3>> vertices;  // stereographic images
  std::vector<std::array<int, 3>> faces;        // 0-based here; OBJ adds 1
  // Pre-projection positions on the unit 3-sphere, kept so audits can
  // check |u| = 1 without re-deriving the embedding.
  std::vector<std::array<double, 4>> sphere_points;
  int n = 2;
  int p = 0;
  int s = 0;
  double a = 0.0;
  int copies = 0;
};

// Integrates the profile flow over one full period [0, T] from the inner
// turning point (r, r', theta) = (r1, 0, 0). The radial equation is run in
// second-order form r'' = -r + a (n-1) r^(1-2n), obtained by differentiating
// the energy form r'^2 = 1 - r^2 - a r^(2-2n) in t; the first-order form has
// a sign ambiguity at the turning points, the second-order form does not.
// theta' = sqrt(a) r^(1-n) / (1 - r^2) rides along as a third component.
ProfilePath integrate_profile(const geo::ShapeParameter& shape,
                              int steps_per_period = 4096);

// sigma_{n-1} * integral of r^(n-1) dt over the period, by composite Simpson
// on the sample grid. s times this value is the total area when K(a) = 2pi p/s.
double fundamental_area(const ProfilePath& path);

// Planar profile curve alpha(t) = (sqrt(1-r^2) cos theta, sqrt(1-r^2) sin theta)
// continued over `copies` periods, advancing theta by the path's own theta(T)
// each copy. copies * steps + 1 rows; use copies = s to close the curve.
std::vector<CurveRow> export_profile_curve(const ProfilePath& path, int copies);

// The surface phi(y, t) = (r y, sqrt(1-r^2) cos theta, sqrt(1-r^2) sin theta)
// in S^3, swept over s copies of the fundamental portion and stereographically
// projected from (0,0,0,1). The t-grid is the path downsampled to t_steps rows
// per period; n = 2 only.
MeshArtifact export_mesh_s3(const ProfilePath& path, const geo::RotationSpec& spec,
                            int circle_samples = 64, int t_steps = 256);

// CSV with header t,r,theta,alpha_x,alpha_y, 17 significant digits, LF only.
void write_curve_csv(std::ostream& out, const std::vector<CurveRow>& rows);

// Wavefront OBJ: one leading # comment with the metadata, then v and f lines
// (1-based indices).
void write_mesh_obj(std::ostream& out, const MeshArtifact& mesh);

}  // namespace otsuki::prof
