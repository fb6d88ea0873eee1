#include "otsuki/shrinker.hpp"

#include <cmath>
#include <string>

#include "otsuki/errors.hpp"

namespace otsuki::shrink {
namespace {

constexpr double kPi = 3.14159265358979323846;

}  // namespace

double cone_entropy(int n, double area) {
  if (n < 2) {
    throw InvalidDimension("cone_entropy: n must be at least 2, got " +
                           std::to_string(n));
  }
  if (!(area > 0.0)) {
    throw InvalidArea("cone_entropy: area must be positive, got " +
                      std::to_string(area));
  }
  return area / geo::sphere_area(n);
}

double gaussian_moment(int n) {
  if (n < 0) {
    throw InvalidDimension("gaussian_moment: n must be nonnegative, got " +
                           std::to_string(n));
  }
  if (n == 0) {
    // 2^(-1/2) Gamma(1/2) = sqrt(pi/2).
    return std::sqrt(kPi / 2.0);
  }
  return geo::pow_half(2.0, n - 1) * geo::gamma_half(n + 1);
}

double entropy_threshold(int n) {
  if (n < 2) {
    throw InvalidDimension("entropy_threshold: n must be at least 2, got " +
                           std::to_string(n));
  }
  return 4.0 * (kPi - 1.0) * geo::sphere_area(n - 1) *
         std::sqrt(geo::critical_parameter(n)) / geo::sphere_area(n);
}

std::vector<EntropyRecord> entropy_table(int n, int s_max, double tol,
                                         int nodes) {
  if (n < 2) {
    throw InvalidDimension("entropy_table: n must be at least 2, got " +
                           std::to_string(n));
  }
  const double sigma_n = geo::sphere_area(n);

  std::vector<EntropyRecord> rows;
  EntropyRecord sphere;
  sphere.n = n;
  sphere.source = "round_sphere";
  sphere.area = sigma_n;
  sphere.entropy = cone_entropy(n, sigma_n);
  rows.push_back(sphere);

  EntropyRecord clifford;
  clifford.n = n;
  clifford.source = "clifford";
  clifford.area = geo::clifford_area(n, 1);
  clifford.entropy = cone_entropy(n, clifford.area);
  rows.push_back(clifford);

  const double floor_value = entropy_threshold(n);
  for (const geo::GeometrySummary& row : geo::catalog(n, s_max, tol, nodes)) {
    EntropyRecord rec;
    rec.n = n;
    rec.source =
        "spec(" + std::to_string(row.p) + "," + std::to_string(row.s) + ")";
    rec.spec = geo::RotationSpec{row.p, row.s};
    rec.a = row.a;
    rec.area = row.area;
    rec.entropy = cone_entropy(n, row.area);
    // Every closed member's cone must clear the threshold; a value at or
    // below it means the area pipeline broke, not that the geometry changed.
    if (!(rec.entropy > floor_value)) {
      throw NumericalError("entropy_table: cone entropy for " + rec.source +
                           " fell to " + std::to_string(rec.entropy) +
                           ", at or below the threshold " +
                           std::to_string(floor_value));
    }
    rows.push_back(rec);
  }
  return rows;
}

}  // namespace otsuki::shrink
