#pragma once

#include <vector>

namespace otsuki::geo {

// One member of the rotational family: dimension n >= 2 and the shape
// modulus a, which must lie strictly between 0 and the critical value
// critical_parameter(n) = (n-1)^(n-1)/n^n.
struct ShapeParameter {
  int n = 2;
  double a = 0.0;
};

// The two simple zeros 0 < x1 < (n-1)/n < x2 < 1 of
// z(x) = x^(n-1)(1 - x) - a.
struct RootPair {
  double x1 = 0.0;
  double x2 = 0.0;
};

// Closing data (p, s): the profile closes up after s periods while the
// rotation advances p full turns. Admissible means coprime with
// 1/2 < p/s < sqrt(2)/2; both comparisons are exact in integers.
struct RotationSpec {
  int p = 0;
  int s = 0;
  bool admissible() const;
};

struct GeometrySummary {
  int n = 0;
  int p = 0;
  int s = 0;
  double a = 0.0;
  double T = 0.0;
  double K = 0.0;
  double w = 0.0;
  double area = 0.0;
  double entropy = 0.0;
  double clifford_ratio = 0.0;
};

// x^k for integer k >= 0 and x^(k/2); the half-integer powers appear all
// over the kernels and must not go through exp/log for small arguments.
double ipow(double x, int k);
double pow_half(double x, int k);

// Gamma at half-integer arguments: gamma_half(j) = Gamma(j/2), j >= 1,
// by exact recurrence from Gamma(1/2) = sqrt(pi) and Gamma(1) = 1.
double gamma_half(int twice_argument);

double critical_parameter(int n);

double z_eval(const ShapeParameter& shape, double x);

RootPair find_roots(const ShapeParameter& shape);

// Integrals over [x1, x2] against 1/sqrt(z):
//   period_T:       x^((n-2)/2)          the period of the profile flow
//   rotation_angle: sqrt(a)/((1-x) sqrt(x))   angle advance per period
//   area_integral:  x^(n-3/2)            area kernel shared with the ODE side
double period_T(const ShapeParameter& shape, int nodes = 128);
double rotation_angle(const ShapeParameter& shape, int nodes = 128);
double area_integral(const ShapeParameter& shape, int nodes = 128);

// w(a) = 2 pi sigma_{n-1} area_integral / rotation_angle; the area of a
// closed member with this modulus is w(a) * p.
double area_density(const ShapeParameter& shape, int nodes = 128);

// Surface area of the unit m-sphere.
double sphere_area(int m);

// Area of the (k, n-k) product hypersurface in the unit (n+1)-sphere.
double clifford_area(int n, int k);

// Shape modulus whose rotation angle equals 2 pi p / s, found inside
// (a0 * 1e-9, a0 * (1 - 1e-9)). The returned value satisfies
// |rotation_angle - 2 pi p / s| <= tol.
double solve_shape(int n, const RotationSpec& spec, double tol = 1e-10,
                   int nodes = 128);

GeometrySummary summarize(int n, const RotationSpec& spec, double tol = 1e-10,
                          int nodes = 128);

// All admissible (p, s) with s <= s_max, ordered by s then p.
std::vector<RotationSpec> admissible_specs(int s_max);

// Summaries for every admissible spec with s <= s_max, sorted by area,
// ties by s. Requires s_max >= 3 so the list is never empty.
std::vector<GeometrySummary> catalog(int n, int s_max, double tol = 1e-10,
                                     int nodes = 128);

}  // namespace otsuki::geo
