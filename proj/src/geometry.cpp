#include "otsuki/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <string>

#include "otsuki/errors.hpp"
#include "otsuki/numerics.hpp"

namespace otsuki::geo {

namespace {

constexpr double kPi = std::numbers::pi;

void validate(const ShapeParameter& shape) {
  if (shape.n < 2) throw InvalidDimension("shape: dimension must be at least 2");
  const double a0 = critical_parameter(shape.n);
  if (!(shape.a > 0.0) || !(shape.a < a0))
    throw DegenerateShape("shape: modulus must lie strictly between 0 and " +
                          std::to_string(a0));
}

double z_derivative(const ShapeParameter& shape, double x) {
  return ipow(x, shape.n - 2) * ((shape.n - 1.0) - shape.n * x);
}

}  // namespace

double ipow(double x, int k) {
  double r = 1.0;
  for (int i = 0; i < k; ++i) r *= x;
  return r;
}

double pow_half(double x, int k) {
  const double r = ipow(x, k / 2);
  return (k % 2) ? r * std::sqrt(x) : r;
}

double gamma_half(int twice_argument) {
  if (twice_argument < 1)
    throw DomainError("gamma_half: argument must be positive");
  double g = (twice_argument % 2) ? std::sqrt(kPi) : 1.0;
  for (int j = (twice_argument % 2) ? 1 : 2; j < twice_argument; j += 2)
    g *= 0.5 * j;
  return g;
}

double critical_parameter(int n) {
  if (n < 2) throw InvalidDimension("critical_parameter: dimension must be at least 2");
  // (n-1)^(n-1)/n^n in log space; overflow-free for any sane n
  return std::exp((n - 1) * std::log(n - 1.0) - n * std::log(static_cast<double>(n)));
}

double z_eval(const ShapeParameter& shape, double x) {
  return ipow(x, shape.n - 1) * (1.0 - x) - shape.a;
}

RootPair find_roots(const ShapeParameter& shape) {
  validate(shape);
  const int n = shape.n;
  const double x0 = (n - 1.0) / n;  // z has its maximum here, z(x0) = a0 - a > 0

  auto z = [&shape](double x) { return z_eval(shape, x); };

  // Newton polish after the bracketed solve restores machine-relative
  // accuracy, which matters when a root sits many orders below 1.
  auto polish = [&](double x, double lo, double hi) {
    for (int i = 0; i < 64; ++i) {
      const double d = z_derivative(shape, x);
      if (d == 0.0) break;
      const double next = x - z(x) / d;
      if (!std::isfinite(next) || !(next > lo && next < hi)) break;
      const bool settled = std::abs(next - x) <= 4.0 * 1e-16 * std::abs(x);
      x = next;
      if (settled) break;
    }
    return x;
  };

  // z plateaus at -a away from the bracket, so the root tolerance must sit
  // below the plateau or the |f| stop could accept a plateau point.
  const double root_tol = std::min(1e-14, 0.25 * shape.a);

  double lo = 1e-12;
  while (z(lo) >= 0.0 && lo > 1e-300) lo *= 1e-3;

  num::BracketedProblem left;
  left.function = z;
  left.lo = lo;
  left.hi = x0;
  left.tolerance = root_tol;
  const double x1 = polish(num::bracketed_root(left), 0.0, x0);

  double eps = 1e-12;  // z(1 - eps) ~ eps - a, so shrink until it goes negative
  while (z(1.0 - eps) >= 0.0 && eps > 1e-300) eps *= 1e-3;

  num::BracketedProblem right;
  right.function = z;
  right.lo = x0;
  right.hi = 1.0 - eps;
  right.tolerance = root_tol;
  const double x2 = polish(num::bracketed_root(right), x0, 1.0);

  if (!(0.0 < x1 && x1 < x0 && x0 < x2 && x2 < 1.0))
    throw NonConvergence(
        "find_roots: roots collapsed onto the domain boundary; the modulus is "
        "too extreme to resolve in double precision");
  if (std::abs(z(x1)) > 1e-12 || std::abs(z(x2)) > 1e-12)
    throw NonConvergence("find_roots: root residuals exceed 1e-12");
  return {x1, x2};
}

namespace {

// Reflected coordinate t = 1 - x. The kernels' endpoint sensitivity peaks at
// the outer root, and for small moduli that root sits at x = 1 - O(a), where
// the double grid is only ulp(1) fine: each one-ulp hop of the computed root
// kicks the integrals by ~1e-8, turning them into a sawtooth in a that no
// solver tolerance below that can see through. Measured against the gap
// t = 1 - x the same neighborhood carries full relative precision, so the
// roots are solved and the quadrature is run in t, and x reappears only
// inside smooth factors.
double gap_poly(const ShapeParameter& shape, double t) {
  return ipow(1.0 - t, shape.n - 1) * t - shape.a;
}

double gap_poly_derivative(const ShapeParameter& shape, double t) {
  return ipow(1.0 - t, shape.n - 2) * (1.0 - shape.n * t);
}

// Gaps 1 - x of the two roots, ordered t2 < 1/n < t1.
struct GapPair {
  double t2;
  double t1;
};

GapPair find_gaps(const ShapeParameter& shape) {
  validate(shape);
  const int n = shape.n;
  const double peak = 1.0 / n;  // gap_poly crests here with value a0 - a

  auto y = [&shape](double t) { return gap_poly(shape, t); };

  auto polish = [&](double t, double lo, double hi) {
    for (int i = 0; i < 64; ++i) {
      const double d = gap_poly_derivative(shape, t);
      if (d == 0.0) break;
      const double next = t - y(t) / d;
      if (!std::isfinite(next) || !(next > lo && next < hi)) break;
      const bool settled = std::abs(next - t) <= 4.0 * 1e-16 * std::abs(t);
      t = next;
      if (settled) break;
    }
    return t;
  };

  // y plateaus at -a near t = 1, so the |f| stop must sit below the plateau
  // or it could accept a plateau point.
  const double root_tol = std::min(1e-14, 0.25 * shape.a);

  num::BracketedProblem outer;  // y(0) = -a < 0 < y(peak)
  outer.function = y;
  outer.lo = 0.0;
  outer.hi = peak;
  outer.tolerance = root_tol;
  const double t2 = polish(num::bracketed_root(outer), 0.0, peak);

  num::BracketedProblem inner;  // y(1) = -a
  inner.function = y;
  inner.lo = peak;
  inner.hi = 1.0;
  inner.tolerance = root_tol;
  const double t1 = polish(num::bracketed_root(inner), peak, 1.0);

  if (!(0.0 < t2 && t2 < peak && peak < t1 && t1 < 1.0))
    throw NonConvergence(
        "find_gaps: roots collapsed onto the domain boundary; the modulus is "
        "too extreme to resolve in double precision");
  if (std::abs(y(t2)) > 1e-12 || std::abs(y(t1)) > 1e-12)
    throw NonConvergence("find_gaps: root residuals exceed 1e-12");
  return {t2, t1};
}

// numerator takes the reflected coordinate t.
double kernel_integral(const ShapeParameter& shape,
                       const std::function<double(double)>& numerator,
                       int nodes) {
  const GapPair gaps = find_gaps(shape);
  const int n = shape.n;
  const double x1 = 1.0 - gaps.t1;
  const double x2 = 1.0 - gaps.t2;

  // Direct evaluation of the denominator loses all significance near its
  // roots once the interval gets narrow (a close to critical), so it is
  // handed over in deflated form: synthetic division of the coefficient
  // vector of z by (x - x1) and (x - x2) leaves a quotient with no roots
  // near the interval, and the dropped remainders are the root residuals
  // (~1e-16). The endpoint factors are restored in t, where they vanish
  // exactly at the computed gaps and evaluate without cancellation.
  std::vector<double> coef(static_cast<std::size_t>(n) + 1, 0.0);
  coef[0] = -1.0;  // z(x) = -x^n + x^{n-1} - a
  coef[1] = 1.0;
  coef[n] = -shape.a;

  std::vector<double> quot1(n, 0.0);
  quot1[0] = coef[0];
  for (int k = 1; k < n; ++k) quot1[k] = coef[k] + x1 * quot1[k - 1];
  std::vector<double> quot2(static_cast<std::size_t>(n) - 1, 0.0);
  quot2[0] = quot1[0];
  for (int k = 1; k < n - 1; ++k) quot2[k] = quot1[k] + x2 * quot2[k - 1];

  num::SingularIntegral q;
  q.smooth_numerator = numerator;
  q.singular_denominator = [t1 = gaps.t1, t2 = gaps.t2,
                            quot2 = std::move(quot2)](double t) {
    const double x = 1.0 - t;
    double poly = 0.0;
    for (double c : quot2) poly = poly * x + c;
    return (t - t2) * (t1 - t) * (-poly);
  };
  q.x1 = gaps.t2;
  q.x2 = gaps.t1;
  q.nodes = nodes;
  return num::integrate_singular(q);
}

}  // namespace

double period_T(const ShapeParameter& shape, int nodes) {
  const int n = shape.n;
  return kernel_integral(
      shape, [n](double t) { return pow_half(1.0 - t, n - 2); }, nodes);
}

double rotation_angle(const ShapeParameter& shape, int nodes) {
  const double sqrt_a = std::sqrt(shape.a);
  return kernel_integral(
      shape,
      [sqrt_a](double t) { return sqrt_a / (t * std::sqrt(1.0 - t)); },
      nodes);
}

double area_integral(const ShapeParameter& shape, int nodes) {
  const int n = shape.n;
  return kernel_integral(
      shape, [n](double t) { return pow_half(1.0 - t, 2 * n - 3); }, nodes);
}

double area_density(const ShapeParameter& shape, int nodes) {
  const double k = rotation_angle(shape, nodes);
  return 2.0 * kPi * sphere_area(shape.n - 1) * area_integral(shape, nodes) / k;
}

double sphere_area(int m) {
  if (m < 1) throw InvalidDimension("sphere_area: dimension must be at least 1");
  return 2.0 * pow_half(kPi, m + 1) / gamma_half(m + 1);
}

double clifford_area(int n, int k) {
  if (n < 2) throw InvalidDimension("clifford_area: dimension must be at least 2");
  if (k < 1 || k > n - 1)
    throw InvalidDimension("clifford_area: factor dimension must lie in [1, n-1]");
  const double kn = static_cast<double>(k) / n;
  const double ln = static_cast<double>(n - k) / n;
  return sphere_area(k) * pow_half(kn, k) * sphere_area(n - k) * pow_half(ln, n - k);
}

bool RotationSpec::admissible() const {
  if (p < 1 || s < 1) return false;
  if (std::gcd(p, s) != 1) return false;
  // 1/2 < p/s  <=>  s < 2p;   p/s < sqrt(2)/2  <=>  2 p^2 < s^2
  const long long pp = p;
  const long long ss = s;
  return ss < 2 * pp && 2 * pp * pp < ss * ss;
}

double solve_shape(int n, const RotationSpec& spec, double tol, int nodes) {
  if (n < 2) throw InvalidDimension("solve_shape: dimension must be at least 2");
  if (!(tol > 0.0)) throw DomainError("solve_shape: tolerance must be positive");
  if (!spec.admissible())
    throw TargetOutOfRange(
        "rotation spec (p=" + std::to_string(spec.p) + ", s=" + std::to_string(spec.s) +
        ") is not admissible: need coprime p, s with 1/2 < p/s < sqrt(2)/2");

  const double target = 2.0 * kPi * spec.p / spec.s;
  const double a0 = critical_parameter(n);

  num::BracketedProblem prob;
  prob.function = [n, nodes, target](double a) {
    return rotation_angle({n, a}, nodes) - target;
  };
  prob.lo = a0 * 1e-9;
  prob.hi = a0 * (1.0 - 1e-9);
  prob.tolerance = 1e-14;
  double a = num::bracketed_root(prob);
  double residual = prob.function(a);

  // Near the pi end of the period map dK/da blows up like a^{1/(2(n-1))-1},
  // so a bracket solved to width 1e-14 can still miss the target angle by
  // orders of magnitude more than tol (first bites at n = 4, s ~ 50). Newton
  // steps on the angle residual finish the job; the guarantee is on the
  // residual, never the bracket width. The floor is the quadrature's own
  // rounding noise; tolerances below it are unattainable and must fail.
  const double noise_floor =
      64.0 * std::numeric_limits<double>::epsilon() * target;
  const double goal = std::max(std::min(tol, 1e-12), noise_floor);
  double best_a = a;
  double best_residual = std::abs(residual);
  for (int iter = 0; iter < 40 && best_residual > goal; ++iter) {
    const double h = std::max(std::abs(a) * 1e-7, 1e-300);
    const double ahead = std::min(a + h, prob.hi);
    const double slope = (prob.function(ahead) - residual) / (ahead - a);
    if (!(slope > 0.0)) break;
    double next = a - residual / slope;
    next = std::min(std::max(next, prob.lo), prob.hi);
    if (next == a) break;
    a = next;
    residual = prob.function(a);
    if (std::abs(residual) < best_residual) {
      best_residual = std::abs(residual);
      best_a = a;
    }
  }

  if (best_residual > tol)
    throw NonConvergence("solve_shape: rotation angle residual exceeds tolerance");
  return best_a;
}

GeometrySummary summarize(int n, const RotationSpec& spec, double tol, int nodes) {
  const double a = solve_shape(n, spec, tol, nodes);
  const ShapeParameter shape{n, a};

  GeometrySummary out;
  out.n = n;
  out.p = spec.p;
  out.s = spec.s;
  out.a = a;
  out.T = period_T(shape, nodes);
  out.K = rotation_angle(shape, nodes);
  out.w = 2.0 * kPi * sphere_area(n - 1) * area_integral(shape, nodes) / out.K;
  out.area = out.w * spec.p;
  out.entropy = out.area / sphere_area(n);
  out.clifford_ratio = out.area / clifford_area(n, 1);
  return out;
}

std::vector<RotationSpec> admissible_specs(int s_max) {
  std::vector<RotationSpec> specs;
  for (int s = 3; s <= s_max; ++s)
    for (int p = s / 2 + 1; p < s; ++p)
      if (RotationSpec{p, s}.admissible()) specs.push_back({p, s});
  return specs;
}

std::vector<GeometrySummary> catalog(int n, int s_max, double tol, int nodes) {
  if (s_max < 3) throw DomainError("catalog: s_max must be at least 3");
  const auto specs = admissible_specs(s_max);
  std::vector<GeometrySummary> rows(specs.size());
  num::parallel_for(specs.size(), [&](std::size_t i) {
    rows[i] = summarize(n, specs[i], tol, nodes);
  });
  std::sort(rows.begin(), rows.end(),
            [](const GeometrySummary& lhs, const GeometrySummary& rhs) {
              if (lhs.area != rhs.area) return lhs.area < rhs.area;
              return lhs.s < rhs.s;
            });
  return rows;
}

}  // namespace otsuki::geo
