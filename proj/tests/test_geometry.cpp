#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <numbers>
#include <vector>

#include "otsuki/errors.hpp"
#include "otsuki/geometry.hpp"

using namespace otsuki;
using geo::RotationSpec;
using geo::ShapeParameter;

namespace {

constexpr double kPi = std::numbers::pi;

// Gauss-Chebyshev oracle in the radial variable r = sqrt(x). The kernels all
// pull back to integrals against 1/sqrt(q) with q(r) = 1 - r^2 - a r^(2-2n)
// vanishing simply at r1 = sqrt(x1), r2 = sqrt(x2); this shares no code and
// no substitution with the library path.
template <typename F>
double radial_oracle(const ShapeParameter& shape, F factor, int n_nodes) {
  const auto roots = geo::find_roots(shape);
  const double r1 = std::sqrt(roots.x1);
  const double r2 = std::sqrt(roots.x2);
  auto q = [&](double r) {
    return 1.0 - r * r - shape.a * std::pow(r, 2.0 - 2.0 * shape.n);
  };
  const double m = 0.5 * (r1 + r2);
  const double h = 0.5 * (r2 - r1);
  double acc = 0.0;
  for (int k = 1; k <= n_nodes; ++k) {
    const double th = kPi * (2.0 * k - 1.0) / (2.0 * n_nodes);
    const double r = m + h * std::cos(th);
    const double weight = (r - r1) * (r2 - r);
    acc += factor(r) * std::sqrt(weight / q(r));
  }
  return acc * kPi / n_nodes;
}

}  // namespace

TEST_CASE("critical parameter: known values and validation") {
  CHECK(geo::critical_parameter(2) == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(geo::critical_parameter(3) == doctest::Approx(4.0 / 27.0).epsilon(1e-15));
  CHECK(geo::critical_parameter(10) == doctest::Approx(0.0387420489).epsilon(1e-14));
  CHECK_THROWS_AS(geo::critical_parameter(1), InvalidDimension);
  CHECK_THROWS_AS(geo::critical_parameter(0), InvalidDimension);
}

TEST_CASE("half-integer powers and gamma values") {
  CHECK(geo::ipow(3.0, 4) == 81.0);
  CHECK(geo::ipow(2.0, 0) == 1.0);
  CHECK(geo::pow_half(4.0, 3) == doctest::Approx(8.0).epsilon(1e-15));
  CHECK(geo::pow_half(0.25, 5) == doctest::Approx(std::pow(0.25, 2.5)).epsilon(1e-15));

  const double sqrt_pi = std::sqrt(kPi);
  CHECK(geo::gamma_half(1) == doctest::Approx(sqrt_pi).epsilon(1e-15));
  CHECK(geo::gamma_half(2) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(geo::gamma_half(3) == doctest::Approx(0.5 * sqrt_pi).epsilon(1e-15));
  CHECK(geo::gamma_half(5) == doctest::Approx(0.75 * sqrt_pi).epsilon(1e-15));
  CHECK(geo::gamma_half(7) == doctest::Approx(15.0 / 8.0 * sqrt_pi).epsilon(1e-15));
  CHECK(geo::gamma_half(8) == doctest::Approx(6.0).epsilon(1e-15));
  CHECK_THROWS_AS(geo::gamma_half(0), DomainError);
}

TEST_CASE("sphere area: anchors and recurrence") {
  CHECK(geo::sphere_area(1) == doctest::Approx(2.0 * kPi).epsilon(1e-15));
  CHECK(geo::sphere_area(2) == doctest::Approx(4.0 * kPi).epsilon(1e-15));
  CHECK(geo::sphere_area(3) == doctest::Approx(2.0 * kPi * kPi).epsilon(1e-15));
  // sigma_m = 2 pi sigma_{m-2} / (m - 1)
  for (int m = 3; m <= 12; ++m)
    CHECK(geo::sphere_area(m) ==
          doctest::Approx(2.0 * kPi * geo::sphere_area(m - 2) / (m - 1)).epsilon(1e-13));
  CHECK_THROWS_AS(geo::sphere_area(0), InvalidDimension);
}

TEST_CASE("clifford area: anchors, symmetry, and the k=1 identity") {
  CHECK(geo::clifford_area(2, 1) == doctest::Approx(2.0 * kPi * kPi).epsilon(1e-14));
  CHECK(geo::clifford_area(4, 2) == doctest::Approx(4.0 * kPi * kPi).epsilon(1e-14));
  for (int n = 3; n <= 8; ++n)
    for (int k = 1; k < n; ++k)
      CHECK(geo::clifford_area(n, k) ==
            doctest::Approx(geo::clifford_area(n, n - k)).epsilon(1e-14));
  // the k=1 slice equals 2 pi sigma_{n-1} sqrt(a0)
  for (int n = 2; n <= 10; ++n) {
    const double expect =
        2.0 * kPi * geo::sphere_area(n - 1) * std::sqrt(geo::critical_parameter(n));
    CHECK(geo::clifford_area(n, 1) == doctest::Approx(expect).epsilon(1e-14));
  }
  CHECK_THROWS_AS(geo::clifford_area(3, 0), InvalidDimension);
  CHECK_THROWS_AS(geo::clifford_area(3, 3), InvalidDimension);
  CHECK_THROWS_AS(geo::clifford_area(1, 1), InvalidDimension);
}

TEST_CASE("find_roots: ordering, residuals, and shape validation") {
  for (int n : {2, 3, 4, 5, 8}) {
    const double a0 = geo::critical_parameter(n);
    for (double frac : {1e-6, 0.25, 0.5, 0.75, 1.0 - 1e-6}) {
      const ShapeParameter shape{n, a0 * frac};
      const auto roots = geo::find_roots(shape);
      const double x0 = (n - 1.0) / n;
      CHECK(roots.x1 > 0.0);
      CHECK(roots.x1 < x0);
      CHECK(roots.x2 > x0);
      CHECK(roots.x2 < 1.0);
      CHECK(std::abs(geo::z_eval(shape, roots.x1)) <= 1e-12);
      CHECK(std::abs(geo::z_eval(shape, roots.x2)) <= 1e-12);
    }
  }

  CHECK_THROWS_AS(geo::find_roots({2, 0.0}), DegenerateShape);
  CHECK_THROWS_AS(geo::find_roots({2, 0.25}), DegenerateShape);
  CHECK_THROWS_AS(geo::find_roots({2, -0.1}), DegenerateShape);
  CHECK_THROWS_AS(geo::find_roots({2, 0.3}), DegenerateShape);
  CHECK_THROWS_AS(geo::find_roots({1, 0.1}), InvalidDimension);
}

TEST_CASE("find_roots: quadratic case obeys the root relations") {
  for (double a : {1e-14, 1e-10, 0.01, 0.2, 0.2499}) {
    const auto roots = geo::find_roots({2, a});
    CHECK(roots.x1 + roots.x2 == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(roots.x1 * roots.x2 == doctest::Approx(a).epsilon(1e-12));
  }
  // deep in the small-a regime the lower root tracks a itself
  CHECK(geo::find_roots({2, 1e-14}).x1 == doctest::Approx(1e-14).epsilon(1e-12));
  // and for the cubic it tracks sqrt(a)
  CHECK(geo::find_roots({3, 1e-14}).x1 == doctest::Approx(1e-7).epsilon(1e-6));
  // a modulus whose upper root is not representable below 1.0 is refused
  CHECK_THROWS_AS(geo::find_roots({2, 1e-18}), NonConvergence);
}

TEST_CASE("period: quadratic case is exactly pi") {
  for (double a : {1e-8, 0.01, 0.0625, 0.125, 0.2, 0.2499})
    CHECK(geo::period_T({2, a}) == doctest::Approx(kPi).epsilon(1e-12));
}

TEST_CASE("kernel integrals match the radial-variable oracle") {
  for (int n : {2, 3, 4}) {
    const double a0 = geo::critical_parameter(n);
    for (double frac : {0.25, 0.5, 0.75}) {
      const ShapeParameter shape{n, a0 * frac};

      const double T = geo::period_T(shape);
      const double T_oracle =
          radial_oracle(shape, [](double) { return 2.0; }, 4096);
      CHECK(T == doctest::Approx(T_oracle).epsilon(1e-10));

      const double K = geo::rotation_angle(shape);
      const double K_oracle = radial_oracle(
          shape,
          [&](double r) {
            return 2.0 * std::sqrt(shape.a) * std::pow(r, 1.0 - shape.n) /
                   (1.0 - r * r);
          },
          4096);
      CHECK(K == doctest::Approx(K_oracle).epsilon(1e-10));

      const double J = geo::area_integral(shape);
      const double J_oracle = radial_oracle(
          shape,
          [&](double r) { return 2.0 * geo::ipow(r, shape.n - 1); }, 4096);
      CHECK(J == doctest::Approx(J_oracle).epsilon(1e-10));
    }
  }
}

TEST_CASE("rotation angle: strictly increasing, pinned between pi and sqrt(2) pi") {
  const double sqrt2pi = std::sqrt(2.0) * kPi;
  for (int n : {2, 5}) {
    const double a0 = geo::critical_parameter(n);
    const double lo = a0 * 1e-6;
    const double hi = a0 * (1.0 - 1e-6);
    double prev = 0.0;
    const int points = 50;
    for (int i = 0; i < points; ++i) {
      const double a = lo * std::pow(hi / lo, i / (points - 1.0));
      const double k = geo::rotation_angle({n, a});
      CHECK(k > kPi);
      CHECK(k < sqrt2pi);
      CHECK(k > prev);
      prev = k;
    }
  }
}

TEST_CASE("rotation angle: limiting values in the quadratic case") {
  CHECK(std::abs(geo::rotation_angle({2, 1e-10}) - kPi) <= 1e-3);
  CHECK(std::abs(geo::rotation_angle({2, 0.25 * (1.0 - 1e-10)}) - std::sqrt(2.0) * kPi) <=
        1e-3);
}

TEST_CASE("area density approaches the clifford value at the critical end") {
  for (int n : {2, 3, 4, 5}) {
    const double a0 = geo::critical_parameter(n);
    const double w = geo::area_density({n, a0 * (1.0 - 1e-8)});
    const double limit = 2.0 * kPi * geo::sphere_area(n - 1) * std::sqrt(a0);
    CHECK(std::abs(w - limit) / limit < 1e-4);
  }
  // the quadratic case lands on 2 pi^2
  const double w2 = geo::area_density({2, 0.25 * (1.0 - 1e-8)});
  CHECK(w2 == doctest::Approx(2.0 * kPi * kPi).epsilon(1e-4));
}

TEST_CASE("rotation specs: admissibility is exact integer arithmetic") {
  CHECK(RotationSpec{2, 3}.admissible());
  CHECK(RotationSpec{3, 5}.admissible());
  CHECK(RotationSpec{7, 10}.admissible());
  CHECK_FALSE(RotationSpec{1, 2}.admissible());   // boundary p/s = 1/2
  CHECK_FALSE(RotationSpec{5, 7}.admissible());   // 5/7 exceeds sqrt(2)/2
  CHECK_FALSE(RotationSpec{3, 4}.admissible());   // 3/4 exceeds sqrt(2)/2
  CHECK_FALSE(RotationSpec{4, 6}.admissible());   // not coprime
  CHECK_FALSE(RotationSpec{2, 4}.admissible());
  CHECK_FALSE(RotationSpec{0, 3}.admissible());
  CHECK_FALSE(RotationSpec{-2, 3}.admissible());

  const auto upto3 = geo::admissible_specs(3);
  REQUIRE(upto3.size() == 1);
  CHECK(upto3[0].p == 2);
  CHECK(upto3[0].s == 3);

  const auto upto5 = geo::admissible_specs(5);
  REQUIRE(upto5.size() == 2);
  CHECK(upto5[1].p == 3);
  CHECK(upto5[1].s == 5);

  const auto upto10 = geo::admissible_specs(10);
  const std::vector<std::pair<int, int>> expect = {
      {2, 3}, {3, 5}, {4, 7}, {5, 8}, {5, 9}, {7, 10}};
  REQUIRE(upto10.size() == expect.size());
  for (std::size_t i = 0; i < expect.size(); ++i) {
    CHECK(upto10[i].p == expect[i].first);
    CHECK(upto10[i].s == expect[i].second);
  }

  // every admissible ratio needs at least two full turns
  for (const auto& spec : geo::admissible_specs(50)) CHECK(spec.p >= 2);
}

TEST_CASE("solve_shape: hits the target angle and reproduces pinned moduli") {
  const double a23 = geo::solve_shape(2, {2, 3});
  CHECK(std::abs(geo::rotation_angle({2, a23}) - 2.0 * kPi * 2.0 / 3.0) <= 1e-10);
  CHECK(a23 == doctest::Approx(0.097805178755082212).epsilon(1e-12));

  const double a35 = geo::solve_shape(3, {3, 5});
  CHECK(std::abs(geo::rotation_angle({3, a35}) - 2.0 * kPi * 3.0 / 5.0) <= 1e-10);
  CHECK(a35 == doctest::Approx(0.0039825145123860766).epsilon(1e-12));

  for (const auto& spec : geo::admissible_specs(8)) {
    const double a = geo::solve_shape(3, spec);
    CHECK(std::abs(geo::rotation_angle({3, a}) - 2.0 * kPi * spec.p / spec.s) <= 1e-10);
  }
}

TEST_CASE("solve_shape: rejects inadmissible targets with a range message") {
  CHECK_THROWS_WITH_AS(geo::solve_shape(2, {1, 1}),
                       doctest::Contains("not admissible"), TargetOutOfRange);
  CHECK_THROWS_AS(geo::solve_shape(2, {5, 7}), TargetOutOfRange);
  CHECK_THROWS_AS(geo::solve_shape(2, {1, 2}), TargetOutOfRange);
  CHECK_THROWS_AS(geo::solve_shape(2, {2, 4}), TargetOutOfRange);
  CHECK_THROWS_AS(geo::solve_shape(1, {2, 3}), InvalidDimension);
  CHECK_THROWS_AS(geo::solve_shape(2, {2, 3}, 0.0), DomainError);
}

TEST_CASE("summarize: columns are mutually consistent") {
  for (const auto& [n, spec] : std::vector<std::pair<int, RotationSpec>>{
           {2, {2, 3}}, {3, {2, 3}}, {3, {3, 5}}, {4, {5, 8}}}) {
    const auto row = geo::summarize(n, spec);
    CHECK(row.n == n);
    CHECK(row.p == spec.p);
    CHECK(row.s == spec.s);
    CHECK(std::abs(row.K - 2.0 * kPi * spec.p / spec.s) <= 1e-10);
    CHECK(row.area == doctest::Approx(row.w * spec.p).epsilon(1e-14));
    CHECK(row.entropy == doctest::Approx(row.area / geo::sphere_area(n)).epsilon(1e-14));
    CHECK(row.clifford_ratio ==
          doctest::Approx(row.area / geo::clifford_area(n, 1)).epsilon(1e-14));

    // closing up: total area equals s copies of the fundamental piece
    const double piece =
        geo::sphere_area(n - 1) * geo::area_integral({n, row.a});
    CHECK(row.area == doctest::Approx(spec.s * piece).epsilon(1e-10));
  }
}

TEST_CASE("catalog: sorted by area with the smallest member first") {
  const auto rows = geo::catalog(2, 10);
  REQUIRE(rows.size() == 6);
  CHECK(rows.front().p == 2);
  CHECK(rows.front().s == 3);
  for (std::size_t i = 1; i < rows.size(); ++i) CHECK(rows[i].area > rows[i - 1].area);
  for (const auto& row : rows) CHECK(row.clifford_ratio > 2.0 * (1.0 - 1.0 / kPi));

  const auto single = geo::catalog(2, 3);
  REQUIRE(single.size() == 1);
  CHECK(single[0].s == 3);

  CHECK_THROWS_AS(geo::catalog(2, 2), DomainError);
}

TEST_CASE("catalog: byte-identical across thread budgets") {
  ::setenv("OTSUKI_THREADS", "4", 1);
  const auto threaded = geo::catalog(3, 8);
  ::setenv("OTSUKI_THREADS", "1", 1);
  const auto serial = geo::catalog(3, 8);
  ::unsetenv("OTSUKI_THREADS");
  REQUIRE(threaded.size() == serial.size());
  for (std::size_t i = 0; i < serial.size(); ++i) {
    CHECK(threaded[i].a == serial[i].a);
    CHECK(threaded[i].T == serial[i].T);
    CHECK(threaded[i].K == serial[i].K);
    CHECK(threaded[i].w == serial[i].w);
    CHECK(threaded[i].area == serial[i].area);
    CHECK(threaded[i].entropy == serial[i].entropy);
    CHECK(threaded[i].clifford_ratio == serial[i].clifford_ratio);
  }
}
