#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace otsuki::num {

// Gauss-Legendre nodes and weights on [-1, 1], cached per order.
struct GaussRule {
  std::vector<double> x;
  std::vector<double> w;
};

const GaussRule& gauss_legendre(int order);

struct BracketedProblem {
  std::function<double(double)> function;
  double lo = 0.0;
  double hi = 0.0;
  double tolerance = 1e-14;
};

// Bisection with secant acceleration. Requires a sign change across [lo, hi].
// Stops when the bracket width or the best residual drops below tolerance;
// returns the evaluated point with the smallest |f| seen.
double bracketed_root(const BracketedProblem& problem);

// Integral of numerator(x) / sqrt(denominator(x)) over [x1, x2] where the
// denominator may vanish to first order at either endpoint (inverse square
// root singularity). Interior zeros are an error, not a feature.
struct SingularIntegral {
  std::function<double(double)> smooth_numerator;
  std::function<double(double)> singular_denominator;
  double x1 = 0.0;
  double x2 = 1.0;
  int nodes = 128;
};

double integrate_singular(const SingularIntegral& problem);

// Fixed-step classical Runge-Kutta. The full trajectory is kept: callers
// need dense output for exports and period checks, and step counts stay
// in the low thousands.
struct OdeState {
  double t = 0.0;
  std::vector<double> components;
};

using OdeRhs =
    std::function<void(double t, std::span<const double> y, std::span<double> dydt)>;

std::vector<OdeState> integrate_ode(const OdeRhs& rhs, const OdeState& initial,
                                    double t_end, int steps);

// Worker count: OTSUKI_THREADS when set to a positive integer, otherwise the
// hardware concurrency. Invalid values fall back to the default.
std::size_t thread_budget();

// Runs body(0..count-1) across the thread budget. Any exception from a task
// is rethrown on the caller's thread after all workers stop. Result ordering
// is the caller's concern; indices are handed out dynamically.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace otsuki::num
