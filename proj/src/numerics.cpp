#include "otsuki/numerics.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <map>
#include <mutex>
#include <thread>

#include "otsuki/errors.hpp"

namespace otsuki::num {

namespace {

constexpr double kPi = 3.14159265358979323846;

}  // namespace

const GaussRule& gauss_legendre(int order) {
  if (order < 2) throw DomainError("gauss_legendre: order must be at least 2");
  static std::mutex mutex;
  static std::map<int, GaussRule> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find(order);
  if (it != cache.end()) return it->second;

  GaussRule rule;
  rule.x.assign(order, 0.0);
  rule.w.assign(order, 0.0);
  const int half = (order + 1) / 2;
  for (int i = 0; i < half; ++i) {
    // Chebyshev estimate of the i-th root of P_order, then Newton.
    double z = std::cos(kPi * (i + 0.75) / (order + 0.5));
    double pp = 0.0;
    for (int iter = 0; iter < 64; ++iter) {
      double p1 = 1.0;
      double p2 = 0.0;
      for (int j = 0; j < order; ++j) {
        const double p3 = p2;
        p2 = p1;
        p1 = ((2.0 * j + 1.0) * z * p2 - j * p3) / (j + 1.0);
      }
      pp = order * (z * p1 - p2) / (z * z - 1.0);
      const double dz = p1 / pp;
      z -= dz;
      if (std::abs(dz) < 1e-15) break;
    }
    rule.x[i] = -z;
    rule.x[order - 1 - i] = z;
    rule.w[i] = 2.0 / ((1.0 - z * z) * pp * pp);
    rule.w[order - 1 - i] = rule.w[i];
  }
  return cache.emplace(order, std::move(rule)).first->second;
}

double bracketed_root(const BracketedProblem& problem) {
  if (!(problem.tolerance > 0.0))
    throw DomainError("bracketed_root: tolerance must be positive");
  double lo = problem.lo;
  double hi = problem.hi;
  if (!(hi > lo)) throw DomainError("bracketed_root: bracket must satisfy lo < hi");
  const auto& f = problem.function;

  double flo = f(lo);
  double fhi = f(hi);
  if (!std::isfinite(flo) || !std::isfinite(fhi))
    throw NonFinite("bracketed_root: non-finite value at a bracket endpoint");
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if ((flo > 0.0) == (fhi > 0.0))
    throw NoSignChange("bracketed_root: no sign change across the bracket");

  const double tol = problem.tolerance;
  double best_x = std::abs(flo) <= std::abs(fhi) ? lo : hi;
  double best_f = std::min(std::abs(flo), std::abs(fhi));

  // Regula-falsi steps shrink only one side on convex stretches; after two
  // consecutive updates of the same side a bisection step is forced so the
  // bracket width provably halves often enough.
  int same_side = 0;
  int last_side = 0;
  for (int iter = 0; iter < 200; ++iter) {
    if (best_f <= tol || (hi - lo) <= tol) return best_x;

    double x;
    if (same_side < 2) {
      x = (lo * fhi - hi * flo) / (fhi - flo);
      if (!std::isfinite(x) || !(x > lo && x < hi)) x = 0.5 * (lo + hi);
    } else {
      x = 0.5 * (lo + hi);
      same_side = 0;
    }
    const double fx = f(x);
    if (!std::isfinite(fx)) throw NonFinite("bracketed_root: non-finite value at an iterate");
    if (std::abs(fx) < best_f) {
      best_f = std::abs(fx);
      best_x = x;
    }
    if (fx == 0.0) return x;

    if ((fx > 0.0) == (flo > 0.0)) {
      lo = x;
      flo = fx;
      same_side = (last_side == -1) ? same_side + 1 : 0;
      last_side = -1;
    } else {
      hi = x;
      fhi = fx;
      same_side = (last_side == +1) ? same_side + 1 : 0;
      last_side = +1;
    }
  }
  throw NonConvergence("bracketed_root: iteration cap reached");
}

namespace {

// The substitution x(phi) = m - h cos(phi) maps [0, pi] onto [x1, x2] and
// supplies the exact factorizations x - x1 = 2h sin^2(phi/2) and
// x2 - x = 2h cos^2(phi/2), which cancel the endpoint zeros of the
// denominator without subtractive loss. The transformed integrand
//   G(phi) = numerator(x) / sqrt(rho(x)),  rho = denominator / ((x-x1)(x2-x))
// is smooth up to the boundary, but its features can live on phi scales of
// order sqrt(relative x scale), so the rule grades panels dyadically toward
// both ends: the innermost panel has width (pi/2) * 2^-24, resolving
// x-features down to ~4e-15 of the interval. Every panel carries the same
// Gauss order, which keeps the node-doubling check meaningful.
constexpr int kGradeLevels = 24;

struct PanelRule {
  std::vector<double> weight;  // Gauss weight times panel half-width
  std::vector<double> sin2h;   // sin^2(phi/2)
  std::vector<double> cos2h;   // cos^2(phi/2)
};

const PanelRule& panel_rule(int nodes) {
  static std::mutex mutex;
  static std::map<int, PanelRule> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find(nodes);
  if (it != cache.end()) return it->second;

  const GaussRule& gauss = gauss_legendre(nodes);

  std::vector<double> edges;
  edges.push_back(0.0);
  for (int k = kGradeLevels; k >= 0; --k)
    edges.push_back((kPi / 2.0) * std::ldexp(1.0, -k));

  PanelRule rule;
  const std::size_t per_half = edges.size() - 1;
  rule.weight.reserve(2 * per_half * nodes);
  rule.sin2h.reserve(2 * per_half * nodes);
  rule.cos2h.reserve(2 * per_half * nodes);

  auto add_panel = [&](double a, double b) {
    const double mid = 0.5 * (a + b);
    const double halfw = 0.5 * (b - a);
    for (int j = 0; j < nodes; ++j) {
      const double phi = mid + halfw * gauss.x[j];
      const double s = std::sin(0.5 * phi);
      const double c = std::cos(0.5 * phi);
      rule.weight.push_back(halfw * gauss.w[j]);
      rule.sin2h.push_back(s * s);
      rule.cos2h.push_back(c * c);
    }
  };

  for (std::size_t k = 0; k + 1 < edges.size(); ++k) add_panel(edges[k], edges[k + 1]);
  for (std::size_t k = edges.size() - 1; k >= 1; --k)
    add_panel(kPi - edges[k], kPi - edges[k - 1]);

  return cache.emplace(nodes, std::move(rule)).first->second;
}

}  // namespace

double integrate_singular(const SingularIntegral& problem) {
  if (problem.nodes < 8) throw DomainError("integrate_singular: nodes must be at least 8");
  const double x1 = problem.x1;
  const double x2 = problem.x2;
  if (!(x2 > x1)) throw DomainError("integrate_singular: interval must satisfy x1 < x2");
  const auto& den = problem.singular_denominator;
  const auto& num = problem.smooth_numerator;

  const double width = x2 - x1;

  // Interior magnitude, used to decide whether an endpoint value counts as a
  // genuine zero of the denominator.
  double scale = 0.0;
  for (double frac : {0.25, 0.5, 0.75})
    scale = std::max(scale, std::abs(den(x1 + frac * width)));
  if (!(scale > 0.0))
    throw DenominatorNonpositive("integrate_singular: denominator vanishes in the interior");

  const double layer = 1e-6 * width;
  const double fd = 1e-5 * width;

  const bool vanish1 = std::abs(den(x1)) <= 1e-7 * scale;
  const bool vanish2 = std::abs(den(x2)) <= 1e-7 * scale;

  // At a vanishing endpoint rho extends continuously with the value
  // d'(x1)/(x2-x1) resp. -d'(x2)/(x2-x1); within the boundary layer the
  // ratio formula is blended linearly toward that limit, which keeps the
  // regularized integrand continuous instead of introducing a plateau.
  double rho1 = 0.0, rho1_edge = 0.0;
  double rho2 = 0.0, rho2_edge = 0.0;
  if (vanish1) {
    const double d1 = (-3.0 * den(x1) + 4.0 * den(x1 + fd) - den(x1 + 2.0 * fd)) / (2.0 * fd);
    rho1 = d1 / width;
    rho1_edge = den(x1 + layer) / (layer * (width - layer));
    if (!(rho1 > 0.0) || !(rho1_edge > 0.0))
      throw DenominatorNonpositive(
          "integrate_singular: denominator does not grow off the left endpoint");
  }
  if (vanish2) {
    const double d2 = (3.0 * den(x2) - 4.0 * den(x2 - fd) + den(x2 - 2.0 * fd)) / (2.0 * fd);
    rho2 = -d2 / width;
    rho2_edge = den(x2 - layer) / ((width - layer) * layer);
    if (!(rho2 > 0.0) || !(rho2_edge > 0.0))
      throw DenominatorNonpositive(
          "integrate_singular: denominator does not grow off the right endpoint");
  }

  const PanelRule& rule = panel_rule(problem.nodes);
  const double twoh = width;  // 2h with h the cosine amplitude (x2-x1)/2

  double acc = 0.0;
  const std::size_t count = rule.weight.size();
  for (std::size_t i = 0; i < count; ++i) {
    const double u = twoh * rule.sin2h[i];  // x - x1, exact in phi space
    const double v = twoh * rule.cos2h[i];  // x2 - x
    const double x = (u <= v) ? x1 + u : x2 - v;

    double rho;
    if (vanish1 && u < layer) {
      rho = rho1 + (rho1_edge - rho1) * (u / layer);
    } else if (vanish2 && v < layer) {
      rho = rho2 + (rho2_edge - rho2) * (v / layer);
    } else {
      const double d = den(x);
      if (!(d > 0.0))
        throw DenominatorNonpositive(
            "integrate_singular: denominator not positive inside the interval");
      rho = d / (u * v);
    }
    if (!(rho > 0.0))
      throw DenominatorNonpositive("integrate_singular: regularized denominator not positive");

    const double g = num(x) / std::sqrt(rho);
    if (!std::isfinite(g))
      throw NonFinite("integrate_singular: non-finite integrand sample");
    acc += rule.weight[i] * g;
  }
  return acc;
}

std::vector<OdeState> integrate_ode(const OdeRhs& rhs, const OdeState& initial,
                                    double t_end, int steps) {
  if (steps < 100) throw DomainError("integrate_ode: steps must be at least 100");
  if (initial.components.empty())
    throw DomainError("integrate_ode: state must have at least one component");
  if (!(t_end > initial.t))
    throw DomainError("integrate_ode: t_end must exceed the initial time");

  const std::size_t dim = initial.components.size();
  const double h = (t_end - initial.t) / steps;

  std::vector<OdeState> path;
  path.reserve(static_cast<std::size_t>(steps) + 1);
  path.push_back(initial);

  std::vector<double> y = initial.components;
  std::vector<double> k1(dim), k2(dim), k3(dim), k4(dim), work(dim);

  for (int i = 1; i <= steps; ++i) {
    const double t = initial.t + (i - 1) * h;
    rhs(t, y, k1);
    for (std::size_t j = 0; j < dim; ++j) work[j] = y[j] + 0.5 * h * k1[j];
    rhs(t + 0.5 * h, work, k2);
    for (std::size_t j = 0; j < dim; ++j) work[j] = y[j] + 0.5 * h * k2[j];
    rhs(t + 0.5 * h, work, k3);
    for (std::size_t j = 0; j < dim; ++j) work[j] = y[j] + h * k3[j];
    rhs(t + h, work, k4);
    for (std::size_t j = 0; j < dim; ++j) {
      y[j] += (h / 6.0) * (k1[j] + 2.0 * k2[j] + 2.0 * k3[j] + k4[j]);
      if (!std::isfinite(y[j]))
        throw NonFinite("integrate_ode: state became non-finite");
    }
    OdeState state;
    state.t = initial.t + i * h;
    state.components = y;
    path.push_back(std::move(state));
  }
  return path;
}

std::size_t thread_budget() {
  if (const char* env = std::getenv("OTSUKI_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && end && *end == '\0' && v >= 1)
      return static_cast<std::size_t>(v);
  }
  const unsigned hc = std::thread::hardware_concurrency();
  return hc > 0 ? hc : 1;
}

void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body) {
  const std::size_t workers = std::min(thread_budget(), count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }

  std::atomic<std::size_t> next{0};
  std::atomic<bool> bail{false};
  std::exception_ptr error;
  std::mutex error_mutex;

  auto drain = [&]() {
    while (!bail.load(std::memory_order_relaxed)) {
      const std::size_t i = next.fetch_add(1, std::memory_order_relaxed);
      if (i >= count) return;
      try {
        body(i);
      } catch (...) {
        {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!error) error = std::current_exception();
        }
        bail.store(true, std::memory_order_relaxed);
        return;
      }
    }
  };

  std::vector<std::thread> pool;
  pool.reserve(workers - 1);
  for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(drain);
  drain();
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace otsuki::num
