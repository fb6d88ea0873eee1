#include "otsuki/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <string>
#include <vector>

#include "otsuki/errors.hpp"
#include "otsuki/numerics.hpp"

namespace otsuki::bounds {

namespace {

constexpr double kPi = 3.14159265358979323846;

std::string num_str(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

// Each envelope piece is a downward parabola (in sqrt(y) on the left of g1,
// in y elsewhere) written as coeff * (d - e) * (d + e) so the zero at the
// outer endpoint, where e reproduces d exactly, is exact in floating point.
double piece_g1_left(const EnvelopeParams& p, double y) {
  const double d = std::sqrt(p.y1) - std::sqrt(p.y_c);
  const double e = std::sqrt(y) - std::sqrt(p.y_c);
  return p.c * (d - e) * (d + e);
}

double piece_g1_right(const EnvelopeParams& p, double y) {
  const double d = p.y2 - p.y_c;
  const double e = y - p.y_c;
  return p.b * (d - e) * (d + e);
}

double piece_g2_left(const EnvelopeParams& p, double y) {
  const double d = p.y1 - p.y_c;
  const double e = y - p.y_c;
  return p.C * (d - e) * (d + e);
}

double piece_g2_right(const EnvelopeParams& p, double y) {
  const double d = p.y2 - p.y_c;
  const double e = y - p.y_c;
  return p.B * (d - e) * (d + e);
}

double piece_quadrature(const EnvelopeParams& p, double lo, double hi,
                        double (*piece)(const EnvelopeParams&, double),
                        int nodes) {
  num::SingularIntegral si;
  si.smooth_numerator = [](double) { return 1.0; };
  si.singular_denominator = [&p, piece](double y) { return piece(p, y); };
  si.x1 = lo;
  si.x2 = hi;
  si.nodes = nodes;
  return num::integrate_singular(si);
}

}  // namespace

EnvelopeParams envelope_params(const geo::ShapeParameter& shape) {
  const auto roots = geo::find_roots(shape);
  const double n = shape.n;
  const double tn = 2.0 * n - 1.0;
  EnvelopeParams p;
  p.n = shape.n;
  p.a = shape.a;
  p.y1 = geo::pow_half(roots.x1, 2 * shape.n - 1);
  p.y2 = geo::pow_half(roots.x2, 2 * shape.n - 1);
  p.y_c = geo::pow_half((n - 1.0) / n, 2 * shape.n - 1);
  p.c = 8.0 * std::sqrt(n * (n - 1.0)) / (tn * tn);
  p.b = 2.0 * (n - 1.0) / (tn * tn) * geo::ipow(n / (n - 1.0), shape.n);
  p.B = 1.0 / tn;
  p.C = p.b;
  p.A0 = tn / 4.0 * std::sqrt(2.0 * geo::critical_parameter(shape.n));
  return p;
}

double f_eval(const EnvelopeParams& params, double y) {
  if (!(y > 0.0) || y > 1.0 + 1e-12) {
    throw DomainError("f_eval: y must lie in (0, 1]");
  }
  const double t = std::pow(y, 2.0 / (2.0 * params.n - 1.0));
  return geo::ipow(t, params.n - 1) * (1.0 - t) - params.a;
}

double g1_eval(const EnvelopeParams& params, double y) {
  const double slack = 1e-12 * (params.y2 - params.y1);
  if (y < params.y1 - slack || y > params.y2 + slack) {
    throw DomainError("g1_eval: y outside [y1, y2]");
  }
  return y <= params.y_c ? piece_g1_left(params, y) : piece_g1_right(params, y);
}

double g2_eval(const EnvelopeParams& params, double y) {
  const double slack = 1e-12 * (params.y2 - params.y1);
  if (y < params.y1 - slack || y > params.y2 + slack) {
    throw DomainError("g2_eval: y outside [y1, y2]");
  }
  return y <= params.y_c ? piece_g2_left(params, y) : piece_g2_right(params, y);
}

MarginPair envelope_margins(const EnvelopeParams& params, int samples) {
  if (samples < 1000) {
    throw DomainError("envelope_margins: samples must be at least 1000");
  }
  MarginPair out;
  out.h1_min = std::numeric_limits<double>::infinity();
  out.h2_max = -out.h1_min;
  const auto take = [&](double y, double g1, double g2) {
    const double f = f_eval(params, y);
    out.h1_min = std::min(out.h1_min, g1 - f);
    out.h2_max = std::max(out.h2_max, g2 - f);
  };
  // Left of y_c the grid is uniform in sqrt(y) (the variable in which g1 is
  // a parabola); right of it, uniform in y. Both one-sided limits at y_c are
  // hit: the left loop ends on the left branch at y_c, the right loop opens
  // on the right branch there.
  const int m_left = samples / 2;
  const int m_right = samples - m_left;
  const double u1 = std::sqrt(params.y1);
  const double uc = std::sqrt(params.y_c);
  for (int i = 0; i < m_left; ++i) {
    const double u = u1 + (uc - u1) * (static_cast<double>(i) / (m_left - 1));
    const double y = std::min(u * u, params.y_c);
    take(y, piece_g1_left(params, y), piece_g2_left(params, y));
  }
  for (int i = 0; i < m_right; ++i) {
    const double y =
        params.y_c +
        (params.y2 - params.y_c) * (static_cast<double>(i) / (m_right - 1));
    take(y, piece_g1_right(params, y), piece_g2_right(params, y));
  }
  return out;
}

EnvelopeIntegrals closed_form_envelope_integrals(const EnvelopeParams& params) {
  // All four are arcsine integrals. The g1-left piece carries an extra
  // linear term from the sqrt(y) substitution:
  //   int dy / sqrt(g1) = (2/sqrt(c)) * (pi/2 * sqrt(y_c) - (sqrt(y_c) - sqrt(y1)))
  // which collapses to (1 - 2/pi + (2/pi) sqrt(y1/y_c)) A0 pi via A0^2 = y_c/c.
  EnvelopeIntegrals out;
  const double ry1 = std::sqrt(params.y1);
  const double ryc = std::sqrt(params.y_c);
  out.g1_left = 2.0 / std::sqrt(params.c) * (0.5 * kPi * ryc - (ryc - ry1));
  out.g1_right = 0.5 * kPi / std::sqrt(params.b);
  out.g2_left = 0.5 * kPi / std::sqrt(params.C);
  out.g2_right = 0.5 * kPi / std::sqrt(params.B);
  return out;
}

EnvelopeIntegrals quadrature_envelope_integrals(const EnvelopeParams& params,
                                                int nodes) {
  EnvelopeIntegrals out;
  out.g1_left = piece_quadrature(params, params.y1, params.y_c, piece_g1_left, nodes);
  out.g1_right = piece_quadrature(params, params.y_c, params.y2, piece_g1_right, nodes);
  out.g2_left = piece_quadrature(params, params.y1, params.y_c, piece_g2_left, nodes);
  out.g2_right = piece_quadrature(params, params.y_c, params.y2, piece_g2_right, nodes);
  return out;
}

double f_integral(const EnvelopeParams& params, int nodes) {
  num::SingularIntegral si;
  si.smooth_numerator = [](double) { return 1.0; };
  si.singular_denominator = [&params](double y) { return f_eval(params, y); };
  si.x1 = params.y1;
  si.x2 = params.y2;
  si.nodes = nodes;
  return num::integrate_singular(si);
}

std::vector<double> default_a_grid(int n, int points) {
  if (points < 2) {
    throw DomainError("default_a_grid: need at least 2 points");
  }
  const double a0 = geo::critical_parameter(n);
  const double lo = a0 * 1e-6;
  const double hi = a0 * (1.0 - 1e-6);
  const double span = std::log(hi / lo);
  std::vector<double> grid(points);
  for (int i = 0; i < points; ++i) {
    grid[i] = lo * std::exp(span * (static_cast<double>(i) / (points - 1)));
  }
  return grid;
}

CertificateReport certify_theorem1(int n, std::span<const double> a_grid,
                                   int nodes) {
  if (a_grid.empty()) {
    throw DomainError("certify_theorem1: empty modulus grid");
  }
  const double a0 = geo::critical_parameter(n);
  const double x_floor = 2.0 * (1.0 - 1.0 / kPi) * std::sqrt(2.0 * a0) * kPi;
  double base_margin = std::numeric_limits<double>::infinity();
  double strong_margin = base_margin;
  double x_margin = base_margin;
  double worst_a = 0.0;
  for (const double a : a_grid) {
    const geo::ShapeParameter shape{n, a};
    const auto params = envelope_params(shape);
    const double value = f_integral(params, nodes);
    const double base = (2.0 - 2.0 / kPi) * params.A0 * kPi;
    const double strong =
        (2.0 - 2.0 / kPi + (2.0 / kPi) * std::sqrt(params.y1 / params.y_c)) *
        params.A0 * kPi;
    if (value / base - 1.0 < base_margin) {
      base_margin = value / base - 1.0;
      worst_a = a;
    }
    strong_margin = std::min(strong_margin, value / strong - 1.0);
    // Same inequality before the y-substitution, computed through the
    // geometry kernel as an independent route.
    const double x_form = 2.0 * geo::area_integral(shape, nodes);
    x_margin = std::min(x_margin, x_form / x_floor - 1.0);
  }
  CertificateReport report;
  report.claim = "theorem1";
  report.samples = static_cast<long long>(a_grid.size());
  report.margin = base_margin;
  if (strong_margin <= 0.0 || x_margin <= 0.0) {
    report.margin = std::min({base_margin, strong_margin, x_margin});
  }
  report.passed = report.margin > 0.0;
  report.detail = "min I(a)/((2-2/pi) A0 pi) - 1 = " + num_str(base_margin) +
                  " at a = " + num_str(worst_a) +
                  "; sharpened-bound margin " + num_str(strong_margin) +
                  "; x-form margin " + num_str(x_margin);
  return report;
}

CertificateReport certify_corollary2(int n, int s_max, double tol, int nodes) {
  const auto rows = geo::catalog(n, s_max, tol, nodes);
  const double floor = 3.0 * (1.0 - 1.0 / kPi);
  double margin = std::numeric_limits<double>::infinity();
  const geo::GeometrySummary* worst = nullptr;
  long long considered = 0;
  for (const auto& row : rows) {
    if (row.p == 2 && row.s == 3) continue;
    ++considered;
    const double m = row.clifford_ratio / floor - 1.0;
    if (m < margin) {
      margin = m;
      worst = &row;
    }
  }
  if (worst == nullptr) {
    throw DomainError(
        "certify_corollary2: no catalog entries besides (2,3); raise s_max");
  }
  CertificateReport report;
  report.claim = "corollary2";
  report.samples = considered;
  report.margin = margin;
  report.passed = margin > 0.0;
  report.detail = "every entry except (2,3) clears 3(1-1/pi) = " +
                  num_str(floor) + "; tightest is (" +
                  std::to_string(worst->p) + "," + std::to_string(worst->s) +
                  ") with ratio " + num_str(worst->clifford_ratio);
  return report;
}

CertificateReport certify_theorem3(int n, int s_max, double tol, int nodes) {
  if (s_max < 7) {
    throw DomainError("certify_theorem3: s_max must be at least 7");
  }
  const auto rows = geo::catalog(n, s_max, tol, nodes);
  const double inf = std::numeric_limits<double>::infinity();
  double best_pair_area = inf;
  double min_other_area = inf;
  const geo::GeometrySummary* ratio47 = nullptr;
  double tail_margin = inf;  // entries beyond (2,3), (3,5), (4,7)
  for (const auto& row : rows) {
    const bool in_pair = (row.p == 2 && row.s == 3) || (row.p == 3 && row.s == 5);
    if (in_pair) {
      best_pair_area = std::min(best_pair_area, row.area);
    } else {
      min_other_area = std::min(min_other_area, row.area);
    }
    if (row.p == 4 && row.s == 7) {
      ratio47 = &row;
    } else if (!in_pair) {
      tail_margin =
          std::min(tail_margin,
                   row.clifford_ratio / (5.0 * (1.0 - 1.0 / kPi)) - 1.0);
    }
  }
  // s_max >= 7 guarantees (2,3), (3,5) and (4,7) are all present.
  const double head_margin = min_other_area / best_pair_area - 1.0;
  const double floor47 = 4.0 * (1.0 - 1.0 / kPi) * 7.0 * std::sqrt(2.0) / 8.0;
  const double margin47 = ratio47->clifford_ratio / floor47 - 1.0;
  const double margin47_vs3 = ratio47->clifford_ratio / 3.0 - 1.0;
  CertificateReport report;
  report.claim = "theorem3";
  report.samples = static_cast<long long>(rows.size());
  report.margin = std::min({head_margin, margin47, margin47_vs3, tail_margin});
  report.passed = report.margin > 0.0;
  const auto& argmin = rows.front();
  report.detail = "area minimum at (" + std::to_string(argmin.p) + "," +
                  std::to_string(argmin.s) + "); gap to next family " +
                  num_str(head_margin) + "; (4,7) ratio " +
                  num_str(ratio47->clifford_ratio) + " vs floor " +
                  num_str(floor47) + "; tail margin " + num_str(tail_margin);
  return report;
}

CertificateReport certify_theorem4(int n, double tol, int nodes) {
  const double a0 = geo::critical_parameter(n);
  const auto summary = geo::summarize(n, geo::RotationSpec{2, 3}, tol, nodes);
  const auto params = envelope_params({n, summary.a});
  const double value = f_integral(params, nodes);
  const double coeff = 1.0 + std::sqrt(2.0 / ((2.0 * n - 1.0) * a0));
  const double headline = 4.0 / std::sqrt(2.0);  // I < (4/sqrt 2) A0 pi <=> ratio < 3
  const double upper_margin = 1.0 - value / (coeff * params.A0 * kPi);
  const double coeff_margin =
      (n >= 4 ? 25.0 / 9.0 : headline) - coeff;  // chain constant ordering
  CertificateReport report;
  report.claim = "theorem4";
  report.samples = 1;
  report.margin = 3.0 - summary.clifford_ratio;
  if (upper_margin <= 0.0 || coeff_margin <= 0.0) {
    report.margin = std::min({report.margin, upper_margin, coeff_margin});
  }
  report.passed = report.margin > 0.0;
  report.detail = "clifford ratio " + num_str(summary.clifford_ratio) +
                  " at a = " + num_str(summary.a) + "; I = " + num_str(value) +
                  " vs upper " + num_str(coeff * params.A0 * kPi) +
                  " and headline " + num_str(headline * params.A0 * kPi);
  return report;
}

std::pair<CertificateReport, CertificateReport> certify_envelopes(
    int n, std::span<const double> a_list, int samples) {
  if (a_list.empty()) {
    throw DomainError("certify_envelopes: empty modulus list");
  }
  const double inf = std::numeric_limits<double>::infinity();
  double h1_min = inf;
  double h2_max = -inf;
  double h1_at = 0.0;
  double h2_at = 0.0;
  for (const double a : a_list) {
    const auto params = envelope_params({n, a});
    const auto margins = envelope_margins(params, samples);
    if (margins.h1_min < h1_min) {
      h1_min = margins.h1_min;
      h1_at = a;
    }
    if (margins.h2_max > h2_max) {
      h2_max = margins.h2_max;
      h2_at = a;
    }
  }
  const double grid_tol = 1e-12;
  CertificateReport g1;
  g1.claim = "envelope_g1";
  g1.samples = static_cast<long long>(a_list.size()) * samples;
  g1.margin = h1_min + grid_tol;
  g1.passed = g1.margin > 0.0;
  g1.detail = "min(g1 - f) = " + num_str(h1_min) + " at a = " + num_str(h1_at) +
              "; grid tolerance " + num_str(grid_tol);
  CertificateReport g2;
  g2.claim = "envelope_g2";
  g2.samples = g1.samples;
  g2.margin = grid_tol - h2_max;
  g2.passed = g2.margin > 0.0;
  g2.detail = "max(g2 - f) = " + num_str(h2_max) + " at a = " + num_str(h2_at) +
              "; grid tolerance " + num_str(grid_tol);
  return {g1, g2};
}

}  // namespace otsuki::bounds
