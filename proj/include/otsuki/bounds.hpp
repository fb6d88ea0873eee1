#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "otsuki/geometry.hpp"

namespace otsuki::bounds {

// Everything here lives in the substituted variable y = x^((2n-1)/2), where
// the area kernel becomes a constant multiple of 1/sqrt(f) and f admits
// piecewise quadratic envelopes with elementary integrals.
struct EnvelopeParams {
  int n = 2;
  double a = 0.0;
  double y1 = 0.0;   // image of the lower root
  double y2 = 0.0;   // image of the upper root
  double y_c = 0.0;  // image of the interior maximum, ((n-1)/n)^((2n-1)/2)
  double c = 0.0;    // left  coefficient of the upper envelope (sqrt-y form)
  double b = 0.0;    // right coefficient of the upper envelope
  double B = 0.0;    // right coefficient of the lower envelope, 1/(2n-1)
  double C = 0.0;    // left  coefficient of the lower envelope, equals b
  double A0 = 0.0;   // (2n-1)/4 * sqrt(2 a0); satisfies A0^2 = y_c / c = 1/(4b)
};

struct MarginPair {
  double h1_min = 0.0;  // min of (upper envelope - f), should be >= 0
  double h2_max = 0.0;  // max of (lower envelope - f), should be <= 0
};

struct EnvelopeIntegrals {
  double g1_left = 0.0;   // integral of 1/sqrt(g1) over [y1, y_c]
  double g1_right = 0.0;  // over [y_c, y2]
  double g2_left = 0.0;
  double g2_right = 0.0;
};

struct CertificateReport {
  std::string claim;
  bool passed = false;
  double margin = 0.0;
  long long samples = 0;
  std::string detail;
};

EnvelopeParams envelope_params(const geo::ShapeParameter& shape);

// f(y) = y^((2n-2)/(2n-1)) - y^(2n/(2n-1)) - a, defined for y in (0, 1].
double f_eval(const EnvelopeParams& params, double y);

// Piecewise envelopes on [y1, y2]. Both take their left branch on [y1, y_c]
// and their right branch above y_c; the one-sided values at y_c genuinely
// differ, the envelopes are not continuous there and are not meant to be.
double g1_eval(const EnvelopeParams& params, double y);
double g2_eval(const EnvelopeParams& params, double y);

// Signed extremes of g1 - f and g2 - f over [y1, y2]; the sample grid is
// uniform in sqrt(y) left of y_c, uniform in y right of it, and includes
// both one-sided values at y_c. samples >= 1000.
MarginPair envelope_margins(const EnvelopeParams& params, int samples = 10000);

// The four envelope integrals in closed form (arcsine antiderivatives) and
// by the singular quadrature, for cross-checking.
EnvelopeIntegrals closed_form_envelope_integrals(const EnvelopeParams& params);
EnvelopeIntegrals quadrature_envelope_integrals(const EnvelopeParams& params,
                                                int nodes = 128);

// I(a) = integral of 1/sqrt(f) over [y1, y2]; equals (2n-1)/2 times the
// geometry area integral.
double f_integral(const EnvelopeParams& params, int nodes = 128);

// Geometric grid of moduli inside (a0 * 1e-6, a0 * (1 - 1e-6)).
std::vector<double> default_a_grid(int n, int points);

// I(a) stays above (2 - 2/pi) A0 pi across the grid; margin is the worst
// relative slack.
CertificateReport certify_theorem1(int n, std::span<const double> a_grid,
                                   int nodes = 128);

// Every catalog member except (2,3) has clifford_ratio above 3 (1 - 1/pi).
CertificateReport certify_corollary2(int n, int s_max = 10, double tol = 1e-10,
                                     int nodes = 128);

// The area minimum over the catalog is attained at (2,3) or (3,5); margin is
// the relative gap to the best of the remaining entries. s_max >= 7.
CertificateReport certify_theorem3(int n, int s_max = 50, double tol = 1e-10,
                                   int nodes = 128);

// The (2,3) member stays below three clifford areas; margin = 3 - ratio.
CertificateReport certify_theorem4(int n, double tol = 1e-10, int nodes = 128);

// h1 >= 0 and h2 <= 0 certificates (to grid tolerance 1e-12) over a list of
// moduli; returns the g1 report and the g2 report.
std::pair<CertificateReport, CertificateReport> certify_envelopes(
    int n, std::span<const double> a_list, int samples = 10000);

}  // namespace otsuki::bounds
