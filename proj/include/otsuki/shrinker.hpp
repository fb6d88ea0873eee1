#pragma once

#include <optional>
#include <string>
#include <vector>

#include "otsuki/geometry.hpp"

namespace otsuki::shrink {

struct EntropyRecord {
  int n = 2;
  std::string source;  // "round_sphere", "clifford", or "spec(p,s)"
  std::optional<geo::RotationSpec> spec;
  std::optional<double> a;
  double area = 0.0;
  double entropy = 0.0;
};

// Entropy of the cone over a minimal hypersurface of given area: area/sigma_n.
double cone_entropy(int n, double area);

// integral of t^n e^(-t^2/2) over [0, inf) = 2^((n-1)/2) Gamma((n+1)/2),
// by the exact half-integer Gamma recurrence.
double gaussian_moment(int n);

// 4 (pi - 1) sigma_{n-1} sqrt(a0) / sigma_n: every catalog cone's entropy
// must exceed this; the Clifford cone sits below it.
double entropy_threshold(int n);

// Round-sphere cone, Clifford cone, then every catalog entry in catalog
// order. Throws NumericalError if a catalog entropy fails the threshold.
std::vector<EntropyRecord> entropy_table(int n, int s_max, double tol = 1e-10,
                                         int nodes = 128);

}  // namespace otsuki::shrink
