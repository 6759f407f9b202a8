#pragma once

#include <optional>
#include <vector>

#include "ginlab/common.hpp"

namespace ginlab::gaps {

/// Gap probability H(s;0) and nearest-neighbor spacing density p(s;0) at the
/// origin. N = nullopt means the large-N limit; the product over radial modes
/// is truncated adaptively once factors are indistinguishable from 1.

/// H(s;0) = prod_{n=1}^{N-1} Q(n+1, s^2) for the complex Ginibre ensemble.
double gap_ginibre(std::optional<int> N, double s);

/// p(s;0) = -dH/ds by logarithmic differentiation of the product.
double nn_density_ginibre(std::optional<int> N, double s);

/// H(s;0) = prod_{m=1}^{M-1} (1 - I_{s^2}(m+1, L)) for truncated unitaries.
double gap_truncation(int M, int L, double s);

double nn_density_truncation(int M, int L, double s);

struct GapCurve {
  std::vector<double> s_grid;
  std::vector<double> H_values;
};

GapCurve gap_curve_ginibre(std::optional<int> N, double s_max, double step);
GapCurve gap_curve_truncation(int M, int L, double s_max, double step);

}  // namespace ginlab::gaps
