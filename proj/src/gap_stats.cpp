#include "ginlab/gap_stats.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>

#include "ginlab/specfun.hpp"

namespace ginlab::gaps {

namespace sf = ginlab::specfun;

namespace {
constexpr double kOneMinusEps = 1.0 - 1e-16;
}

double gap_ginibre(std::optional<int> N, double s) {
  if (s < 0.0) throw std::invalid_argument("gap_ginibre: s >= 0");
  if (N && *N < 1) throw std::invalid_argument("gap_ginibre: N >= 1");
  if (s == 0.0) return 1.0;
  const double x = s * s;
  const int nmax = N ? (*N - 1) : std::numeric_limits<int>::max();
  double h = 1.0;
  for (int n = 1; n <= nmax; ++n) {
    double q = sf::regularized_upper_gamma(n + 1, x);
    h *= q;
    if (q > kOneMinusEps && n > x) break;  // remaining factors are 1
  }
  return h;
}

double nn_density_ginibre(std::optional<int> N, double s) {
  if (s < 0.0) throw std::invalid_argument("nn_density_ginibre: s >= 0");
  if (s == 0.0) return 0.0;
  const double x = s * s;
  const int nmax = N ? (*N - 1) : std::numeric_limits<int>::max();
  double h = 1.0;
  double dlog = 0.0;  // sum over n of (-dQ/dx)/Q
  for (int n = 1; n <= nmax; ++n) {
    double q = sf::regularized_upper_gamma(n + 1, x);
    h *= q;
    double mdq = -sf::regularized_upper_gamma_dx(n + 1, x);  // e^-x x^n / n!
    dlog += mdq / q;
    if (q > kOneMinusEps && mdq < 1e-18 * dlog && n > x) break;
  }
  return h * dlog * 2.0 * s;
}

double gap_truncation(int M, int L, double s) {
  if (M < 1 || L < 1) throw std::invalid_argument("gap_truncation: M,L >= 1");
  if (s < 0.0 || s >= 1.0)
    throw std::invalid_argument("gap_truncation: s in [0,1)");
  if (s == 0.0) return 1.0;
  const double x = s * s;
  double h = 1.0;
  for (int m = 1; m <= M - 1; ++m)
    h *= sf::regularized_incomplete_beta_comp(x, m + 1, L);
  return h;
}

double nn_density_truncation(int M, int L, double s) {
  if (M < 1 || L < 1)
    throw std::invalid_argument("nn_density_truncation: M,L >= 1");
  if (s < 0.0 || s >= 1.0)
    throw std::invalid_argument("nn_density_truncation: s in [0,1)");
  if (s == 0.0) return 0.0;
  const double x = s * s;
  double h = 1.0;
  double dlog = 0.0;
  for (int m = 1; m <= M - 1; ++m) {
    double comp = sf::regularized_incomplete_beta_comp(x, m + 1, L);
    h *= comp;
    dlog += sf::regularized_incomplete_beta_dx(x, m + 1, L) / comp;
  }
  return h * dlog * 2.0 * s;
}

namespace {
GapCurve build_curve(double s_max, double step,
                     const std::function<double(double)>& H) {
  if (step <= 0.0 || s_max < 0.0)
    throw std::invalid_argument("gap curve: bad grid");
  GapCurve c;
  int n = static_cast<int>(std::floor(s_max / step + 1e-9)) + 1;
  c.s_grid.reserve(n);
  c.H_values.reserve(n);
  for (int i = 0; i < n; ++i) {
    double s = i * step;
    c.s_grid.push_back(s);
    c.H_values.push_back(H(s));
  }
  return c;
}
}  // namespace

GapCurve gap_curve_ginibre(std::optional<int> N, double s_max, double step) {
  return build_curve(s_max, step, [&](double s) { return gap_ginibre(N, s); });
}

GapCurve gap_curve_truncation(int M, int L, double s_max, double step) {
  return build_curve(s_max, step,
                     [&](double s) { return gap_truncation(M, L, s); });
}

}  // namespace ginlab::gaps
