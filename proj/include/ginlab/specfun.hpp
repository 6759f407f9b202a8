#pragma once

#include <complex>

#include "ginlab/common.hpp"
#include "ginlab/scaled.hpp"

namespace ginlab::specfun {

struct SpecFunConfig {
  double rel_tol = 1e-14;  // relative accuracy target for series evaluations
  int max_terms = 100000;  // series cutoff
};

const SpecFunConfig& default_config();

/// Q(n,x) = Gamma(n,x)/Gamma(n) = e^{-x} sum_{l<n} x^l/l!, integer n >= 1.
/// Evaluated as a compensated sum anchored at the largest term, so it stays
/// accurate when e^{-x} alone would underflow.
double regularized_upper_gamma(int n, double x);

/// d/dx Q(n,x) = -e^{-x} x^{n-1}/Gamma(n)
double regularized_upper_gamma_dx(int n, double x);

/// Complementary error function (standard library rational approximation).
double erfc(double x);

/// log(erfc(x)), usable far into the underflow region of erfc itself.
double log_erfc(double x);

/// erf for complex argument, by quadrature along the ray 0..w.
cplx erf(cplx w);

/// I_x(a,b) for integer a,b >= 1 via the finite binomial identity
/// I_x(a,b) = 1 - (1-x)^b sum_{m<a} C(b-1+m,m) x^m.
double regularized_incomplete_beta(double x, int a, int b);

/// 1 - I_x(a,b), computed without cancellation (the binomial sum itself).
double regularized_incomplete_beta_comp(double x, int a, int b);

/// d/dx I_x(a,b) = x^{a-1}(1-x)^{b-1}/B(a,b)
double regularized_incomplete_beta_dx(double x, int a, int b);

/// Physicists' Hermite polynomial H_n(z) by upward recurrence. Throws
/// std::overflow_error once the value leaves double range; hermite_scaled
/// never overflows.
cplx hermite(int n, cplx z);
ScaledCplx hermite_scaled(int n, cplx z);

/// gamma*(n,x) = x^{-n} (1 - Gamma(n,x)/Gamma(n)); continuous at x=0 with
/// value 1/Gamma(n+1).
double gamma_star(int n, double x,
                  const SpecFunConfig& cfg = default_config());

/// Truncated exponential e_n(z) = sum_{l<n} z^l/l!, compensated summation.
cplx truncated_exp(int n, cplx z);

/// e^{log_prefactor} * sum_{l<n} z^l/l! in scaled form, anchored at the
/// largest term. This is the workhorse behind every kernel that folds a
/// Gaussian weight into a truncated exponential series.
ScaledCplx scaled_truncated_exp(cplx z, int n, double log_prefactor);

}  // namespace ginlab::specfun
