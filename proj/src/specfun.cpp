#include "ginlab/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "ginlab/quadrature.hpp"

namespace ginlab::specfun {

namespace {

struct KahanSum {
  double s = 0.0, c = 0.0;
  void add(double t) {
    double y = t - c;
    double u = s + y;
    c = (u - s) - y;
    s = u;
  }
};

struct KahanSumC {
  cplx s{0.0, 0.0}, c{0.0, 0.0};
  void add(cplx t) {
    cplx y = t - c;
    cplx u = s + y;
    c = (u - s) - y;
    s = u;
  }
};

}  // namespace

const SpecFunConfig& default_config() {
  static const SpecFunConfig cfg{};
  return cfg;
}

double regularized_upper_gamma(int n, double x) {
  if (n < 1)
    throw std::invalid_argument("regularized_upper_gamma: n must be >= 1");
  if (x < 0.0)
    throw std::invalid_argument("regularized_upper_gamma: x must be >= 0");
  if (x == 0.0) return 1.0;

  // anchor at the largest term e^{-x} x^l / l!
  const int lstar = static_cast<int>(std::min<double>(n - 1, std::floor(x)));
  const double logt = lstar * std::log(x) - std::lgamma(lstar + 1.0) - x;
  if (logt < -745.0) return 0.0;  // every term underflows; x >> n here
  const double tstar = std::exp(logt);

  KahanSum sum;
  sum.add(tstar);
  double t = tstar;
  for (int l = lstar - 1; l >= 0; --l) {
    t *= (l + 1) / x;
    sum.add(t);
    if (t < 1e-18 * sum.s) break;
  }
  t = tstar;
  for (int l = lstar + 1; l < n; ++l) {
    t *= x / l;
    sum.add(t);
    if (t < 1e-18 * sum.s) break;
  }
  return std::min(1.0, std::max(0.0, sum.s));
}

double regularized_upper_gamma_dx(int n, double x) {
  if (n < 1 || x < 0.0)
    throw std::invalid_argument("regularized_upper_gamma_dx: bad arguments");
  if (x == 0.0) return (n == 1) ? -1.0 : 0.0;
  double lg = (n - 1) * std::log(x) - x - std::lgamma(static_cast<double>(n));
  return -std::exp(lg);
}

double erfc(double x) { return std::erfc(x); }

double log_erfc(double x) {
  if (x < 25.0) return std::log(std::erfc(x));
  // erfc(x) ~ e^{-x^2}/(x sqrt(pi)) (1 - 1/(2x^2) + 3/(4x^4) - ...)
  double ix2 = 1.0 / (x * x);
  double series =
      ix2 * (-0.5 + ix2 * (0.75 + ix2 * (-1.875 + ix2 * 6.5625)));
  return -x * x - std::log(x * kSqrtPi) + std::log1p(series);
}

cplx erf(cplx w) {
  if (w.imag() == 0.0) return {std::erf(w.real()), 0.0};
  // 2/sqrt(pi) * Int_0^1 w e^{-w^2 t^2} dt along the straight ray
  cplx w2 = w * w;
  cplx v = quad::integrate_c(
      [&](double t) { return std::exp(-w2 * (t * t)); }, 0.0, 1.0,
      {1e-13, 1e-300, 48});
  return 2.0 / kSqrtPi * w * v;
}

double regularized_incomplete_beta_comp(double x, int a, int b) {
  if (a < 1 || b < 1)
    throw std::invalid_argument("regularized_incomplete_beta: a,b >= 1");
  if (x < 0.0 || x > 1.0)
    throw std::invalid_argument("regularized_incomplete_beta: x in [0,1]");
  if (x == 0.0) return 1.0;
  if (x == 1.0) return 0.0;

  // S = (1-x)^b sum_{m<a} C(b-1+m,m) x^m, all terms positive.
  // T_0 = (1-x)^b, T_{m+1} = T_m * x * (b+m)/(m+1).
  const double log_t0 = b * std::log1p(-x);
  KahanSum sum;
  if (log_t0 > -700.0) {
    double t = std::exp(log_t0);
    sum.add(t);
    for (int m = 0; m + 1 < a; ++m) {
      t *= x * (b + m) / (m + 1.0);
      sum.add(t);
    }
  } else {
    // anchor at the largest term in log space
    const double lx = std::log(x);
    int mstar = static_cast<int>(std::min<double>(
        a - 1, std::max(0.0, std::floor((x * b - 1.0) / (1.0 - x)))));
    auto logterm = [&](int m) {
      return std::lgamma(b + m + 0.0) - std::lgamma(m + 1.0) -
             std::lgamma(static_cast<double>(b)) + m * lx + log_t0;
    };
    const double lts = logterm(mstar);
    if (lts < -745.0) return 0.0;
    const double ts = std::exp(lts);
    sum.add(ts);
    double t = ts;
    for (int m = mstar - 1; m >= 0; --m) {
      t /= x * (b + m) / (m + 1.0);
      sum.add(t);
      if (t < 1e-18 * sum.s) break;
    }
    t = ts;
    for (int m = mstar + 1; m < a; ++m) {
      t *= x * (b + m - 1) / static_cast<double>(m);
      sum.add(t);
      if (t < 1e-18 * sum.s) break;
    }
  }
  return std::min(1.0, std::max(0.0, sum.s));
}

double regularized_incomplete_beta(double x, int a, int b) {
  return 1.0 - regularized_incomplete_beta_comp(x, a, b);
}

double regularized_incomplete_beta_dx(double x, int a, int b) {
  if (a < 1 || b < 1 || x < 0.0 || x > 1.0)
    throw std::invalid_argument("regularized_incomplete_beta_dx: bad args");
  if (x == 0.0) return (a == 1) ? b : 0.0;
  if (x == 1.0) return (b == 1) ? a : 0.0;
  double lg = (a - 1) * std::log(x) + (b - 1) * std::log1p(-x) +
              std::lgamma(a + b + 0.0) - std::lgamma(a + 0.0) -
              std::lgamma(b + 0.0);
  return std::exp(lg);
}

ScaledCplx hermite_scaled(int n, cplx z) {
  if (n < 0) throw std::invalid_argument("hermite: n >= 0");
  if (n == 0) return ScaledCplx::one();
  cplx hm1(1.0, 0.0);
  cplx h = 2.0 * z;
  long e2 = 0;
  for (int k = 1; k < n; ++k) {
    cplx next = 2.0 * z * h - 2.0 * static_cast<double>(k) * hm1;
    hm1 = h;
    h = next;
    double m = std::max(std::fabs(h.real()), std::fabs(h.imag()));
    if (m > 0x1p500) {
      h *= 0x1p-500;
      hm1 *= 0x1p-500;
      e2 += 500;
    }
  }
  ScaledCplx r{h, e2};
  r.normalize();
  return r;
}

cplx hermite(int n, cplx z) { return hermite_scaled(n, z).value_checked(); }

double gamma_star(int n, double x, const SpecFunConfig& cfg) {
  if (n < 1) throw std::invalid_argument("gamma_star: n >= 1");
  if (x < 0.0) throw std::invalid_argument("gamma_star: x >= 0");
  if (x >= n + 1.0) {
    // Q is not close to 1 here, so 1-Q carries no cancellation
    double q = regularized_upper_gamma(n, x);
    return std::exp(-n * std::log(x)) * (1.0 - q);
  }
  // gamma*(n,x) = e^{-x} sum_{k>=0} x^k / (n (n+1) ... (n+k)) / Gamma(n)
  KahanSum sum;
  double t = 1.0 / n;
  sum.add(t);
  for (int k = 1; k < cfg.max_terms; ++k) {
    t *= x / (n + k);
    sum.add(t);
    if (t < cfg.rel_tol * sum.s) break;
  }
  return std::exp(-x - std::lgamma(static_cast<double>(n))) * sum.s;
}

cplx truncated_exp(int n, cplx z) {
  if (n < 1) throw std::invalid_argument("truncated_exp: n >= 1");
  KahanSumC sum;
  cplx term(1.0, 0.0);
  sum.add(term);
  for (int l = 1; l < n; ++l) {
    term *= z / static_cast<double>(l);
    sum.add(term);
  }
  return sum.s;
}

ScaledCplx scaled_truncated_exp(cplx z, int n, double log_prefactor) {
  if (n < 1) throw std::invalid_argument("scaled_truncated_exp: n >= 1");
  const double az = std::abs(z);
  if (az == 0.0) return scaled_exp(log_prefactor);

  const int lstar =
      static_cast<int>(std::min<double>(n - 1, std::floor(az)));
  // terms relative to the anchor term t* = z^{l*}/l*!
  const cplx ratio = z / az;  // unit modulus
  KahanSumC sum;
  sum.add(cplx(1.0, 0.0));
  cplx t(1.0, 0.0);
  for (int l = lstar - 1; l >= 0; --l) {
    t *= (l + 1.0) / z;
    sum.add(t);
    if (std::abs(t) < 1e-18 * std::abs(sum.s) && std::abs(t) < 1e-18) break;
  }
  t = cplx(1.0, 0.0);
  for (int l = lstar + 1; l < n; ++l) {
    t *= z / static_cast<double>(l);
    sum.add(t);
    if (std::abs(t) < 1e-18) break;
  }
  // t* in scaled form: |t*| = e^{l* ln az - lgamma(l*+1)}, phase (z/|z|)^{l*}
  double logmag =
      lstar * std::log(az) - std::lgamma(lstar + 1.0) + log_prefactor;
  cplx phase(1.0, 0.0);
  {
    cplx p = ratio;
    int e = lstar;
    while (e > 0) {
      if (e & 1) phase *= p;
      p *= p;
      e >>= 1;
    }
  }
  ScaledCplx r = scaled_exp(logmag) * (sum.s * phase);
  return r;
}

}  // namespace ginlab::specfun
