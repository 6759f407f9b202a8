#include "ginlab/det_kernels.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "ginlab/quadrature.hpp"
#include "ginlab/specfun.hpp"

namespace ginlab::detk {

namespace sf = ginlab::specfun;

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// integer power of a complex number in scaled form
ScaledCplx scaled_ipow(cplx base, long e) {
  ScaledCplx r = ScaledCplx::one();
  ScaledCplx p{base, 0};
  p.normalize();
  bool invert = e < 0;
  unsigned long k = invert ? -e : e;
  while (k) {
    if (k & 1) r = r * p;
    p = p * p;
    k >>= 1;
  }
  if (invert) {
    // 1/r
    cplx inv = cplx(1.0, 0.0) / r.mant;
    ScaledCplx q{inv, -r.e2};
    q.normalize();
    return q;
  }
  return r;
}

}  // namespace

DetKernel::DetKernel(const EnsembleSpec& spec) : spec_(spec) {
  spec_.validate();
  if (spec_.sym != SymmetryClass::Complex)
    throw std::invalid_argument("DetKernel: complex symmetry class only");
}

DetKernel DetKernel::ginibre(int n) {
  return DetKernel(EnsembleSpec::circular(SymmetryClass::Complex, n));
}

DetKernel DetKernel::elliptic(int n, double tau) {
  return DetKernel(EnsembleSpec::elliptic(SymmetryClass::Complex, n, tau));
}

DetKernel DetKernel::truncated_unitary(int m, int l) {
  return DetKernel(EnsembleSpec::truncated_unitary(m, l));
}

double DetKernel::log_weight(cplx z) const {
  const double x = z.real(), y = z.imag();
  switch (spec_.variant) {
    case VariantKind::Circular:
      return -(x * x + y * y);
    case VariantKind::Elliptic: {
      const double t = spec_.tau;
      return -std::log(kPi * std::sqrt(1.0 - t * t)) - x * x / (1.0 + t) -
             y * y / (1.0 - t);
    }
    case VariantKind::TruncatedUnitary: {
      double r2 = x * x + y * y;
      if (r2 >= 1.0) return kNegInf;
      return (spec_.trunc_l - 1) * std::log1p(-r2);
    }
  }
  return kNegInf;
}

double DetKernel::weight(cplx z) const {
  double lw = log_weight(z);
  return lw == kNegInf ? 0.0 : std::exp(lw);
}

ScaledCplx DetKernel::truncation_kernel_binomial(cplx z1, cplx z2) const {
  const int m = spec_.trunc_m, l = spec_.trunc_l;
  const cplx x = z1 * std::conj(z2);
  // sum_{k<M} C(L+k,k) x^k, scaled accumulation
  ScaledCplx sum = ScaledCplx::one();
  ScaledCplx term = ScaledCplx::one();
  for (int k = 0; k + 1 < m; ++k) {
    term = term * (x * ((l + k + 1.0) / (k + 1.0)));
    sum = sum + term;
  }
  double lw = 0.5 * (log_weight(z1) + log_weight(z2));
  if (lw == kNegInf) return ScaledCplx::zero();
  return scaled_by_log(sum * (l / kPi), lw);
}

ScaledCplx DetKernel::truncation_kernel_beta(cplx z1, cplx z2) const {
  const int m = spec_.trunc_m, l = spec_.trunc_l;
  const cplx x = z1 * std::conj(z2);
  const cplx omx = 1.0 - x;
  // 1 - I_x(M,L+1) = sum_{j<M} C(M+L,j) x^j (1-x)^{M+L-j}
  const int n = m + l;
  ScaledCplx term = scaled_ipow(omx, n);
  ScaledCplx sum = term;
  for (int j = 0; j + 1 < m; ++j) {
    term = term * (x / omx * ((n - j) / (j + 1.0)));
    sum = sum + term;
  }
  ScaledCplx pre = scaled_ipow(omx, -(static_cast<long>(l) + 1));
  double lw = 0.5 * (log_weight(z1) + log_weight(z2));
  if (lw == kNegInf) return ScaledCplx::zero();
  return scaled_by_log(sum * pre * (l / kPi), lw);
}

ScaledCplx DetKernel::kernel_scaled(cplx z1, cplx z2) const {
  switch (spec_.variant) {
    case VariantKind::Circular: {
      const double lw =
          -0.5 * (std::norm(z1) + std::norm(z2));
      ScaledCplx s =
          sf::scaled_truncated_exp(z1 * std::conj(z2), spec_.dim, lw);
      return s * (1.0 / kPi);
    }
    case VariantKind::Elliptic: {
      // K = w^{1/2}(z1) w^{1/2}(z2) sum_n p_n(z1) p_n(conj z2)/n! with the
      // monic scaled-Hermite family p_{n+1} = z p_n - n tau p_{n-1}
      const double t = spec_.tau;
      const cplx u = z1;
      const cplx v = std::conj(z2);
      ScaledCplx pu_prev = ScaledCplx::zero(), pu = ScaledCplx::one();
      ScaledCplx pv_prev = ScaledCplx::zero(), pv = ScaledCplx::one();
      ScaledCplx sum = ScaledCplx::zero();
      double lgn = 0.0;  // log n!
      for (int n = 0; n < spec_.dim; ++n) {
        if (n > 0) lgn += std::log(static_cast<double>(n));
        sum = sum + scaled_by_log(pu * pv, -lgn);
        ScaledCplx pu_next = pu * u - pu_prev * (t * n);
        pu_prev = pu;
        pu = pu_next;
        ScaledCplx pv_next = pv * v - pv_prev * (t * n);
        pv_prev = pv;
        pv = pv_next;
      }
      double lw = 0.5 * (log_weight(z1) + log_weight(z2));
      return scaled_by_log(sum, lw);
    }
    case VariantKind::TruncatedUnitary: {
      if (std::abs(1.0 - z1 * std::conj(z2)) < 1e-3)
        return truncation_kernel_binomial(z1, z2);
      return truncation_kernel_beta(z1, z2);
    }
  }
  return ScaledCplx::zero();
}

cplx DetKernel::kernel(cplx z1, cplx z2) const {
  return kernel_scaled(z1, z2).value_checked();
}

double DetKernel::density(cplx z) const {
  return kernel_scaled(z, z).value().real();
}

double DetKernel::correlation(std::span<const cplx> pts) const {
  const int n = static_cast<int>(pts.size());
  if (n < 1 || n > 8)
    throw std::invalid_argument("correlation: 1 <= n <= 8 points");
  Eigen::MatrixXcd k(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) k(i, j) = kernel(pts[i], pts[j]);
  cplx det = k.determinant();
  double scale = std::max(1e-300, std::abs(det));
  if (std::fabs(det.imag()) > 1e-10 * scale + 1e-13)
    throw std::runtime_error("correlation: non-real determinant");
  return det.real();
}

double ginibre_bulk_limit_correlation(std::span<const cplx> pts) {
  const int n = static_cast<int>(pts.size());
  if (n < 1 || n > 8)
    throw std::invalid_argument("bulk correlation: 1 <= n <= 8 points");
  Eigen::MatrixXcd m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      m(i, j) = std::exp(pts[i] * std::conj(pts[j]) -
                         0.5 * (std::norm(pts[i]) + std::norm(pts[j])));
  cplx det = m.determinant();
  return det.real() * std::pow(kPi, -n);
}

double ginibre_edge_profile(double x) {
  return 0.5 / kPi * sf::erfc(std::sqrt(2.0) * x);
}

double truncation_strong_density(int M, int L, cplx z) {
  if (M < 1 || L < 1)
    throw std::invalid_argument("truncation_strong_density: M,L >= 1");
  const double r2 = std::norm(z);
  if (r2 >= 1.0)
    throw std::domain_error("truncation_strong_density: |z| < 1 required");
  const double comp = sf::regularized_incomplete_beta_comp(r2, M, L + 1);
  const double d = 1.0 - r2;
  return L / kPi * comp / (d * d);
}

double truncation_weak_density(int L, double y) {
  if (L < 1) throw std::invalid_argument("truncation_weak_density: L >= 1");
  if (!(y > 0.0))
    throw std::invalid_argument("truncation_weak_density: y > 0");
  double integral = quad::integrate(
      [&](double t) { return std::exp(-2.0 * y * t) * std::pow(t, L); }, 0.0,
      1.0, {1e-12, 1e-300, 48});
  double lg = (L - 1) * std::log(2.0 * y) - std::lgamma(static_cast<double>(L));
  return std::exp(lg) * integral / kPi;
}

double truncation_weak_correlation(
    int L, std::span<const std::pair<double, double>> pts) {
  const int n = static_cast<int>(pts.size());
  if (n < 1 || n > 6)
    throw std::invalid_argument("truncation_weak_correlation: 1 <= n <= 6");
  Eigen::MatrixXcd m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      cplx c(pts[i].first + pts[j].first, pts[i].second - pts[j].second);
      m(i, j) = quad::integrate_c(
          [&](double t) { return std::exp(-c * t) * std::pow(t, L); }, 0.0,
          1.0, {1e-12, 1e-300, 48});
    }
  double lg = 0.0;
  for (int j = 0; j < n; ++j)
    lg += (L - 1) * std::log(2.0 * pts[j].first) -
          std::lgamma(static_cast<double>(L)) - std::log(kPi);
  cplx det = m.determinant();
  double r = det.real() * std::exp(lg);
  double scale = std::abs(det) * std::exp(lg);
  if (std::fabs(det.imag()) * std::exp(lg) > 1e-10 * scale + 1e-13)
    throw std::runtime_error("truncation_weak_correlation: non-real result");
  return r;
}

double semicircle_density(int N, double x) {
  double r = 2.0 * std::sqrt(static_cast<double>(N));
  if (std::fabs(x) > r)
    throw std::domain_error("semicircle_density: |x| <= 2 sqrt(N)");
  return std::sqrt(N - 0.25 * x * x) / kPi;
}

double control_parameter(double alpha, double x, int N) {
  return alpha * semicircle_density(N, x) / std::sqrt(static_cast<double>(N));
}

double weak_correlation(const WeakLimitContext& ctx,
                        std::span<const cplx> zetas) {
  const int n = static_cast<int>(zetas.size());
  if (n < 1 || n > 6)
    throw std::invalid_argument("weak_correlation: 1 <= n <= 6");
  if (!(ctx.a > 0.0)) throw std::invalid_argument("weak_correlation: a > 0");
  const double a = ctx.a;
  Eigen::MatrixXcd m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      cplx d = zetas[i] - std::conj(zetas[j]);
      m(i, j) = quad::integrate_c(
          [&](double u) {
            return std::exp(-kPi * kPi * a * a * u * u) *
                   std::cos(kPi * u * d);
          },
          0.0, 1.0, {1e-12, 1e-300, 48});
    }
  double lg = 0.0;
  for (int j = 0; j < n; ++j) {
    double yj = zetas[j].imag();
    lg += -std::log(kSqrtPi * a) - yj * yj / (a * a);
  }
  cplx det = m.determinant();
  if (std::fabs(det.imag()) > 1e-10 * std::abs(det) + 1e-13)
    throw std::runtime_error("weak_correlation: non-real determinant");
  return det.real() * std::exp(lg);
}

double weak_density(const WeakLimitContext& ctx, cplx zeta) {
  if (!(ctx.a > 0.0)) throw std::invalid_argument("weak_density: a > 0");
  const double a = ctx.a;
  const double y = zeta.imag();
  double integral = quad::integrate(
      [&](double u) {
        return std::exp(-kPi * kPi * a * a * u * u) *
               std::cosh(2.0 * kPi * u * y);
      },
      0.0, 1.0, {1e-12, 1e-300, 48});
  return std::exp(-y * y / (a * a)) * integral / (kSqrtPi * a);
}

cplx mehler_closed_form(double tau, cplx z1, cplx z2) {
  if (!(tau >= 0.0 && tau < 1.0))
    throw std::domain_error("mehler_closed_form: tau in [0,1)");
  const double d = 1.0 - tau * tau;
  cplx z2c = std::conj(z2);
  return std::exp(z1 * z2c / d - tau * (z1 * z1 + z2c * z2c) / (2.0 * d)) /
         std::sqrt(d);
}

}  // namespace ginlab::detk
