#include "ginlab/pfaff_kernels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "ginlab/quadrature.hpp"
#include "ginlab/specfun.hpp"

namespace ginlab::pfaff {

namespace sf = ginlab::specfun;

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

template <typename Mat>
typename Mat::Scalar pfaffian_impl(Mat& a, double* log_accum,
                                   typename Mat::Scalar* phase_accum) {
  using Scalar = typename Mat::Scalar;
  const long n = a.rows();
  if (n != a.cols() || n % 2 != 0)
    throw std::invalid_argument("pfaffian: even-dimensional square matrix");
  double norm = a.norm();
  if ((a + a.transpose()).norm() > 1e-12 * std::max(1.0, norm))
    throw std::invalid_argument("pfaffian: matrix is not antisymmetric");
  if (n == 0) return Scalar(1);

  Scalar pf(1);  // collects swap signs (and pivots when not logging)
  for (long k = 0; k + 1 < n; k += 2) {
    // pivot: largest entry in column k below row k
    long p = k + 1;
    double best = std::abs(a(k + 1, k));
    for (long i = k + 2; i < n; ++i) {
      double v = std::abs(a(i, k));
      if (v > best) {
        best = v;
        p = i;
      }
    }
    if (best == 0.0) return Scalar(0);
    if (p != k + 1) {
      a.row(p).swap(a.row(k + 1));
      a.col(p).swap(a.col(k + 1));
      pf = -pf;
    }
    const Scalar piv = a(k, k + 1);
    if (log_accum) {
      *log_accum += std::log(std::abs(piv));
      *phase_accum *= piv / std::abs(piv);
    } else {
      pf *= piv;
    }
    for (long i = k + 2; i < n; ++i) {
      for (long j = i + 1; j < n; ++j) {
        Scalar upd =
            (a(k, i) * a(k + 1, j) - a(k, j) * a(k + 1, i)) / piv;
        a(i, j) += upd;
        a(j, i) = -a(i, j);
      }
    }
  }
  return pf;
}

}  // namespace

cplx pfaffian(Eigen::MatrixXcd a) {
  return pfaffian_impl(a, nullptr, nullptr);
}

double pfaffian(Eigen::MatrixXd a) {
  return pfaffian_impl(a, nullptr, nullptr);
}

std::pair<double, cplx> log_pfaffian(Eigen::MatrixXcd a) {
  double lg = 0.0;
  cplx phase(1.0, 0.0);
  cplx sign = pfaffian_impl(a, &lg, &phase);
  if (sign == cplx(0.0, 0.0))
    return {kNegInf, cplx(0.0, 0.0)};
  return {lg, phase * sign};
}

// ---------------------------------------------------------------- SkewBasis

SkewBasis::SkewBasis(SymmetryClass cls, double tau, int N)
    : cls_(cls), tau_(tau), n_(N) {
  if (cls != SymmetryClass::Real && cls != SymmetryClass::Quaternion)
    throw std::invalid_argument("SkewBasis: real or quaternion class");
  if (N < 2 || N % 2 != 0)
    throw std::invalid_argument("SkewBasis: N must be even and >= 2");
  if (!(tau >= 0.0 && tau < 1.0))
    throw std::invalid_argument("SkewBasis: tau in [0,1) (negative tau has "
                                "no finite-N basis here)");
  if (N <= 64) {
    // p-coefficients by the monic recurrence, then the family combinations
    std::vector<std::vector<double>> p(N);
    p[0] = {1.0};
    if (N > 1) p[1] = {0.0, 1.0};
    for (int n = 1; n + 1 < N; ++n) {
      std::vector<double> next(n + 2, 0.0);
      for (int j = 0; j <= n; ++j) next[j + 1] += p[n][j];
      for (int j = 0; j < n; ++j) next[j] -= n * tau_ * p[n - 1][j];
      p[n + 1] = std::move(next);
    }
    coeffs_.resize(N);
    for (int k = 0; k < N; ++k) {
      if (cls_ == SymmetryClass::Real) {
        coeffs_[k] = p[k];
        if (k % 2 == 1 && k >= 3) {
          int m = k - 1;  // P_{2n+1} = p_{2n+1} - 2n p_{2n-1}, 2n = k-1
          for (std::size_t j = 0; j < p[k - 2].size(); ++j)
            coeffs_[k][j] -= m * p[k - 2][j];
        }
      } else {
        if (k % 2 == 1) {
          coeffs_[k] = p[k];
        } else {
          coeffs_[k] = p[k];
          if (k >= 2) {  // P_{2n} = p_{2n} + 2n P_{2n-2}
            for (std::size_t j = 0; j < coeffs_[k - 2].size(); ++j)
              coeffs_[k][j] += k * coeffs_[k - 2][j];
          }
        }
      }
    }
  }
}

const std::vector<std::vector<double>>& SkewBasis::coeffs() const {
  if (coeffs_.empty())
    throw std::logic_error("SkewBasis: coefficients stored only for N <= 64");
  return coeffs_;
}

std::vector<ScaledCplx> SkewBasis::eval_all(cplx z) const {
  std::vector<ScaledCplx> p(n_);
  p[0] = ScaledCplx::one();
  if (n_ > 1) {
    p[1] = ScaledCplx{z, 0};
    p[1].normalize();
  }
  for (int n = 1; n + 1 < n_; ++n)
    p[n + 1] = p[n] * z - p[n - 1] * (tau_ * n);

  std::vector<ScaledCplx> out(n_);
  if (cls_ == SymmetryClass::Real) {
    for (int k = 0; k < n_; ++k) {
      out[k] = p[k];
      if (k % 2 == 1 && k >= 3)
        out[k] = out[k] - p[k - 2] * static_cast<double>(k - 1);
    }
  } else {
    for (int k = 0; k < n_; ++k) {
      if (k % 2 == 1) {
        out[k] = p[k];
      } else {
        out[k] = p[k];
        if (k >= 2) out[k] = out[k] + out[k - 2] * static_cast<double>(k);
      }
    }
  }
  return out;
}

double SkewBasis::log_r(int k) const {
  if (k < 0 || k >= n_) throw std::out_of_range("SkewBasis::log_r");
  const int j = k / 2;
  if (cls_ == SymmetryClass::Real) {
    // r_{2j} = r_{2j+1} = 2 sqrt(2 pi) (2j)! (1+tau)
    return std::log(2.0 * kSqrt2Pi) + std::lgamma(2.0 * j + 1.0) +
           std::log1p(tau_);
  }
  // r_{2j} = r_{2j+1} = 2 pi (2j+1)! (1-tau)
  return std::log(kTwoPi) + std::lgamma(2.0 * j + 2.0) + std::log1p(-tau_);
}

// --------------------------------------------------------------- PfaffKernel

PfaffKernel::PfaffKernel(SymmetryClass cls, double tau, int N)
    : basis_(cls, tau, N) {}

ScaledCplx PfaffKernel::kernel_skew_sum(cplx z1, cplx z2) const {
  const int n = basis_.dim();
  std::vector<ScaledCplx> a = basis_.eval_all(z1);
  std::vector<ScaledCplx> b = basis_.eval_all(z2);
  ScaledCplx sum = ScaledCplx::zero();
  for (int j = 0; 2 * j + 1 < n; ++j) {
    ScaledCplx t = a[2 * j + 1] * b[2 * j] - a[2 * j] * b[2 * j + 1];
    sum = sum + scaled_by_log(t, -basis_.log_r(2 * j));
  }
  return sum;
}

ScaledCplx PfaffKernel::kernel_scaled(cplx z1, cplx z2) const {
  if (basis_.symmetry() == SymmetryClass::Real && basis_.tau() == 0.0)
    return real_circular_kernel_closed(basis_.dim(), z1, z2);
  return kernel_skew_sum(z1, z2);
}

cplx PfaffKernel::kernel(cplx z1, cplx z2) const {
  return kernel_scaled(z1, z2).value_checked();
}

double PfaffKernel::log_f2(cplx z) const {
  return pfaff::log_f2(basis_.symmetry(), basis_.tau(), z);
}

double PfaffKernel::f_weight(cplx z) const {
  double l = log_f2(z);
  return l == kNegInf ? 0.0 : std::exp(0.5 * l);
}

double PfaffKernel::density_complex(cplx z) const {
  if (!(z.imag() > 0.0))
    throw std::invalid_argument("density_complex: Im z > 0");
  double lf = log_f2(z);
  if (lf == kNegInf) return 0.0;
  ScaledCplx k = kernel_scaled(z, std::conj(z));
  if (k.is_zero()) return 0.0;
  return std::exp(std::log(2.0) + lf + k.log_abs());
}

double PfaffKernel::density_real_axis(double x) const {
  if (basis_.symmetry() != SymmetryClass::Real)
    return 0.0;  // qu-r matrices have no real eigenvalues
  const double t = basis_.tau();
  const double sig = std::sqrt(1.0 - t * t);
  const double w = 16.0 * sig + 4.0;
  // f(u) K(u,x) assembled in log space; the kernel alone can leave double
  // range where the weight would pull it back
  auto integrand = [&](double u) {
    ScaledCplx k = kernel_scaled(cplx(u, 0.0), cplx(x, 0.0));
    if (k.is_zero()) return 0.0;
    double lg = 0.5 * log_f2(cplx(u, 0.0)) + k.log_abs();
    return (k.mant.real() >= 0.0 ? 1.0 : -1.0) * std::exp(lg);
  };
  double fx = std::exp(0.5 * log_f2(cplx(x, 0.0)));
  quad::QuadOptions opt{1e-10, 1e-14, 48};
  double right = quad::integrate(integrand, x, x + w, opt);
  double left = quad::integrate(integrand, x - w, x, opt);
  return fx * (right - left);
}

double PfaffKernel::correlations_upper(std::span<const cplx> pts) const {
  const int n = static_cast<int>(pts.size());
  if (n < 1 || n > 4)
    throw std::invalid_argument("correlations_upper: 1 <= n <= 4");
  for (const cplx& z : pts)
    if (!(z.imag() > 0.0))
      throw std::invalid_argument("correlations_upper: points must have Im > 0");

  const double t = basis_.tau();
  // per-point balancing exponents; Pf(D M D) = Pf(M) since prod D = 1
  auto h = [&](cplx z) {
    return (0.5 * std::norm(z) - 0.5 * t * (z * z).real()) / (1.0 - t * t);
  };
  std::vector<double> hs(n), lf(n);
  for (int i = 0; i < n; ++i) {
    hs[i] = h(pts[i]);
    lf[i] = log_f2(pts[i]);
  }
  auto entry = [&](cplx a, cplx b, double lg) {
    ScaledCplx k = kernel_scaled(a, b);
    if (k.is_zero()) return cplx(0.0, 0.0);
    return scaled_by_log(k, lg).value_checked();
  };

  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(2 * n, 2 * n);
  const cplx mtwoi(0.0, -2.0);
  for (int k = 0; k < n; ++k) {
    for (int l = 0; l < n; ++l) {
      cplx kk = entry(pts[k], pts[l], -hs[k] - hs[l]);
      cplx gg = mtwoi * entry(pts[k], std::conj(pts[l]), lf[l] - hs[k] + hs[l]);
      cplx glk =
          mtwoi * entry(pts[l], std::conj(pts[k]), lf[k] - hs[l] + hs[k]);
      cplx ww = -4.0 * entry(std::conj(pts[k]), std::conj(pts[l]),
                             lf[k] + lf[l] + hs[k] + hs[l]);
      m(2 * k, 2 * l) = kk;
      m(2 * k, 2 * l + 1) = gg;
      m(2 * k + 1, 2 * l) = -glk;
      m(2 * k + 1, 2 * l + 1) = ww;
    }
  }
  // enforce exact antisymmetry against rounding of the shared code path
  Eigen::MatrixXcd am = 0.5 * (m - m.transpose());
  cplx pf = pfaffian(am);
  double scale = std::max(std::abs(pf), 1e-300);
  if (std::fabs(pf.imag()) > 1e-8 * scale + 1e-12)
    throw std::runtime_error("correlations_upper: non-real Pfaffian");
  return pf.real();
}

// ------------------------------------------------------------ free functions

double log_f2(SymmetryClass cls, double tau, cplx z) {
  const double x = z.real();
  const double ay = std::fabs(z.imag());
  const double d = 1.0 - tau * tau;
  if (cls == SymmetryClass::Real) {
    return sf::log_erfc(std::sqrt(2.0 / d) * ay) -
           (x * x - ay * ay) / (1.0 + tau);
  }
  if (cls == SymmetryClass::Quaternion) {
    if (ay == 0.0) return kNegInf;
    return std::log(2.0 * ay / std::sqrt(d)) - x * x / (1.0 + tau) -
           ay * ay / (1.0 - tau);
  }
  throw std::invalid_argument("log_f2: real or quaternion class");
}

double f_weight(SymmetryClass cls, double tau, cplx z) {
  if (!(tau > -1.0 && tau < 1.0))
    throw std::invalid_argument("f_weight: |tau| < 1");
  double l = log_f2(cls, tau, z);
  return l == kNegInf ? 0.0 : std::exp(0.5 * l);
}

ScaledCplx real_circular_kernel_closed(int N, cplx z1, cplx z2) {
  if (N < 2) throw std::invalid_argument("real kernel: N >= 2");
  ScaledCplx s = sf::scaled_truncated_exp(z1 * z2, N - 1, 0.0);
  return s * ((z1 - z2) / (2.0 * kSqrt2Pi));
}

cplx quaternion_circular_kernel_series(int N, cplx z1, cplx z2) {
  if (N < 2 || N % 2 != 0)
    throw std::invalid_argument("quaternion kernel: N even, >= 2");
  // -(1/sqrt(2pi)) sum_{k odd, l even, k<l} c_k c_l (z1^{k-1} z2^{l-1} -
  //  z2^{k-1} z1^{l-1}),  c_k = 2^{-k/2}/Gamma((k+1)/2)
  cplx sum(0.0, 0.0);
  for (int k = 1; k <= N; k += 2) {
    double ck =
        std::exp(-0.5 * k * kLn2 - std::lgamma(0.5 * (k + 1.0)));
    for (int l = k + 1; l <= N; l += 2) {
      double cl =
          std::exp(-0.5 * l * kLn2 - std::lgamma(0.5 * (l + 1.0)));
      cplx term = std::pow(z1, k - 1) * std::pow(z2, l - 1) -
                  std::pow(z2, k - 1) * std::pow(z1, l - 1);
      sum += ck * cl * term;
    }
  }
  return -sum / kSqrt2Pi;
}

double reg_lower_gamma_half(double s, double x) {
  if (!(s > 0.0)) throw std::invalid_argument("reg_lower_gamma_half: s > 0");
  if (x < 0.0) throw std::invalid_argument("reg_lower_gamma_half: x >= 0");
  if (x == 0.0) return 0.0;
  if (x < s) {
    // all-positive series; the upward recurrence cancels here
    double term = 1.0 / s;
    double sum = term;
    for (int k = 1; k < 200000; ++k) {
      term *= x / (s + k);
      sum += term;
      if (term < 1e-17 * sum) break;
    }
    return std::exp(s * std::log(x) - x - std::lgamma(s)) * sum;
  }
  double a;
  double p;
  if (std::fabs(s - std::floor(s) - 0.5) < 1e-9) {
    a = 0.5;
    p = std::erf(std::sqrt(x));
  } else {
    a = 1.0;
    p = -std::expm1(-x);
  }
  while (a < s - 1e-9) {
    p -= std::exp(a * std::log(x) - x - std::lgamma(a + 1.0));
    a += 1.0;
  }
  return std::min(1.0, std::max(0.0, p));
}

double density_real(int N, double x) {
  if (N < 2) throw std::invalid_argument("density_real: N >= 2");
  const double x2 = x * x;
  double term1 = sf::regularized_upper_gamma(N - 1, x2) / kSqrt2Pi;
  if (x == 0.0) return term1;
  double p = reg_lower_gamma_half(0.5 * (N - 1), 0.5 * x2);
  if (p <= 0.0) return term1;
  double lg = -0.5 * x2 + (N - 1) * std::log(std::fabs(x)) -
              0.5 * N * kLn2 - std::lgamma(0.5 * N) + std::log(p);
  return term1 + std::exp(lg);
}

double expected_real_count(int N) {
  if (N < 1) throw std::invalid_argument("expected_real_count: N >= 1");
  if (N == 1) return 1.0;
  // t = 1 - u^2 removes the (1-t)^{-3/2} endpoint singularity
  auto g = [&](double u) {
    double u2 = u * u;
    double one_minus = -std::expm1((N - 1) * std::log1p(-u2));
    return std::sqrt(1.0 - u2) * one_minus / (u2 * (2.0 - u2));
  };
  double integral =
      2.0 * quad::integrate(g, 0.0, 1.0, {1e-12, 1e-300, 48});
  return 1.0 + std::sqrt(2.0) / kPi * integral;
}

double log_normalization(SymmetryClass cls, double tau, int N) {
  if (N < 2 || N % 2 != 0)
    throw std::invalid_argument("log_normalization: N even, >= 2");
  double lg = 0.0;
  if (cls == SymmetryClass::Real) {
    // 1/C_N = (2 sqrt(2pi))^{N/2} 0! 2! ... (N-2)!
    lg = 0.5 * N * std::log(2.0 * kSqrt2Pi);
    for (int k = 0; k <= N - 2; k += 2) lg += std::lgamma(k + 1.0);
    lg += 0.5 * N * std::log1p(tau);
  } else if (cls == SymmetryClass::Quaternion) {
    // 1/C_N = (2 pi)^{N/2} 1! 3! ... (N-1)!
    lg = 0.5 * N * std::log(kTwoPi);
    for (int k = 1; k <= N - 1; k += 2) lg += std::lgamma(k + 1.0);
    lg += 0.5 * N * std::log1p(-tau);
  } else {
    throw std::invalid_argument("log_normalization: real or quaternion");
  }
  return lg;
}

namespace {

double a_coeff(int k) {  // a_k = 2^{k/2} Gamma(k/2)
  return std::exp(0.5 * k * kLn2 + std::lgamma(0.5 * k));
}

// eps = tridiag(+1 below, -1 above); eps_inv upper triangle: 1 at (k odd,
// l even), k < l, 1-based
double eps_inv_entry(int k, int l) {
  if (k == l) return 0.0;
  if (k < l) return (k % 2 == 1 && l % 2 == 0) ? 1.0 : 0.0;
  return -eps_inv_entry(l, k);
}

double eps_entry(int k, int l) {
  if (l == k + 1) return -1.0;
  if (k == l + 1) return 1.0;
  return 0.0;
}

}  // namespace

SkewMoments skew_moment_matrix(SymmetryClass cls, double tau, int N) {
  if (N < 2 || N % 2 != 0)
    throw std::invalid_argument("skew_moment_matrix: N even, >= 2");
  SkewMoments m;
  m.A = Eigen::MatrixXd::Zero(N, N);
  m.Ainv = Eigen::MatrixXd::Zero(N, N);
  if (tau == 0.0) {
    for (int k = 1; k <= N; ++k) {
      for (int l = 1; l <= N; ++l) {
        if (cls == SymmetryClass::Real) {
          m.A(k - 1, l - 1) = a_coeff(k) * a_coeff(l) * eps_inv_entry(k, l);
          m.Ainv(k - 1, l - 1) = eps_entry(k, l) / (a_coeff(k) * a_coeff(l));
        } else {
          m.A(k - 1, l - 1) = -std::sqrt(kPi / 2.0) * a_coeff(k + 1) *
                              a_coeff(l + 1) * eps_entry(k, l);
          m.Ainv(k - 1, l - 1) = -std::sqrt(2.0 / kPi) *
                                 eps_inv_entry(k, l) /
                                 (a_coeff(k + 1) * a_coeff(l + 1));
        }
      }
    }
    return m;
  }

  if (N > 10)
    throw std::invalid_argument(
        "skew_moment_matrix: elliptic moments are quadrature-based, N <= 10");
  // A_kl = <z1^{k-1}, z2^{l-1}> under the skew form F
  const double sp = std::sqrt(1.0 + tau);
  const double sm = std::sqrt(1.0 - tau);
  const double bx = 14.0 * sp + 4.0;
  const double by = 14.0 * sm + 4.0;
  for (int k = 1; k <= N; ++k) {
    for (int l = k + 1; l <= N; ++l) {
      // delta part: 4 Int_{UHP} f^2(z) Im(conj(z)^{k-1} z^{l-1})
      auto fub = [&](double x, double y) {
        cplx z(x, y);
        double lf = log_f2(cls, tau, z);
        if (lf == kNegInf) return 0.0;
        cplx g = std::pow(std::conj(z), k - 1) * std::pow(z, l - 1);
        return 4.0 * std::exp(lf) * g.imag();
      };
      double val =
          quad::integrate_2d(fub, -bx, bx, 0.0, by, {1e-9, 1e-12, 40});
      if (cls == SymmetryClass::Real) {
        // real-line part with the sgn factor, by a fixed Gauss grid
        const int gn = 160;
        auto [xs, ws] = quad::gauss_legendre_nodes(gn);
        std::vector<double> t(gn), wt(gn), fv(gn);
        for (int i = 0; i < gn; ++i) {
          t[i] = bx * xs[i];
          wt[i] = bx * ws[i];
          fv[i] = std::exp(0.5 * log_f2(cls, tau, cplx(t[i], 0.0)));
        }
        double s = 0.0;
        for (int i = 0; i < gn; ++i)
          for (int j = 0; j < gn; ++j) {
            if (i == j) continue;
            double sgn = (t[j] > t[i]) ? 1.0 : -1.0;
            s += wt[i] * wt[j] * fv[i] * fv[j] * sgn *
                 std::pow(t[i], k - 1) * std::pow(t[j], l - 1);
          }
        val += s;
      }
      m.A(k - 1, l - 1) = val;
      m.A(l - 1, k - 1) = -val;
    }
  }
  m.Ainv = m.A.fullPivLu().inverse();
  return m;
}

cplx limit_kernel(SymmetryClass cls, LimitRegime regime, const LimitParams& p,
                  cplx z1, cplx z2) {
  const bool real_cls = cls == SymmetryClass::Real;
  if (!real_cls && cls != SymmetryClass::Quaternion)
    throw std::invalid_argument("limit_kernel: real or quaternion class");
  switch (regime) {
    case LimitRegime::CircularBulk: {
      if (real_cls)
        return (z1 - z2) * std::exp(z1 * z2) / (2.0 * kSqrt2Pi);
      if (z1 == z2)
        throw std::domain_error("limit_kernel: qu-r circular pole at z1=z2");
      return std::exp(z1 * z2) / (kTwoPi * (z2 - z1));
    }
    case LimitRegime::EllipticBulk: {
      const double t = p.tau;
      if (!(t > -1.0 && t < 1.0))
        throw std::invalid_argument("limit_kernel: |tau| < 1");
      const double d = 1.0 - t * t;
      if (real_cls) {
        return (z1 - z2) / (2.0 * kSqrt2Pi * d * std::sqrt(d)) *
               std::exp(z1 * z2 / d - t * (z1 * z1 + z2 * z2) / (2.0 * d));
      }
      return std::exp((z1 * z1 + z2 * z2) / (2.0 * (1.0 + t))) *
             sf::erf((z1 - z2) / std::sqrt(2.0 * d)) /
             (2.0 * kSqrt2Pi * d);
    }
    case LimitRegime::Weak: {
      if (!(p.a > 0.0) || p.N < 1)
        throw std::invalid_argument("limit_kernel: weak regime needs a, N");
      const double a2 = p.a * p.a;  // = N (1 - tau)
      const double rn = std::sqrt(static_cast<double>(p.N));
      const cplx d = z1 - z2;
      if (real_cls) {
        cplx integral = quad::integrate_c(
            [&](double u) {
              return u * std::exp(-a2 * u * u) * std::sin(rn * u * d);
            },
            0.0, 1.0, {1e-12, 1e-300, 48});
        return p.N / kTwoPi * integral;
      }
      cplx integral = quad::integrate_c(
          [&](double u) {
            return std::exp(-a2 * u * u) * std::sin(rn * u * d) / u;
          },
          1e-12, 1.0, {1e-12, 1e-300, 48});
      return kPi * kSqrtPi / (4.0 * p.a * a2) * integral;
    }
  }
  throw std::invalid_argument("limit_kernel: unknown regime");
}

WeakProfile weak_density_profile(SymmetryClass cls, double y, double a) {
  if (!(a > 0.0)) throw std::invalid_argument("weak_density_profile: a > 0");
  WeakProfile w;
  const double pa2 = kPi * kPi * a * a;
  if (cls == SymmetryClass::Real) {
    w.singular_weight = quad::integrate(
        [&](double u) { return std::exp(-pa2 * u * u); }, 0.0, 1.0,
        {1e-12, 1e-300, 48});
    const double ay = std::fabs(y);
    double integral = quad::integrate(
        [&](double u) {
          return u * std::exp(-pa2 * u * u) * std::sinh(kTwoPi * u * ay);
        },
        0.0, 1.0, {1e-12, 1e-300, 48});
    w.smooth = kPi * sf::erfc(ay / a) * integral;
    return w;
  }
  if (cls == SymmetryClass::Quaternion) {
    if (y < 0.0)
      throw std::invalid_argument("weak_density_profile: y >= 0 for qu-r");
    if (y == 0.0) return w;
    double integral = quad::integrate(
        [&](double u) {
          return std::exp(-pa2 * u * u) * std::sinh(kTwoPi * u * y) / u;
        },
        1e-14, 1.0, {1e-12, 1e-300, 48});
    w.smooth = y / (kPi * kSqrtPi * a * a * a) *
               std::exp(-y * y / (a * a)) * integral;
    return w;
  }
  throw std::invalid_argument("weak_density_profile: real or quaternion");
}

}  // namespace ginlab::pfaff
