#pragma once

#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>

#include "ginlab/common.hpp"

namespace ginlab {

/// Complex number kept as mantissa * 2^e2 so that kernel sums and orthogonal
/// polynomial recurrences can run far outside double range. Power-of-two
/// rescaling is exact in binary floating point.
struct ScaledCplx {
  cplx mant{0.0, 0.0};
  long e2 = 0;

  static ScaledCplx zero() { return {}; }
  static ScaledCplx one() { return {cplx(1.0, 0.0), 0}; }

  bool is_zero() const { return mant == cplx(0.0, 0.0); }

  void normalize() {
    if (is_zero()) {
      e2 = 0;
      return;
    }
    double m = std::max(std::fabs(mant.real()), std::fabs(mant.imag()));
    while (m >= 0x1p256) {
      mant *= 0x1p-256;
      m *= 0x1p-256;
      e2 += 256;
    }
    while (m < 0x1p-256) {
      mant *= 0x1p256;
      m *= 0x1p256;
      e2 -= 256;
    }
  }

  double log_abs() const {
    if (is_zero()) return -std::numeric_limits<double>::infinity();
    return std::log(std::abs(mant)) + static_cast<double>(e2) * kLn2;
  }

  /// Combined value; +-inf on overflow, 0 on underflow.
  cplx value() const {
    if (is_zero()) return {0.0, 0.0};
    double s = std::ldexp(1.0, static_cast<int>(std::max<long>(
                                   std::min<long>(e2, 3000), -3000)));
    return mant * s;
  }

  /// Combined value; throws std::overflow_error if it exceeds double range.
  cplx value_checked() const {
    cplx v = value();
    if (!is_zero() && !(std::isfinite(v.real()) && std::isfinite(v.imag())))
      throw std::overflow_error("ScaledCplx: value exceeds double range");
    return v;
  }
};

inline ScaledCplx operator*(const ScaledCplx& a, const ScaledCplx& b) {
  ScaledCplx r{a.mant * b.mant, a.e2 + b.e2};
  r.normalize();
  return r;
}

inline ScaledCplx operator*(const ScaledCplx& a, const cplx& c) {
  ScaledCplx r{a.mant * c, a.e2};
  r.normalize();
  return r;
}

inline ScaledCplx operator*(const ScaledCplx& a, double c) {
  ScaledCplx r{a.mant * c, a.e2};
  r.normalize();
  return r;
}

inline ScaledCplx operator+(const ScaledCplx& a, const ScaledCplx& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  const ScaledCplx& hi = (a.e2 >= b.e2) ? a : b;
  const ScaledCplx& lo = (a.e2 >= b.e2) ? b : a;
  long d = hi.e2 - lo.e2;
  if (d > 2200) return hi;
  cplx lom(std::ldexp(lo.mant.real(), static_cast<int>(-d)),
           std::ldexp(lo.mant.imag(), static_cast<int>(-d)));
  ScaledCplx r{hi.mant + lom, hi.e2};
  r.normalize();
  return r;
}

inline ScaledCplx operator-(const ScaledCplx& a, const ScaledCplx& b) {
  return a + b * cplx(-1.0, 0.0);
}

/// exp(lg) as a ScaledCplx, valid for |lg| far beyond double exp range.
inline ScaledCplx scaled_exp(double lg) {
  if (lg == -std::numeric_limits<double>::infinity()) return ScaledCplx::zero();
  double e = std::floor(lg / kLn2);
  ScaledCplx r{cplx(std::exp(lg - e * kLn2), 0.0), static_cast<long>(e)};
  r.normalize();
  return r;
}

inline ScaledCplx scaled_by_log(const ScaledCplx& a, double lg) {
  return a * scaled_exp(lg);
}

}  // namespace ginlab
