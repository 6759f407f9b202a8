#pragma once

#include <complex>

namespace ginlab {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.141592653589793238462643383279502884;
inline constexpr double kTwoPi = 2.0 * kPi;
inline constexpr double kSqrtPi = 1.772453850905516027298167483341145183;
inline constexpr double kSqrt2Pi = 2.506628274631000502415765284811045253;
inline constexpr double kLn2 = 0.693147180559945309417232121458176568;

enum class SymmetryClass { Complex, Real, Quaternion };

enum class VariantKind { Circular, Elliptic, TruncatedUnitary };

}  // namespace ginlab
