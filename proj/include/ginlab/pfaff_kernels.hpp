#pragma once

#include <Eigen/Dense>
#include <span>
#include <utility>
#include <vector>

#include "ginlab/common.hpp"
#include "ginlab/scaled.hpp"

namespace ginlab::pfaff {

/// Pf(A) of an antisymmetric matrix by skew-symmetric elimination with
/// partial pivoting; Pf(A)^2 = det(A). Throws on odd dimension or when the
/// antisymmetry residue exceeds 1e-12 * ||A||.
cplx pfaffian(Eigen::MatrixXcd A);
double pfaffian(Eigen::MatrixXd A);

/// (log|Pf|, unit phase); log-scaled accumulation for large matrices.
std::pair<double, cplx> log_pfaffian(Eigen::MatrixXcd A);

/// Monic skew-orthogonal polynomial family for the real or qu-r ensemble,
/// built on p_{n+1} = z p_n - n tau p_{n-1} (the monic scaled-Hermite
/// recurrence, which degenerates to monomials at tau = 0).
///   real:       P_{2n} = p_{2n},  P_{2n+1} = p_{2n+1} - 2n p_{2n-1}
///   quaternion: P_{2n} = p_{2n} + 2n P_{2n-2},  P_{2n+1} = p_{2n+1}
class SkewBasis {
 public:
  SkewBasis(SymmetryClass cls, double tau, int N);

  int dim() const { return n_; }
  double tau() const { return tau_; }
  SymmetryClass symmetry() const { return cls_; }

  /// P_0..P_{N-1} at z, in scaled form.
  std::vector<ScaledCplx> eval_all(cplx z) const;

  /// log r_k; r is constant on pairs (2j, 2j+1).
  double log_r(int k) const;

  /// Monic coefficient triangle (coeffs[k][j] multiplies z^j); only stored
  /// for N <= 64 where double range suffices.
  const std::vector<std::vector<double>>& coeffs() const;

 private:
  SymmetryClass cls_;
  double tau_;
  int n_;
  std::vector<std::vector<double>> coeffs_;
};

/// Finite-N Pfaffian kernel K_N for the real/qu-r circular and elliptic
/// (tau >= 0) ensembles. Immutable and thread-safe.
class PfaffKernel {
 public:
  PfaffKernel(SymmetryClass cls, double tau, int N);

  int dim() const { return basis_.dim(); }
  double tau() const { return basis_.tau(); }
  SymmetryClass symmetry() const { return basis_.symmetry(); }
  const SkewBasis& basis() const { return basis_; }

  /// K_N(z1,z2), antisymmetric. The real circular case evaluates the closed
  /// form; kernel_skew_sum always evaluates the skew-basis expansion.
  ScaledCplx kernel_scaled(cplx z1, cplx z2) const;
  ScaledCplx kernel_skew_sum(cplx z1, cplx z2) const;
  cplx kernel(cplx z1, cplx z2) const;  // throws std::overflow_error

  /// log f_tau(z)^2 (may be -inf where f vanishes)
  double log_f2(cplx z) const;
  double f_weight(cplx z) const;

  /// R^C(z) = 2 f(z) f(z*) |K_N(z, z*)|, Im z > 0
  double density_complex(cplx z) const;

  /// Density of real eigenvalues through the kernel:
  /// R^R(x) = Int dx' f(x) f(x') sgn(x'-x) K_N(x', x). Real class only.
  double density_real_axis(double x) const;

  /// R_n of n <= 4 points in the open upper half plane, as the Pfaffian of
  /// the 2n x 2n quaternion-block matrix (delta-part reduction).
  double correlations_upper(std::span<const cplx> pts) const;

 private:
  SkewBasis basis_;
};

/// Free-standing pieces ---------------------------------------------------

double f_weight(SymmetryClass cls, double tau, cplx z);
double log_f2(SymmetryClass cls, double tau, cplx z);

/// Real circular closed form: (z1-z2)/(2 sqrt(2 pi)) e^{z1 z2} Gamma(N-1,z1z2)/Gamma(N-1)
ScaledCplx real_circular_kernel_closed(int N, cplx z1, cplx z2);

/// Mehta's double sum for the qu-r circular kernel.
cplx quaternion_circular_kernel_series(int N, cplx z1, cplx z2);

/// Density of real eigenvalues of the real circular ensemble at finite N.
double density_real(int N, double x);

/// Expected number of real eigenvalues (quadrature of the closed integral).
double expected_real_count(int N);

/// Regularized lower incomplete gamma P(s,x) at half-integer s, from
/// P(1/2,x) = erf(sqrt x) plus upward recurrence; series branch for x < s
/// where the recurrence would cancel.
double reg_lower_gamma_half(double s, double x);

/// log(1/C_{N,tau})
double log_normalization(SymmetryClass cls, double tau, int N);

struct SkewMoments {
  Eigen::MatrixXd A;
  Eigen::MatrixXd Ainv;
};

/// Circular moments by closed form; elliptic by numeric skew-form
/// integration of monomials (test scale, N <= 10).
SkewMoments skew_moment_matrix(SymmetryClass cls, double tau, int N);

enum class LimitRegime { CircularBulk, EllipticBulk, Weak };

struct LimitParams {
  double tau = 0.0;  // elliptic bulk
  double a = 1.0;    // weak: order-1 control parameter, a^2 = N(1-tau)
  int N = 0;         // weak
};

cplx limit_kernel(SymmetryClass cls, LimitRegime regime, const LimitParams& p,
                  cplx z1, cplx z2);

/// Weak-limit profile P(y,a) of scaled imaginary parts; the real class has a
/// delta component at y=0 whose weight is returned separately.
struct WeakProfile {
  double singular_weight = 0.0;
  double smooth = 0.0;
};

WeakProfile weak_density_profile(SymmetryClass cls, double y, double a);

}  // namespace ginlab::pfaff
