#pragma once

#include <span>
#include <vector>

#include "ginlab/common.hpp"
#include "ginlab/ensembles.hpp"
#include "ginlab/scaled.hpp"

namespace ginlab::detk {

/// Finite-N determinantal kernel for the complex symmetry class: Ginibre,
/// truncated unitary, or complex elliptic. Immutable after construction and
/// thread-safe.
class DetKernel {
 public:
  explicit DetKernel(const EnsembleSpec& spec);

  static DetKernel ginibre(int n);
  static DetKernel elliptic(int n, double tau);
  static DetKernel truncated_unitary(int m, int l);

  const EnsembleSpec& spec() const { return spec_; }
  int degree() const { return spec_.dim; }

  double weight(cplx z) const;
  double log_weight(cplx z) const;  // -inf outside support

  /// K(z1,z2); Hermitian in its arguments. Throws std::overflow_error if the
  /// combined value leaves double range (the scaled form never does).
  cplx kernel(cplx z1, cplx z2) const;
  ScaledCplx kernel_scaled(cplx z1, cplx z2) const;

  /// R_1(z) = K(z,z)
  double density(cplx z) const;

  /// R_n = det(K(z_i,z_j)); 1 <= n <= 8
  double correlation(std::span<const cplx> pts) const;

  /// Truncated-unitary kernel through each of its two representations; used
  /// against each other as a consistency check. The shipped kernel() switches
  /// to the binomial sum near z1 z2* = 1 where the beta form cancels badly.
  ScaledCplx truncation_kernel_binomial(cplx z1, cplx z2) const;
  ScaledCplx truncation_kernel_beta(cplx z1, cplx z2) const;

 private:
  EnsembleSpec spec_;
};

/// Limit formulas -------------------------------------------------------

/// R_n at the origin in the large-N Ginibre bulk:
/// (1/pi^n) e^{-sum |z|^2} det(e^{z_i conj(z_j)})
double ginibre_bulk_limit_correlation(std::span<const cplx> pts);

/// (1/2pi) erfc(sqrt(2) x), x the signed distance past the radius sqrt(N)
double ginibre_edge_profile(double x);

/// Finite-(M,L) radial density (L/pi)(1 - I_{|z|^2}(M,L+1))/(1-|z|^2)^2
double truncation_strong_density(int M, int L, cplx z);

/// Weak non-unitarity density with the M^2 factor stripped:
/// (1/pi) (2y)^{L-1}/(L-1)! Int_0^1 e^{-2yt} t^L dt
double truncation_weak_density(int L, double y);

/// Weak non-unitarity R_n with the (M^2)^n stripped; points are (y, phi).
double truncation_weak_correlation(
    int L, std::span<const std::pair<double, double>> pts);

/// Wigner semicircle (1/pi) sqrt(N - x^2/4), |x| <= 2 sqrt(N)
double semicircle_density(int N, double x);

/// Weak non-Hermiticity scaling context: a = alpha rho_sc(x)/sqrt(N).
struct WeakLimitContext {
  double a = 1.0;
  double x = 0.0;
  int N = 0;
};

double control_parameter(double alpha, double x, int N);

/// Scaled weak-limit correlations and density of the complex elliptic
/// ensemble (unfolded coordinates zeta).
double weak_correlation(const WeakLimitContext& ctx, std::span<const cplx> zetas);
double weak_density(const WeakLimitContext& ctx, cplx zeta);

/// (1-tau^2)^{-1/2} exp{z1 z2*/(1-tau^2) - tau(z1^2+z2*^2)/(2(1-tau^2))}
cplx mehler_closed_form(double tau, cplx z1, cplx z2);

}  // namespace ginlab::detk
