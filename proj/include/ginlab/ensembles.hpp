#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <vector>

#include "ginlab/common.hpp"
#include "ginlab/rng.hpp"

namespace ginlab {

/// Which ensemble a sampler or kernel refers to: symmetry class, variant and
/// its parameters, and the matrix dimension.
struct EnsembleSpec {
  SymmetryClass sym = SymmetryClass::Complex;
  VariantKind variant = VariantKind::Circular;
  int dim = 1;
  double tau = 0.0;     // elliptic only
  int trunc_m = 0;      // truncated unitary: corner size (== dim)
  int trunc_l = 0;      // truncated unitary: discarded rows/cols

  static EnsembleSpec circular(SymmetryClass s, int n);
  static EnsembleSpec elliptic(SymmetryClass s, int n, double tau);
  static EnsembleSpec truncated_unitary(int m, int l);

  /// Throws std::invalid_argument on inconsistent combinations.
  void validate() const;
};

}  // namespace ginlab

namespace ginlab::ensembles {

struct SamplerConfig {
  std::uint64_t seed = 0;
  int worker_count = 1;
  double eig_tol = 1e-10;      // backward-error target of the eigensolver
  double real_axis_tol = 0.0;  // 0 -> default 1e-8 * sqrt(N)

  double axis_tol(int n) const {
    return real_axis_tol > 0.0 ? real_axis_tol
                               : 1e-8 * std::sqrt(static_cast<double>(n));
  }
};

/// One sampled eigenvalue set. For the complex class every eigenvalue is in
/// complex_eigs; for real/quaternion they are classified into real
/// eigenvalues and one upper-half-plane representative per conjugate pair.
struct Spectrum {
  int dim = 0;
  std::vector<double> real_eigs;  // ascending
  std::vector<cplx> pair_reps;    // Im > 0
  std::vector<cplx> complex_eigs; // complex symmetry class only
};

Eigen::MatrixXcd sample_matrix(const EnsembleSpec& spec, SubstreamRng& rng);

/// Haar unitary via QR of a complex Ginibre matrix with the R-diagonal phase
/// correction.
Eigen::MatrixXcd haar_unitary(int n, SubstreamRng& rng);

/// Eigenvalues with real/pair classification. Real-class matrices go through
/// the real Schur form so conjugate pairs are exact; the quaternion class is
/// paired with a tolerance and unpaired eigenvalues raise std::runtime_error.
Spectrum spectrum(const Eigen::MatrixXcd& J, const SamplerConfig& cfg,
                  SymmetryClass sym);

/// Deterministic given (seed, spec, count) regardless of worker_count; each
/// sample uses the substream derived from (seed, index).
std::vector<Spectrum> sample_spectra(const EnsembleSpec& spec,
                                     std::size_t count,
                                     const SamplerConfig& cfg);

/// Streaming variant; fn may be called concurrently and must be thread-safe.
/// Each index in [0,count) is delivered exactly once.
void for_each_spectrum(
    const EnsembleSpec& spec, std::size_t count, const SamplerConfig& cfg,
    const std::function<void(std::size_t, const Spectrum&)>& fn);

/// CSV schema: sample_index,kind(real|pair|complex),re,im with 17 significant
/// digits, preceded by # comment lines carrying seed/config/version.
void write_spectra_csv(std::ostream& os, const std::vector<Spectrum>& spectra,
                       const EnsembleSpec& spec, const SamplerConfig& cfg);

}  // namespace ginlab::ensembles
