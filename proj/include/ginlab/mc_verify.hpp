#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ginlab/common.hpp"
#include "ginlab/ensembles.hpp"

namespace ginlab::mc {

/// Raised when an estimator has too little data to produce a meaningful
/// result (sample/event guards). The verify driver reports these as
/// statistical failures rather than configuration errors.
struct GuardError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A stream of spectra an estimator can consume. Implementations may deliver
/// samples concurrently; every index in [0,count) arrives exactly once.
/// Estimators only accumulate integers through atomics, so their results do
/// not depend on delivery order.
class SpectrumSource {
 public:
  virtual ~SpectrumSource() = default;
  virtual SymmetryClass symmetry() const = 0;
  virtual int dim() const = 0;
  virtual std::size_t count() const = 0;
  virtual void for_each(
      const std::function<void(std::size_t, const ensembles::Spectrum&)>& fn)
      const = 0;
};

class EnsembleSource final : public SpectrumSource {
 public:
  EnsembleSource(EnsembleSpec spec, std::size_t count,
                 ensembles::SamplerConfig cfg)
      : spec_(spec), count_(count), cfg_(cfg) {
    spec_.validate();
  }
  SymmetryClass symmetry() const override { return spec_.sym; }
  int dim() const override { return spec_.dim; }
  std::size_t count() const override { return count_; }
  void for_each(const std::function<void(std::size_t,
                                         const ensembles::Spectrum&)>& fn)
      const override {
    ensembles::for_each_spectrum(spec_, count_, cfg_, fn);
  }
  const EnsembleSpec& spec() const { return spec_; }
  const ensembles::SamplerConfig& config() const { return cfg_; }

 private:
  EnsembleSpec spec_;
  std::size_t count_;
  ensembles::SamplerConfig cfg_;
};

/// In-memory stream, used by tests and synthetic controls.
class VectorSource final : public SpectrumSource {
 public:
  VectorSource(SymmetryClass sym, int dim,
               std::vector<ensembles::Spectrum> data)
      : sym_(sym), dim_(dim), data_(std::move(data)) {}
  SymmetryClass symmetry() const override { return sym_; }
  int dim() const override { return dim_; }
  std::size_t count() const override { return data_.size(); }
  void for_each(const std::function<void(std::size_t,
                                         const ensembles::Spectrum&)>& fn)
      const override {
    for (std::size_t i = 0; i < data_.size(); ++i) fn(i, data_[i]);
  }

 private:
  SymmetryClass sym_;
  int dim_;
  std::vector<ensembles::Spectrum> data_;
};

/// Histogram of |z| over all eigenvalues with annular-area normalization.
struct RadialProfile {
  std::vector<double> edges;
  std::vector<long long> counts;
  std::size_t samples = 0;
  std::vector<double> density;
  std::vector<double> se;
};

RadialProfile estimate_density_radial(const SpectrumSource& src,
                                      const std::vector<double>& edges);

/// Histogram of real eigenvalues over x bins (estimates R_1^R).
RadialProfile estimate_density_real_line(const SpectrumSource& src,
                                         const std::vector<double>& edges);

/// 2D histogram of upper-half-plane pair representatives (estimates R_1^C).
struct Rect2DProfile {
  std::vector<double> xedges, yedges;
  std::vector<long long> counts;  // row-major over (x bin, y bin)
  std::size_t samples = 0;
  std::vector<double> density;
  std::vector<double> se;
};

Rect2DProfile estimate_density_pairs_2d(const SpectrumSource& src,
                                        const std::vector<double>& xedges,
                                        const std::vector<double>& yedges);

std::pair<double, double> estimate_real_count(const SpectrumSource& src);

/// Ordered-pair histogram: conditioning eigenvalues within cond_radius of z0,
/// partner distances binned on s_edges.
struct PairHistogram {
  std::vector<double> s_edges;
  std::vector<long long> counts;
  long long events = 0;
  std::size_t samples = 0;
};

PairHistogram estimate_pair_correlation(const SpectrumSource& src, cplx z0,
                                        double cond_radius,
                                        const std::vector<double>& s_edges);

/// Empirical gap survival curve near the origin.
struct EmpiricalGap {
  std::vector<double> s_grid;
  std::vector<long long> survived;
  long long events = 0;
  std::vector<double> survival;
};

EmpiricalGap estimate_gap(const SpectrumSource& src,
                          const std::vector<double>& s_grid,
                          double cond_radius = 0.5);

/// One exact-vs-empirical comparison.
struct VerificationReport {
  std::string statistic;
  std::vector<double> grid;
  std::vector<double> exact;
  std::vector<double> estimate;
  std::vector<double> se;
  std::vector<double> z;
  double z_threshold = 4.0;
  double max_abs_z = 0.0;
  bool pass = false;
  std::uint64_t seed = 0;
  std::size_t samples = 0;
};

/// pass iff all |z| <= threshold and at most 5% of bins land in (3,threshold].
VerificationReport compare(const std::string& statistic,
                           std::vector<double> grid,
                           std::vector<double> exact,
                           std::vector<double> estimate,
                           std::vector<double> se, double z_threshold,
                           std::uint64_t seed, std::size_t samples);

std::string report_to_json(const VerificationReport& r);

}  // namespace ginlab::mc
