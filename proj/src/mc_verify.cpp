#include "ginlab/mc_verify.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <nlohmann/json.hpp>

namespace ginlab::mc {

namespace {

void check_edges(const std::vector<double>& edges) {
  if (edges.size() < 2)
    throw std::invalid_argument("estimator: need at least one bin");
  for (std::size_t i = 1; i < edges.size(); ++i)
    if (!(edges[i] > edges[i - 1]))
      throw std::invalid_argument("estimator: edges must strictly increase");
}

// index of the bin containing v, or -1
int bin_of(const std::vector<double>& edges, double v) {
  if (v < edges.front() || v >= edges.back()) return -1;
  auto it = std::upper_bound(edges.begin(), edges.end(), v);
  return static_cast<int>(it - edges.begin()) - 1;
}

void require_samples(const SpectrumSource& src, std::size_t minimum) {
  if (src.count() == 0) throw std::invalid_argument("estimator: empty stream");
  if (src.count() < minimum)
    throw GuardError("estimator: needs at least " + std::to_string(minimum) +
                     " samples, got " + std::to_string(src.count()));
}

// binomial standard error of a count out of n_total trials
double binomial_se(double count, double n_total) {
  double p = std::min(1.0, std::max(0.0, count / n_total));
  return std::sqrt(std::max(count * (1.0 - p), 0.0));
}

std::vector<cplx> all_points(const ensembles::Spectrum& s) {
  std::vector<cplx> pts;
  pts.reserve(s.dim);
  for (const cplx& z : s.complex_eigs) pts.push_back(z);
  for (double x : s.real_eigs) pts.emplace_back(x, 0.0);
  for (const cplx& z : s.pair_reps) {
    pts.push_back(z);
    pts.push_back(std::conj(z));
  }
  return pts;
}

}  // namespace

RadialProfile estimate_density_radial(const SpectrumSource& src,
                                      const std::vector<double>& edges) {
  check_edges(edges);
  require_samples(src, 100);
  const std::size_t nb = edges.size() - 1;
  std::vector<std::atomic<long long>> bins(nb);
  src.for_each([&](std::size_t, const ensembles::Spectrum& s) {
    for (const cplx& z : all_points(s)) {
      int b = bin_of(edges, std::abs(z));
      if (b >= 0) bins[b].fetch_add(1, std::memory_order_relaxed);
    }
  });
  RadialProfile p;
  p.edges = edges;
  p.samples = src.count();
  p.counts.resize(nb);
  p.density.resize(nb);
  p.se.resize(nb);
  const double ntot = static_cast<double>(src.count()) * src.dim();
  for (std::size_t b = 0; b < nb; ++b) {
    p.counts[b] = bins[b].load();
    double area = kPi * (edges[b + 1] * edges[b + 1] - edges[b] * edges[b]);
    double denom = src.count() * area;
    p.density[b] = p.counts[b] / denom;
    p.se[b] = binomial_se(static_cast<double>(p.counts[b]), ntot) / denom;
  }
  return p;
}

RadialProfile estimate_density_real_line(const SpectrumSource& src,
                                         const std::vector<double>& edges) {
  check_edges(edges);
  require_samples(src, 100);
  if (src.symmetry() == SymmetryClass::Complex)
    throw std::invalid_argument(
        "estimate_density_real_line: real/quaternion class only");
  const std::size_t nb = edges.size() - 1;
  std::vector<std::atomic<long long>> bins(nb);
  src.for_each([&](std::size_t, const ensembles::Spectrum& s) {
    for (double x : s.real_eigs) {
      int b = bin_of(edges, x);
      if (b >= 0) bins[b].fetch_add(1, std::memory_order_relaxed);
    }
  });
  RadialProfile p;
  p.edges = edges;
  p.samples = src.count();
  p.counts.resize(nb);
  p.density.resize(nb);
  p.se.resize(nb);
  const double ntot = static_cast<double>(src.count()) * src.dim();
  for (std::size_t b = 0; b < nb; ++b) {
    p.counts[b] = bins[b].load();
    double denom = src.count() * (edges[b + 1] - edges[b]);
    p.density[b] = p.counts[b] / denom;
    p.se[b] = binomial_se(static_cast<double>(p.counts[b]), ntot) / denom;
  }
  return p;
}

Rect2DProfile estimate_density_pairs_2d(const SpectrumSource& src,
                                        const std::vector<double>& xedges,
                                        const std::vector<double>& yedges) {
  check_edges(xedges);
  check_edges(yedges);
  require_samples(src, 100);
  if (src.symmetry() == SymmetryClass::Complex)
    throw std::invalid_argument(
        "estimate_density_pairs_2d: real/quaternion class only");
  const std::size_t nx = xedges.size() - 1, ny = yedges.size() - 1;
  std::vector<std::atomic<long long>> bins(nx * ny);
  src.for_each([&](std::size_t, const ensembles::Spectrum& s) {
    for (const cplx& z : s.pair_reps) {
      int bx = bin_of(xedges, z.real());
      int by = bin_of(yedges, z.imag());
      if (bx >= 0 && by >= 0)
        bins[bx * ny + by].fetch_add(1, std::memory_order_relaxed);
    }
  });
  Rect2DProfile p;
  p.xedges = xedges;
  p.yedges = yedges;
  p.samples = src.count();
  p.counts.resize(nx * ny);
  p.density.resize(nx * ny);
  p.se.resize(nx * ny);
  const double ntot = static_cast<double>(src.count()) * src.dim();
  for (std::size_t i = 0; i < nx; ++i)
    for (std::size_t j = 0; j < ny; ++j) {
      std::size_t b = i * ny + j;
      p.counts[b] = bins[b].load();
      double area = (xedges[i + 1] - xedges[i]) * (yedges[j + 1] - yedges[j]);
      double denom = src.count() * area;
      p.density[b] = p.counts[b] / denom;
      p.se[b] = binomial_se(static_cast<double>(p.counts[b]), ntot) / denom;
    }
  return p;
}

std::pair<double, double> estimate_real_count(const SpectrumSource& src) {
  if (src.count() == 0) throw std::invalid_argument("estimator: empty stream");
  if (src.symmetry() == SymmetryClass::Complex)
    throw std::invalid_argument("estimate_real_count: wrong symmetry class");
  std::atomic<long long> sum{0}, sum2{0};
  src.for_each([&](std::size_t, const ensembles::Spectrum& s) {
    long long n = static_cast<long long>(s.real_eigs.size());
    sum.fetch_add(n, std::memory_order_relaxed);
    sum2.fetch_add(n * n, std::memory_order_relaxed);
  });
  const double n = static_cast<double>(src.count());
  double mean = sum.load() / n;
  double var = 0.0;
  if (src.count() > 1)
    var = (sum2.load() - n * mean * mean) / (n - 1.0);
  return {mean, std::sqrt(std::max(var, 0.0) / n)};
}

PairHistogram estimate_pair_correlation(const SpectrumSource& src, cplx z0,
                                        double cond_radius,
                                        const std::vector<double>& s_edges) {
  check_edges(s_edges);
  require_samples(src, 10000);
  const std::size_t nb = s_edges.size() - 1;
  std::vector<std::atomic<long long>> bins(nb);
  std::atomic<long long> events{0};
  src.for_each([&](std::size_t, const ensembles::Spectrum& s) {
    std::vector<cplx> pts = all_points(s);
    for (std::size_t i = 0; i < pts.size(); ++i) {
      if (std::abs(pts[i] - z0) > cond_radius) continue;
      events.fetch_add(1, std::memory_order_relaxed);
      for (std::size_t j = 0; j < pts.size(); ++j) {
        if (j == i) continue;
        int b = bin_of(s_edges, std::abs(pts[j] - pts[i]));
        if (b >= 0) bins[b].fetch_add(1, std::memory_order_relaxed);
      }
    }
  });
  PairHistogram h;
  h.s_edges = s_edges;
  h.samples = src.count();
  h.events = events.load();
  h.counts.resize(nb);
  for (std::size_t b = 0; b < nb; ++b) h.counts[b] = bins[b].load();
  if (h.events < 1000)
    throw GuardError("estimate_pair_correlation: too few conditioning events");
  return h;
}

EmpiricalGap estimate_gap(const SpectrumSource& src,
                          const std::vector<double>& s_grid,
                          double cond_radius) {
  if (s_grid.empty()) throw std::invalid_argument("estimate_gap: empty grid");
  require_samples(src, 10000);
  const std::size_t ng = s_grid.size();
  std::vector<std::atomic<long long>> surv(ng);
  std::atomic<long long> events{0};
  src.for_each([&](std::size_t, const ensembles::Spectrum& s) {
    std::vector<cplx> pts = all_points(s);
    if (pts.size() < 2) return;
    std::size_t imin = 0;
    double rmin = std::abs(pts[0]);
    for (std::size_t i = 1; i < pts.size(); ++i) {
      double r = std::abs(pts[i]);
      if (r < rmin) {
        rmin = r;
        imin = i;
      }
    }
    if (rmin > cond_radius) return;
    double dmin = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < pts.size(); ++j) {
      if (j == imin) continue;
      dmin = std::min(dmin, std::abs(pts[j] - pts[imin]));
    }
    events.fetch_add(1, std::memory_order_relaxed);
    for (std::size_t g = 0; g < ng; ++g)
      if (dmin > s_grid[g]) surv[g].fetch_add(1, std::memory_order_relaxed);
  });
  EmpiricalGap e;
  e.s_grid = s_grid;
  e.events = events.load();
  if (e.events < 1000)
    throw GuardError("estimate_gap: too few conditioning events");
  e.survived.resize(ng);
  e.survival.resize(ng);
  for (std::size_t g = 0; g < ng; ++g) {
    e.survived[g] = surv[g].load();
    e.survival[g] = static_cast<double>(e.survived[g]) / e.events;
  }
  return e;
}

VerificationReport compare(const std::string& statistic,
                           std::vector<double> grid,
                           std::vector<double> exact,
                           std::vector<double> estimate,
                           std::vector<double> se, double z_threshold,
                           std::uint64_t seed, std::size_t samples) {
  const std::size_t n = grid.size();
  if (exact.size() != n || estimate.size() != n || se.size() != n)
    throw std::invalid_argument("compare: grid mismatch");
  VerificationReport r;
  r.statistic = statistic;
  r.grid = std::move(grid);
  r.exact = std::move(exact);
  r.estimate = std::move(estimate);
  r.se = std::move(se);
  r.z_threshold = z_threshold;
  r.seed = seed;
  r.samples = samples;
  r.z.resize(n);
  std::size_t warn = 0;
  double maxz = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double dev = r.estimate[i] - r.exact[i];
    double z;
    if (r.se[i] > 0.0)
      z = dev / r.se[i];
    else
      z = (dev == 0.0) ? 0.0 : std::numeric_limits<double>::infinity();
    r.z[i] = z;
    maxz = std::max(maxz, std::fabs(z));
    if (std::fabs(z) > 3.0 && std::fabs(z) <= z_threshold) ++warn;
  }
  r.max_abs_z = maxz;
  r.pass = (maxz <= z_threshold) &&
           (static_cast<double>(warn) <= 0.05 * static_cast<double>(n));
  return r;
}

std::string report_to_json(const VerificationReport& r) {
  nlohmann::ordered_json j;
  j["statistic"] = r.statistic;
  j["grid"] = r.grid;
  j["exact"] = r.exact;
  j["estimate"] = r.estimate;
  j["stderr"] = r.se;
  j["z"] = r.z;
  j["z_threshold"] = r.z_threshold;
  j["max_abs_z"] = r.max_abs_z;
  j["pass"] = r.pass;
  j["seed"] = r.seed;
  j["samples"] = r.samples;
  return j.dump(2);
}

}  // namespace ginlab::mc
