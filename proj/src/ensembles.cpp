#include "ginlab/ensembles.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <mutex>
#include <ostream>
#include <stdexcept>
#include <thread>

#include "ginlab/version.hpp"

namespace ginlab {

EnsembleSpec EnsembleSpec::circular(SymmetryClass s, int n) {
  EnsembleSpec e;
  e.sym = s;
  e.variant = VariantKind::Circular;
  e.dim = n;
  e.validate();
  return e;
}

EnsembleSpec EnsembleSpec::elliptic(SymmetryClass s, int n, double tau) {
  EnsembleSpec e;
  e.sym = s;
  e.variant = VariantKind::Elliptic;
  e.dim = n;
  e.tau = tau;
  e.validate();
  return e;
}

EnsembleSpec EnsembleSpec::truncated_unitary(int m, int l) {
  EnsembleSpec e;
  e.sym = SymmetryClass::Complex;
  e.variant = VariantKind::TruncatedUnitary;
  e.dim = m;
  e.trunc_m = m;
  e.trunc_l = l;
  e.validate();
  return e;
}

void EnsembleSpec::validate() const {
  if (dim < 1) throw std::invalid_argument("EnsembleSpec: dim must be >= 1");
  if (sym == SymmetryClass::Quaternion && dim % 2 != 0)
    throw std::invalid_argument("EnsembleSpec: dim must be even");
  switch (variant) {
    case VariantKind::Circular:
      break;
    case VariantKind::Elliptic:
      if (sym == SymmetryClass::Complex) {
        if (!(tau >= 0.0 && tau < 1.0))
          throw std::invalid_argument(
              "EnsembleSpec: complex elliptic needs tau in [0,1)");
      } else {
        if (!(tau > -1.0 && tau < 1.0))
          throw std::invalid_argument(
              "EnsembleSpec: elliptic needs tau in (-1,1)");
      }
      break;
    case VariantKind::TruncatedUnitary:
      if (sym != SymmetryClass::Complex)
        throw std::invalid_argument(
            "EnsembleSpec: truncated_unitary is complex only");
      if (trunc_m != dim || trunc_m < 1 || trunc_l < 1)
        throw std::invalid_argument(
            "EnsembleSpec: truncated_unitary needs dim == M and L >= 1");
      break;
  }
}

}  // namespace ginlab

namespace ginlab::ensembles {

namespace {

Eigen::MatrixXcd sample_complex_circular(int n, SubstreamRng& rng) {
  Eigen::MatrixXcd j(n, n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) j(r, c) = rng.cnormal(1.0);
  return j;
}

// Hermitian draw from exp(-Tr H^2): <H_ii^2> = 1/2, <|H_ij|^2> = 1/2
Eigen::MatrixXcd sample_gue_half(int n, SubstreamRng& rng) {
  Eigen::MatrixXcd h(n, n);
  for (int r = 0; r < n; ++r) {
    h(r, r) = rng.normal(std::sqrt(0.5));
    for (int c = r + 1; c < n; ++c) {
      cplx v = rng.cnormal(0.5);
      h(r, c) = v;
      h(c, r) = std::conj(v);
    }
  }
  return h;
}

Eigen::MatrixXcd sample_complex_elliptic(int n, double tau,
                                         SubstreamRng& rng) {
  Eigen::MatrixXcd h1 = sample_gue_half(n, rng);
  Eigen::MatrixXcd h2 = sample_gue_half(n, rng);
  return std::sqrt(1.0 + tau) * h1 +
         cplx(0.0, 1.0) * std::sqrt(1.0 - tau) * h2;
}

Eigen::MatrixXcd sample_real(int n, double tau, SubstreamRng& rng) {
  Eigen::MatrixXd j(n, n);
  const double mix = std::sqrt(1.0 - tau * tau);
  for (int r = 0; r < n; ++r) {
    for (int c = r; c < n; ++c) {
      if (r == c) {
        j(r, r) = rng.normal(std::sqrt(1.0 + tau));
      } else {
        double u = rng.normal();
        double v = rng.normal();
        j(r, c) = u;
        j(c, r) = tau * u + mix * v;
      }
    }
  }
  return j.cast<cplx>();
}

// quaternion entry q = (a,b) occupies the 2x2 block [[a, b], [-conj b, conj a]]
void put_block(Eigen::MatrixXcd& j, int p, int q, cplx a, cplx b) {
  j(2 * p, 2 * q) = a;
  j(2 * p, 2 * q + 1) = b;
  j(2 * p + 1, 2 * q) = -std::conj(b);
  j(2 * p + 1, 2 * q + 1) = std::conj(a);
}

Eigen::MatrixXcd sample_quaternion(int n, double tau, SubstreamRng& rng) {
  const int m = n / 2;
  const double mix = std::sqrt(1.0 - tau * tau);
  Eigen::MatrixXcd j(n, n);
  for (int p = 0; p < m; ++p) {
    for (int q = p; q < m; ++q) {
      if (p == q) {
        // diagonal quaternion: the self-dual direction carries (1+tau), the
        // anti-self-dual ones (1-tau)
        double alpha = rng.normal(std::sqrt(0.5 * (1.0 + tau)));
        double beta = rng.normal(std::sqrt(0.5 * (1.0 - tau)));
        cplx b(rng.normal(std::sqrt(0.5 * (1.0 - tau))),
               rng.normal(std::sqrt(0.5 * (1.0 - tau))));
        put_block(j, p, p, cplx(alpha, beta), b);
      } else {
        cplx a = rng.cnormal(1.0);
        cplx b = rng.cnormal(1.0);
        cplx ap = tau * std::conj(a) + mix * rng.cnormal(1.0);
        cplx bp = -tau * b + mix * rng.cnormal(1.0);
        put_block(j, p, q, a, b);
        put_block(j, q, p, ap, bp);
      }
    }
  }
  return j;
}

}  // namespace

Eigen::MatrixXcd haar_unitary(int n, SubstreamRng& rng) {
  if (n < 1) throw std::invalid_argument("haar_unitary: n >= 1");
  Eigen::MatrixXcd g = sample_complex_circular(n, rng);
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(g);
  Eigen::MatrixXcd q = qr.householderQ();
  Eigen::MatrixXcd r = qr.matrixQR();
  for (int c = 0; c < n; ++c) {
    cplx d = r(c, c);
    double ad = std::abs(d);
    q.col(c) *= (ad > 0.0) ? d / ad : cplx(1.0, 0.0);
  }
  return q;
}

Eigen::MatrixXcd sample_matrix(const EnsembleSpec& spec, SubstreamRng& rng) {
  spec.validate();
  switch (spec.variant) {
    case VariantKind::Circular:
      switch (spec.sym) {
        case SymmetryClass::Complex:
          return sample_complex_circular(spec.dim, rng);
        case SymmetryClass::Real:
          return sample_real(spec.dim, 0.0, rng);
        case SymmetryClass::Quaternion:
          return sample_quaternion(spec.dim, 0.0, rng);
      }
      break;
    case VariantKind::Elliptic:
      switch (spec.sym) {
        case SymmetryClass::Complex:
          return sample_complex_elliptic(spec.dim, spec.tau, rng);
        case SymmetryClass::Real:
          return sample_real(spec.dim, spec.tau, rng);
        case SymmetryClass::Quaternion:
          return sample_quaternion(spec.dim, spec.tau, rng);
      }
      break;
    case VariantKind::TruncatedUnitary: {
      Eigen::MatrixXcd u = haar_unitary(spec.trunc_m + spec.trunc_l, rng);
      return u.topLeftCorner(spec.trunc_m, spec.trunc_m);
    }
  }
  throw std::invalid_argument("sample_matrix: unhandled spec");
}

namespace {

// pair ups against conjugated downs; both sorted so matching is positional
Spectrum classify(std::vector<cplx> eigs, int n, double rtol, double ptol) {
  Spectrum s;
  s.dim = n;
  std::vector<cplx> ups, downs;
  for (const cplx& z : eigs) {
    if (z.imag() == 0.0)
      s.real_eigs.push_back(z.real());
    else if (z.imag() > 0.0)
      ups.push_back(z);
    else
      downs.push_back(z);
  }
  if (ups.size() != downs.size())
    throw std::runtime_error("spectrum: unpaired complex eigenvalue");
  auto key_up = [](const cplx& a, const cplx& b) {
    return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
  };
  auto key_down = [](const cplx& a, const cplx& b) {
    return a.real() != b.real() ? a.real() < b.real() : -a.imag() < -b.imag();
  };
  std::sort(ups.begin(), ups.end(), key_up);
  std::sort(downs.begin(), downs.end(), key_down);
  for (std::size_t k = 0; k < ups.size(); ++k) {
    cplx u = ups[k];
    cplx d = std::conj(downs[k]);
    if (std::abs(u - d) > ptol)
      throw std::runtime_error("spectrum: conjugate pairing failed");
    cplx rep = 0.5 * (u + d);
    if (rep.imag() <= rtol) {
      s.real_eigs.push_back(rep.real());
      s.real_eigs.push_back(rep.real());
    } else {
      s.pair_reps.push_back(rep);
    }
  }
  std::sort(s.real_eigs.begin(), s.real_eigs.end());
  if (s.real_eigs.size() + 2 * s.pair_reps.size() != static_cast<size_t>(n))
    throw std::runtime_error("spectrum: classification count mismatch");
  return s;
}

}  // namespace

Spectrum spectrum(const Eigen::MatrixXcd& J, const SamplerConfig& cfg,
                  SymmetryClass sym) {
  const int n = static_cast<int>(J.rows());
  if (J.rows() != J.cols())
    throw std::invalid_argument("spectrum: square matrix required");

  if (sym == SymmetryClass::Complex) {
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(J, false);
    if (es.info() != Eigen::Success)
      throw std::runtime_error("spectrum: eigensolver failed");
    Spectrum s;
    s.dim = n;
    s.complex_eigs.assign(es.eigenvalues().data(),
                          es.eigenvalues().data() + n);
    std::sort(s.complex_eigs.begin(), s.complex_eigs.end(),
              [](const cplx& a, const cplx& b) {
                return a.real() != b.real() ? a.real() < b.real()
                                            : a.imag() < b.imag();
              });
    return s;
  }

  const double rtol = cfg.axis_tol(n);
  const double ptol = 1e-6 * std::max(1.0, J.norm());

  if (sym == SymmetryClass::Real) {
    if (J.imag().cwiseAbs().maxCoeff() != 0.0)
      throw std::invalid_argument("spectrum: real class needs a real matrix");
    Eigen::EigenSolver<Eigen::MatrixXd> es(J.real(), false);
    if (es.info() != Eigen::Success)
      throw std::runtime_error("spectrum: eigensolver failed");
    std::vector<cplx> eigs(es.eigenvalues().data(),
                           es.eigenvalues().data() + n);
    return classify(std::move(eigs), n, rtol, ptol);
  }

  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(J, false);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("spectrum: eigensolver failed");
  std::vector<cplx> eigs(es.eigenvalues().data(), es.eigenvalues().data() + n);
  // snap near-axis values so lone tiny imaginary parts do not break pairing
  for (cplx& z : eigs)
    if (z.imag() != 0.0 && std::fabs(z.imag()) <= rtol) z = {z.real(), 0.0};
  Spectrum s = classify(std::move(eigs), n, rtol, ptol);
  if (s.real_eigs.size() % 2 != 0)
    throw std::runtime_error("spectrum: odd real multiplicity in qu-r class");
  return s;
}

void for_each_spectrum(
    const EnsembleSpec& spec, std::size_t count, const SamplerConfig& cfg,
    const std::function<void(std::size_t, const Spectrum&)>& fn) {
  spec.validate();
  if (count < 1) throw std::invalid_argument("for_each_spectrum: count >= 1");
  const int workers = std::max(1, cfg.worker_count);

  auto work = [&](std::size_t lo, std::size_t hi) {
    for (std::size_t i = lo; i < hi; ++i) {
      SubstreamRng rng(cfg.seed, i);
      Eigen::MatrixXcd j = sample_matrix(spec, rng);
      try {
        Spectrum s = spectrum(j, cfg, spec.sym);
        fn(i, s);
      } catch (const std::runtime_error& e) {
        throw std::runtime_error("sample " + std::to_string(i) + ": " +
                                 e.what());
      }
    }
  };

  if (workers == 1 || count == 1) {
    work(0, count);
    return;
  }
  std::vector<std::thread> threads;
  std::mutex err_mutex;
  std::exception_ptr first_error;
  const std::size_t chunk = (count + workers - 1) / workers;
  for (int w = 0; w < workers; ++w) {
    std::size_t lo = w * chunk;
    std::size_t hi = std::min(count, lo + chunk);
    if (lo >= hi) break;
    threads.emplace_back([&, lo, hi] {
      try {
        work(lo, hi);
      } catch (...) {
        std::lock_guard<std::mutex> g(err_mutex);
        if (!first_error) first_error = std::current_exception();
      }
    });
  }
  for (auto& t : threads) t.join();
  if (first_error) std::rethrow_exception(first_error);
}

std::vector<Spectrum> sample_spectra(const EnsembleSpec& spec,
                                     std::size_t count,
                                     const SamplerConfig& cfg) {
  std::vector<Spectrum> out(count);
  for_each_spectrum(spec, count, cfg,
                    [&](std::size_t i, const Spectrum& s) { out[i] = s; });
  return out;
}

namespace {
void append_fixed17(std::string& buf, double v) {
  char tmp[40];
  auto [p, ec] =
      std::to_chars(tmp, tmp + sizeof(tmp), v, std::chars_format::general, 17);
  buf.append(tmp, p);
}
}  // namespace

void write_spectra_csv(std::ostream& os, const std::vector<Spectrum>& spectra,
                       const EnsembleSpec& spec, const SamplerConfig& cfg) {
  std::string buf;
  buf += "# ginlab spectra v";
  buf += kVersion;
  buf += "\n# seed=" + std::to_string(cfg.seed);
  buf += " class=" + std::to_string(static_cast<int>(spec.sym));
  buf += " variant=" + std::to_string(static_cast<int>(spec.variant));
  buf += " dim=" + std::to_string(spec.dim);
  buf += " tau=";
  append_fixed17(buf, spec.tau);
  buf += " M=" + std::to_string(spec.trunc_m);
  buf += " L=" + std::to_string(spec.trunc_l);
  buf += "\nsample_index,kind,re,im\n";
  for (std::size_t i = 0; i < spectra.size(); ++i) {
    const Spectrum& s = spectra[i];
    for (const cplx& z : s.complex_eigs) {
      buf += std::to_string(i);
      buf += ",complex,";
      append_fixed17(buf, z.real());
      buf += ',';
      append_fixed17(buf, z.imag());
      buf += '\n';
    }
    for (double x : s.real_eigs) {
      buf += std::to_string(i);
      buf += ",real,";
      append_fixed17(buf, x);
      buf += ",0\n";
    }
    for (const cplx& z : s.pair_reps) {
      buf += std::to_string(i);
      buf += ",pair,";
      append_fixed17(buf, z.real());
      buf += ',';
      append_fixed17(buf, z.imag());
      buf += '\n';
    }
  }
  os << buf;
}

}  // namespace ginlab::ensembles
