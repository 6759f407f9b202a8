#include <doctest.h>

#include <cmath>
#include <vector>

#include "ginlab/det_kernels.hpp"
#include "ginlab/quadrature.hpp"
#include "ginlab/rng.hpp"
#include "ginlab/specfun.hpp"
#include "oracles.hpp"

using namespace ginlab;
using namespace ginlab::detk;
namespace sf = ginlab::specfun;

TEST_CASE("weights") {
  CHECK(DetKernel::ginibre(5).weight(cplx(0.0, 0.0)) == 1.0);
  CHECK(DetKernel::truncated_unitary(4, 3).weight(cplx(1.0, 0.0)) == 0.0);
  CHECK(DetKernel::truncated_unitary(4, 3).weight(cplx(0.3, 1.1)) == 0.0);

  // elliptic weight against a direct extended-precision evaluation
  double tau = 0.5;
  cplx z(1.0, 1.0);
  long double d = 1.0L - 0.25L;
  long double expo = -(std::norm(z)) / d +
                     0.5L * (z * z + std::conj(z) * std::conj(z)).real() / d;
  long double expect = expl(expo) / (kPi * sqrtl(d));
  CHECK(DetKernel::elliptic(8, tau).weight(z) ==
        doctest::Approx(static_cast<double>(expect)).epsilon(1e-13));
}

TEST_CASE("ginibre kernel closed values") {
  DetKernel k1 = DetKernel::ginibre(1);
  CHECK(k1.kernel(cplx(0, 0), cplx(0, 0)).real() ==
        doctest::Approx(1.0 / kPi).epsilon(1e-14));
  DetKernel k2 = DetKernel::ginibre(2);
  cplx v = k2.kernel(cplx(1.0, 0.0), cplx(0.0, 1.0));
  cplx expect = (1.0 / kPi) * std::exp(-1.0) * cplx(1.0, -1.0);
  CHECK(std::abs(v - expect) < 1e-14);
}

TEST_CASE("elliptic kernel against a term-by-term oracle") {
  const double tau = 0.3;
  const int n = 15;
  cplx z1(0.7, 0.2), z2(-0.1, 0.5);
  // naive sum of (tau/2)^m/m! H_m(z1/sqrt(2 tau)) H_m(conj z2/sqrt(2 tau))
  cplx u1 = z1 / std::sqrt(2.0 * tau);
  cplx u2 = std::conj(z2) / std::sqrt(2.0 * tau);
  cplx sum(0.0, 0.0);
  double c = 1.0;
  for (int m = 0; m < n; ++m) {
    if (m > 0) c *= tau / (2.0 * m);
    sum += c * sf::hermite(m, u1) * sf::hermite(m, u2);
  }
  DetKernel k = DetKernel::elliptic(n, tau);
  double w = std::sqrt(k.weight(z1) * k.weight(z2));
  cplx expect = w * sum;
  cplx got = k.kernel(z1, z2);
  CHECK(std::abs(got - expect) < 1e-12 * std::abs(expect));
}

TEST_CASE("kernel hermiticity across ensembles") {
  std::vector<DetKernel> kernels;
  kernels.push_back(DetKernel::ginibre(12));
  kernels.push_back(DetKernel::elliptic(12, 0.6));
  kernels.push_back(DetKernel::truncated_unitary(9, 4));
  SubstreamRng rng(31, 0);
  for (const auto& k : kernels) {
    for (int t = 0; t < 100; ++t) {
      double r = k.spec().variant == VariantKind::TruncatedUnitary ? 0.45 : 2.5;
      cplx z1(r * (2 * rng.uniform() - 1), r * (2 * rng.uniform() - 1));
      cplx z2(r * (2 * rng.uniform() - 1), r * (2 * rng.uniform() - 1));
      cplx a = k.kernel(z1, z2);
      cplx b = std::conj(k.kernel(z2, z1));
      CHECK(std::abs(a - b) <= 1e-13 * std::max(1.0, std::abs(a)));
    }
  }
}

TEST_CASE("density facts") {
  DetKernel g50 = DetKernel::ginibre(50);
  CHECK(g50.density(cplx(0, 0)) ==
        doctest::Approx(1.0 / kPi).epsilon(1e-13));
  double dmid = g50.density(cplx(std::sqrt(50.0), 0.0));
  CHECK(dmid > 0.4 / kPi);
  CHECK(dmid < 0.6 / kPi);
  CHECK(dmid == doctest::Approx(sf::regularized_upper_gamma(50, 50.0) / kPi)
                    .epsilon(1e-12));

  DetKernel t = DetKernel::truncated_unitary(20, 10);
  CHECK(t.density(cplx(0, 0)) ==
        doctest::Approx(10.0 / kPi).epsilon(1e-12));
}

TEST_CASE("correlation determinant behavior") {
  DetKernel g = DetKernel::ginibre(100);
  cplx z0(0.0, 0.0), z1(1.0, 0.0);
  std::vector<cplx> one{z0};
  CHECK(g.correlation(one) == doctest::Approx(g.density(z0)).epsilon(1e-13));
  std::vector<cplx> two{z0, z1};
  double r2 = g.correlation(two);
  double expect = (1.0 - std::exp(-1.0)) / (kPi * kPi);
  CHECK(std::fabs(r2 - expect) < 1e-3 * expect);
  std::vector<cplx> coincident{z1, z1};
  CHECK(std::fabs(g.correlation(coincident)) < 1e-12);
  CHECK_THROWS_AS(g.correlation(std::vector<cplx>{}), std::invalid_argument);
}

TEST_CASE("bulk limit correlation") {
  std::vector<cplx> one{cplx(0.3, -0.4)};
  CHECK(ginibre_bulk_limit_correlation(one) ==
        doctest::Approx(1.0 / kPi).epsilon(1e-13));
  double s = 0.9;
  std::vector<cplx> two{cplx(0.0, 0.0), cplx(s, 0.0)};
  CHECK(ginibre_bulk_limit_correlation(two) ==
        doctest::Approx((1.0 - std::exp(-s * s)) / (kPi * kPi))
            .epsilon(1e-13));
  // n=3 triangle vs finite-N correlation at the origin
  std::vector<cplx> tri{cplx(0.2, 0.1), cplx(-0.5, 0.4), cplx(0.3, -0.6)};
  double lim = ginibre_bulk_limit_correlation(tri);
  double fin = DetKernel::ginibre(200).correlation(tri);
  CHECK(std::fabs(lim - fin) < 1e-3 * std::fabs(lim));
}

TEST_CASE("edge profile") {
  CHECK(ginibre_edge_profile(0.0) ==
        doctest::Approx(0.5 / kPi).epsilon(1e-14));
  CHECK(ginibre_edge_profile(-30.0) ==
        doctest::Approx(1.0 / kPi).epsilon(1e-12));
  CHECK(ginibre_edge_profile(1.0) ==
        doctest::Approx(0.5 / kPi * oracles::erfc_quadrature(std::sqrt(2.0)))
            .epsilon(1e-11));
}

TEST_CASE("truncation strong density") {
  CHECK(truncation_strong_density(7, 3, cplx(0, 0)) ==
        doctest::Approx(3.0 / kPi).epsilon(1e-13));
  CHECK_THROWS_AS(truncation_strong_density(7, 3, cplx(1.0, 0.2)),
                  std::domain_error);
  // alpha = 1: bulk form M/(pi alpha) (1-|z|^2)^{-2} inside the support
  int m = 200;
  double z2 = 0.25;
  double bulk = m / kPi / ((1 - z2) * (1 - z2));
  double got = truncation_strong_density(m, m, cplx(std::sqrt(z2), 0.0));
  CHECK(std::fabs(got - bulk) < 0.02 * bulk);
  // outside the support the density collapses
  double out =
      truncation_strong_density(m, m, cplx(std::sqrt(0.5 + 0.1), 0.0));
  CHECK(out < 0.01 * bulk);
}

TEST_CASE("truncation matches its own kernel diagonal") {
  DetKernel t = DetKernel::truncated_unitary(12, 5);
  for (double r : {0.12, 0.5, 0.83}) {
    CHECK(t.density(cplx(r, 0.0)) ==
          doctest::Approx(truncation_strong_density(12, 5, cplx(r, 0.0)))
              .epsilon(1e-11));
  }
}

TEST_CASE("truncation kernel representations agree") {
  for (auto [m, l] : std::vector<std::pair<int, int>>{{6, 3}, {30, 30}}) {
    DetKernel t = DetKernel::truncated_unitary(m, l);
    SubstreamRng rng(5, 1);
    for (int i = 0; i < 25; ++i) {
      cplx z1(0.9 * (2 * rng.uniform() - 1), 0.9 * (2 * rng.uniform() - 1));
      cplx z2(0.9 * (2 * rng.uniform() - 1), 0.9 * (2 * rng.uniform() - 1));
      if (std::abs(z1) >= 1.0 || std::abs(z2) >= 1.0) continue;
      cplx a = t.truncation_kernel_binomial(z1, z2).value();
      cplx b = t.truncation_kernel_beta(z1, z2).value();
      CHECK(std::abs(a - b) <= 1e-10 * std::max(1e-12, std::abs(a)));
    }
  }
}

TEST_CASE("truncation weak density") {
  // L=1 closed form (1 - e^{-2y}(1+2y))/(4 y^2 pi)
  for (double y : {0.3, 1.0, 2.5}) {
    double expect =
        (1.0 - std::exp(-2.0 * y) * (1.0 + 2.0 * y)) / (4.0 * y * y * kPi);
    CHECK(truncation_weak_density(1, y) ==
          doctest::Approx(expect).epsilon(1e-10));
  }
  // y -> 0 limit of the L=1 case is 1/(2 pi)
  CHECK(truncation_weak_density(1, 1e-6) ==
        doctest::Approx(0.5 / kPi).epsilon(1e-5));
  // adaptive vs 32-point fixed Gauss rule
  double y = 0.5;
  int l = 3;
  double fixed = quad::fixed_gauss_legendre(
      [&](double t) { return std::exp(-2.0 * y * t) * t * t * t; }, 0.0, 1.0,
      32);
  double lg = (l - 1) * std::log(2.0 * y) - std::lgamma(3.0);
  double expect = std::exp(lg) * fixed / kPi;
  CHECK(truncation_weak_density(l, y) ==
        doctest::Approx(expect).epsilon(1e-9));
}

TEST_CASE("truncation weak correlation") {
  std::vector<std::pair<double, double>> one{{0.8, 0.3}};
  CHECK(truncation_weak_correlation(2, one) ==
        doctest::Approx(truncation_weak_density(2, 0.8)).epsilon(1e-10));
  std::vector<std::pair<double, double>> dup{{1.0, 0.0}, {1.0, 0.0}};
  CHECK(std::fabs(truncation_weak_correlation(2, dup)) < 1e-12);

  // 2x2 determinant with quadrature entries, cross-checked at doubled order
  std::vector<std::pair<double, double>> pts{{1.0, 0.0}, {1.0, 2.0}};
  int l = 2;
  auto entry = [&](int i, int j, int order) {
    cplx c(pts[i].first + pts[j].first, pts[i].second - pts[j].second);
    return quad::fixed_gauss_legendre_c(
        [&](double t) { return std::exp(-c * t) * t * t; }, 0.0, 1.0, order);
  };
  for (int order : {32, 64}) {
    cplx det = entry(0, 0, order) * entry(1, 1, order) -
               entry(0, 1, order) * entry(1, 0, order);
    double pref = std::pow(2.0 * pts[0].first, l - 1) *
                  std::pow(2.0 * pts[1].first, l - 1) /
                  (kPi * kPi);  // (L-1)! = 1
    CHECK(truncation_weak_correlation(l, pts) ==
          doctest::Approx(det.real() * pref).epsilon(1e-9));
  }
}

TEST_CASE("semicircle density") {
  int n = 49;
  CHECK(semicircle_density(n, 0.0) ==
        doctest::Approx(std::sqrt(49.0) / kPi).epsilon(1e-14));
  CHECK(semicircle_density(n, 2.0 * std::sqrt(49.0)) == 0.0);
  CHECK(semicircle_density(n, std::sqrt(49.0)) ==
        doctest::Approx(std::sqrt(3.0 * 49.0 / 4.0) / kPi).epsilon(1e-14));
  CHECK_THROWS_AS(semicircle_density(n, 15.0), std::domain_error);
}

TEST_CASE("weak density and correlation") {
  WeakLimitContext ctx{1.0, 0.0, 400};
  // n=1 consistency
  cplx zeta(0.4, 0.7);
  std::vector<cplx> one{zeta};
  CHECK(weak_correlation(ctx, one) ==
        doctest::Approx(weak_density(ctx, zeta)).epsilon(1e-10));
  // coincident points
  std::vector<cplx> dup{zeta, zeta};
  CHECK(std::fabs(weak_correlation(ctx, dup)) < 1e-12);
  // symmetry in Im zeta
  CHECK(weak_density(ctx, cplx(0.2, 0.9)) ==
        doctest::Approx(weak_density(ctx, cplx(0.2, -0.9))).epsilon(1e-13));
  // quadrature value at the axis
  double axis = quad::integrate(
      [](double u) { return std::exp(-kPi * kPi * u * u); }, 0.0, 1.0);
  CHECK(weak_density(ctx, cplx(1.0, 0.0)) ==
        doctest::Approx(axis / kSqrtPi).epsilon(1e-10));
}

TEST_CASE("weak density normalizes over the imaginary direction") {
  for (double a : {0.05, 1.0}) {
    WeakLimitContext ctx{a, 0.0, 400};
    double w = std::max(1.0, 8.0 * a);
    double mass = quad::integrate(
        [&](double y) { return weak_density(ctx, cplx(0.0, y)); }, -w, w,
        {1e-10, 1e-14, 48});
    CHECK(std::fabs(mass - 1.0) < 1e-6);
  }
}

TEST_CASE("weak correlation approaches the Ginibre form at large a") {
  double a = 5.0;
  WeakLimitContext ctx{a, 0.0, 400};
  cplx z1(0.3, 0.2), z2(-0.4, 0.5);
  std::vector<cplx> pts{z1, z2};
  double weak = weak_correlation(ctx, pts);
  double s2 = 2.0 * a * a;
  std::vector<cplx> scaled{z1 / std::sqrt(s2), z2 / std::sqrt(s2)};
  double gin = ginibre_bulk_limit_correlation(scaled) / (s2 * s2);
  CHECK(std::fabs(weak - gin) < 0.05 * gin);
}

TEST_CASE("mehler closed form") {
  cplx z1(0.8, -0.3), z2(0.2, 0.5);
  CHECK(std::abs(mehler_closed_form(0.0, z1, z2) -
                 std::exp(z1 * std::conj(z2))) < 1e-14);
  CHECK(mehler_closed_form(0.7, cplx(0, 0), cplx(0, 0)).real() ==
        doctest::Approx(1.0 / std::sqrt(1.0 - 0.49)).epsilon(1e-14));
  CHECK_THROWS_AS(mehler_closed_form(1.0, z1, z2), std::domain_error);

  // Hermite series partial sums converge to the closed form
  double tau = 0.4;
  cplx w1(1.0, 0.0), w2(0.0, 1.0);
  cplx u1 = w1 / std::sqrt(2.0 * tau);
  cplx u2 = std::conj(w2) / std::sqrt(2.0 * tau);
  cplx sum(0.0, 0.0);
  double c = 1.0;
  for (int m = 0; m < 60; ++m) {
    if (m > 0) c *= tau / (2.0 * m);
    sum += c * sf::hermite(m, u1) * sf::hermite(m, u2);
  }
  cplx closed = mehler_closed_form(tau, w1, w2);
  CHECK(std::abs(sum - closed) <= 1e-8 * std::abs(closed));
}

TEST_CASE("kernel trace equals N") {
  for (int n : {4, 17, 30}) {
    DetKernel g = DetKernel::ginibre(n);
    double r_max = std::sqrt(static_cast<double>(n)) + 8.0;
    double tr = quad::integrate(
        [&](double r) { return g.density(cplx(r, 0.0)) * kTwoPi * r; }, 0.0,
        r_max, {1e-10, 1e-13, 48});
    CHECK(std::fabs(tr - n) < 1e-8 * n);
  }
  {
    DetKernel t = DetKernel::truncated_unitary(14, 4);
    double tr = quad::integrate(
        [&](double r) { return t.density(cplx(r, 0.0)) * kTwoPi * r; }, 0.0,
        1.0, {1e-10, 1e-13, 48});
    CHECK(std::fabs(tr - 14) < 1e-8 * 14);
  }
  {
    DetKernel e = DetKernel::elliptic(10, 0.5);
    double bx = std::sqrt(10.0) * 1.5 + 8.0;
    double by = std::sqrt(10.0) * 0.5 + 8.0;
    double tr = quad::integrate_2d(
        [&](double x, double y) { return e.density(cplx(x, y)); }, -bx, bx,
        -by, by, {1e-8, 1e-10, 40});
    CHECK(std::fabs(tr - 10) < 1e-6 * 10);
  }
}

TEST_CASE("reproducing property") {
  SubstreamRng rng(8, 8);
  auto check_reproducing = [&](const DetKernel& k, double box, double span) {
    for (int rep = 0; rep < 3; ++rep) {
      cplx z1(span * (2 * rng.uniform() - 1), span * (2 * rng.uniform() - 1));
      cplx z2(span * (2 * rng.uniform() - 1), span * (2 * rng.uniform() - 1));
      cplx expect = k.kernel(z1, z2);
      cplx got = quad::integrate_2d_c(
          [&](double x, double y) {
            cplx z(x, y);
            return k.kernel(z1, z) * k.kernel(z, z2);
          },
          -box, box, -box, box, {1e-8, 1e-12, 36});
      CHECK(std::abs(got - expect) <= 1e-6 * std::max(1e-6, std::abs(expect)));
    }
  };
  check_reproducing(DetKernel::ginibre(8), std::sqrt(8.0) + 8.0, 1.5);
  check_reproducing(DetKernel::elliptic(8, 0.5), std::sqrt(8.0) + 8.0, 1.5);
  check_reproducing(DetKernel::truncated_unitary(8, 3), 1.0, 0.55);
}

TEST_CASE("scaled hermite orthogonality under the elliptic weight") {
  const double tau = 0.5;
  DetKernel e = DetKernel::elliptic(8, tau);
  const double box = 12.0;
  for (int m = 0; m <= 6; ++m) {
    for (int n = m; n <= 6; ++n) {
      cplx val = quad::integrate_2d_c(
          [&](double x, double y) {
            cplx z(x, y);
            cplx hm = sf::hermite(m, z / std::sqrt(2.0 * tau));
            cplx hn = sf::hermite(n, std::conj(z) / std::sqrt(2.0 * tau));
            return hm * hn * e.weight(z);
          },
          -box, box, -box, box, {1e-9, 1e-12, 40});
      double scale = std::exp(0.5 * (std::lgamma(m + 1.0) + std::lgamma(n + 1.0)) +
                              0.5 * (m + n) * std::log(2.0 / tau));
      if (m == n) {
        double expect = std::exp(std::lgamma(n + 1.0) + n * std::log(2.0 / tau));
        CHECK(std::abs(val - expect) < 1e-6 * expect);
      } else {
        CHECK(std::abs(val) < 1e-6 * scale);
      }
    }
  }
}

TEST_CASE("truncation degenerates to ginibre at large L") {
  const int m = 5;
  const int l = 2000;
  DetKernel t = DetKernel::truncated_unitary(m, l);
  DetKernel g = DetKernel::ginibre(m);
  double rl = std::sqrt(static_cast<double>(l));
  SubstreamRng rng(606, 0);
  auto draw_disk = [&rng]() {
    while (true) {
      cplx z(2.0 * (2 * rng.uniform() - 1), 2.0 * (2 * rng.uniform() - 1));
      if (std::abs(z) <= 2.0) return z;
    }
  };
  for (int rep = 0; rep < 20; ++rep) {
    cplx z1 = draw_disk();
    cplx z2 = draw_disk();
    cplx scaled = t.kernel(z1 / rl, z2 / rl) / static_cast<double>(l);
    cplx gin = g.kernel(z1, z2);
    // 1% relative to the local kernel scale; the pointwise value itself can
    // be exponentially small through cancellation
    double scale = std::sqrt(g.density(z1) * g.density(z2));
    CHECK(std::abs(scaled - gin) <= 0.01 * scale);
    if (std::abs(gin) > 0.1 * scale)
      CHECK(std::abs(scaled - gin) <= 0.01 * std::abs(gin));
  }
}

TEST_CASE("correlation positivity on random point sets") {
  DetKernel g = DetKernel::ginibre(30);
  SubstreamRng rng(12, 12);
  for (int rep = 0; rep < 10; ++rep) {
    int n = 2 + static_cast<int>(rng.uniform() * 3);
    std::vector<cplx> pts;
    for (int i = 0; i < n; ++i)
      pts.emplace_back(3.0 * (2 * rng.uniform() - 1),
                       3.0 * (2 * rng.uniform() - 1));
    double r = g.correlation(pts);
    double scale = 1.0;
    for (const cplx& z : pts) scale *= g.density(z);
    CHECK(r >= -1e-10 * scale);
  }
}
