#include <doctest.h>

#include <cmath>

#include "ginlab/rng.hpp"

using namespace ginlab;

TEST_CASE("substreams are reproducible and distinct") {
  SubstreamRng a(42, 7), b(42, 7), c(42, 8), d(43, 7);
  bool same = true, diff1 = false, diff2 = false;
  for (int i = 0; i < 64; ++i) {
    auto va = a.next();
    same = same && (va == b.next());
    diff1 = diff1 || (va != c.next());
    diff2 = diff2 || (va != d.next());
  }
  CHECK(same);
  CHECK(diff1);
  CHECK(diff2);
}

TEST_CASE("uniform range and normal moments") {
  SubstreamRng r(123, 0);
  double s = 0.0, s2 = 0.0, s3 = 0.0, s4 = 0.0;
  const int n = 400000;
  for (int i = 0; i < n; ++i) {
    double u = r.uniform();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
    double g = r.normal();
    s += g;
    s2 += g * g;
    s3 += g * g * g;
    s4 += g * g * g * g;
  }
  double se = 1.0 / std::sqrt(static_cast<double>(n));
  CHECK(std::fabs(s / n) < 5 * se);
  CHECK(std::fabs(s2 / n - 1.0) < 5 * std::sqrt(2.0) * se);
  CHECK(std::fabs(s3 / n) < 5 * std::sqrt(15.0) * se);
  CHECK(std::fabs(s4 / n - 3.0) < 5 * std::sqrt(96.0) * se);
}

TEST_CASE("complex normal second moment") {
  SubstreamRng r(9, 1);
  cplx sum2(0.0, 0.0);
  cplx sumsq(0.0, 0.0);
  const int n = 200000;
  double m2 = 0.0;
  for (int i = 0; i < n; ++i) {
    cplx z = r.cnormal(1.0);
    m2 += std::norm(z);
    sumsq += z * z;
    sum2 += z;
  }
  double se = 1.0 / std::sqrt(static_cast<double>(n));
  CHECK(std::fabs(m2 / n - 1.0) < 6 * se);
  CHECK(std::abs(sumsq) / n < 6 * se);  // <z^2> = 0
  CHECK(std::abs(sum2) / n < 6 * se);
}
