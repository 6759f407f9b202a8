#include "ginlab/quadrature.hpp"

#include <cmath>
#include <stdexcept>

namespace ginlab::quad {
namespace {

// QUADPACK dqk15 nodes/weights. xgk holds the Kronrod abscissae on [0,1];
// even indices are the embedded Gauss-7 points.
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

template <typename T>
struct Panel {
  T integral;
  double err;
};

template <typename T>
Panel<T> gk15(const std::function<T(double)>& f, double a, double b) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  T fc = f(c);
  T resg = fc * kWg[3];
  T resk = fc * kWgk[7];
  for (int j = 0; j < 7; ++j) {
    double x = h * kXgk[j];
    T f1 = f(c - x);
    T f2 = f(c + x);
    T fsum = f1 + f2;
    if (j % 2 == 1) resg += fsum * kWg[j / 2];
    resk += fsum * kWgk[j];
  }
  Panel<T> p;
  p.integral = resk * h;
  p.err = std::abs((resk - resg) * h);
  return p;
}

template <typename T>
T adapt(const std::function<T(double)>& f, double a, double b, double tol_abs,
        double rel_tol, int depth, int max_depth) {
  Panel<T> p = gk15<T>(f, a, b);
  double bound = std::max(tol_abs, rel_tol * std::abs(p.integral));
  if (p.err <= bound || depth >= max_depth) return p.integral;
  double m = 0.5 * (a + b);
  return adapt<T>(f, a, m, 0.5 * tol_abs, rel_tol, depth + 1, max_depth) +
         adapt<T>(f, m, b, 0.5 * tol_abs, rel_tol, depth + 1, max_depth);
}

template <typename T>
T run(const std::function<T(double)>& f, double a, double b,
      const QuadOptions& opt) {
  if (a == b) return T{};
  return adapt<T>(f, a, b, opt.abs_tol, opt.rel_tol, 0, opt.max_depth);
}

}  // namespace

double integrate(const std::function<double(double)>& f, double a, double b,
                 const QuadOptions& opt) {
  return run<double>(f, a, b, opt);
}

cplx integrate_c(const std::function<cplx(double)>& f, double a, double b,
                 const QuadOptions& opt) {
  return run<cplx>(f, a, b, opt);
}

double integrate_2d(const std::function<double(double, double)>& f, double ax,
                    double bx, double ay, double by, const QuadOptions& opt) {
  QuadOptions inner = opt;
  inner.rel_tol = 0.1 * opt.rel_tol;
  inner.abs_tol = 0.1 * opt.abs_tol;
  auto outer = [&](double x) {
    return integrate([&](double y) { return f(x, y); }, ay, by, inner);
  };
  return integrate(outer, ax, bx, opt);
}

cplx integrate_2d_c(const std::function<cplx(double, double)>& f, double ax,
                    double bx, double ay, double by, const QuadOptions& opt) {
  QuadOptions inner = opt;
  inner.rel_tol = 0.1 * opt.rel_tol;
  inner.abs_tol = 0.1 * opt.abs_tol;
  auto outer = [&](double x) {
    return integrate_c([&](double y) { return f(x, y); }, ay, by, inner);
  };
  return integrate_c(outer, ax, bx, opt);
}

std::pair<std::vector<double>, std::vector<double>> gauss_legendre_nodes(
    int n) {
  if (n < 1) throw std::invalid_argument("gauss_legendre_nodes: n >= 1");
  std::vector<double> x(n), w(n);
  // Newton iteration on P_n, symmetric nodes.
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double t = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double p0 = 0, p1 = 0;
    for (int it = 0; it < 100; ++it) {
      p0 = 1.0;
      p1 = t;
      for (int k = 2; k <= n; ++k) {
        double p2 = ((2 * k - 1) * t * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      double dp = n * (t * p1 - p0) / (t * t - 1.0);
      double dt = p1 / dp;
      t -= dt;
      if (std::fabs(dt) < 1e-15) break;
    }
    p0 = 1.0;
    p1 = t;
    for (int k = 2; k <= n; ++k) {
      double p2 = ((2 * k - 1) * t * p1 - (k - 1) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    double dp = n * (t * p1 - p0) / (t * t - 1.0);
    x[i] = -t;
    x[n - 1 - i] = t;
    w[i] = w[n - 1 - i] = 2.0 / ((1.0 - t * t) * dp * dp);
  }
  return {x, w};
}

namespace {
template <typename T>
T fixed_gl(const std::function<T(double)>& f, double a, double b, int n) {
  auto [x, w] = gauss_legendre_nodes(n);
  const double c = 0.5 * (a + b), h = 0.5 * (b - a);
  T s{};
  for (int i = 0; i < n; ++i) s += f(c + h * x[i]) * w[i];
  return s * h;
}
}  // namespace

double fixed_gauss_legendre(const std::function<double(double)>& f, double a,
                            double b, int n) {
  return fixed_gl<double>(f, a, b, n);
}

cplx fixed_gauss_legendre_c(const std::function<cplx(double)>& f, double a,
                            double b, int n) {
  return fixed_gl<cplx>(f, a, b, n);
}

}  // namespace ginlab::quad
