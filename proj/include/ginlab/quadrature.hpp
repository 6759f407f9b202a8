#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "ginlab/common.hpp"

namespace ginlab::quad {

struct QuadOptions {
  double rel_tol = 1e-10;
  double abs_tol = 1e-13;
  int max_depth = 48;
};

/// Adaptive Gauss-Kronrod (G7,K15) on [a,b].
double integrate(const std::function<double(double)>& f, double a, double b,
                 const QuadOptions& opt = {});

cplx integrate_c(const std::function<cplx(double)>& f, double a, double b,
                 const QuadOptions& opt = {});

/// Tensorized 2D integral over [ax,bx] x [ay,by]; inner integral runs at a
/// tighter tolerance than the outer one.
double integrate_2d(const std::function<double(double, double)>& f, double ax,
                    double bx, double ay, double by,
                    const QuadOptions& opt = {});

cplx integrate_2d_c(const std::function<cplx(double, double)>& f, double ax,
                    double bx, double ay, double by,
                    const QuadOptions& opt = {});

/// Non-adaptive n-point Gauss-Legendre rule on [a,b].
double fixed_gauss_legendre(const std::function<double(double)>& f, double a,
                            double b, int n);

cplx fixed_gauss_legendre_c(const std::function<cplx(double)>& f, double a,
                            double b, int n);

/// Nodes and weights of the n-point Gauss-Legendre rule on [-1,1].
std::pair<std::vector<double>, std::vector<double>> gauss_legendre_nodes(
    int n);

}  // namespace ginlab::quad
