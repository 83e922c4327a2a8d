#pragma once

#include "mpw/common.hpp"

#include <functional>

namespace mpw::greens {

/// Dirichlet Green's function of -d^2/dx^2 on [0, 1].
double green_interval(double x, double y);

/// u(x) = int_0^1 G(x, y) f(y) dy with Simpson on each side of the kink at y = x.
std::function<double(double)> solve_poisson_interval(std::function<double(double)> f,
                                                     int n_quad);

/// -(1/2pi) ln|x - y| for d = 2 and 1 / (4 pi |x - y|) for d = 3.
double green_free_space(const Vec& x, const Vec& y);

/// int grad_x G(x, y) . grad phi(x) dx over |x - y| > eps in polar or spherical
/// coordinates about y, with Gauss-Legendre panels in r and the polar angle.
///
/// `extent` must bound the distance from y to the support of phi.
double free_space_pairing(const std::function<double(const Vec&)>& phi, const Vec& y,
                          double extent, double eps = 1e-3);

/// Dirichlet problem -Lap u = f on [0, 1]^2, u = h on the boundary.
///
/// Samples live on the (nx + 1) x (ny + 1) nodes x_i = i / nx, y_j = j / ny;
/// h is read at boundary nodes. The finite-difference path reads f at interior
/// nodes; the potential path integrates f over the closed square.
struct RectangleProblem {
  int nx = 16;
  int ny = 16;
  Mat f;
  Mat h;
};

RectangleProblem make_rectangle_problem(int nx, int ny,
                                        const std::function<double(double, double)>& f,
                                        const std::function<double(double, double)>& h);

/// Path A: 5-point finite differences with a sparse Cholesky solve.
Mat solve_rectangle_fd(const RectangleProblem& p);

/// int_{[0,1]^2} -(1/2pi) ln|x - y| f(y) dy at every node (singularity subtracted).
Mat newtonian_potential(const RectangleProblem& p);

struct RectangleSolution {
  Mat u;                     ///< path B
  Mat u_fd;                  ///< path A
  double residual = 0.0;     ///< max interior |u - u_fd|
  double boundary_gap = 0.0; ///< max boundary |u - h|
};

/// Path B: u = N f + w with N the Newtonian potential and w the discrete
/// harmonic function with boundary data h - N f. Since the harmonic correction b
/// of G_Omega solves the same discrete Laplace problem for every target, one
/// solve with the accumulated data replaces the per-target solves.
RectangleSolution solve_rectangle_dirichlet(const RectangleProblem& p);

}  // namespace mpw::greens
