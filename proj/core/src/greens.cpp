#include "mpw/greens.hpp"

#include <Eigen/Sparse>
#include <Eigen/SparseCholesky>

#include <algorithm>
#include <cmath>
#include <vector>

namespace mpw::greens {

double green_interval(double x, double y) {
  require(x >= 0.0 && x <= 1.0 && y >= 0.0 && y <= 1.0, ErrorKind::invalid_input,
          "interval Green's function needs x, y in [0, 1]");
  return x <= y ? (1.0 - y) * x : y * (1.0 - x);
}

std::function<double(double)> solve_poisson_interval(std::function<double(double)> f,
                                                     int n_quad) {
  require(n_quad >= 2, ErrorKind::invalid_input, "need at least two quadrature panels");
  return [f = std::move(f), n_quad](double x) {
    require(x >= 0.0 && x <= 1.0, ErrorKind::invalid_input, "x must lie in [0, 1]");
    const std::function<double(double)> left = [&](double y) { return y * f(y); };
    const std::function<double(double)> right = [&](double y) { return (1.0 - y) * f(y); };
    double u = 0.0;
    if (x > 0.0) u += (1.0 - x) * simpson(left, 0.0, x, n_quad);
    if (x < 1.0) u += x * simpson(right, x, 1.0, n_quad);
    return u;
  };
}

double green_free_space(const Vec& x, const Vec& y) {
  require(x.size() == y.size() && (x.size() == 2 || x.size() == 3), ErrorKind::invalid_input,
          "free-space Green's function is implemented for d = 2, 3");
  const double r = (x - y).norm();
  require(r > 0.0, ErrorKind::singularity, "Green's function is singular at x = y");
  if (x.size() == 2) return -std::log(r) / (2.0 * kPi);
  return 1.0 / (4.0 * kPi * r);
}

double free_space_pairing(const std::function<double(const Vec&)>& phi, const Vec& y,
                          double extent, double eps) {
  const auto d = y.size();
  require(d == 2 || d == 3, ErrorKind::invalid_input, "pairing is implemented for d = 2, 3");
  require(extent > eps && eps > 0.0, ErrorKind::invalid_input, "need 0 < eps < extent");
  constexpr int kRadialPanels = 64;
  constexpr int kOrder = 16;
  constexpr int kPolar = 48;
  constexpr int kAzimuth = 96;
  const GaussRule gl = gauss_legendre(kOrder);
  const GaussRule polar = gauss_legendre(kPolar);
  const double fd = 1e-5;

  // grad_x G . grad phi = -(1 / (|S^{d-1}| r^{d-1})) d_r phi, and the Jacobian is r^{d-1}.
  const double sphere = d == 2 ? 2.0 * kPi : 4.0 * kPi;
  const double width = (extent - eps) / kRadialPanels;
  auto radial = [&](const Vec& omega) {
    double sum = 0.0;
    for (int p = 0; p < kRadialPanels; ++p) {
      const double mid = eps + (p + 0.5) * width;
      for (int q = 0; q < kOrder; ++q) {
        const double r = mid + 0.5 * width * gl.nodes[q];
        const double dr = (phi(y + (r + fd) * omega) - phi(y + (r - fd) * omega)) / (2.0 * fd);
        sum += 0.5 * width * gl.weights[q] * dr;
      }
    }
    return -sum / sphere;
  };

  double total = 0.0;
  for (int a = 0; a < kAzimuth; ++a) {
    const double az = 2.0 * kPi * (a + 0.5) / kAzimuth;
    if (d == 2) {
      total += (2.0 * kPi / kAzimuth) * radial(Eigen::Vector2d(std::cos(az), std::sin(az)));
      continue;
    }
    for (int b = 0; b < kPolar; ++b) {
      const double c = polar.nodes[b];
      const double s = std::sqrt(1.0 - c * c);
      const Vec omega = Eigen::Vector3d(s * std::cos(az), s * std::sin(az), c);
      total += polar.weights[b] * (2.0 * kPi / kAzimuth) * radial(omega);
    }
  }
  return total;
}

RectangleProblem make_rectangle_problem(int nx, int ny,
                                        const std::function<double(double, double)>& f,
                                        const std::function<double(double, double)>& h) {
  require(nx >= 8 && ny >= 8, ErrorKind::invalid_input, "rectangle resolution must be >= 8");
  RectangleProblem p;
  p.nx = nx;
  p.ny = ny;
  p.f = Mat::Zero(nx + 1, ny + 1);
  p.h = Mat::Zero(nx + 1, ny + 1);
  for (int i = 0; i <= nx; ++i) {
    for (int j = 0; j <= ny; ++j) {
      const double x = static_cast<double>(i) / nx;
      const double y = static_cast<double>(j) / ny;
      p.f(i, j) = f(x, y);
      if (i == 0 || j == 0 || i == nx || j == ny) p.h(i, j) = h(x, y);
    }
  }
  return p;
}

namespace {

void validate(const RectangleProblem& p) {
  require(p.nx >= 8 && p.ny >= 8, ErrorKind::invalid_input, "rectangle resolution must be >= 8");
  require(p.f.rows() == p.nx + 1 && p.f.cols() == p.ny + 1 && p.h.rows() == p.nx + 1 &&
              p.h.cols() == p.ny + 1,
          ErrorKind::invalid_input, "sample arrays must be (nx + 1) x (ny + 1)");
  require(p.f.allFinite() && p.h.allFinite(), ErrorKind::invalid_input,
          "samples must be finite");
}

bool on_boundary(const RectangleProblem& p, int i, int j) {
  return i == 0 || j == 0 || i == p.nx || j == p.ny;
}

// Discrete -Lap u = f with u = g on the boundary; returns all nodes.
Mat dirichlet_fd(int nx, int ny, const Mat& f, const Mat& g) {
  const double hx2 = 1.0 / (static_cast<double>(nx) * nx);
  const double hy2 = 1.0 / (static_cast<double>(ny) * ny);
  const int mx = nx - 1;
  const int my = ny - 1;
  auto id = [my](int i, int j) { return (i - 1) * my + (j - 1); };
  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(static_cast<std::size_t>(5 * mx * my));
  Vec rhs(mx * my);
  for (int i = 1; i <= mx; ++i) {
    for (int j = 1; j <= my; ++j) {
      const int row = id(i, j);
      double b = f(i, j);
      triplets.emplace_back(row, row, 2.0 / hx2 + 2.0 / hy2);
      const int ni[4] = {i - 1, i + 1, i, i};
      const int nj[4] = {j, j, j - 1, j + 1};
      const double w[4] = {1.0 / hx2, 1.0 / hx2, 1.0 / hy2, 1.0 / hy2};
      for (int n = 0; n < 4; ++n) {
        if (ni[n] == 0 || ni[n] == nx || nj[n] == 0 || nj[n] == ny) {
          b += w[n] * g(ni[n], nj[n]);
        } else {
          triplets.emplace_back(row, id(ni[n], nj[n]), -w[n]);
        }
      }
      rhs(row) = b;
    }
  }
  Eigen::SparseMatrix<double> a(mx * my, mx * my);
  a.setFromTriplets(triplets.begin(), triplets.end());
  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> solver(a);
  require(solver.info() == Eigen::Success, ErrorKind::solver, "Laplacian factorization failed");
  const Vec x = solver.solve(rhs);
  require(solver.info() == Eigen::Success, ErrorKind::solver, "Laplacian solve failed");
  Mat u = g;
  for (int i = 1; i <= mx; ++i) {
    for (int j = 1; j <= my; ++j) u(i, j) = x(id(i, j));
  }
  return u;
}

// int_0^p int_0^q ln(s^2 + t^2) ds dt.
double log_rectangle(double p, double q) {
  if (p <= 0.0 || q <= 0.0) return 0.0;
  return p * q * std::log(p * p + q * q) - 3.0 * p * q + p * p * std::atan(q / p) +
         q * q * std::atan(p / q);
}

}  // namespace

Mat solve_rectangle_fd(const RectangleProblem& p) {
  validate(p);
  return dirichlet_fd(p.nx, p.ny, p.f, p.h);
}

Mat newtonian_potential(const RectangleProblem& p) {
  validate(p);
  const int nx = p.nx;
  const int ny = p.ny;
  const double hx = 1.0 / nx;
  const double hy = 1.0 / ny;
  // Trapezoid weights on the node grid.
  Mat w(nx + 1, ny + 1);
  for (int i = 0; i <= nx; ++i) {
    for (int j = 0; j <= ny; ++j) {
      w(i, j) = hx * hy * ((i == 0 || i == nx) ? 0.5 : 1.0) * ((j == 0 || j == ny) ? 0.5 : 1.0);
    }
  }
  const Mat& f = p.f;
  Mat out(nx + 1, ny + 1);
  for (int i = 0; i <= nx; ++i) {
    for (int j = 0; j <= ny; ++j) {
      const double x = i * hx;
      const double y = j * hy;
      const double fx = f(i, j);
      double sum = 0.0;
      for (int k = 0; k <= nx; ++k) {
        for (int l = 0; l <= ny; ++l) {
          if (k == i && l == j) continue;
          const double dx = x - k * hx;
          const double dy = y - l * hy;
          sum += w(k, l) * 0.5 * std::log(dx * dx + dy * dy) * (f(k, l) - fx);
        }
      }
      // int ln|x - y| dy over the square, split at x into four corner rectangles.
      const double exact = 0.5 * (log_rectangle(x, y) + log_rectangle(1.0 - x, y) +
                                  log_rectangle(x, 1.0 - y) + log_rectangle(1.0 - x, 1.0 - y));
      out(i, j) = -(sum + fx * exact) / (2.0 * kPi);
    }
  }
  return out;
}

RectangleSolution solve_rectangle_dirichlet(const RectangleProblem& p) {
  validate(p);
  RectangleSolution out;
  out.u_fd = solve_rectangle_fd(p);
  const Mat newton = newtonian_potential(p);
  Mat data = Mat::Zero(p.nx + 1, p.ny + 1);
  for (int i = 0; i <= p.nx; ++i) {
    for (int j = 0; j <= p.ny; ++j) {
      if (on_boundary(p, i, j)) data(i, j) = p.h(i, j) - newton(i, j);
    }
  }
  const Mat harmonic = dirichlet_fd(p.nx, p.ny, Mat::Zero(p.nx + 1, p.ny + 1), data);
  out.u = newton + harmonic;
  for (int i = 0; i <= p.nx; ++i) {
    for (int j = 0; j <= p.ny; ++j) {
      const double gap = std::abs(out.u(i, j) - (on_boundary(p, i, j) ? p.h(i, j) : out.u_fd(i, j)));
      if (on_boundary(p, i, j)) {
        out.boundary_gap = std::max(out.boundary_gap, gap);
      } else {
        out.residual = std::max(out.residual, gap);
      }
    }
  }
  return out;
}

}  // namespace mpw::greens
