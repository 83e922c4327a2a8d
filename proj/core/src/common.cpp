#include "mpw/common.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>

namespace mpw {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::invalid_input: return "invalid-input";
    case ErrorKind::domain_escape: return "domain-escape";
    case ErrorKind::blow_up: return "blow-up";
    case ErrorKind::not_fixed_point: return "not-a-fixed-point";
    case ErrorKind::aliasing: return "aliasing";
    case ErrorKind::undefined_fit: return "undefined-fit";
    case ErrorKind::degenerate_point: return "degenerate-point";
    case ErrorKind::truncation: return "truncation";
    case ErrorKind::precondition: return "precondition";
    case ErrorKind::bracket: return "bracket";
    case ErrorKind::singularity: return "singularity";
    case ErrorKind::solver: return "solver";
    case ErrorKind::insufficient_resolution: return "insufficient-resolution";
    case ErrorKind::invalid_field: return "invalid-field";
    case ErrorKind::invalid_mode: return "invalid-mode";
    case ErrorKind::io: return "io";
    case ErrorKind::usage: return "usage";
    case ErrorKind::parse: return "parse";
    case ErrorKind::internal: return "internal";
  }
  return "unknown";
}

void fail(ErrorKind kind, const std::string& what) {
  throw Error(kind, std::string(to_string(kind)) + ": " + what);
}

BoundReport make_bound(std::string name, double lhs, double rhs, double tolerance,
                       std::string provenance) {
  BoundReport r;
  r.name = std::move(name);
  r.lhs = lhs;
  r.rhs = rhs;
  r.tolerance = tolerance;
  r.pass = lhs <= rhs + tolerance;
  r.provenance = std::move(provenance);
  return r;
}

bool all_finite(const Vec& v) { return v.allFinite(); }
bool all_finite(const CVec& v) {
  return v.real().allFinite() && v.imag().allFinite();
}
bool all_finite(const CMat& m) {
  return m.real().allFinite() && m.imag().allFinite();
}

double trapezoid(const std::vector<double>& values, double spacing) {
  if (values.size() < 2) return 0.0;
  double sum = 0.5 * (values.front() + values.back());
  for (std::size_t i = 1; i + 1 < values.size(); ++i) sum += values[i];
  return sum * spacing;
}

namespace {

template <typename T>
T simpson_impl(const std::function<T(double)>& f, double a, double b, int intervals) {
  require(intervals >= 1, ErrorKind::invalid_input, "simpson needs at least one panel");
  // `intervals` counts Simpson panels; each panel has a midpoint.
  const int n = 2 * intervals;
  const double h = (b - a) / n;
  T sum = f(a) + f(b);
  for (int i = 1; i < n; ++i) {
    sum += (i % 2 == 1 ? 4.0 : 2.0) * f(a + i * h);
  }
  return sum * (h / 3.0);
}

}  // namespace

double simpson(const std::function<double(double)>& f, double a, double b, int intervals) {
  return simpson_impl<double>(f, a, b, intervals);
}

Complex simpson(const std::function<Complex(double)>& f, double a, double b,
                int intervals) {
  return simpson_impl<Complex>(f, a, b, intervals);
}

GaussRule gauss_legendre(int order) {
  require(order >= 1, ErrorKind::invalid_input, "Gauss-Legendre order must be positive");
  // Golub-Welsch: nodes are eigenvalues of the Jacobi matrix.
  Mat jacobi = Mat::Zero(order, order);
  for (int i = 1; i < order; ++i) {
    const double b = i / std::sqrt(4.0 * i * i - 1.0);
    jacobi(i, i - 1) = b;
    jacobi(i - 1, i) = b;
  }
  Eigen::SelfAdjointEigenSolver<Mat> solver(jacobi);
  GaussRule rule;
  rule.nodes.resize(order);
  rule.weights.resize(order);
  for (int i = 0; i < order; ++i) {
    rule.nodes[i] = solver.eigenvalues()(i);
    const double v0 = solver.eigenvectors()(0, i);
    rule.weights[i] = 2.0 * v0 * v0;
  }
  return rule;
}

Vec fd_gradient(const std::function<double(const Vec&)>& f, const Vec& x, double step) {
  Vec g(x.size());
  Vec y = x;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    y(i) = x(i) + step;
    const double up = f(y);
    y(i) = x(i) - step;
    const double down = f(y);
    y(i) = x(i);
    g(i) = (up - down) / (2.0 * step);
  }
  return g;
}

Mat fd_jacobian(const std::function<Vec(const Vec&)>& f, const Vec& x, double step) {
  const Vec f0 = f(x);
  Mat jac(f0.size(), x.size());
  Vec y = x;
  for (Eigen::Index j = 0; j < x.size(); ++j) {
    y(j) = x(j) + step;
    const Vec up = f(y);
    y(j) = x(j) - step;
    const Vec down = f(y);
    y(j) = x(j);
    jac.col(j) = (up - down) / (2.0 * step);
  }
  return jac;
}

Mat fd_hessian(const std::function<double(const Vec&)>& f, const Vec& x, double step) {
  const Eigen::Index n = x.size();
  Mat hess(n, n);
  Vec y = x;
  const double denom = 4.0 * step * step;
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      // Central difference of central differences; i == j gives the 2h stencil.
      auto shifted = [&](double si, double sj) {
        y = x;
        y(i) += si * step;
        y(j) += sj * step;
        return f(y);
      };
      hess(i, j) =
          (shifted(1, 1) - shifted(1, -1) - shifted(-1, 1) + shifted(-1, -1)) / denom;
    }
  }
  return hess;
}

std::vector<Complex> sorted_eigenvalues(const Mat& m) {
  Eigen::EigenSolver<Mat> solver(m, false);
  std::vector<Complex> ev(solver.eigenvalues().data(),
                          solver.eigenvalues().data() + solver.eigenvalues().size());
  std::sort(ev.begin(), ev.end(), [](Complex a, Complex b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
  });
  return ev;
}

}  // namespace mpw
