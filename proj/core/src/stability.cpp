#include "mpw/stability.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace mpw::stability {

const char* to_string(Stability s) noexcept {
  switch (s) {
    case Stability::stable: return "stable";
    case Stability::marginal: return "marginal";
    case Stability::unstable: return "unstable";
  }
  return "unknown";
}

const char* to_string(Geometry g) noexcept {
  switch (g) {
    case Geometry::elliptic: return "elliptic";
    case Geometry::hyperbolic: return "hyperbolic";
    case Geometry::neither: return "neither";
  }
  return "unknown";
}

void classify(FixedPointReport& report, double tol) {
  const auto& ev = report.eigenvalues;
  const bool all_neg = std::all_of(ev.begin(), ev.end(), [&](Complex l) { return l.real() < -tol; });
  const bool all_nonpos = std::all_of(ev.begin(), ev.end(), [&](Complex l) { return l.real() <= tol; });
  const bool some_zero = std::any_of(ev.begin(), ev.end(), [&](Complex l) { return std::abs(l.real()) <= tol; });
  const bool all_zero = std::all_of(ev.begin(), ev.end(), [&](Complex l) { return std::abs(l.real()) <= tol; });
  const bool all_real = std::all_of(ev.begin(), ev.end(), [&](Complex l) { return std::abs(l.imag()) <= tol; });
  const bool some_pos = std::any_of(ev.begin(), ev.end(), [&](Complex l) { return l.real() > tol; });

  if (all_neg) {
    report.stability = Stability::stable;
  } else if (all_nonpos && some_zero) {
    report.stability = Stability::marginal;
  } else {
    report.stability = Stability::unstable;
  }

  if (all_zero) {
    report.geometry = Geometry::elliptic;
  } else if (all_real && some_pos) {
    report.geometry = Geometry::hyperbolic;
  } else {
    report.geometry = Geometry::neither;
  }
}

double default_fd_step(const Vec& x0) { return 1e-5 * (1.0 + x0.norm()); }

FixedPointReport analyze_fixed_point(const flow::VectorField& f, const Vec& x0,
                                     double fd_step, double tol) {
  require(fd_step > 0.0 && tol > 0.0, ErrorKind::invalid_input,
          "fd_step and tol must be positive");
  require(x0.size() == f.dim, ErrorKind::invalid_input, "x0 has the wrong dimension");
  const double residual = f(x0).norm();
  if (residual > tol) {
    std::ostringstream msg;
    msg << "|F(x0)| = " << residual << " exceeds tolerance " << tol;
    fail(ErrorKind::not_fixed_point, msg.str());
  }
  FixedPointReport report;
  report.location = x0;
  report.jacobian = fd_jacobian(f.eval, x0, fd_step);
  report.eigenvalues = sorted_eigenvalues(report.jacobian);
  classify(report, tol);
  return report;
}

FixedPointReport analyze_fixed_point(const flow::VectorField& f, const Vec& x0) {
  return analyze_fixed_point(f, x0, default_fd_step(x0));
}

LorenzModel lorenz_model(const LorenzParams& p) {
  require(std::isfinite(p.sigma) && std::isfinite(p.b) && std::isfinite(p.r),
          ErrorKind::invalid_input, "Lorenz parameters must be finite");
  LorenzModel model;
  model.field.dim = 3;
  model.field.eval = [p](const Vec& x) -> Vec {
    Vec v(3);
    v(0) = p.sigma * (x(1) - x(0));
    v(1) = -x(0) * x(2) + p.r * x(0) - x(1);
    v(2) = x(0) * x(1) - p.b * x(2);
    return v;
  };
  model.origin = analyze_fixed_point(model.field, Vec::Zero(3));
  return model;
}

std::vector<Complex> lorenz_characteristic_roots(const LorenzParams& p) {
  // (l + b)(l^2 + c1 l + c0) = l^3 + (c1 + b) l^2 + (c0 + b c1) l + b c0
  const double c1 = p.sigma + 1.0;
  const double c0 = (1.0 - p.r) * p.sigma;
  const double a2 = c1 + p.b;
  const double a1 = c0 + p.b * c1;
  const double a0 = p.b * c0;
  Mat companion = Mat::Zero(3, 3);
  companion(0, 0) = -a2;
  companion(0, 1) = -a1;
  companion(0, 2) = -a0;
  companion(1, 0) = 1.0;
  companion(2, 1) = 1.0;
  return sorted_eigenvalues(companion);
}

FixedPointReport hamiltonian_linearization(const std::function<double(const Vec&)>& h,
                                           const Vec& q0p0, double fd_step, double tol) {
  require(q0p0.size() % 2 == 0 && q0p0.size() >= 2, ErrorKind::invalid_input,
          "phase-space point must have even dimension");
  require(fd_step > 0.0, ErrorKind::invalid_input, "fd_step must be positive");
  const Eigen::Index n = q0p0.size() / 2;
  const Vec grad = fd_gradient(h, q0p0, 1e-5 * (1.0 + q0p0.norm()));
  if (grad.norm() > 1e-6) {
    std::ostringstream msg;
    msg << "|grad H| = " << grad.norm() << " at the requested point";
    fail(ErrorKind::not_fixed_point, msg.str());
  }
  const Mat hess = fd_hessian(h, q0p0, fd_step);
  // X_H = J grad H with J = [[0, 1], [-1, 0]].
  Mat jac(2 * n, 2 * n);
  jac.topRows(n) = hess.bottomRows(n);
  jac.bottomRows(n) = -hess.topRows(n);

  FixedPointReport report;
  report.location = q0p0;
  report.jacobian = jac;
  report.eigenvalues = sorted_eigenvalues(jac);
  const double trace = jac.trace();
  if (std::abs(trace) > 1e-6) {
    std::ostringstream msg;
    msg << "linearized Hamiltonian field has trace " << trace;
    fail(ErrorKind::internal, msg.str());
  }
  // Eigenvalues of a traceless real Hamiltonian matrix carry O(h^2) noise.
  classify(report, std::max(tol, 1e-6));
  return report;
}

MagneticMatrix magnetic_field_matrix(const Eigen::Vector3d& bvec) {
  require(bvec.allFinite(), ErrorKind::invalid_input, "magnetic field must be finite");
  MagneticMatrix out;
  out.matrix = Mat::Zero(3, 3);
  // (p x B)_1 = p2 B3 - p3 B2, etc.
  out.matrix(0, 1) = bvec(2);
  out.matrix(0, 2) = -bvec(1);
  out.matrix(1, 0) = -bvec(2);
  out.matrix(1, 2) = bvec(0);
  out.matrix(2, 0) = bvec(1);
  out.matrix(2, 1) = -bvec(0);
  out.eigenvalues = sorted_eigenvalues(out.matrix);
  // The zero eigenvalue along B means fixed points come in lines, never isolated.
  out.warnings.push_back("magnetic fixed points form a continuum; none is isolated");
  return out;
}

}  // namespace mpw::stability
