#include "mpw/hamiltonian.hpp"

#include <algorithm>
#include <cmath>

namespace mpw::hamiltonian {

Vec PhasePoint::packed() const {
  require(q.size() == p.size(), ErrorKind::invalid_input, "q and p differ in dimension");
  Vec x(q.size() + p.size());
  x << q, p;
  return x;
}

PhasePoint PhasePoint::unpack(const Vec& x) {
  require(x.size() % 2 == 0, ErrorKind::invalid_input, "phase-space vector has odd length");
  const Eigen::Index n = x.size() / 2;
  return PhasePoint{x.head(n), x.tail(n)};
}

Vec hamiltonian_vector_field(const HamiltonianSystem& sys, const Vec& x, double fd_step) {
  require(x.size() == 2 * sys.n, ErrorKind::invalid_input, "phase point has wrong dimension");
  require(all_finite(x), ErrorKind::invalid_input, "phase point must be finite");
  const Eigen::Index n = sys.n;
  const Vec grad = fd_gradient(sys.h, x, fd_step);
  Vec v(2 * n);
  if (!sys.magnetic) {
    v.head(n) = grad.tail(n);
    v.tail(n) = -grad.head(n);
    return v;
  }
  const Mat b = (*sys.magnetic)(x.head(n));
  require(b.rows() == n && b.cols() == n, ErrorKind::invalid_input,
          "magnetic matrix has wrong shape");
  Mat omega = Mat::Zero(2 * n, 2 * n);
  omega.topLeftCorner(n, n) = b;
  omega.topRightCorner(n, n) = -Mat::Identity(n, n);
  omega.bottomLeftCorner(n, n) = Mat::Identity(n, n);
  // Rows: B qdot - pdot = grad_q H and qdot = grad_p H.
  Eigen::FullPivLU<Mat> lu(omega);
  require(lu.isInvertible(), ErrorKind::internal, "magnetic symplectic form is singular");
  return lu.solve(grad);
}

flow::VectorField as_vector_field(const HamiltonianSystem& sys, double fd_step) {
  flow::VectorField f;
  f.dim = 2 * sys.n;
  f.eval = [sys, fd_step](const Vec& x) { return hamiltonian_vector_field(sys, x, fd_step); };
  return f;
}

double poisson_bracket(const ScalarField& f, const ScalarField& g, const Vec& x, int n,
                       double fd_step) {
  require(x.size() == 2 * n, ErrorKind::invalid_input, "phase point has wrong dimension");
  const Vec df = fd_gradient(f, x, fd_step);
  const Vec dg = fd_gradient(g, x, fd_step);
  double sum = 0.0;
  for (int j = 0; j < n; ++j) {
    sum += df(n + j) * dg(j) - df(j) * dg(n + j);
  }
  return sum;
}

Evolution evolve_hamiltonian(const HamiltonianSystem& sys, const Vec& x0, double t,
                             double step) {
  Evolution out;
  out.trajectory = flow::rk4_integrate(as_vector_field(sys), x0, t, step);
  const double h0 = sys.h(x0);
  for (const Vec& x : out.trajectory.states) {
    out.energy_drift = std::max(out.energy_drift, std::abs(sys.h(x) - h0));
  }
  return out;
}

double liouville_determinant(const HamiltonianSystem& sys, const Vec& x0, double t,
                             double step, double hessian_step) {
  require(x0.size() == 2 * sys.n, ErrorKind::invalid_input, "phase point has wrong dimension");
  const Eigen::Index dim = 2 * sys.n;
  const Eigen::Index n = sys.n;
  auto linearization = [&](const Vec& x) -> Mat {
    if (sys.magnetic) {
      return fd_jacobian([&](const Vec& y) { return hamiltonian_vector_field(sys, y); }, x,
                         hessian_step);
    }
    const Mat hess = fd_hessian(sys.h, x, hessian_step);
    Mat jac(dim, dim);
    jac.topRows(n) = hess.bottomRows(n);
    jac.bottomRows(n) = -hess.topRows(n);
    return jac;
  };

  // Augmented state (x, vec(D Phi)) with d/dt D Phi = DF(Phi) D Phi.
  flow::VectorField augmented;
  augmented.dim = static_cast<int>(dim + dim * dim);
  augmented.eval = [&](const Vec& s) -> Vec {
    const Vec x = s.head(dim);
    const Eigen::Map<const Mat> phi(s.data() + dim, dim, dim);
    Vec out(s.size());
    out.head(dim) = hamiltonian_vector_field(sys, x);
    Eigen::Map<Mat>(out.data() + dim, dim, dim) = linearization(x) * phi;
    return out;
  };
  Vec s0(augmented.dim);
  s0.head(dim) = x0;
  Eigen::Map<Mat>(s0.data() + dim, dim, dim) = Mat::Identity(dim, dim);
  if (t == 0.0) return 1.0;

  const flow::Trajectory traj = flow::rk4_integrate(augmented, s0, t, step);
  const Vec& end = t > 0.0 ? traj.states.back() : traj.states.front();
  const Eigen::Map<const Mat> phi(end.data() + dim, dim, dim);
  return phi.determinant();
}

Eigen::Vector3d fd_curl(const VectorPotential& a, const Eigen::Vector3d& x, double fd_step) {
  Eigen::Matrix3d d;  // d(i, j) = d_j A_i
  for (int j = 0; j < 3; ++j) {
    Eigen::Vector3d up = x;
    Eigen::Vector3d down = x;
    up(j) += fd_step;
    down(j) -= fd_step;
    d.col(j) = (a(up) - a(down)) / (2.0 * fd_step);
  }
  return {d(2, 1) - d(1, 2), d(0, 2) - d(2, 0), d(1, 0) - d(0, 1)};
}

GaugeResult gauge_transform(const VectorPotential& a, const ScalarField& chi,
                            double fd_step) {
  GaugeResult out;
  out.transformed = [a, chi, fd_step](const Eigen::Vector3d& x) -> Eigen::Vector3d {
    const Vec g = fd_gradient(chi, Vec(x), fd_step);
    return a(x) + Eigen::Vector3d(g(0), g(1), g(2));
  };
  const int m = kGaugeLatticePoints;
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      for (int k = 0; k < m; ++k) {
        const Eigen::Vector3d x(-1.0 + 2.0 * i / (m - 1), -1.0 + 2.0 * j / (m - 1),
                                -1.0 + 2.0 * k / (m - 1));
        const double gap =
            (fd_curl(out.transformed, x, fd_step) - fd_curl(a, x, fd_step)).norm();
        out.curl_gap = std::max(out.curl_gap, gap);
      }
    }
  }
  return out;
}

HamiltonianSystem minimal_substitution(VectorPotential a, ScalarField potential, double mass) {
  require(mass > 0.0, ErrorKind::invalid_input, "mass must be positive");
  HamiltonianSystem sys;
  sys.n = 3;
  sys.h = [a = std::move(a), v = std::move(potential), mass](const Vec& x) {
    const Eigen::Vector3d q = x.head(3);
    const Eigen::Vector3d kinetic = x.tail(3) - a(q);
    double e = kinetic.squaredNorm() / (2.0 * mass);
    if (v) e += v(x.head(3));
    return e;
  };
  return sys;
}

VectorPotential symmetric_gauge(double b) {
  return [b](const Eigen::Vector3d& q) { return Eigen::Vector3d(-0.5 * b * q(1), 0.5 * b * q(0), 0.0); };
}

VectorPotential landau_gauge(double b) {
  return [b](const Eigen::Vector3d& q) { return Eigen::Vector3d(-b * q(1), 0.0, 0.0); };
}

}  // namespace mpw::hamiltonian
