#pragma once

#include "mpw/common.hpp"
#include "mpw/linear_flow.hpp"

#include <string>
#include <vector>

namespace mpw::stability {

enum class Stability { stable, marginal, unstable };
enum class Geometry { elliptic, hyperbolic, neither };

const char* to_string(Stability s) noexcept;
const char* to_string(Geometry g) noexcept;

struct FixedPointReport {
  Vec location;
  Mat jacobian;
  std::vector<Complex> eigenvalues;  // sorted by real part, then imaginary part
  Stability stability = Stability::marginal;
  Geometry geometry = Geometry::neither;
  std::vector<std::string> warnings;
};

inline constexpr double kDefaultTolerance = 1e-8;

/// Labels a spectrum: stable iff all Re < -tol; marginal iff all Re <= tol and
/// some |Re| <= tol; elliptic iff all |Re| <= tol; hyperbolic iff all
/// |Im| <= tol and some Re > tol.
void classify(FixedPointReport& report, double tol);

/// Default finite-difference step 1e-5 (1 + |x0|).
double default_fd_step(const Vec& x0);

/// Linearizes F at a fixed point with a central-difference Jacobian.
FixedPointReport analyze_fixed_point(const flow::VectorField& f, const Vec& x0,
                                     double fd_step, double tol = kDefaultTolerance);
FixedPointReport analyze_fixed_point(const flow::VectorField& f, const Vec& x0);

struct LorenzParams {
  double sigma = 10.0;
  double b = 8.0 / 5.0;
  double r = 0.5;
};

struct LorenzModel {
  flow::VectorField field;
  FixedPointReport origin;
};

LorenzModel lorenz_model(const LorenzParams& p);

/// Roots of (lambda + b)(lambda^2 + (sigma + 1) lambda + (1 - r) sigma) via the
/// companion matrix of the expanded cubic.
std::vector<Complex> lorenz_characteristic_roots(const LorenzParams& p);

/// Linearization of the Hamiltonian field (grad_p H, -grad_q H) at (q0, p0).
///
/// The Jacobian J Hess(H) is the central difference of the central-difference
/// field, i.e. the mixed second-difference Hessian with step `fd_step`.
FixedPointReport hamiltonian_linearization(const std::function<double(const Vec&)>& h,
                                           const Vec& q0p0, double fd_step = 1e-4,
                                           double tol = kDefaultTolerance);

struct MagneticMatrix {
  Mat matrix;  ///< B with B p = p x Bvec
  std::vector<Complex> eigenvalues;
  std::vector<std::string> warnings;
};

MagneticMatrix magnetic_field_matrix(const Eigen::Vector3d& bvec);

}  // namespace mpw::stability
