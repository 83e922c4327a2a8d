#pragma once

#include "mpw/common.hpp"
#include "mpw/linear_flow.hpp"

#include <functional>
#include <optional>

namespace mpw::hamiltonian {

using ScalarField = std::function<double(const Vec&)>;
using MagneticField = std::function<Mat(const Vec& q)>;
using VectorPotential = std::function<Eigen::Vector3d(const Eigen::Vector3d&)>;

inline constexpr double kDefaultFdStep = 1e-5;

/// H on R^{2n} with phase-space points ordered (q, p); charge e = 1.
struct HamiltonianSystem {
  int n = 1;
  ScalarField h;
  /// Optional antisymmetric B(q); enters through the magnetic symplectic form.
  std::optional<MagneticField> magnetic;
};

struct PhasePoint {
  Vec q;
  Vec p;

  Vec packed() const;
  static PhasePoint unpack(const Vec& x);
};

/// (grad_p H, -grad_q H + B(q) qdot) by central differences.
///
/// With B present this solves the magnetic form Omega_B xdot = grad H with
/// Omega_B = [[B, -1], [1, 0]].
Vec hamiltonian_vector_field(const HamiltonianSystem& sys, const Vec& x,
                             double fd_step = kDefaultFdStep);

flow::VectorField as_vector_field(const HamiltonianSystem& sys, double fd_step = kDefaultFdStep);

/// sum_j (d_{p_j} f d_{q_j} g - d_{q_j} f d_{p_j} g); {H, q_j} = +d_{p_j} H.
double poisson_bracket(const ScalarField& f, const ScalarField& g, const Vec& x, int n,
                       double fd_step = kDefaultFdStep);

struct Evolution {
  flow::Trajectory trajectory;
  double energy_drift = 0.0;  ///< max_s |H(x(s)) - H(x0)|
};

Evolution evolve_hamiltonian(const HamiltonianSystem& sys, const Vec& x0, double t,
                             double step);

/// det D Phi_t from the variational equation integrated alongside the flow.
///
/// Without a magnetic term DF = J Hess(H) from second differences with step
/// `hessian_step`; with one, DF is a central difference of the field.
double liouville_determinant(const HamiltonianSystem& sys, const Vec& x0, double t,
                             double step, double hessian_step = 1e-4);

/// Lattice used for gauge checks: 17^3 points on [-1, 1]^3.
inline constexpr int kGaugeLatticePoints = 17;

Eigen::Vector3d fd_curl(const VectorPotential& a, const Eigen::Vector3d& x, double fd_step);

struct GaugeResult {
  VectorPotential transformed;  ///< A + grad chi
  double curl_gap = 0.0;        ///< max |curl A' - curl A| over the lattice
};

GaugeResult gauge_transform(const VectorPotential& a, const ScalarField& chi,
                            double fd_step = kDefaultFdStep);

/// H(q, p) = |p - A(q)|^2 / (2 mass) + V(q) on R^3.
HamiltonianSystem minimal_substitution(VectorPotential a, ScalarField potential = {},
                                       double mass = 1.0);

/// Symmetric gauge (b/2)(-q2, q1, 0) and Landau gauge (-b q2, 0, 0) for B = (0, 0, b).
VectorPotential symmetric_gauge(double b);
VectorPotential landau_gauge(double b);

}  // namespace mpw::hamiltonian
