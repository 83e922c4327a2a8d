#pragma once

#include "mpw/common.hpp"
#include "mpw/linear_flow.hpp"
#include "mpw/torus.hpp"

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace mpw::variational {

/// A functional on R^n. Complex states enter as (Re, Im) coordinate pairs.
struct Functional {
  std::function<double(const Vec&)> eval;
  /// g with dE(psi) phi = <g, phi> in the Euclidean pairing.
  std::optional<std::function<Vec(const Vec&)>> gradient;
  std::string name;
};

/// (E(psi + h phi) - E(psi - h phi)) / (2h).
double gateaux_derivative(const Functional& e, const Vec& psi, const Vec& phi, double h);

/// Compares the central difference against <grad E(psi), phi>.
///
/// Tolerance: 10 h^2 |E'''| (third differences along phi) plus a rounding term
/// 1e-12 max(1, |E|) / h.
BoundReport gradient_consistency(const Functional& e, const Vec& psi, const Vec& phi, double h);

using Lagrangian = std::function<double(const Vec& x, const Vec& v)>;

/// max over interior samples of |grad_x L - d/dt grad_v L| along q.
///
/// Velocities and the time derivative use central differences in the sample
/// times; partial derivatives of L use central differences with `fd_step`.
double euler_lagrange_residual(const Lagrangian& lagrangian, const flow::Trajectory& q,
                               double fd_step);

struct Helmholtz {
  VectorGrid longitudinal;  ///< gradient part, (k . u^) k / |k|^2
  VectorGrid transverse;    ///< divergence-free part
  Eigen::Vector3cd mean;    ///< the k = 0 mode
};

/// Mode-wise projection on T^3. Wavevectors use the same Nyquist convention as
/// the spectral curl, so the defects are measured consistently.
Helmholtz helmholtz_decompose(const VectorGrid& u);

/// Periodic grid state for the Ginzburg-Landau functional on T^n, n = 1..3.
struct GLState {
  TorusGrid psi;
  VectorGrid a;  ///< n real components
  double kappa = 1.0;
};

GLState gl_state(int dim, int points_per_axis, double kappa);

/// sum cellvol [ sum_j |(-i D_j - A_j) psi|^2 + kappa^2/2 (|psi|^2 - 1)^2
///   + sum_{i<j} |D_i A_j - D_j A_i|^2 ] with spectral D.
double gl_energy(const GLState& s);

struct GLGradient {
  TorusGrid psi;  ///< (-i D - A)^2 psi - kappa^2 (1 - |psi|^2) psi
  VectorGrid a;   ///< curl curl A - Re(conj(psi) (-i D - A) psi)
};

/// Spectral derivatives with the Nyquist mode removed, so D is skew and real.
/// The Gateaux derivative of `gl_energy` is 2 cellvol Re <gradient, direction>.
GLGradient gl_gradient(const GLState& s);

/// Functional view of the GL energy on packed (Re psi, Im psi, A) coordinates.
Functional gl_functional(int dim, int points_per_axis, double kappa);
Vec gl_pack(const GLState& s);
GLState gl_unpack(const Vec& x, int dim, int points_per_axis, double kappa);

struct GLDescent {
  GLState state;
  std::vector<double> energy_path;
  std::vector<double> gradient_norms;  ///< max-norm of the gradient per accepted iterate
  int iterations = 0;
  bool converged = false;
  double final_step = 0.0;
};

/// Fixed-step gradient descent; a step that raises the energy is halved and retried.
GLDescent gl_minimize(const GLState& s0, double step_size, int max_iters, double tol,
                      bool freeze_a = false);

/// Secant inequality at s in {1/4, 1/2, 3/4} and gradient monotonicity on every pair.
/// lhs is the largest violation found; pass iff it is at most 1e-8.
BoundReport convexity_check(const Functional& e, const std::vector<std::pair<Vec, Vec>>& pairs,
                            double h = 1e-5);

using ParametrizedMap = std::function<Vec(double mu, const Vec& x)>;

struct BifurcationCandidate {
  double mu = 0.0;
  double smallest_singular = 0.0;
  double transversality = 0.0;  ///< <v, d_mu d_x F(mu0, 0) v>
  bool determinant_changes_sign = false;
};

struct BifurcationScan {
  std::vector<double> mu_grid;
  std::vector<double> smallest_singular;
  std::vector<BifurcationCandidate> candidates;
};

/// Scans sigma_min(d_x F(mu, 0)) on a uniform mu grid; local minima are refined by
/// golden section and kept when sigma_min < 1e-6 max(1, max sigma_max).
BifurcationScan bifurcation_scan(const ParametrizedMap& f, double mu_lo, double mu_hi,
                                 int n_points, int state_dim, double fd_step = 1e-6);

}  // namespace mpw::variational
