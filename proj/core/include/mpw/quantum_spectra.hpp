#pragma once

#include "mpw/common.hpp"
#include "mpw/torus.hpp"

#include <functional>
#include <vector>

namespace mpw::quantum {

/// Throws invalid_input unless h equals its adjoint within 1e-12 (entrywise, relative to max |h|).
void require_hermitian(const CMat& h, const char* what);

/// <psi, H psi> / |psi|^2.
double rayleigh_quotient(const CMat& h, const CVec& psi);

/// Sorted eigenvalues of (<phi_j, H phi_k>) for orthonormal columns phi.
std::vector<double> galerkin_minmax(const CMat& h, const CMat& phis);

/// <H> - (<H^2> - <H>^2) / (mu - <H>), after checking <H> < mu < E1 on the dense spectrum.
double temple_bound(const CMat& h, const CVec& psi, double mu);

/// e^{-sqrt(E)|x - y|} / (2 sqrt(E)), the kernel of (-d^2 + E)^{-1} on the line.
double resolvent_kernel_1d(double energy, double x, double y);

/// Nonpositive potential sampled at x_i = -R + i h, i = 0..2R/h.
struct Potential1D {
  double radius = 40.0;
  double spacing = 1.0 / 200.0;
  Vec values;

  Eigen::Index size() const noexcept { return values.size(); }
  double point(Eigen::Index i) const noexcept { return -radius + spacing * static_cast<double>(i); }
  /// Trapezoid rule for the integral of |V|.
  double l1_norm() const;
};

Potential1D sample_potential(const std::function<double(double)>& v, double radius = 40.0,
                             double spacing = 1.0 / 200.0);

/// Largest eigenvalue of K(mu)_ij = h sqrt|V_i| e^{-mu|x_i - x_j|} sqrt|V_j| / (2 mu),
/// restricted to the support of V.
double bs_top_eigenvalue(const Potential1D& v, double mu);

/// Lowest eigenvalue of the finite-difference -d^2 + lambda V with Dirichlet ends.
double grid_ground_energy(const Potential1D& v, double lambda);

struct BSResult {
  double mu_star = 0.0;
  double energy = 0.0;
  double weak_coupling_prediction = 0.0;
  double grid_diag_energy = 0.0;
  double bracket_lo = 0.0;
  double bracket_hi = 0.0;
};

/// Solves lambda top(K(mu)) = 1 by bisection on [lambda |V|_1 / 40, 10 lambda |V|_1],
/// widening geometrically if that interval fails to bracket.
BSResult birman_schwinger(const Potential1D& v, double lambda);

struct WeylProbe {
  double lambda = 0.0;
  double center = 0.0;
  std::vector<double> residuals;  ///< |(f - lambda) psi_w| per width, psi_w normalized
};

struct MultiplicationSpectrum {
  double lo = 0.0;
  double hi = 0.0;
  std::vector<WeylProbe> probes;
};

inline const std::vector<double> kWeylWidths{0.2, 0.1, 0.05};

/// Gaussian bumps of the given widths centered where f is closest to lambda.
WeylProbe weyl_probe(const std::vector<double>& x, const std::vector<double>& f, double lambda,
                     const std::vector<double>& widths = kWeylWidths);

/// Range hull of sampled f and Weyl probes at five sampled values of f.
MultiplicationSpectrum multiplication_spectrum(const std::vector<double>& x,
                                               const std::vector<double>& f);

/// 1/2 |<psi, i[A, B] psi>| <= sigma(A) sigma(B).
BoundReport uncertainty_check(const CMat& a, const CMat& b, const CVec& psi);

/// |grad |psi|| <= |(-i grad - A) psi| at every sample with |psi| > 1e-8.
///
/// Derivatives are periodic central differences with the grid spacing h; the
/// tolerance is C h^2 with C estimated from third differences of psi and |psi|.
BoundReport diamagnetic_check(const TorusGrid& psi, const VectorGrid& a);

/// |e^{-itH1} - e^{-it(H1 + eps W)}|_2 <= |t| eps |W|_2.
BoundReport duhamel_gap(const CMat& h1, const CMat& w, double eps, double t);

/// |tr(U rho U* F) - tr(rho U* F U)|.
double picture_gap(const CMat& u, const CMat& rho, const CMat& f);

}  // namespace mpw::quantum
