#pragma once

#include "mpw/common.hpp"
#include "mpw/fourier.hpp"
#include "mpw/torus.hpp"

#include <functional>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

namespace mpw::pde {

/// u(t) on the torus: each mode is multiplied by e^{-D k^2 t}. Refuses t < 0.
TorusGrid heat_torus(const TorusGrid& u0, double diffusion, double t);

/// (4 pi D t)^{-1/2} int e^{-(x-y)^2 / (4Dt)} u0(y) dy by composite Simpson.
///
/// The window is [-R, R] with R = 10 max(1, sqrt(2Dt)), widened to contain
/// [x - R, x + R] when x lies far out.
double heat_line(const std::function<double(double)>& u0, double diffusion, double t, double x,
                 int panels = 4096);

/// Heat kernel (4 pi D t)^{-1/2} e^{-x^2 / (4Dt)}.
double heat_kernel(double diffusion, double t, double x);

/// max over (t, x) samples of |d_t u - D d_x^2 u| with central differences.
double heat_residual(const std::function<double(double, double)>& u, double diffusion,
                     const std::vector<std::pair<double, double>>& samples, double fd_step);

struct SchroedingerResult {
  TorusGrid psi;
  double norm_drift = 0.0;
};

/// Free evolution: each mode e^{ikx} picks up e^{-i k^2 t}.
SchroedingerResult schroedinger_torus(const TorusGrid& psi0, double t);

struct BestApproximation {
  int order = 0;  ///< N(eps)
  fourier::FourierSeries truncated;
  double tail_norm = 0.0;
};

/// Smallest N with sum_{|n| > N} |c_n|^2 < eps^2.
///
/// Coefficients beyond the stored radius are unknown. Without a bound on their
/// squared norm (`known_tail_bound`), N must be strictly below the radius, so that
/// the stored data witnesses the tail.
BestApproximation best_approximation(const fourier::FourierSeries& psi0, double eps,
                                     std::optional<double> known_tail_bound = {});

/// || e^{-itL} psi0 - e^{-itL} P_N psi0 || evolved on a grid by `schroedinger_torus`.
double truncation_error(const fourier::FourierSeries& psi0, int order, double t);

/// Sine-series data on [0, L]; keys are mode numbers n >= 1.
struct WaveData {
  double length = kPi;
  std::map<int, double> phi;
  std::map<int, double> psi;
  int max_modes = 128;
};

struct WaveModes {
  std::vector<int> n;
  std::vector<Complex> a1;
  std::vector<Complex> a2;
  std::vector<std::string> warnings;
};

/// Solves a1 + a2 = b_phi, (i n pi / L)(a1 - a2) = b_psi for every mode.
WaveModes wave_modes(const WaveData& w);

struct WaveResult {
  std::vector<double> values;
  double imaginary_residue = 0.0;  ///< max |Im u| before taking the real part
  std::vector<std::string> warnings;
};

WaveResult wave_dirichlet(const WaveData& w, double t, const std::vector<double>& x);

/// int_0^L (|d_t u|^2 + |d_x u|^2) dx by Simpson on analytic derivatives.
double wave_energy(const WaveData& w, double t, int panels = 2048);

/// Vacuum fields on T^3, three grid components each.
struct EMField {
  VectorGrid e;
  VectorGrid h;
};

EMField zero_em_field(int points_per_axis);

/// Spectral curl. Derivatives of the Nyquist slot are taken as zero so that the
/// operator is skew and maps real fields to real fields.
VectorGrid spectral_curl(const VectorGrid& v);

/// max over modes of |k . v^(k)|.
double spectral_divergence(const VectorGrid& v);

/// 1/2 int (|E|^2 + |H|^2) on T^3.
double field_energy(const EMField& f);

struct MaxwellResult {
  EMField field;
  double energy_drift = 0.0;
  double realness_drift = 0.0;
};

/// d_t E = curl H, d_t H = -curl E, mode by mode with RK4.
MaxwellResult maxwell_free(const EMField& em0, double t, double step);

/// Real divergence-free field: curl of a random real potential limited to |k_j| <= kmax.
VectorGrid random_solenoidal_field(int points_per_axis, int kmax, std::mt19937_64& rng);

}  // namespace mpw::pde
