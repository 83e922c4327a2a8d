#pragma once

#include "mpw/common.hpp"

#include <functional>
#include <optional>
#include <vector>

namespace mpw::flow {

/// An autonomous vector field x' = F(x) on R^dim.
struct VectorField {
  int dim = 1;
  std::function<Vec(const Vec&)> eval;
  std::optional<double> lipschitz;
  std::optional<double> ball_radius;

  Vec operator()(const Vec& x) const { return eval(x); }
};

enum class Method { picard, rk4, closed_form };

/// Samples of a flow on a uniform time grid.
struct Trajectory {
  std::vector<double> times;
  std::vector<Vec> states;
  Method method = Method::rk4;

  std::size_t size() const noexcept { return times.size(); }
  const Vec& back() const { return states.back(); }
  /// Throws unless lengths match, times increase and entries are finite.
  void validate() const;
};

/// exp(tH) by scaling and squaring of the truncated Taylor series.
CMat matrix_exponential(const CMat& h, double t);
Mat matrix_exponential(const Mat& h, double t);

/// e^{t lambda} times the Toeplitz matrix with t^m / m! on the m-th superdiagonal.
CMat jordan_block_exponential(Complex lambda, int size, double t);

/// Explicit r x r Jordan block with eigenvalue lambda.
CMat jordan_block(Complex lambda, int size);

/// e^{tA} x0 + int_0^t e^{(t-s)A} f(s) ds with composite Simpson on `quad_steps` panels.
CVec solve_linear_ivp(const CMat& a, const std::function<CVec(double)>& f, const CVec& x0,
                      double t, int quad_steps);
Vec solve_linear_ivp(const Mat& a, const std::function<Vec(double)>& f, const Vec& x0,
                     double t, int quad_steps);

/// Per-axis lattice size used to estimate suprema of |F| over a ball.
inline constexpr int kSupLatticePoints = 33;

/// Estimate of sup |F(x)| over the closed ball around `center` (lattice sampling).
double estimate_sup_norm(const VectorField& f, const Vec& center, double radius);

struct PicardResult {
  Trajectory trajectory;          ///< final iterate on [-T, T]
  std::vector<double> iterate_gaps;  ///< d(x_(k+1), x_(k)) for k = 0..n_iter-1
  double existence_time = 0.0;    ///< T = min(rho / v_max, 1 / (2L))
  double v_max = 0.0;
};

/// Picard iteration started from the constant path x0.
///
/// Time integrals use the cumulative trapezoid rule on `time_samples` uniform
/// points of [-T, T]; `time_samples` must be odd so that t = 0 is a node.
PicardResult picard_solve(const VectorField& f, const Vec& x0, int n_iter, int time_samples);

/// Classical RK4. The step is adjusted to |t_end| / n with n = ceil(|t_end| / step).
Trajectory rk4_integrate(const VectorField& f, const Vec& x0, double t_end, double step);

/// Checks u(t) <= u(a) exp(int_a^t beta) at every sample (trapezoid integral).
BoundReport groenwall_check(const std::vector<double>& times, const std::vector<double>& u,
                            const std::function<double(double)>& beta);

struct FlowGapResult {
  BoundReport report;
  std::vector<double> times;
  std::vector<double> gaps;  ///< |Phi^eps_s(x0) - Phi^0_s(x0)| along the grid
  double sup_perturbation = 0.0;  ///< C, sampled
};

/// Compares the flows of F0 and F0 + eps F1 against eps (C/L)(e^{L|t|} - 1).
///
/// C is sampled on the ball of radius F0.ball_radius (default 1) around x0.
FlowGapResult flow_divergence_gap(const VectorField& f0, const VectorField& f1, double eps,
                                  const Vec& x0, double t, double step = 1e-3);

}  // namespace mpw::flow
