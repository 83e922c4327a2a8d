#pragma once

#include "mpw/common.hpp"
#include "mpw/torus.hpp"

#include <array>
#include <optional>
#include <vector>

namespace mpw::fourier {

/// Coefficients f^(k) for k in {-N..N}^n, stored row-major with offset N per axis.
class FourierSeries {
 public:
  FourierSeries() = default;
  FourierSeries(int dim, int radius);

  int dim() const noexcept { return dim_; }
  int radius() const noexcept { return radius_; }
  Eigen::Index size() const noexcept { return coeffs_.size(); }

  Complex& at(const std::array<int, 3>& k);
  Complex at(const std::array<int, 3>& k) const;
  /// Single-axis shorthand for n = 1.
  Complex& operator[](int k) { return at({k, 0, 0}); }
  Complex operator[](int k) const { return at({k, 0, 0}); }

  std::array<int, 3> wavevector(Eigen::Index flat) const;
  const CVec& coeffs() const noexcept { return coeffs_; }
  CVec& coeffs() noexcept { return coeffs_; }

  /// Evaluates sum_k w(k) f^(k) e^{ik.x}.
  Complex evaluate(const Vec& x, const std::function<double(const std::array<int, 3>&)>& weight) const;

 private:
  Eigen::Index flat(const std::array<int, 3>& k) const;

  int dim_ = 1;
  int radius_ = 0;
  CVec coeffs_;
};

/// f^(k) = (2 pi)^{-n} (2 pi / M)^n sum_j e^{-ik.x_j} f(x_j); requires N < M / 2.
FourierSeries fourier_coeffs(const TorusGrid& f, int radius);

/// (2 pi)^{-1} int_{-pi}^{pi} e^{-ikx} f(x) dx for |k| <= radius using
/// `panels` Gauss-Legendre panels of `order` nodes. Suited to functions that are
/// smooth on (-pi, pi) but jump across the seam, e.g. f(x) = x.
FourierSeries fourier_coeffs_quadrature(const std::function<double(double)>& f, int radius,
                                        int panels, int order = 16);

enum class Kernel { dirichlet, fejer };

/// Partial sum (Dirichlet) or Cesaro mean (Fejer) of degree N at x.
Complex kernel_sum(const FourierSeries& series, Kernel kind, int degree, const Vec& x);

/// Kernel sums at every point of a grid of the given shape.
TorusGrid kernel_sum_grid(const FourierSeries& series, Kernel kind, int degree,
                          int points_per_axis);

/// (f * g)(x_i) = (2 pi / M)^n sum_j f(x_i - x_j) g(x_j), evaluated directly.
TorusGrid convolve_torus(const TorusGrid& f, const TorusGrid& g);

/// (2 pi)^{-n} (2 pi / M)^n sum |f - g|: the normalized grid L1 distance.
double grid_l1_distance(const TorusGrid& f, const TorusGrid& g);

struct DecayReport {
  double exponent = 0.0;     ///< slope of log max_{shell}|f^| against log(1 + r)
  int shells_fitted = 0;
  bool band_limited = false;
  int regularity_order = -1;  ///< largest s with exponent < -(n + s); -1 if none
  std::string verdict;
};

/// Least-squares decay fit over shells r = round(|k|), r >= 1.
///
/// Shells below 1e-13 of the peak are treated as zero. If the spectrum stops
/// abruptly (the last live shell is still above 1e-6 of the peak) the series is
/// reported band-limited and no fit is attempted.
DecayReport decay_report(const FourierSeries& series);

/// max_k |F(d^alpha f)(k) - i^{|alpha|} k^alpha F f(k)| over the series cube.
double derivative_rule_gap(const TorusGrid& f, const TorusGrid& derivative,
                           const std::array<int, 3>& alpha, int radius);

/// lambda^{-n/2} e^{-xi^2 / (2 lambda)}.
double gaussian_ft(double lambda, const Vec& xi);

/// (2 pi)^{-n/2} int_{[-R, R]^n} e^{-i xi.x} e^{-lambda x^2 / 2} dx by Simpson;
/// the integral factorizes over axes. R defaults to 10 / sqrt(lambda).
Complex gaussian_ft_quadrature(double lambda, const Vec& xi, std::optional<double> window = {},
                               int panels = 2000);

}  // namespace mpw::fourier
