#pragma once

#include "mpw/common.hpp"

#include <array>
#include <vector>

namespace mpw {

/// Uniform samples on [-pi, pi)^n at x_j = -pi + 2 pi j / M per axis.
///
/// Storage is row-major with the last axis fastest. Dimensions 1 to 3 are
/// supported; M must be even.
class TorusGrid {
 public:
  TorusGrid() = default;
  TorusGrid(int dim, int points_per_axis);
  TorusGrid(int dim, int points_per_axis, CVec samples);

  /// Samples `f(x)` at every grid point.
  static TorusGrid sample(int dim, int points_per_axis,
                          const std::function<Complex(const Vec&)>& f);

  int dim() const noexcept { return dim_; }
  int points_per_axis() const noexcept { return m_; }
  Eigen::Index size() const noexcept { return samples_.size(); }
  double spacing() const noexcept { return 2.0 * kPi / m_; }
  /// (2 pi / M)^n, the quadrature weight of one sample.
  double cell_volume() const noexcept;

  const CVec& samples() const noexcept { return samples_; }
  CVec& samples() noexcept { return samples_; }
  Complex& operator[](Eigen::Index i) { return samples_(i); }
  Complex operator[](Eigen::Index i) const { return samples_(i); }

  std::array<int, 3> multi_index(Eigen::Index flat) const;
  Eigen::Index flat_index(const std::array<int, 3>& idx) const;
  Vec point(Eigen::Index flat) const;

  bool same_shape(const TorusGrid& other) const noexcept {
    return dim_ == other.dim_ && m_ == other.m_;
  }

  /// sqrt((2 pi)^{-n} (2 pi / M)^n sum |f|^2): the norm in which e^{ikx} has norm 1.
  double normalized_l2_norm() const;

 private:
  int dim_ = 1;
  int m_ = 2;
  CVec samples_;
};

/// A vector field on the torus, one TorusGrid per component.
using VectorGrid = std::vector<TorusGrid>;

/// Signed frequency associated with DFT index `j` (Nyquist maps to -M/2).
int signed_frequency(int j, int m) noexcept;

namespace fft {

/// Unnormalized forward DFT: out[k] = sum_j in[j] e^{-2 pi i j.k / M}.
CVec forward(const CVec& in, int dim, int m);
/// Unnormalized inverse DFT: out[j] = sum_k in[k] e^{+2 pi i j.k / M}.
CVec backward(const CVec& in, int dim, int m);

/// Coefficients c(k) with f(x_j) = sum_k c(k) e^{i k.x_j}, indexed like the DFT.
CVec modes(const TorusGrid& f);
/// Inverse of `modes`.
TorusGrid synthesize(const CVec& modes, int dim, int m);

/// Signed wavevector of DFT slot `flat`.
std::array<int, 3> wavevector(Eigen::Index flat, int dim, int m);

}  // namespace fft

}  // namespace mpw
