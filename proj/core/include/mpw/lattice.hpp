#pragma once

#include "mpw/common.hpp"

#include <array>
#include <optional>
#include <utility>
#include <vector>

namespace mpw::lattice {

enum class ModelKind { square_single_band, honeycomb_two_band };

/// Tight-binding model on an M x M patch of Z^2 with periodic wrap.
///
/// Square: H = 1 + q1 s1 + q2 s2 + h.c. with (s_j psi)(g) = psi(g - e_j).
/// Honeycomb: H = [[0, w(s)*], [w(s), 0]] with w(s) = 1 + q1 s1* + q2 s2*.
struct TightBindingModel {
  ModelKind kind = ModelKind::square_single_band;
  Complex q1 = 1.0;
  Complex q2 = 1.0;
  int side = 16;

  int bands() const noexcept { return kind == ModelKind::honeycomb_two_band ? 2 : 1; }
  /// Length of a state vector: bands * side^2, band-major.
  Eigen::Index state_size() const noexcept;
};

/// 1 + 2 q1 cos k1 + 2 q2 cos k2.
double band_function_square(double q1, double q2, double k1, double k2);

/// Symbol of the square model for complex hoppings: 1 + 2 Re(q1 e^{ik1}) + 2 Re(q2 e^{ik2}).
double square_symbol(Complex q1, Complex q2, double k1, double k2);

struct BlochPoint {
  std::array<double, 2> k{};
  Complex varpi;
  double e_plus = 0.0;
  double e_minus = 0.0;
  bool degenerate = false;
  Eigen::Matrix2cd p_plus = Eigen::Matrix2cd::Zero();
  Eigen::Matrix2cd p_minus = Eigen::Matrix2cd::Zero();

  /// T(k) = Re w sigma1 + Im w sigma2.
  Eigen::Matrix2cd symbol() const;
  /// Projection onto the upper (sign > 0) or lower band; throws at band touchings.
  const Eigen::Matrix2cd& projection(int sign) const;
};

inline constexpr double kDegenerateTolerance = 1e-14;

/// w(k) = 1 + q1 e^{-ik1} + q2 e^{-ik2}, E = +-|w| and the spectral projections.
BlochPoint honeycomb_bloch(Complex q1, Complex q2, double k1, double k2);

/// Flat index of site (g1, g2) on the patch; throws a truncation error outside it.
Eigen::Index site_index(const TightBindingModel& m, int g1, int g2);

/// Builds a state from (site, band, amplitude) entries; sites must lie on the patch.
CVec patch_state(const TightBindingModel& m,
                 const std::vector<std::pair<std::array<int, 3>, Complex>>& entries);

/// (s_j psi)(g) = psi(g - e_j) on one band of the wrapped patch.
CVec shift(const CVec& psi, int side, int axis);

/// Dense patch Hamiltonian.
CMat patch_hamiltonian(const TightBindingModel& m);

struct TbEvolution {
  CVec position;
  CVec bloch;
  double gap = 0.0;  ///< max-norm difference of the two paths
};

/// Evolves psi0 by e^{-itH} twice: as a dense matrix exponential and mode by
/// mode after the lattice Fourier transform psi^(k) = sum_g psi(g) e^{ig.k}.
TbEvolution tb_evolve(const TightBindingModel& m, const CVec& psi0, double t);

}  // namespace mpw::lattice
