#include "mpw/lattice.hpp"

#include "mpw/linear_flow.hpp"

#include <cmath>

namespace mpw::lattice {

namespace {

void validate(const TightBindingModel& m) {
  require(m.side >= 4, ErrorKind::invalid_input, "patch side must be at least 4");
  require(std::isfinite(std::abs(m.q1)) && std::isfinite(std::abs(m.q2)),
          ErrorKind::invalid_input, "hopping amplitudes must be finite");
}

int wrap(int g, int side) { return ((g % side) + side) % side; }

// Lattice Fourier transform on one band: out(k) = sum_g psi(g) e^{+i g.k}, k = 2 pi m / M.
CVec lattice_fourier(const CVec& psi, int side, int sign) {
  const Eigen::Index n = static_cast<Eigen::Index>(side) * side;
  std::vector<Complex> phase(side);
  for (int j = 0; j < side; ++j) phase[j] = std::polar(1.0, sign * 2.0 * kPi * j / side);
  CVec out = CVec::Zero(n);
  for (int m1 = 0; m1 < side; ++m1) {
    for (int m2 = 0; m2 < side; ++m2) {
      Complex sum = 0.0;
      for (int g1 = 0; g1 < side; ++g1) {
        for (int g2 = 0; g2 < side; ++g2) {
          sum += psi(g1 * side + g2) * phase[(g1 * m1 + g2 * m2) % side];
        }
      }
      out(m1 * side + m2) = sum;
    }
  }
  return out;
}

}  // namespace

Eigen::Index TightBindingModel::state_size() const noexcept {
  return static_cast<Eigen::Index>(bands()) * side * side;
}

double band_function_square(double q1, double q2, double k1, double k2) {
  return 1.0 + 2.0 * q1 * std::cos(k1) + 2.0 * q2 * std::cos(k2);
}

double square_symbol(Complex q1, Complex q2, double k1, double k2) {
  return 1.0 + 2.0 * (q1 * std::polar(1.0, k1)).real() + 2.0 * (q2 * std::polar(1.0, k2)).real();
}

Eigen::Matrix2cd BlochPoint::symbol() const {
  Eigen::Matrix2cd t;
  t << 0.0, std::conj(varpi), varpi, 0.0;
  return t;
}

const Eigen::Matrix2cd& BlochPoint::projection(int sign) const {
  require(!degenerate, ErrorKind::degenerate_point,
          "band touching: spectral projections are undefined");
  return sign > 0 ? p_plus : p_minus;
}

BlochPoint honeycomb_bloch(Complex q1, Complex q2, double k1, double k2) {
  BlochPoint b;
  b.k = {k1, k2};
  b.varpi = 1.0 + q1 * std::polar(1.0, -k1) + q2 * std::polar(1.0, -k2);
  const double r = std::abs(b.varpi);
  b.e_plus = r;
  b.e_minus = -r;
  if (r < kDegenerateTolerance) {
    b.degenerate = true;
    b.e_plus = b.e_minus = 0.0;
    return b;
  }
  const Eigen::Matrix2cd id = Eigen::Matrix2cd::Identity();
  const Eigen::Matrix2cd unit = b.symbol() / r;
  b.p_plus = 0.5 * (id + unit);
  b.p_minus = 0.5 * (id - unit);
  return b;
}

Eigen::Index site_index(const TightBindingModel& m, int g1, int g2) {
  if (g1 < 0 || g1 >= m.side || g2 < 0 || g2 >= m.side) {
    fail(ErrorKind::truncation, "site lies outside the truncated patch");
  }
  return static_cast<Eigen::Index>(g1) * m.side + g2;
}

CVec patch_state(const TightBindingModel& m,
                 const std::vector<std::pair<std::array<int, 3>, Complex>>& entries) {
  validate(m);
  CVec psi = CVec::Zero(m.state_size());
  const Eigen::Index sites = static_cast<Eigen::Index>(m.side) * m.side;
  for (const auto& [where, amp] : entries) {
    require(where[2] >= 0 && where[2] < m.bands(), ErrorKind::invalid_input,
            "band index out of range");
    psi(where[2] * sites + site_index(m, where[0], where[1])) += amp;
  }
  return psi;
}

CVec shift(const CVec& psi, int side, int axis) {
  require(psi.size() == static_cast<Eigen::Index>(side) * side, ErrorKind::invalid_input,
          "state does not match the patch");
  require(axis == 0 || axis == 1, ErrorKind::invalid_input, "axis must be 0 or 1");
  CVec out(psi.size());
  for (int g1 = 0; g1 < side; ++g1) {
    for (int g2 = 0; g2 < side; ++g2) {
      const int s1 = axis == 0 ? wrap(g1 - 1, side) : g1;
      const int s2 = axis == 1 ? wrap(g2 - 1, side) : g2;
      out(g1 * side + g2) = psi(s1 * side + s2);
    }
  }
  return out;
}

CMat patch_hamiltonian(const TightBindingModel& m) {
  validate(m);
  const int side = m.side;
  const Eigen::Index sites = static_cast<Eigen::Index>(side) * side;
  // s[j](g, g - e_j) = 1.
  auto shift_matrix = [&](int axis) {
    CMat s = CMat::Zero(sites, sites);
    for (int g1 = 0; g1 < side; ++g1) {
      for (int g2 = 0; g2 < side; ++g2) {
        const int s1 = axis == 0 ? wrap(g1 - 1, side) : g1;
        const int s2 = axis == 1 ? wrap(g2 - 1, side) : g2;
        s(g1 * side + g2, s1 * side + s2) = 1.0;
      }
    }
    return s;
  };
  const CMat s1 = shift_matrix(0);
  const CMat s2 = shift_matrix(1);
  const CMat id = CMat::Identity(sites, sites);
  if (m.kind == ModelKind::square_single_band) {
    const CMat hop = m.q1 * s1 + m.q2 * s2;
    return id + hop + hop.adjoint();
  }
  const CMat w = id + m.q1 * s1.adjoint() + m.q2 * s2.adjoint();
  CMat h = CMat::Zero(2 * sites, 2 * sites);
  h.topRightCorner(sites, sites) = w.adjoint();
  h.bottomLeftCorner(sites, sites) = w;
  return h;
}

TbEvolution tb_evolve(const TightBindingModel& m, const CVec& psi0, double t) {
  validate(m);
  require(psi0.size() == m.state_size(), ErrorKind::truncation,
          "state is not supported on the truncated patch");
  TbEvolution out;
  out.position = flow::matrix_exponential(CMat(-kI * patch_hamiltonian(m)), t) * psi0;

  const int side = m.side;
  const Eigen::Index sites = static_cast<Eigen::Index>(side) * side;
  const double scale = 1.0 / static_cast<double>(sites);
  if (m.kind == ModelKind::square_single_band) {
    CVec hat = lattice_fourier(psi0, side, +1);
    for (int m1 = 0; m1 < side; ++m1) {
      for (int m2 = 0; m2 < side; ++m2) {
        const double e = square_symbol(m.q1, m.q2, 2.0 * kPi * m1 / side, 2.0 * kPi * m2 / side);
        hat(m1 * side + m2) *= std::polar(1.0, -e * t);
      }
    }
    out.bloch = scale * lattice_fourier(hat, side, -1);
  } else {
    CVec a = lattice_fourier(psi0.head(sites), side, +1);
    CVec b = lattice_fourier(psi0.tail(sites), side, +1);
    for (int m1 = 0; m1 < side; ++m1) {
      for (int m2 = 0; m2 < side; ++m2) {
        const BlochPoint p =
            honeycomb_bloch(m.q1, m.q2, 2.0 * kPi * m1 / side, 2.0 * kPi * m2 / side);
        Eigen::Matrix2cd u = Eigen::Matrix2cd::Identity();  // T(k) = 0 at a touching
        if (!p.degenerate) {
          u = std::polar(1.0, -p.e_plus * t) * p.p_plus +
              std::polar(1.0, -p.e_minus * t) * p.p_minus;
        }
        const Eigen::Index i = m1 * side + m2;
        const Eigen::Vector2cd v = u * Eigen::Vector2cd(a(i), b(i));
        a(i) = v(0);
        b(i) = v(1);
      }
    }
    out.bloch.resize(2 * sites);
    out.bloch.head(sites) = scale * lattice_fourier(a, side, -1);
    out.bloch.tail(sites) = scale * lattice_fourier(b, side, -1);
  }
  out.gap = (out.position - out.bloch).cwiseAbs().maxCoeff();
  return out;
}

}  // namespace mpw::lattice
