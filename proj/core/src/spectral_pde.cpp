#include "mpw/spectral_pde.hpp"

#include <algorithm>
#include <cmath>

namespace mpw::pde {

TorusGrid heat_torus(const TorusGrid& u0, double diffusion, double t) {
  require(diffusion > 0.0, ErrorKind::invalid_input, "diffusion constant must be positive");
  require(t >= 0.0, ErrorKind::invalid_input, "backward heat flow is ill-posed");
  CVec c = fft::modes(u0);
  for (Eigen::Index i = 0; i < c.size(); ++i) {
    if (i == 0) continue;  // mass is conserved exactly
    const auto k = fft::wavevector(i, u0.dim(), u0.points_per_axis());
    double k2 = 0.0;
    for (int a = 0; a < u0.dim(); ++a) k2 += static_cast<double>(k[a]) * k[a];
    c(i) *= std::exp(-diffusion * k2 * t);
  }
  return fft::synthesize(c, u0.dim(), u0.points_per_axis());
}

double heat_kernel(double diffusion, double t, double x) {
  require(diffusion > 0.0 && t > 0.0, ErrorKind::invalid_input,
          "heat kernel needs D > 0 and t > 0");
  return std::exp(-x * x / (4.0 * diffusion * t)) / std::sqrt(4.0 * kPi * diffusion * t);
}

double heat_line(const std::function<double(double)>& u0, double diffusion, double t, double x,
                 int panels) {
  require(diffusion > 0.0, ErrorKind::invalid_input, "diffusion constant must be positive");
  require(t > 0.0, ErrorKind::invalid_input, "heat_line needs t > 0");
  const double r = 10.0 * std::max(1.0, std::sqrt(2.0 * diffusion * t));
  const double lo = std::min(-r, x - r);
  const double hi = std::max(r, x + r);
  const std::function<double(double)> integrand = [&](double y) {
    return heat_kernel(diffusion, t, x - y) * u0(y);
  };
  return simpson(integrand, lo, hi, panels);
}

double heat_residual(const std::function<double(double, double)>& u, double diffusion,
                     const std::vector<std::pair<double, double>>& samples, double fd_step) {
  require(fd_step > 0.0, ErrorKind::invalid_input, "finite-difference step must be positive");
  double worst = 0.0;
  const double h = fd_step;
  for (const auto& [t, x] : samples) {
    const double ut = (u(t + h, x) - u(t - h, x)) / (2.0 * h);
    const double uxx = (u(t, x + h) - 2.0 * u(t, x) + u(t, x - h)) / (h * h);
    const double r = std::abs(ut - diffusion * uxx);
    require(std::isfinite(r), ErrorKind::invalid_input, "solution not finite at the stencil");
    worst = std::max(worst, r);
  }
  return worst;
}

SchroedingerResult schroedinger_torus(const TorusGrid& psi0, double t) {
  CVec c = fft::modes(psi0);
  for (Eigen::Index i = 0; i < c.size(); ++i) {
    const auto k = fft::wavevector(i, psi0.dim(), psi0.points_per_axis());
    double k2 = 0.0;
    for (int a = 0; a < psi0.dim(); ++a) k2 += static_cast<double>(k[a]) * k[a];
    c(i) *= std::polar(1.0, -k2 * t);
  }
  SchroedingerResult out;
  out.psi = fft::synthesize(c, psi0.dim(), psi0.points_per_axis());
  out.norm_drift = std::abs(out.psi.normalized_l2_norm() - psi0.normalized_l2_norm());
  return out;
}

namespace {

int max_abs_component(const std::array<int, 3>& k, int dim) {
  int r = 0;
  for (int a = 0; a < dim; ++a) r = std::max(r, std::abs(k[a]));
  return r;
}

}  // namespace

BestApproximation best_approximation(const fourier::FourierSeries& psi0, double eps,
                                     std::optional<double> known_tail_bound) {
  require(eps > 0.0, ErrorKind::invalid_input, "eps must be positive");
  require(!known_tail_bound || *known_tail_bound >= 0.0, ErrorKind::invalid_input,
          "tail bound must be nonnegative");
  const int radius = psi0.radius();
  // shell[r] = sum of |c_k|^2 with max |k_j| = r.
  std::vector<double> shell(radius + 1, 0.0);
  for (Eigen::Index i = 0; i < psi0.size(); ++i) {
    shell[max_abs_component(psi0.wavevector(i), psi0.dim())] += std::norm(psi0.coeffs()(i));
  }
  const double beyond = known_tail_bound.value_or(0.0);
  const int last = known_tail_bound ? radius : radius - 1;
  double tail = beyond;
  for (int r = radius; r > last; --r) tail += shell[r];
  // tail now holds the mass beyond `last`; walk downwards while it stays below eps^2.
  int order = -1;
  for (int n = last; n >= 0; --n) {
    if (tail < eps * eps) {
      order = n;
    } else {
      break;
    }
    tail += shell[n];
  }
  if (order < 0) {
    fail(ErrorKind::insufficient_resolution,
         "series too short to certify the tail below eps; supply a tail bound or more modes");
  }
  BestApproximation out;
  out.order = order;
  out.truncated = fourier::FourierSeries(psi0.dim(), order);
  double kept_tail = beyond;
  for (Eigen::Index i = 0; i < psi0.size(); ++i) {
    const auto k = psi0.wavevector(i);
    if (max_abs_component(k, psi0.dim()) <= order) {
      out.truncated.at(k) = psi0.coeffs()(i);
    } else {
      kept_tail += std::norm(psi0.coeffs()(i));
    }
  }
  out.tail_norm = std::sqrt(kept_tail);
  return out;
}

double truncation_error(const fourier::FourierSeries& psi0, int order, double t) {
  require(order >= 0 && order <= psi0.radius(), ErrorKind::invalid_input,
          "truncation order outside the series");
  int m = 8;
  while (m <= 2 * psi0.radius() + 2) m *= 2;
  fourier::FourierSeries diff = psi0;
  for (Eigen::Index i = 0; i < diff.size(); ++i) {
    if (max_abs_component(diff.wavevector(i), diff.dim()) <= order) diff.coeffs()(i) = 0.0;
  }
  const TorusGrid grid =
      fourier::kernel_sum_grid(diff, fourier::Kernel::dirichlet, diff.radius(), m);
  return schroedinger_torus(grid, t).psi.normalized_l2_norm();
}

WaveModes wave_modes(const WaveData& w) {
  require(w.length > 0.0, ErrorKind::invalid_input, "interval length must be positive");
  require(w.max_modes >= 1, ErrorKind::invalid_input, "need at least one mode");
  WaveModes out;
  std::map<int, std::pair<double, double>> merged;
  for (const auto& [n, b] : w.phi) merged[n].first = b;
  for (const auto& [n, b] : w.psi) merged[n].second = b;
  double total = 0.0;
  double upper = 0.0;
  bool dropped = false;
  for (const auto& [n, b] : merged) {
    if (n < 1) fail(ErrorKind::invalid_mode, "sine modes start at n = 1");
    if (n > w.max_modes) {
      dropped = dropped || b.first != 0.0 || b.second != 0.0;
      continue;
    }
    const double omega = n * kPi / w.length;
    const Complex d = b.second / (kI * omega);
    out.n.push_back(n);
    out.a1.push_back(0.5 * (b.first + d));
    out.a2.push_back(0.5 * (b.first - d));
    const double weight = std::abs(b.first) + std::abs(b.second) / omega;
    total += weight;
    if (2 * n > w.max_modes) upper += weight;
  }
  if (dropped) out.warnings.push_back("modes above the truncation were dropped");
  if (total > 0.0 && upper > 1e-6 * total) {
    out.warnings.push_back("coefficients not visibly summable at the truncation");
  }
  return out;
}

WaveResult wave_dirichlet(const WaveData& w, double t, const std::vector<double>& x) {
  const WaveModes modes = wave_modes(w);
  WaveResult out;
  out.warnings = modes.warnings;
  out.values.reserve(x.size());
  for (double xi : x) {
    require(xi >= 0.0 && xi <= w.length, ErrorKind::invalid_input,
            "sample point outside [0, L]");
    Complex u = 0.0;
    for (std::size_t j = 0; j < modes.n.size(); ++j) {
      const double omega = modes.n[j] * kPi / w.length;
      u += (modes.a1[j] * std::polar(1.0, omega * t) + modes.a2[j] * std::polar(1.0, -omega * t)) *
           std::sin(omega * xi);
    }
    out.imaginary_residue = std::max(out.imaginary_residue, std::abs(u.imag()));
    out.values.push_back(u.real());
  }
  return out;
}

double wave_energy(const WaveData& w, double t, int panels) {
  const WaveModes modes = wave_modes(w);
  const std::function<double(double)> density = [&](double x) {
    Complex ut = 0.0;
    Complex ux = 0.0;
    for (std::size_t j = 0; j < modes.n.size(); ++j) {
      const double omega = modes.n[j] * kPi / w.length;
      const Complex plus = modes.a1[j] * std::polar(1.0, omega * t);
      const Complex minus = modes.a2[j] * std::polar(1.0, -omega * t);
      ut += kI * omega * (plus - minus) * std::sin(omega * x);
      ux += omega * (plus + minus) * std::cos(omega * x);
    }
    return std::norm(ut) + std::norm(ux);
  };
  return simpson(density, 0.0, w.length, panels);
}

EMField zero_em_field(int points_per_axis) {
  EMField f;
  for (int c = 0; c < 3; ++c) {
    f.e.emplace_back(3, points_per_axis);
    f.h.emplace_back(3, points_per_axis);
  }
  return f;
}

namespace {

// Wavevector with Nyquist components replaced by zero.
Eigen::Vector3d resolved_wavevector(Eigen::Index slot, int m) {
  const auto k = fft::wavevector(slot, 3, m);
  Eigen::Vector3d out;
  for (int a = 0; a < 3; ++a) out(a) = (k[a] == -m / 2) ? 0.0 : static_cast<double>(k[a]);
  return out;
}

// Eigen's cross conjugates complex results, so the real-by-complex product is spelled out.
Eigen::Vector3cd cross(const Eigen::Vector3d& k, const Eigen::Vector3cd& v) {
  return {k(1) * v(2) - k(2) * v(1), k(2) * v(0) - k(0) * v(2), k(0) * v(1) - k(1) * v(0)};
}

void require_vector_grid(const VectorGrid& v) {
  require(v.size() == 3, ErrorKind::invalid_input, "vector field needs three components");
  for (const auto& c : v) {
    require(c.dim() == 3 && c.same_shape(v[0]), ErrorKind::invalid_input,
            "vector field components must share one 3-D grid");
  }
}

std::array<CVec, 3> modes_of(const VectorGrid& v) {
  return {fft::modes(v[0]), fft::modes(v[1]), fft::modes(v[2])};
}

}  // namespace

VectorGrid spectral_curl(const VectorGrid& v) {
  require_vector_grid(v);
  const int m = v[0].points_per_axis();
  const auto c = modes_of(v);
  std::array<CVec, 3> out{CVec(c[0].size()), CVec(c[0].size()), CVec(c[0].size())};
  for (Eigen::Index i = 0; i < c[0].size(); ++i) {
    const Eigen::Vector3d k = resolved_wavevector(i, m);
    const Eigen::Vector3cd vk(c[0](i), c[1](i), c[2](i));
    const Eigen::Vector3cd curl = kI * cross(k, vk);
    for (int a = 0; a < 3; ++a) out[a](i) = curl(a);
  }
  return {fft::synthesize(out[0], 3, m), fft::synthesize(out[1], 3, m),
          fft::synthesize(out[2], 3, m)};
}

double spectral_divergence(const VectorGrid& v) {
  require_vector_grid(v);
  const int m = v[0].points_per_axis();
  const auto c = modes_of(v);
  double worst = 0.0;
  for (Eigen::Index i = 0; i < c[0].size(); ++i) {
    const Eigen::Vector3d k = resolved_wavevector(i, m);
    worst = std::max(worst, std::abs(k(0) * c[0](i) + k(1) * c[1](i) + k(2) * c[2](i)));
  }
  return worst;
}

double field_energy(const EMField& f) {
  double sum = 0.0;
  for (int a = 0; a < 3; ++a) {
    sum += f.e[a].samples().squaredNorm() + f.h[a].samples().squaredNorm();
  }
  return 0.5 * f.e[0].cell_volume() * sum;
}

MaxwellResult maxwell_free(const EMField& em0, double t, double step) {
  require_vector_grid(em0.e);
  require_vector_grid(em0.h);
  require(em0.e[0].same_shape(em0.h[0]), ErrorKind::invalid_input, "E and H grids differ");
  require(step > 0.0, ErrorKind::invalid_input, "time step must be positive");
  const int m = em0.e[0].points_per_axis();

  const auto ce = modes_of(em0.e);
  const auto ch = modes_of(em0.h);
  double scale = 1.0;
  for (int a = 0; a < 3; ++a) {
    scale = std::max({scale, ce[a].cwiseAbs().maxCoeff(), ch[a].cwiseAbs().maxCoeff()});
  }
  const double div = std::max(spectral_divergence(em0.e), spectral_divergence(em0.h));
  require(div <= 1e-8 * scale, ErrorKind::invalid_field,
          "initial field violates the source-free constraint");

  const Eigen::Index count = ce[0].size();
  // Per mode state (E^, H^) in C^6, stored as columns.
  Eigen::Matrix<Complex, 6, Eigen::Dynamic> state(6, count);
  Eigen::Matrix3Xd kvec(3, count);
  for (Eigen::Index i = 0; i < count; ++i) {
    for (int a = 0; a < 3; ++a) {
      state(a, i) = ce[a](i);
      state(3 + a, i) = ch[a](i);
    }
    kvec.col(i) = resolved_wavevector(i, m);
  }

  // Parseval: 1/2 int |f|^2 = 1/2 (2 pi)^3 sum |c_k|^2.
  const double parseval = 0.5 * std::pow(2.0 * kPi, 3);
  auto energy = [&](const auto& s) { return parseval * s.squaredNorm(); };
  auto rhs = [&](const Eigen::Matrix<Complex, 6, Eigen::Dynamic>& s) {
    Eigen::Matrix<Complex, 6, Eigen::Dynamic> d(6, count);
    for (Eigen::Index i = 0; i < count; ++i) {
      const Eigen::Vector3d k = kvec.col(i);
      const Eigen::Vector3cd e = s.template block<3, 1>(0, i);
      const Eigen::Vector3cd h = s.template block<3, 1>(3, i);
      d.template block<3, 1>(0, i) = kI * cross(k, h);
      d.template block<3, 1>(3, i) = -kI * cross(k, e);
    }
    return d;
  };

  const double e0 = energy(state);
  MaxwellResult out;
  const int steps = static_cast<int>(std::ceil(std::abs(t) / step - 1e-12));
  const double h = steps > 0 ? t / steps : 0.0;
  for (int s = 0; s < steps; ++s) {
    const auto k1 = rhs(state);
    const auto k2 = rhs(state + 0.5 * h * k1);
    const auto k3 = rhs(state + 0.5 * h * k2);
    const auto k4 = rhs(state + h * k3);
    state += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    out.energy_drift = std::max(out.energy_drift, std::abs(energy(state) - e0));
  }

  std::array<CVec, 3> ee;
  std::array<CVec, 3> hh;
  for (int a = 0; a < 3; ++a) {
    ee[a] = state.row(a).transpose();
    hh[a] = state.row(3 + a).transpose();
  }
  for (int a = 0; a < 3; ++a) {
    out.field.e.push_back(fft::synthesize(ee[a], 3, m));
    out.field.h.push_back(fft::synthesize(hh[a], 3, m));
  }
  bool real_input = true;
  for (int a = 0; a < 3; ++a) {
    real_input = real_input && em0.e[a].samples().imag().cwiseAbs().maxCoeff() == 0.0 &&
                 em0.h[a].samples().imag().cwiseAbs().maxCoeff() == 0.0;
  }
  if (real_input) {
    for (int a = 0; a < 3; ++a) {
      out.realness_drift =
          std::max({out.realness_drift, out.field.e[a].samples().imag().cwiseAbs().maxCoeff(),
                    out.field.h[a].samples().imag().cwiseAbs().maxCoeff()});
    }
  }
  return out;
}

VectorGrid random_solenoidal_field(int points_per_axis, int kmax, std::mt19937_64& rng) {
  require(2 * kmax < points_per_axis, ErrorKind::aliasing, "kmax too large for the grid");
  std::normal_distribution<double> gauss(0.0, 1.0);
  VectorGrid potential;
  for (int a = 0; a < 3; ++a) {
    TorusGrid g(3, points_per_axis);
    for (Eigen::Index i = 0; i < g.size(); ++i) g[i] = gauss(rng);
    CVec c = fft::modes(g);
    for (Eigen::Index i = 0; i < c.size(); ++i) {
      const auto k = fft::wavevector(i, 3, points_per_axis);
      if (std::abs(k[0]) > kmax || std::abs(k[1]) > kmax || std::abs(k[2]) > kmax) c(i) = 0.0;
    }
    TorusGrid low = fft::synthesize(c, 3, points_per_axis);
    low.samples() = low.samples().real().cast<Complex>();
    potential.push_back(std::move(low));
  }
  VectorGrid field = spectral_curl(potential);
  for (auto& c : field) c.samples() = c.samples().real().cast<Complex>();
  return field;
}

}  // namespace mpw::pde
