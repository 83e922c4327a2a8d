#include "mpw/fourier.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace mpw::fourier {

FourierSeries::FourierSeries(int dim, int radius) : dim_(dim), radius_(radius) {
  require(dim >= 1 && dim <= 3, ErrorKind::invalid_input, "series dimension must be 1, 2 or 3");
  require(radius >= 0, ErrorKind::invalid_input, "series radius must be nonnegative");
  Eigen::Index n = 1;
  for (int a = 0; a < dim; ++a) n *= 2 * radius + 1;
  coeffs_ = CVec::Zero(n);
}

Eigen::Index FourierSeries::flat(const std::array<int, 3>& k) const {
  Eigen::Index idx = 0;
  for (int a = 0; a < dim_; ++a) {
    require(std::abs(k[a]) <= radius_, ErrorKind::invalid_input,
            "wavevector outside the series cube");
    idx = idx * (2 * radius_ + 1) + (k[a] + radius_);
  }
  return idx;
}

Complex& FourierSeries::at(const std::array<int, 3>& k) { return coeffs_(flat(k)); }
Complex FourierSeries::at(const std::array<int, 3>& k) const { return coeffs_(flat(k)); }

std::array<int, 3> FourierSeries::wavevector(Eigen::Index flat) const {
  std::array<int, 3> k{0, 0, 0};
  const int side = 2 * radius_ + 1;
  for (int a = dim_ - 1; a >= 0; --a) {
    k[a] = static_cast<int>(flat % side) - radius_;
    flat /= side;
  }
  return k;
}

Complex FourierSeries::evaluate(
    const Vec& x, const std::function<double(const std::array<int, 3>&)>& weight) const {
  require(x.size() == dim_, ErrorKind::invalid_input, "evaluation point has wrong dimension");
  Complex sum = 0.0;
  for (Eigen::Index i = 0; i < coeffs_.size(); ++i) {
    const auto k = wavevector(i);
    const double w = weight(k);
    if (w == 0.0) continue;
    double phase = 0.0;
    for (int a = 0; a < dim_; ++a) phase += k[a] * x(a);
    sum += w * coeffs_(i) * std::polar(1.0, phase);
  }
  return sum;
}

FourierSeries fourier_coeffs(const TorusGrid& f, int radius) {
  const int m = f.points_per_axis();
  if (2 * radius >= m) {
    std::ostringstream msg;
    msg << "radius " << radius << " needs more than " << m << " points per axis";
    fail(ErrorKind::aliasing, msg.str());
  }
  const CVec modes = fft::modes(f);
  FourierSeries series(f.dim(), radius);
  for (Eigen::Index i = 0; i < series.size(); ++i) {
    const auto k = series.wavevector(i);
    Eigen::Index slot = 0;
    for (int a = 0; a < f.dim(); ++a) slot = slot * m + ((k[a] % m) + m) % m;
    series.coeffs()(i) = modes(slot);
  }
  return series;
}

FourierSeries fourier_coeffs_quadrature(const std::function<double(double)>& f, int radius,
                                        int panels, int order) {
  require(radius >= 0 && panels >= 1 && order >= 1, ErrorKind::invalid_input,
          "quadrature needs positive panels and order");
  const GaussRule rule = gauss_legendre(order);
  const double width = 2.0 * kPi / panels;
  std::vector<Complex> acc(radius + 1, 0.0);
  constexpr int kReanchor = 64;
  for (int p = 0; p < panels; ++p) {
    const double mid = -kPi + (p + 0.5) * width;
    for (int q = 0; q < order; ++q) {
      const double x = mid + 0.5 * width * rule.nodes[q];
      const double wf = 0.5 * width * rule.weights[q] * f(x);
      const Complex step = std::polar(1.0, -x);
      Complex phase = 1.0;
      for (int k = 0; k <= radius; ++k) {
        if (k % kReanchor == 0) phase = std::polar(1.0, -k * x);
        acc[k] += wf * phase;
        phase *= step;
      }
    }
  }
  FourierSeries series(1, radius);
  for (int k = 0; k <= radius; ++k) {
    const Complex c = acc[k] / (2.0 * kPi);
    series[k] = c;
    series[-k] = std::conj(c);  // f is real
  }
  return series;
}

namespace {

double kernel_weight(Kernel kind, int degree, const std::array<int, 3>& k, int dim) {
  double w = 1.0;
  for (int a = 0; a < dim; ++a) {
    const int ak = std::abs(k[a]);
    if (ak > degree) return 0.0;
    if (kind == Kernel::fejer) w *= 1.0 - static_cast<double>(ak) / (degree + 1);
  }
  return w;
}

}  // namespace

Complex kernel_sum(const FourierSeries& series, Kernel kind, int degree, const Vec& x) {
  require(degree >= 0 && degree <= series.radius(), ErrorKind::invalid_input,
          "kernel degree exceeds the series radius");
  return series.evaluate(x, [&](const std::array<int, 3>& k) {
    return kernel_weight(kind, degree, k, series.dim());
  });
}

TorusGrid kernel_sum_grid(const FourierSeries& series, Kernel kind, int degree,
                          int points_per_axis) {
  require(degree >= 0 && degree <= series.radius(), ErrorKind::invalid_input,
          "kernel degree exceeds the series radius");
  require(2 * degree < points_per_axis, ErrorKind::aliasing,
          "grid too coarse to represent the kernel sum");
  const int dim = series.dim();
  const int m = points_per_axis;
  Eigen::Index total = 1;
  for (int a = 0; a < dim; ++a) total *= m;
  CVec modes = CVec::Zero(total);
  for (Eigen::Index i = 0; i < series.size(); ++i) {
    const auto k = series.wavevector(i);
    const double w = kernel_weight(kind, degree, k, dim);
    if (w == 0.0) continue;
    Eigen::Index slot = 0;
    for (int a = 0; a < dim; ++a) slot = slot * m + ((k[a] % m) + m) % m;
    modes(slot) += w * series.coeffs()(i);
  }
  return fft::synthesize(modes, dim, m);
}

TorusGrid convolve_torus(const TorusGrid& f, const TorusGrid& g) {
  require(f.same_shape(g), ErrorKind::invalid_input, "convolution needs matching grids");
  const int m = f.points_per_axis();
  const int dim = f.dim();
  TorusGrid out(dim, m);
  const double weight = f.cell_volume();
  for (Eigen::Index i = 0; i < f.size(); ++i) {
    const auto xi = f.multi_index(i);
    Complex sum = 0.0;
    for (Eigen::Index j = 0; j < g.size(); ++j) {
      const auto xj = g.multi_index(j);
      // x_i - x_j = 2 pi (i - j) / M is the grid point with index i - j + M / 2.
      std::array<int, 3> diff{0, 0, 0};
      for (int a = 0; a < dim; ++a) diff[a] = xi[a] - xj[a] + m / 2;
      sum += f[f.flat_index(diff)] * g[j];
    }
    out[i] = weight * sum;
  }
  return out;
}

double grid_l1_distance(const TorusGrid& f, const TorusGrid& g) {
  require(f.same_shape(g), ErrorKind::invalid_input, "L1 distance needs matching grids");
  const double weight = std::pow(2.0 * kPi, -f.dim()) * f.cell_volume();
  return weight * (f.samples() - g.samples()).cwiseAbs().sum();
}

DecayReport decay_report(const FourierSeries& series) {
  constexpr double kDead = 1e-13;
  constexpr double kAbrupt = 1e-6;
  constexpr double kMargin = 0.25;  // the decay hypothesis needs exponent -n-s-delta

  const int radius = series.radius();
  std::vector<double> shell(radius + 1, 0.0);
  for (Eigen::Index i = 0; i < series.size(); ++i) {
    const auto k = series.wavevector(i);
    double r2 = 0.0;
    for (int a = 0; a < series.dim(); ++a) r2 += static_cast<double>(k[a]) * k[a];
    const int r = static_cast<int>(std::lround(std::sqrt(r2)));
    if (r <= radius) shell[r] = std::max(shell[r], std::abs(series.coeffs()(i)));
  }
  const double peak = *std::max_element(shell.begin(), shell.end());
  require(peak > 0.0, ErrorKind::undefined_fit, "all-zero series has no decay rate");

  DecayReport report;
  int last_live = 0;
  for (int r = 1; r <= radius; ++r) {
    if (shell[r] > kDead * peak) last_live = r;
  }
  const bool stops_abruptly =
      last_live == 0 || (last_live < radius && shell[last_live] > kAbrupt * peak);
  if (stops_abruptly) {
    report.band_limited = true;
    report.exponent = -std::numeric_limits<double>::infinity();
    report.regularity_order = std::numeric_limits<int>::max();
    report.verdict = "band-limited (C^infinity)";
    return report;
  }

  // Fit on the upper three quarters of the live shells, where decay is asymptotic.
  const int first = std::max(1, last_live / 4);
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  int count = 0;
  for (int r = first; r <= last_live; ++r) {
    if (shell[r] <= kDead * peak) continue;
    const double x = std::log(1.0 + r);
    const double y = std::log(shell[r]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++count;
  }
  require(count >= 2, ErrorKind::undefined_fit, "fewer than two live shells to fit");
  report.shells_fitted = count;
  report.exponent = (count * sxy - sx * sy) / (count * sxx - sx * sx);

  const double excess = -report.exponent - series.dim() - kMargin;
  report.regularity_order = excess < 0.0 ? -1 : static_cast<int>(std::floor(excess));
  if (report.regularity_order < 0) {
    report.verdict = "no regularity certified";
  } else {
    report.verdict = "C^" + std::to_string(report.regularity_order) + "-compatible";
  }
  return report;
}

double derivative_rule_gap(const TorusGrid& f, const TorusGrid& derivative,
                           const std::array<int, 3>& alpha, int radius) {
  require(f.same_shape(derivative), ErrorKind::invalid_input,
          "derivative grid must match the function grid");
  const FourierSeries ff = fourier_coeffs(f, radius);
  const FourierSeries fd = fourier_coeffs(derivative, radius);
  int order = 0;
  for (int a = 0; a < f.dim(); ++a) order += alpha[a];
  Complex i_power = 1.0;
  for (int j = 0; j < order; ++j) i_power *= kI;
  double gap = 0.0;
  for (Eigen::Index i = 0; i < ff.size(); ++i) {
    const auto k = ff.wavevector(i);
    double k_alpha = 1.0;
    for (int a = 0; a < f.dim(); ++a) k_alpha *= std::pow(static_cast<double>(k[a]), alpha[a]);
    gap = std::max(gap, std::abs(fd.coeffs()(i) - i_power * k_alpha * ff.coeffs()(i)));
  }
  return gap;
}

double gaussian_ft(double lambda, const Vec& xi) {
  require(lambda > 0.0, ErrorKind::invalid_input, "Gaussian parameter must be positive");
  const double n = static_cast<double>(xi.size());
  return std::pow(lambda, -0.5 * n) * std::exp(-xi.squaredNorm() / (2.0 * lambda));
}

Complex gaussian_ft_quadrature(double lambda, const Vec& xi, std::optional<double> window,
                               int panels) {
  require(lambda > 0.0, ErrorKind::invalid_input, "Gaussian parameter must be positive");
  const double r = window.value_or(10.0 / std::sqrt(lambda));
  Complex product = 1.0;
  for (Eigen::Index a = 0; a < xi.size(); ++a) {
    const double k = xi(a);
    const Complex axis = simpson(
        [&](double x) -> Complex { return std::polar(std::exp(-0.5 * lambda * x * x), -k * x); },
        -r, r, panels);
    product *= axis / std::sqrt(2.0 * kPi);
  }
  return product;
}

}  // namespace mpw::fourier
