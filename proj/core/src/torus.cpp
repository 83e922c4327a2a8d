#include "mpw/torus.hpp"

#include <fftw3.h>

#include <cmath>
#include <cstring>
#include <memory>

namespace mpw {

namespace {

Eigen::Index power(int m, int dim) {
  Eigen::Index n = 1;
  for (int i = 0; i < dim; ++i) n *= m;
  return n;
}

void check_shape(int dim, int m) {
  require(dim >= 1 && dim <= 3, ErrorKind::invalid_input, "torus dimension must be 1, 2 or 3");
  require(m >= 2 && m % 2 == 0, ErrorKind::invalid_input,
          "points per axis must be even and at least 2");
}

}  // namespace

TorusGrid::TorusGrid(int dim, int points_per_axis)
    : TorusGrid(dim, points_per_axis, CVec::Zero(power(points_per_axis, dim))) {}

TorusGrid::TorusGrid(int dim, int points_per_axis, CVec samples)
    : dim_(dim), m_(points_per_axis), samples_(std::move(samples)) {
  check_shape(dim, points_per_axis);
  require(samples_.size() == power(m_, dim_), ErrorKind::invalid_input,
          "sample count does not match M^n");
  require(all_finite(samples_), ErrorKind::invalid_input, "torus samples must be finite");
}

TorusGrid TorusGrid::sample(int dim, int points_per_axis,
                            const std::function<Complex(const Vec&)>& f) {
  check_shape(dim, points_per_axis);
  TorusGrid grid;
  grid.dim_ = dim;
  grid.m_ = points_per_axis;
  grid.samples_.resize(power(points_per_axis, dim));
  for (Eigen::Index i = 0; i < grid.samples_.size(); ++i) {
    grid.samples_(i) = f(grid.point(i));
  }
  require(all_finite(grid.samples_), ErrorKind::invalid_input, "sampled function not finite");
  return grid;
}

double TorusGrid::cell_volume() const noexcept { return std::pow(spacing(), dim_); }

std::array<int, 3> TorusGrid::multi_index(Eigen::Index flat) const {
  std::array<int, 3> idx{0, 0, 0};
  for (int a = dim_ - 1; a >= 0; --a) {
    idx[a] = static_cast<int>(flat % m_);
    flat /= m_;
  }
  return idx;
}

Eigen::Index TorusGrid::flat_index(const std::array<int, 3>& idx) const {
  Eigen::Index flat = 0;
  for (int a = 0; a < dim_; ++a) {
    const int wrapped = ((idx[a] % m_) + m_) % m_;
    flat = flat * m_ + wrapped;
  }
  return flat;
}

Vec TorusGrid::point(Eigen::Index flat) const {
  const auto idx = multi_index(flat);
  Vec x(dim_);
  for (int a = 0; a < dim_; ++a) x(a) = -kPi + spacing() * idx[a];
  return x;
}

double TorusGrid::normalized_l2_norm() const {
  const double weight = std::pow(2.0 * kPi, -dim_) * cell_volume();
  return std::sqrt(weight * samples_.squaredNorm());
}

int signed_frequency(int j, int m) noexcept { return j < m / 2 ? j : j - m; }

namespace fft {

namespace {

struct PlanDeleter {
  void operator()(fftw_plan_s* p) const { fftw_destroy_plan(p); }
};

CVec transform(const CVec& in, int dim, int m, int sign) {
  check_shape(dim, m);
  require(in.size() == power(m, dim), ErrorKind::invalid_input, "FFT size mismatch");
  CVec out(in.size());
  CVec scratch = in;
  std::array<int, 3> shape{m, m, m};
  auto* src = reinterpret_cast<fftw_complex*>(scratch.data());
  auto* dst = reinterpret_cast<fftw_complex*>(out.data());
  std::unique_ptr<fftw_plan_s, PlanDeleter> plan(
      fftw_plan_dft(dim, shape.data(), src, dst, sign, FFTW_ESTIMATE));
  require(plan != nullptr, ErrorKind::internal, "FFTW planning failed");
  fftw_execute(plan.get());
  return out;
}

Eigen::Index parity_sign_slots(Eigen::Index flat, int dim, int m) {
  Eigen::Index sum = 0;
  for (int a = 0; a < dim; ++a) {
    sum += flat % m;
    flat /= m;
  }
  return sum;
}

}  // namespace

CVec forward(const CVec& in, int dim, int m) { return transform(in, dim, m, FFTW_FORWARD); }

CVec backward(const CVec& in, int dim, int m) { return transform(in, dim, m, FFTW_BACKWARD); }

CVec modes(const TorusGrid& f) {
  const int dim = f.dim();
  const int m = f.points_per_axis();
  CVec c = forward(f.samples(), dim, m);
  const double norm = 1.0 / static_cast<double>(f.size());
  // e^{-ik x_j} = (-1)^k e^{-2 pi i k j / M}, and (-1)^k only depends on the slot parity.
  for (Eigen::Index i = 0; i < c.size(); ++i) {
    c(i) *= (parity_sign_slots(i, dim, m) % 2 == 0 ? norm : -norm);
  }
  return c;
}

TorusGrid synthesize(const CVec& modes, int dim, int m) {
  CVec c = modes;
  for (Eigen::Index i = 0; i < c.size(); ++i) {
    if (parity_sign_slots(i, dim, m) % 2 != 0) c(i) = -c(i);
  }
  return TorusGrid(dim, m, backward(c, dim, m));
}

std::array<int, 3> wavevector(Eigen::Index flat, int dim, int m) {
  std::array<int, 3> k{0, 0, 0};
  for (int a = dim - 1; a >= 0; --a) {
    k[a] = signed_frequency(static_cast<int>(flat % m), m);
    flat /= m;
  }
  return k;
}

}  // namespace fft

}  // namespace mpw
