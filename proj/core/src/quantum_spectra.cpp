#include "mpw/quantum_spectra.hpp"

#include "mpw/linear_flow.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <limits>

namespace mpw::quantum {

void require_hermitian(const CMat& h, const char* what) {
  require(h.rows() == h.cols() && h.rows() > 0, ErrorKind::invalid_input,
          std::string(what) + " must be a nonempty square matrix");
  const double scale = std::max(1.0, h.cwiseAbs().maxCoeff());
  require((h - h.adjoint()).cwiseAbs().maxCoeff() <= 1e-12 * scale, ErrorKind::invalid_input,
          std::string(what) + " is not Hermitian");
}

namespace {

Vec hermitian_spectrum(const CMat& h) {
  Eigen::SelfAdjointEigenSolver<CMat> es(h, Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

double expectation(const CMat& h, const CVec& psi) { return psi.dot(h * psi).real(); }

}  // namespace

double rayleigh_quotient(const CMat& h, const CVec& psi) {
  require_hermitian(h, "operator");
  require(psi.size() == h.rows(), ErrorKind::invalid_input, "vector has wrong dimension");
  const double n2 = psi.squaredNorm();
  require(n2 > 0.0, ErrorKind::invalid_input, "Rayleigh quotient of the zero vector");
  return expectation(h, psi) / n2;
}

std::vector<double> galerkin_minmax(const CMat& h, const CMat& phis) {
  require_hermitian(h, "operator");
  require(phis.rows() == h.rows() && phis.cols() >= 1, ErrorKind::invalid_input,
          "trial family has wrong shape");
  const CMat gram = phis.adjoint() * phis;
  require((gram - CMat::Identity(phis.cols(), phis.cols())).cwiseAbs().maxCoeff() <= 1e-10,
          ErrorKind::invalid_input, "trial family is not orthonormal");
  CMat small = phis.adjoint() * h * phis;
  small = 0.5 * (small + small.adjoint()).eval();
  const Vec ev = hermitian_spectrum(small);
  return {ev.data(), ev.data() + ev.size()};
}

double temple_bound(const CMat& h, const CVec& psi, double mu) {
  require_hermitian(h, "operator");
  require(psi.size() == h.rows(), ErrorKind::invalid_input, "vector has wrong dimension");
  require(std::abs(psi.norm() - 1.0) <= 1e-10, ErrorKind::precondition,
          "Temple: trial vector is not normalized");
  const double mean = expectation(h, psi);
  require(mean < mu, ErrorKind::precondition, "Temple: <psi, H psi> < mu fails");
  const Vec ev = hermitian_spectrum(h);
  const double scale = std::max(1.0, ev.cwiseAbs().maxCoeff());
  double e1 = std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 1; i < ev.size(); ++i) {
    if (ev(i) > ev(0) + 1e-12 * scale) {
      e1 = ev(i);
      break;
    }
  }
  require(mu < e1, ErrorKind::precondition, "Temple: mu < E1 fails");
  const CVec hpsi = h * psi;
  const double variance = std::max(0.0, hpsi.squaredNorm() - mean * mean);
  return mean - variance / (mu - mean);
}

double resolvent_kernel_1d(double energy, double x, double y) {
  require(energy > 0.0, ErrorKind::invalid_input, "resolvent kernel needs E > 0");
  const double s = std::sqrt(energy);
  return std::exp(-s * std::abs(x - y)) / (2.0 * s);
}

double Potential1D::l1_norm() const {
  std::vector<double> a(values.size());
  for (Eigen::Index i = 0; i < values.size(); ++i) a[i] = std::abs(values(i));
  return trapezoid(a, spacing);
}

Potential1D sample_potential(const std::function<double(double)>& v, double radius,
                             double spacing) {
  require(radius > 0.0 && spacing > 0.0, ErrorKind::invalid_input,
          "window and spacing must be positive");
  Potential1D p;
  p.radius = radius;
  p.spacing = spacing;
  const auto n = static_cast<Eigen::Index>(std::lround(2.0 * radius / spacing)) + 1;
  p.values.resize(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double value = v(p.point(i));
    require(std::isfinite(value) && value <= 0.0, ErrorKind::invalid_input,
            "potential must be finite and nonpositive");
    p.values(i) = value;
  }
  return p;
}

double bs_top_eigenvalue(const Potential1D& v, double mu) {
  require(mu > 0.0, ErrorKind::invalid_input, "mu must be positive");
  std::vector<Eigen::Index> support;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (v.values(i) != 0.0) support.push_back(i);
  }
  require(!support.empty(), ErrorKind::invalid_input, "potential vanishes identically");
  const auto n = static_cast<Eigen::Index>(support.size());
  Mat k(n, n);
  for (Eigen::Index a = 0; a < n; ++a) {
    const double xa = v.point(support[a]);
    const double wa = std::sqrt(-v.values(support[a]));
    for (Eigen::Index b = 0; b <= a; ++b) {
      const double xb = v.point(support[b]);
      const double wb = std::sqrt(-v.values(support[b]));
      k(a, b) = k(b, a) = v.spacing * wa * wb * std::exp(-mu * std::abs(xa - xb)) / (2.0 * mu);
    }
  }
  Eigen::SelfAdjointEigenSolver<Mat> es(k, Eigen::EigenvaluesOnly);
  return es.eigenvalues()(n - 1);
}

double grid_ground_energy(const Potential1D& v, double lambda) {
  // Interior points only: u vanishes at both window ends.
  const Eigen::Index n = v.size() - 2;
  require(n >= 1, ErrorKind::invalid_input, "grid too small");
  const double h2 = v.spacing * v.spacing;
  const double off2 = 1.0 / (h2 * h2);
  Vec d(n);
  for (Eigen::Index i = 0; i < n; ++i) d(i) = 2.0 / h2 + lambda * v.values(i + 1);
  // Sturm count of eigenvalues below x for the symmetric tridiagonal matrix.
  auto below = [&](double x) {
    int count = 0;
    double q = d(0) - x;
    for (Eigen::Index i = 0;; ++i) {
      if (q == 0.0) q = -1e-300;
      if (q < 0.0) ++count;
      if (i + 1 == n) break;
      q = d(i + 1) - x - off2 / q;
    }
    return count;
  };
  double lo = d.minCoeff() - 2.0 / h2;
  double hi = d.maxCoeff() + 2.0 / h2;
  for (int it = 0; it < 200 && hi - lo > 1e-15 * std::max(1.0, std::abs(lo)); ++it) {
    const double mid = 0.5 * (lo + hi);
    if (below(mid) >= 1) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return 0.5 * (lo + hi);
}

BSResult birman_schwinger(const Potential1D& v, double lambda) {
  require(lambda > 0.0, ErrorKind::invalid_input, "coupling must be positive");
  const double mass = v.l1_norm();
  require(mass > 0.0, ErrorKind::invalid_input, "potential vanishes identically");
  auto g = [&](double mu) { return lambda * bs_top_eigenvalue(v, mu) - 1.0; };

  BSResult out;
  double lo = lambda * mass / 40.0;
  double hi = 10.0 * lambda * mass;
  constexpr int kMaxWiden = 60;
  int widen = 0;
  while (g(lo) <= 0.0 && widen++ < kMaxWiden) lo *= 0.5;
  widen = 0;
  while (g(hi) >= 0.0 && widen++ < kMaxWiden) hi *= 2.0;
  if (g(lo) <= 0.0 || g(hi) >= 0.0) {
    fail(ErrorKind::bracket, "could not bracket the Birman-Schwinger root");
  }
  out.bracket_lo = lo;
  out.bracket_hi = hi;
  for (int it = 0; it < 200 && hi - lo > 1e-14 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (g(mid) > 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  out.mu_star = 0.5 * (lo + hi);
  out.energy = -out.mu_star * out.mu_star;
  out.weak_coupling_prediction = -0.25 * lambda * lambda * mass * mass;
  out.grid_diag_energy = grid_ground_energy(v, lambda);
  return out;
}

WeylProbe weyl_probe(const std::vector<double>& x, const std::vector<double>& f, double lambda,
                     const std::vector<double>& widths) {
  require(x.size() == f.size() && !x.empty(), ErrorKind::invalid_input,
          "samples and values must match");
  WeylProbe p;
  p.lambda = lambda;
  std::size_t best = 0;
  for (std::size_t i = 1; i < f.size(); ++i) {
    if (std::abs(f[i] - lambda) < std::abs(f[best] - lambda)) best = i;
  }
  p.center = x[best];
  for (double w : widths) {
    require(w > 0.0, ErrorKind::invalid_input, "bump width must be positive");
    double norm2 = 0.0;
    double res2 = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      const double z = (x[i] - p.center) / w;
      const double b = std::exp(-0.5 * z * z);
      norm2 += b * b;
      res2 += (f[i] - lambda) * (f[i] - lambda) * b * b;
    }
    p.residuals.push_back(std::sqrt(res2 / norm2));
  }
  return p;
}

MultiplicationSpectrum multiplication_spectrum(const std::vector<double>& x,
                                               const std::vector<double>& f) {
  require(x.size() == f.size() && !x.empty(), ErrorKind::invalid_input,
          "samples and values must match");
  for (double v : f) require(std::isfinite(v), ErrorKind::invalid_input, "samples must be finite");
  MultiplicationSpectrum out;
  const auto [lo, hi] = std::minmax_element(f.begin(), f.end());
  out.lo = *lo;
  out.hi = *hi;
  constexpr int kProbes = 5;
  const std::size_t n = f.size();
  for (int j = 0; j < kProbes; ++j) {
    const std::size_t i = (n - 1) * static_cast<std::size_t>(j + 1) / (kProbes + 1);
    out.probes.push_back(weyl_probe(x, f, f[i]));
  }
  return out;
}

BoundReport uncertainty_check(const CMat& a, const CMat& b, const CVec& psi) {
  require_hermitian(a, "A");
  require_hermitian(b, "B");
  require(a.rows() == b.rows() && psi.size() == a.rows(), ErrorKind::invalid_input,
          "operators and state differ in dimension");
  require(std::abs(psi.norm() - 1.0) <= 1e-10, ErrorKind::invalid_input,
          "state must be normalized");
  const CMat comm = kI * (a * b - b * a);
  const double lhs = 0.5 * std::abs(psi.dot(comm * psi));
  auto sigma = [&](const CMat& op) {
    const double mean = expectation(op, psi);
    return std::sqrt(std::max(0.0, (op * psi).squaredNorm() - mean * mean));
  };
  return make_bound("uncertainty", lhs, sigma(a) * sigma(b), 1e-10, "Heisenberg");
}

BoundReport diamagnetic_check(const TorusGrid& psi, const VectorGrid& a) {
  const int n = psi.dim();
  require(static_cast<int>(a.size()) == n, ErrorKind::invalid_input,
          "vector potential needs one component per axis");
  for (const auto& c : a) {
    require(c.same_shape(psi), ErrorKind::invalid_input, "vector potential grid mismatch");
  }
  const int m = psi.points_per_axis();
  const double h = psi.spacing();
  CVec modulus(psi.size());
  for (Eigen::Index i = 0; i < psi.size(); ++i) modulus(i) = std::abs(psi[i]);

  auto neighbor = [&](Eigen::Index i, int axis, int offset) {
    auto idx = psi.multi_index(i);
    idx[axis] = ((idx[axis] + offset) % m + m) % m;
    return psi.flat_index(idx);
  };
  auto d1 = [&](const CVec& f, Eigen::Index i, int axis) {
    return (f(neighbor(i, axis, 1)) - f(neighbor(i, axis, -1))) / (2.0 * h);
  };
  auto d3 = [&](const CVec& f, Eigen::Index i, int axis) {
    return (f(neighbor(i, axis, 2)) - 2.0 * f(neighbor(i, axis, 1)) +
            2.0 * f(neighbor(i, axis, -1)) - f(neighbor(i, axis, -2))) /
           (2.0 * h * h * h);
  };

  // Central differences err by h^2/6 |f'''| per axis; both sides carry such an error.
  double third = 0.0;
  for (Eigen::Index i = 0; i < psi.size(); ++i) {
    if (modulus(i).real() <= 1e-8) continue;
    for (int ax = 0; ax < n; ++ax) {
      third = std::max(third, std::abs(d3(psi.samples(), i, ax)) + std::abs(d3(modulus, i, ax)));
    }
  }
  const double slack = 2.0 * std::sqrt(static_cast<double>(n)) * third / 6.0 * h * h;

  double worst = -std::numeric_limits<double>::infinity();
  double worst_lhs = 0.0;
  double worst_rhs = 0.0;
  for (Eigen::Index i = 0; i < psi.size(); ++i) {
    if (modulus(i).real() <= 1e-8) continue;
    double lhs2 = 0.0;
    double rhs2 = 0.0;
    for (int ax = 0; ax < n; ++ax) {
      lhs2 += std::norm(d1(modulus, i, ax));
      rhs2 += std::norm(-kI * d1(psi.samples(), i, ax) - a[ax][i] * psi[i]);
    }
    const double lhs = std::sqrt(lhs2);
    const double rhs = std::sqrt(rhs2);
    if (lhs - rhs > worst) {
      worst = lhs - rhs;
      worst_lhs = lhs;
      worst_rhs = rhs;
    }
  }
  return make_bound("diamagnetic", worst_lhs, worst_rhs, slack, "diamagnetic inequality");
}

BoundReport duhamel_gap(const CMat& h1, const CMat& w, double eps, double t) {
  require_hermitian(h1, "H1");
  require_hermitian(w, "W");
  require(h1.rows() == w.rows(), ErrorKind::invalid_input, "H1 and W differ in dimension");
  require(eps >= 0.0, ErrorKind::invalid_input, "eps must be nonnegative");
  const CMat u0 = flow::matrix_exponential(CMat(-kI * h1), t);
  const CMat u1 = flow::matrix_exponential(CMat(-kI * (h1 + eps * w)), t);
  const double lhs = Eigen::JacobiSVD<CMat>(u0 - u1).singularValues()(0);
  const double wnorm = Eigen::JacobiSVD<CMat>(w).singularValues()(0);
  return make_bound("duhamel", lhs, std::abs(t) * eps * wnorm, 1e-10, "Duhamel formula");
}

double picture_gap(const CMat& u, const CMat& rho, const CMat& f) {
  const Complex schroedinger = (u * rho * u.adjoint() * f).trace();
  const Complex heisenberg = (rho * u.adjoint() * f * u).trace();
  return std::abs(schroedinger - heisenberg);
}

}  // namespace mpw::quantum
