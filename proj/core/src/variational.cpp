#include "mpw/variational.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <limits>

namespace mpw::variational {

namespace {

double checked(const Functional& e, const Vec& x) {
  const double v = e.eval(x);
  require(std::isfinite(v), ErrorKind::invalid_input, "functional is not finite at a probe state");
  return v;
}

}  // namespace

double gateaux_derivative(const Functional& e, const Vec& psi, const Vec& phi, double h) {
  require(h > 0.0, ErrorKind::invalid_input, "step must be positive");
  require(psi.size() == phi.size(), ErrorKind::invalid_input, "state and direction differ");
  return (checked(e, psi + h * phi) - checked(e, psi - h * phi)) / (2.0 * h);
}

BoundReport gradient_consistency(const Functional& e, const Vec& psi, const Vec& phi, double h) {
  require(e.gradient.has_value(), ErrorKind::invalid_input, "functional has no analytic gradient");
  const double fd = gateaux_derivative(e, psi, phi, h);
  const double exact = (*e.gradient)(psi).dot(phi);
  const double third = std::abs(checked(e, psi + 2.0 * h * phi) - 2.0 * checked(e, psi + h * phi) +
                                2.0 * checked(e, psi - h * phi) - checked(e, psi - 2.0 * h * phi)) /
                       (2.0 * h * h * h);
  const double tol = 10.0 * h * h * third + 1e-12 * std::max(1.0, std::abs(checked(e, psi))) / h;
  return make_bound("gradient consistency: " + e.name, std::abs(fd - exact), 0.0, tol,
                    "Gateaux derivative");
}

double euler_lagrange_residual(const Lagrangian& lagrangian, const flow::Trajectory& q,
                               double fd_step) {
  q.validate();
  const std::size_t n = q.size();
  require(n >= 5, ErrorKind::invalid_input, "trajectory needs at least 5 samples");
  require(fd_step > 0.0, ErrorKind::invalid_input, "finite-difference step must be positive");
  const double dt = q.times[1] - q.times[0];
  for (std::size_t i = 1; i < n; ++i) {
    require(std::abs(q.times[i] - q.times[i - 1] - dt) <= 1e-9 * std::max(1.0, std::abs(dt)),
            ErrorKind::invalid_input, "trajectory must be uniformly sampled");
  }
  std::vector<Vec> v(n);
  for (std::size_t i = 1; i + 1 < n; ++i) v[i] = (q.states[i + 1] - q.states[i - 1]) / (2.0 * dt);

  auto grad_v = [&](std::size_t i) {
    return fd_gradient([&](const Vec& w) { return lagrangian(q.states[i], w); }, v[i], fd_step);
  };
  double worst = 0.0;
  for (std::size_t i = 2; i + 2 < n; ++i) {
    const Vec gx =
        fd_gradient([&](const Vec& x) { return lagrangian(x, v[i]); }, q.states[i], fd_step);
    const Vec dgv = (grad_v(i + 1) - grad_v(i - 1)) / (2.0 * dt);
    worst = std::max(worst, (gx - dgv).cwiseAbs().maxCoeff());
  }
  return worst;
}

namespace {

Eigen::Vector3d resolved_wavevector(Eigen::Index slot, int dim, int m) {
  const auto k = fft::wavevector(slot, dim, m);
  Eigen::Vector3d out = Eigen::Vector3d::Zero();
  for (int a = 0; a < dim; ++a) out(a) = (k[a] == -m / 2) ? 0.0 : static_cast<double>(k[a]);
  return out;
}

TorusGrid derivative(const TorusGrid& f, int axis) {
  CVec c = fft::modes(f);
  for (Eigen::Index i = 0; i < c.size(); ++i) {
    c(i) *= kI * resolved_wavevector(i, f.dim(), f.points_per_axis())(axis);
  }
  return fft::synthesize(c, f.dim(), f.points_per_axis());
}

void validate(const GLState& s) {
  require(s.kappa > 0.0, ErrorKind::invalid_input, "kappa must be positive");
  require(static_cast<int>(s.a.size()) == s.psi.dim(), ErrorKind::invalid_input,
          "A needs one component per axis");
  for (const auto& c : s.a) {
    require(c.same_shape(s.psi), ErrorKind::invalid_input, "psi and A grids differ");
  }
}

// P_j phi = -i D_j phi - A_j phi.
CVec covariant(const GLState& s, const CVec& phi, int j) {
  const TorusGrid g(s.psi.dim(), s.psi.points_per_axis(), phi);
  return -kI * derivative(g, j).samples() - s.a[j].samples().cwiseProduct(phi);
}

}  // namespace

Helmholtz helmholtz_decompose(const VectorGrid& u) {
  require(u.size() == 3, ErrorKind::invalid_input, "Helmholtz decomposition needs 3 components");
  for (const auto& c : u) {
    require(c.dim() == 3 && c.same_shape(u[0]), ErrorKind::invalid_input,
            "components must share one 3-D grid");
  }
  const int m = u[0].points_per_axis();
  std::array<CVec, 3> c{fft::modes(u[0]), fft::modes(u[1]), fft::modes(u[2])};
  std::array<CVec, 3> par;
  std::array<CVec, 3> perp;
  for (int a = 0; a < 3; ++a) {
    par[a] = CVec::Zero(c[a].size());
    perp[a] = CVec::Zero(c[a].size());
  }
  Helmholtz out;
  out.mean = Eigen::Vector3cd(c[0](0), c[1](0), c[2](0));
  for (Eigen::Index i = 1; i < c[0].size(); ++i) {
    const Eigen::Vector3d k = resolved_wavevector(i, 3, m);
    const Eigen::Vector3cd v(c[0](i), c[1](i), c[2](i));
    Eigen::Vector3cd along = Eigen::Vector3cd::Zero();
    // Pure Nyquist modes have zero effective wavevector and count as transverse.
    if (k.squaredNorm() > 0.0) along = (k.cast<Complex>().dot(v) / k.squaredNorm()) * k.cast<Complex>();
    for (int a = 0; a < 3; ++a) {
      par[a](i) = along(a);
      perp[a](i) = v(a) - along(a);
    }
  }
  for (int a = 0; a < 3; ++a) {
    out.longitudinal.push_back(fft::synthesize(par[a], 3, m));
    out.transverse.push_back(fft::synthesize(perp[a], 3, m));
  }
  return out;
}

GLState gl_state(int dim, int points_per_axis, double kappa) {
  GLState s;
  s.psi = TorusGrid(dim, points_per_axis);
  for (int a = 0; a < dim; ++a) s.a.emplace_back(dim, points_per_axis);
  s.kappa = kappa;
  validate(s);
  return s;
}

double gl_energy(const GLState& s) {
  validate(s);
  const int n = s.psi.dim();
  const CVec& psi = s.psi.samples();
  double total = 0.0;
  for (int j = 0; j < n; ++j) total += covariant(s, psi, j).squaredNorm();
  const double k2 = s.kappa * s.kappa;
  for (Eigen::Index i = 0; i < psi.size(); ++i) {
    const double d = std::norm(psi(i)) - 1.0;
    total += 0.5 * k2 * d * d;
  }
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      total += (derivative(s.a[j], i).samples() - derivative(s.a[i], j).samples()).squaredNorm();
    }
  }
  return s.psi.cell_volume() * total;
}

GLGradient gl_gradient(const GLState& s) {
  validate(s);
  const int n = s.psi.dim();
  const int m = s.psi.points_per_axis();
  const CVec& psi = s.psi.samples();
  const double k2 = s.kappa * s.kappa;
  GLGradient g;
  CVec gpsi = CVec::Zero(psi.size());
  std::vector<CVec> p(n);
  for (int j = 0; j < n; ++j) {
    p[j] = covariant(s, psi, j);
    gpsi += covariant(s, p[j], j);
  }
  for (Eigen::Index i = 0; i < psi.size(); ++i) gpsi(i) -= k2 * (1.0 - std::norm(psi(i))) * psi(i);
  g.psi = TorusGrid(n, m, gpsi);

  // curl curl A = -sum_i D_i F_ik with F_ik = D_i A_k - D_k A_i.
  std::vector<std::vector<CVec>> da(n, std::vector<CVec>(n));
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < n; ++k) da[i][k] = derivative(s.a[k], i).samples();
  }
  for (int k = 0; k < n; ++k) {
    CVec ga = CVec::Zero(psi.size());
    for (int i = 0; i < n; ++i) {
      if (i == k) continue;
      ga -= derivative(TorusGrid(n, m, CVec(da[i][k] - da[k][i])), i).samples();
    }
    for (Eigen::Index x = 0; x < psi.size(); ++x) {
      ga(x) -= (std::conj(psi(x)) * p[k](x)).real();
    }
    ga = ga.real().cast<Complex>();
    g.a.emplace_back(n, m, ga);
  }
  return g;
}

Vec gl_pack(const GLState& s) {
  const Eigen::Index cells = s.psi.size();
  Vec x(cells * (2 + static_cast<Eigen::Index>(s.a.size())));
  x.segment(0, cells) = s.psi.samples().real();
  x.segment(cells, cells) = s.psi.samples().imag();
  for (std::size_t a = 0; a < s.a.size(); ++a) {
    x.segment(cells * (2 + static_cast<Eigen::Index>(a)), cells) = s.a[a].samples().real();
  }
  return x;
}

GLState gl_unpack(const Vec& x, int dim, int points_per_axis, double kappa) {
  GLState s = gl_state(dim, points_per_axis, kappa);
  const Eigen::Index cells = s.psi.size();
  require(x.size() == cells * (2 + dim), ErrorKind::invalid_input, "packed GL state has wrong size");
  for (Eigen::Index i = 0; i < cells; ++i) s.psi[i] = Complex(x(i), x(cells + i));
  for (int a = 0; a < dim; ++a) {
    s.a[a].samples() = x.segment(cells * (2 + a), cells).cast<Complex>();
  }
  return s;
}

Functional gl_functional(int dim, int points_per_axis, double kappa) {
  Functional f;
  f.name = "ginzburg-landau";
  f.eval = [=](const Vec& x) { return gl_energy(gl_unpack(x, dim, points_per_axis, kappa)); };
  f.gradient = [=](const Vec& x) -> Vec {
    const GLState s = gl_unpack(x, dim, points_per_axis, kappa);
    const GLGradient g = gl_gradient(s);
    GLState packed = s;
    packed.psi = g.psi;
    packed.a = g.a;
    return 2.0 * s.psi.cell_volume() * gl_pack(packed);
  };
  return f;
}

GLDescent gl_minimize(const GLState& s0, double step_size, int max_iters, double tol,
                      bool freeze_a) {
  validate(s0);
  require(step_size > 0.0, ErrorKind::invalid_input, "step size must be positive");
  require(max_iters >= 0, ErrorKind::invalid_input, "iteration budget must be nonnegative");
  GLDescent out;
  out.state = s0;
  double step = step_size;
  double energy = gl_energy(out.state);
  out.energy_path.push_back(energy);
  for (;;) {
    const GLGradient g = gl_gradient(out.state);
    double gmax = g.psi.samples().cwiseAbs().maxCoeff();
    if (!freeze_a) {
      for (const auto& c : g.a) gmax = std::max(gmax, c.samples().cwiseAbs().maxCoeff());
    }
    out.gradient_norms.push_back(gmax);
    if (gmax <= tol) {
      out.converged = true;
      break;
    }
    if (out.iterations >= max_iters) break;
    bool accepted = false;
    for (int halving = 0; halving < 60 && !accepted; ++halving) {
      GLState trial = out.state;
      trial.psi.samples() -= step * g.psi.samples();
      if (!freeze_a) {
        for (std::size_t a = 0; a < trial.a.size(); ++a) trial.a[a].samples() -= step * g.a[a].samples();
      }
      const double e = gl_energy(trial);
      if (e <= energy) {
        out.state = std::move(trial);
        energy = e;
        accepted = true;
      } else {
        step *= 0.5;
      }
    }
    if (!accepted) break;  // no decrease at any step size: stalled at rounding level
    out.energy_path.push_back(energy);
    ++out.iterations;
  }
  out.final_step = step;
  return out;
}

BoundReport convexity_check(const Functional& e, const std::vector<std::pair<Vec, Vec>>& pairs,
                            double h) {
  double worst = -std::numeric_limits<double>::infinity();
  for (const auto& [x, y] : pairs) {
    require(x.size() == y.size(), ErrorKind::invalid_input, "pair members differ in dimension");
    const double ex = checked(e, x);
    const double ey = checked(e, y);
    for (double s : {0.25, 0.5, 0.75}) {
      worst = std::max(worst, checked(e, s * x + (1.0 - s) * y) - (s * ex + (1.0 - s) * ey));
    }
    const Vec d = x - y;
    const double mono = gateaux_derivative(e, x, d, h) - gateaux_derivative(e, y, d, h);
    worst = std::max(worst, -mono);
  }
  if (pairs.empty()) worst = 0.0;
  return make_bound("convexity: " + e.name, worst, 0.0, 1e-8, "differential characterization");
}

namespace {

Mat jacobian_at_zero(const ParametrizedMap& f, double mu, int dim, double fd_step) {
  return fd_jacobian([&](const Vec& x) { return f(mu, x); }, Vec::Zero(dim), fd_step);
}

// Sign of det(m) from an LU factorization, immune to overflow.
int determinant_sign(const Mat& m) {
  const Eigen::PartialPivLU<Mat> lu(m);
  int sign = lu.permutationP().determinant();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    const double u = lu.matrixLU()(i, i);
    if (u == 0.0) return 0;
    if (u < 0.0) sign = -sign;
  }
  return sign;
}

}  // namespace

BifurcationScan bifurcation_scan(const ParametrizedMap& f, double mu_lo, double mu_hi,
                                 int n_points, int state_dim, double fd_step) {
  require(n_points >= 3 && mu_hi > mu_lo, ErrorKind::invalid_input,
          "need an increasing range with at least 3 points");
  require(state_dim >= 1, ErrorKind::invalid_input, "state dimension must be positive");
  BifurcationScan scan;
  const Vec zero = Vec::Zero(state_dim);
  auto sigma_min = [&](double mu) {
    return Eigen::JacobiSVD<Mat>(jacobian_at_zero(f, mu, state_dim, fd_step))
        .singularValues()(state_dim - 1);
  };
  double scale = 1.0;
  for (int i = 0; i < n_points; ++i) {
    const double mu = mu_lo + (mu_hi - mu_lo) * i / (n_points - 1);
    require(f(mu, zero).cwiseAbs().maxCoeff() <= 1e-10, ErrorKind::invalid_input,
            "F(mu, 0) = 0 fails: no trivial branch");
    const Eigen::JacobiSVD<Mat> svd(jacobian_at_zero(f, mu, state_dim, fd_step));
    scan.mu_grid.push_back(mu);
    scan.smallest_singular.push_back(svd.singularValues()(state_dim - 1));
    scale = std::max(scale, svd.singularValues()(0));
  }
  const double threshold = 1e-6 * scale;
  const double dmu = (mu_hi - mu_lo) / (n_points - 1);
  for (int i = 0; i < n_points; ++i) {
    const double here = scan.smallest_singular[i];
    const bool left_ok = i == 0 || here <= scan.smallest_singular[i - 1];
    const bool right_ok = i == n_points - 1 || here < scan.smallest_singular[i + 1];
    if (!left_ok || !right_ok) continue;
    // Golden-section refinement on the neighbouring cells.
    double a = std::max(mu_lo, scan.mu_grid[i] - dmu);
    double b = std::min(mu_hi, scan.mu_grid[i] + dmu);
    const double ratio = 0.5 * (std::sqrt(5.0) - 1.0);
    double c = b - ratio * (b - a);
    double d = a + ratio * (b - a);
    double fc = sigma_min(c);
    double fd = sigma_min(d);
    for (int it = 0; it < 200 && b - a > 1e-15 * std::max(1.0, std::abs(a)); ++it) {
      if (fc < fd) {
        b = d;
        d = c;
        fd = fc;
        c = b - ratio * (b - a);
        fc = sigma_min(c);
      } else {
        a = c;
        c = d;
        fc = fd;
        d = a + ratio * (b - a);
        fd = sigma_min(d);
      }
    }
    BifurcationCandidate cand;
    cand.mu = 0.5 * (a + b);
    if (here < sigma_min(cand.mu)) cand.mu = scan.mu_grid[i];
    const Mat j0 = jacobian_at_zero(f, cand.mu, state_dim, fd_step);
    const Eigen::JacobiSVD<Mat> svd(j0, Eigen::ComputeFullV);
    cand.smallest_singular = svd.singularValues()(state_dim - 1);
    if (cand.smallest_singular > threshold) continue;
    const Vec v = svd.matrixV().col(state_dim - 1);
    const double dm = 1e-4 * std::max(1.0, std::abs(cand.mu));
    const Mat djdmu = (jacobian_at_zero(f, cand.mu + dm, state_dim, fd_step) -
                       jacobian_at_zero(f, cand.mu - dm, state_dim, fd_step)) /
                      (2.0 * dm);
    cand.transversality = v.dot(djdmu * v);
    cand.determinant_changes_sign =
        determinant_sign(jacobian_at_zero(f, cand.mu - dm, state_dim, fd_step)) !=
        determinant_sign(jacobian_at_zero(f, cand.mu + dm, state_dim, fd_step));
    if (!scan.candidates.empty() && std::abs(scan.candidates.back().mu - cand.mu) < 0.5 * dmu) {
      continue;
    }
    scan.candidates.push_back(cand);
  }
  return scan;
}

}  // namespace mpw::variational
