#include "mpw/linear_flow.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace mpw::flow {

void Trajectory::validate() const {
  require(times.size() == states.size(), ErrorKind::invalid_input,
          "trajectory times and states differ in length");
  for (std::size_t i = 0; i < times.size(); ++i) {
    require(std::isfinite(times[i]) && all_finite(states[i]), ErrorKind::invalid_input,
            "trajectory entries must be finite");
    if (i > 0) {
      require(times[i] > times[i - 1], ErrorKind::invalid_input,
              "trajectory times must increase strictly");
    }
  }
}

CMat matrix_exponential(const CMat& h, double t) {
  require(h.rows() == h.cols() && h.rows() >= 1, ErrorKind::invalid_input,
          "matrix exponential needs a non-empty square matrix");
  require(std::isfinite(t) && all_finite(h), ErrorKind::invalid_input,
          "matrix exponential needs finite input");
  const Eigen::Index n = h.rows();
  CMat a = t * h;
  const double norm1 = a.cwiseAbs().colwise().sum().maxCoeff();
  int squarings = 0;
  if (norm1 > 1.0) {
    squarings = static_cast<int>(std::ceil(std::log2(norm1)));
    a /= std::ldexp(1.0, squarings);
  }
  CMat result = CMat::Identity(n, n);
  CMat term = CMat::Identity(n, n);
  for (int k = 1; k < 100; ++k) {
    term = (term * a) / static_cast<double>(k);
    result += term;
    if (term.cwiseAbs().maxCoeff() < 1e-18) break;
  }
  for (int i = 0; i < squarings; ++i) result = result * result;
  return result;
}

Mat matrix_exponential(const Mat& h, double t) {
  return matrix_exponential(CMat(h.cast<Complex>()), t).real();
}

CMat jordan_block(Complex lambda, int size) {
  require(size >= 1, ErrorKind::invalid_input, "Jordan block size must be at least 1");
  CMat j = CMat::Zero(size, size);
  for (int i = 0; i < size; ++i) {
    j(i, i) = lambda;
    if (i + 1 < size) j(i, i + 1) = 1.0;
  }
  return j;
}

CMat jordan_block_exponential(Complex lambda, int size, double t) {
  require(size >= 1, ErrorKind::invalid_input, "Jordan block size must be at least 1");
  require(std::isfinite(t) && std::isfinite(lambda.real()) && std::isfinite(lambda.imag()),
          ErrorKind::invalid_input, "Jordan exponential needs finite input");
  CMat e = CMat::Zero(size, size);
  const Complex scale = std::exp(t * lambda);
  double coeff = 1.0;  // t^m / m!
  for (int m = 0; m < size; ++m) {
    if (m > 0) coeff *= t / m;
    for (int i = 0; i + m < size; ++i) e(i, i + m) = scale * coeff;
  }
  return e;
}

CVec solve_linear_ivp(const CMat& a, const std::function<CVec(double)>& f, const CVec& x0,
                      double t, int quad_steps) {
  require(a.rows() == a.cols() && a.rows() == x0.size(), ErrorKind::invalid_input,
          "dimension mismatch between A and x0");
  require(quad_steps >= 1, ErrorKind::invalid_input, "quad_steps must be at least 1");
  const Eigen::Index n = a.rows();
  CVec result = matrix_exponential(a, t) * x0;
  if (t == 0.0) return result;

  // Simpson nodes s_i = i h, i = 0..2q; propagate e^{(t - s_i)A} from s = t downwards.
  const int nodes = 2 * quad_steps;
  const double h = t / nodes;
  const CMat step = matrix_exponential(a, h);
  CMat propagator = CMat::Identity(n, n);
  CVec integral = CVec::Zero(n);
  for (int i = nodes; i >= 0; --i) {
    const CVec fs = f(i * h);
    require(fs.size() == n, ErrorKind::invalid_input, "inhomogeneity has wrong dimension");
    const double w = (i == 0 || i == nodes) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
    integral += w * (propagator * fs);
    propagator = propagator * step;
  }
  return result + integral * (h / 3.0);
}

Vec solve_linear_ivp(const Mat& a, const std::function<Vec(double)>& f, const Vec& x0,
                     double t, int quad_steps) {
  auto fc = [&](double s) -> CVec { return f(s).cast<Complex>(); };
  return solve_linear_ivp(CMat(a.cast<Complex>()), fc, CVec(x0.cast<Complex>()), t,
                          quad_steps)
      .real();
}

namespace {

// Points of a cube lattice around `center` that fall inside the closed ball.
template <typename Visit>
void visit_ball_lattice(const Vec& center, double radius, Visit&& visit) {
  const int dim = static_cast<int>(center.size());
  int per_axis = kSupLatticePoints;
  if (dim > 3) {
    per_axis = std::max(3, static_cast<int>(std::pow(2.0e5, 1.0 / dim)));
    if (per_axis % 2 == 0) --per_axis;
  }
  std::vector<int> idx(dim, 0);
  Vec x(dim);
  const double step = 2.0 * radius / (per_axis - 1);
  while (true) {
    for (int a = 0; a < dim; ++a) x(a) = -radius + step * idx[a];
    if (x.norm() <= radius * (1.0 + 1e-12)) visit(Vec(center + x));
    int a = 0;
    while (a < dim && ++idx[a] == per_axis) idx[a++] = 0;
    if (a == dim) break;
  }
}

}  // namespace

double estimate_sup_norm(const VectorField& f, const Vec& center, double radius) {
  require(radius > 0.0, ErrorKind::invalid_input, "ball radius must be positive");
  double sup = 0.0;
  visit_ball_lattice(center, radius, [&](const Vec& x) {
    const Vec v = f(x);
    require(all_finite(v), ErrorKind::invalid_input, "vector field not finite on the ball");
    sup = std::max(sup, v.norm());
  });
  return sup;
}

PicardResult picard_solve(const VectorField& f, const Vec& x0, int n_iter, int time_samples) {
  require(f.lipschitz && *f.lipschitz > 0.0, ErrorKind::invalid_input,
          "Picard iteration needs a positive Lipschitz constant");
  require(f.ball_radius && *f.ball_radius > 0.0, ErrorKind::invalid_input,
          "Picard iteration needs a ball radius");
  require(x0.size() == f.dim, ErrorKind::invalid_input, "x0 has the wrong dimension");
  require(n_iter >= 1, ErrorKind::invalid_input, "n_iter must be positive");
  require(time_samples >= 3 && time_samples % 2 == 1, ErrorKind::invalid_input,
          "time_samples must be odd and at least 3");

  const double lip = *f.lipschitz;
  const double rho = *f.ball_radius;
  PicardResult out;
  out.v_max = estimate_sup_norm(f, x0, rho);
  const double t_contract = 1.0 / (2.0 * lip);
  out.existence_time = out.v_max > 0.0 ? std::min(rho / out.v_max, t_contract) : t_contract;

  const double big_t = out.existence_time;
  const int centre = (time_samples - 1) / 2;
  const double dt = 2.0 * big_t / (time_samples - 1);

  std::vector<double> times(time_samples);
  for (int i = 0; i < time_samples; ++i) times[i] = -big_t + dt * i;
  times[centre] = 0.0;

  std::vector<Vec> path(time_samples, x0);
  std::vector<Vec> velocity(time_samples);
  std::vector<Vec> next(time_samples);
  for (int iter = 0; iter < n_iter; ++iter) {
    for (int i = 0; i < time_samples; ++i) velocity[i] = f(path[i]);
    next[centre] = x0;
    for (int i = centre + 1; i < time_samples; ++i) {
      next[i] = next[i - 1] + 0.5 * dt * (velocity[i - 1] + velocity[i]);
    }
    for (int i = centre - 1; i >= 0; --i) {
      next[i] = next[i + 1] - 0.5 * dt * (velocity[i + 1] + velocity[i]);
    }
    double gap = 0.0;
    for (int i = 0; i < time_samples; ++i) {
      if ((next[i] - x0).norm() > rho * (1.0 + 1e-12)) {
        std::ostringstream msg;
        msg << "Picard iterate " << iter + 1 << " leaves the ball of radius " << rho
            << " at t = " << times[i];
        fail(ErrorKind::domain_escape, msg.str());
      }
      gap = std::max(gap, (next[i] - path[i]).norm());
    }
    out.iterate_gaps.push_back(gap);
    std::swap(path, next);
  }
  out.trajectory.times = std::move(times);
  out.trajectory.states = std::move(path);
  out.trajectory.method = Method::picard;
  return out;
}

Trajectory rk4_integrate(const VectorField& f, const Vec& x0, double t_end, double step) {
  require(step > 0.0 && std::isfinite(t_end), ErrorKind::invalid_input,
          "rk4 needs a positive step and finite end time");
  require(x0.size() == f.dim && all_finite(x0), ErrorKind::invalid_input,
          "rk4 initial state has wrong dimension or is not finite");
  const int n = t_end == 0.0
                    ? 0
                    : static_cast<int>(std::ceil(std::abs(t_end) / step - 1e-9));
  const double h = n == 0 ? 0.0 : t_end / n;

  Trajectory traj;
  traj.method = Method::rk4;
  traj.times.reserve(n + 1);
  traj.states.reserve(n + 1);
  traj.times.push_back(0.0);
  traj.states.push_back(x0);
  Vec x = x0;
  for (int i = 0; i < n; ++i) {
    const Vec k1 = f(x);
    const Vec k2 = f(x + 0.5 * h * k1);
    const Vec k3 = f(x + 0.5 * h * k2);
    const Vec k4 = f(x + h * k3);
    x += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    if (!all_finite(x)) {
      std::ostringstream msg;
      msg << "rk4 state became non-finite after t = " << i * h;
      throw BlowUpError(i * h, msg.str());
    }
    traj.times.push_back((i + 1) * h);
    traj.states.push_back(x);
  }
  // Keep the time grid increasing for backward integration.
  if (h < 0.0) {
    std::reverse(traj.times.begin(), traj.times.end());
    std::reverse(traj.states.begin(), traj.states.end());
  }
  return traj;
}

BoundReport groenwall_check(const std::vector<double>& times, const std::vector<double>& u,
                            const std::function<double(double)>& beta) {
  require(!times.empty() && times.size() == u.size(), ErrorKind::invalid_input,
          "Groenwall check needs a non-empty trajectory");
  for (std::size_t i = 1; i < times.size(); ++i) {
    require(times[i] > times[i - 1], ErrorKind::invalid_input, "times must increase");
  }
  constexpr double kSlack = 1e-10;
  double integral = 0.0;
  double prev_beta = beta(times[0]);
  double worst_excess = -std::numeric_limits<double>::infinity();
  double worst_lhs = u[0];
  double worst_rhs = u[0];
  bool pass = true;
  for (std::size_t i = 0; i < times.size(); ++i) {
    require(u[i] >= 0.0, ErrorKind::invalid_input, "u must be nonnegative");
    if (i > 0) {
      const double b = beta(times[i]);
      integral += 0.5 * (times[i] - times[i - 1]) * (prev_beta + b);
      prev_beta = b;
    }
    const double bound = u[0] * std::exp(integral);
    const double excess = u[i] - bound;
    if (u[i] > bound * (1.0 + kSlack)) pass = false;
    if (excess > worst_excess) {
      worst_excess = excess;
      worst_lhs = u[i];
      worst_rhs = bound;
    }
  }
  BoundReport r = make_bound("groenwall", worst_lhs, worst_rhs, kSlack * worst_rhs,
                             "u(t) <= u(a) exp(int beta)");
  r.pass = pass;
  return r;
}

FlowGapResult flow_divergence_gap(const VectorField& f0, const VectorField& f1, double eps,
                                  const Vec& x0, double t, double step) {
  require(f0.lipschitz.has_value() && *f0.lipschitz > 0.0, ErrorKind::invalid_input,
          "flow divergence bound needs L > 0");
  require(eps >= 0.0 && eps < 1.0, ErrorKind::invalid_input, "eps must lie in [0, 1)");
  require(f0.dim == f1.dim && x0.size() == f0.dim, ErrorKind::invalid_input,
          "dimension mismatch");
  const double lip = *f0.lipschitz;

  FlowGapResult out;
  out.sup_perturbation = estimate_sup_norm(f1, x0, f0.ball_radius.value_or(1.0));

  VectorField perturbed = f0;
  perturbed.eval = [&](const Vec& x) -> Vec { return f0(x) + eps * f1(x); };
  const Trajectory base = rk4_integrate(f0, x0, t, step);
  const Trajectory pert = rk4_integrate(perturbed, x0, t, step);

  double observed = 0.0;
  for (std::size_t i = 0; i < base.size(); ++i) {
    const double g = (pert.states[i] - base.states[i]).norm();
    out.times.push_back(base.times[i]);
    out.gaps.push_back(g);
    observed = std::max(observed, g);
  }
  const double bound = eps * (out.sup_perturbation / lip) * std::expm1(lip * std::abs(t));
  out.report = make_bound("flow-divergence", observed, bound, 1e-8,
                          "sup |Phi^eps - Phi^0| <= eps C/L (e^{L|t|} - 1)");
  return out;
}

}  // namespace mpw::flow
