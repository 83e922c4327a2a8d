#include "mpw/scenario.hpp"

#include "mpw/fourier.hpp"
#include "mpw/greens.hpp"
#include "mpw/hamiltonian.hpp"
#include "mpw/lattice.hpp"
#include "mpw/quantum_spectra.hpp"
#include "mpw/spectral_pde.hpp"
#include "mpw/stability.hpp"
#include "mpw/variational.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/QR>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <random>
#include <sstream>

namespace mpw::cli {

const Value* ScenarioResult::find(const std::string& key) const {
  for (const auto& [k, v] : outputs) {
    if (k == key) return &v;
  }
  return nullptr;
}

double ScenarioResult::scalar(const std::string& key) const {
  const Value* v = find(key);
  require(v != nullptr && std::holds_alternative<double>(*v), ErrorKind::invalid_input,
          "no scalar output named " + key);
  return std::get<double>(*v);
}

namespace {

class Flags {
 public:
  Flags(const ScenarioSpec& spec, const std::map<std::string, std::string>& given)
      : spec_(spec) {
    for (const auto& [k, v] : given) {
      if (k == "seed") {
        values_[k] = v;
        continue;
      }
      const bool known = std::any_of(spec.flags.begin(), spec.flags.end(),
                                     [&](const FlagSpec& f) { return f.key == k; });
      if (!known) fail(ErrorKind::parse, "unknown flag --" + k + " for scenario " + spec.name);
      values_[k] = v;
    }
    for (const auto& f : spec.flags) {
      if (!values_.count(f.key)) {
        if (f.required) fail(ErrorKind::usage, "missing required flag --" + f.key);
        values_[f.key] = f.default_value;
      }
    }
    if (spec.randomized && !values_.count("seed")) {
      fail(ErrorKind::usage, "scenario " + spec.name + " is randomized and needs --seed");
    }
  }

  const std::map<std::string, std::string>& all() const { return values_; }

  std::string text(const std::string& key) const { return values_.at(key); }

  double real(const std::string& key) const {
    const std::string& s = values_.at(key);
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(s, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != s.size() || !std::isfinite(v)) {
      fail(ErrorKind::parse, "flag --" + key + " expects a finite number, got '" + s + "'");
    }
    return v;
  }

  long long integer(const std::string& key) const {
    const std::string& s = values_.at(key);
    std::size_t used = 0;
    long long v = 0;
    try {
      v = std::stoll(s, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != s.size()) {
      fail(ErrorKind::parse, "flag --" + key + " expects an integer, got '" + s + "'");
    }
    return v;
  }

  int positive(const std::string& key) const {
    const long long v = integer(key);
    if (v <= 0 || v > 1'000'000'000) {
      fail(ErrorKind::parse, "flag --" + key + " must be a positive integer");
    }
    return static_cast<int>(v);
  }

  std::string choice(const std::string& key, const std::vector<std::string>& allowed) const {
    const std::string& s = values_.at(key);
    if (std::find(allowed.begin(), allowed.end(), s) == allowed.end()) {
      std::string list;
      for (const auto& a : allowed) list += (list.empty() ? "" : ", ") + a;
      fail(ErrorKind::parse, "flag --" + key + " must be one of: " + list);
    }
    return s;
  }

  std::mt19937_64 rng() const {
    const std::string& s = values_.at("seed");
    std::size_t used = 0;
    unsigned long long seed = 0;
    try {
      seed = std::stoull(s, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != s.size()) {
      fail(ErrorKind::parse, "flag --seed expects a nonnegative integer, got '" + s + "'");
    }
    return std::mt19937_64(seed);
  }

 private:
  const ScenarioSpec& spec_;
  std::map<std::string, std::string> values_;
};


// heat ----------------------------------------------------------------------

void heat(const Flags& f, ScenarioResult& r) {
  const int dim = f.positive("dim");
  require(dim <= 3, ErrorKind::parse, "flag --dim must be 1, 2 or 3");
  const int m = f.positive("N");
  require(m % 2 == 0, ErrorKind::parse, "flag --N must be even");
  const double d = f.real("D");
  const double t = f.real("t");
  const std::string init = f.choice("init", {"sin", "cos2"});
  const double freq = init == "sin" ? 1.0 : 2.0;
  auto profile = [&](const Vec& x) {
    Complex v = 1.0;
    for (int a = 0; a < dim; ++a) v *= init == "sin" ? std::sin(x(a)) : std::cos(2.0 * x(a));
    return v;
  };
  const TorusGrid u0 = TorusGrid::sample(dim, m, profile);
  const TorusGrid u = pde::heat_torus(u0, d, t);
  const double decay = std::exp(-dim * freq * freq * d * t);
  double err = 0.0;
  for (Eigen::Index i = 0; i < u.size(); ++i) err = std::max(err, std::abs(u[i] - decay * u0[i]));
  const TorusGrid half = pde::heat_torus(pde::heat_torus(u0, d, 0.5 * t), d, 0.5 * t);
  const double semigroup = (half.samples() - u.samples()).cwiseAbs().maxCoeff();
  const double mass_drift = std::abs(u.samples().sum() - u0.samples().sum()) * u0.cell_volume();
  r.put("max_error", err);
  r.put("semigroup_gap", semigroup);
  r.put("mass_drift", mass_drift);
  r.put("norm_ratio", u.normalized_l2_norm() / std::max(1e-300, u0.normalized_l2_norm()));
  if (dim == 1) {
    std::vector<double> xs, us;
    for (Eigen::Index i = 0; i < u.size(); ++i) {
      xs.push_back(u.point(i)(0));
      us.push_back(u[i].real());
    }
    r.put("x", xs);
    r.put("u", us);
  }
  r.pass = err <= 1e-12 && semigroup <= 1e-12;
}

// schroedinger --------------------------------------------------------------

void schroedinger(const Flags& f, ScenarioResult& r) {
  const int m = f.positive("N");
  require(m % 2 == 0, ErrorKind::parse, "flag --N must be even");
  const double t = f.real("t");
  const int states = f.positive("states");
  const double eps = f.real("eps");
  const int radius = f.positive("radius");
  auto rng = f.rng();
  std::normal_distribution<double> gauss(0.0, 1.0);
  double drift = 0.0;
  for (int s = 0; s < states; ++s) {
    TorusGrid psi(1, m);
    for (Eigen::Index i = 0; i < psi.size(); ++i) psi[i] = Complex(gauss(rng), gauss(rng));
    psi.samples() /= psi.normalized_l2_norm();
    drift = std::max(drift, pde::schroedinger_torus(psi, t).norm_drift);
  }
  // c_n = 1/n for 1 <= n <= radius; the tail beyond has squared norm < 1/radius.
  fourier::FourierSeries series(1, radius);
  for (int n = 1; n <= radius; ++n) series[n] = 1.0 / n;
  const auto best = pde::best_approximation(series, eps, 1.0 / radius);
  const double e0 = pde::truncation_error(series, best.order, 0.0);
  const double et = pde::truncation_error(series, best.order, t);
  r.put("max_norm_drift", drift);
  r.put("order", static_cast<double>(best.order));
  r.put("tail_norm", best.tail_norm);
  r.put("truncation_error_t0", e0);
  r.put("truncation_error_t", et);
  r.put("truncation_error_change", std::abs(et - e0));
  r.pass = drift <= 1e-12 && std::abs(et - e0) <= 1e-12 && best.tail_norm < eps;
}

// wave ----------------------------------------------------------------------

void wave(const Flags& f, ScenarioResult& r) {
  pde::WaveData w;
  w.length = f.real("L");
  require(w.length > 0.0, ErrorKind::parse, "flag --L must be positive");
  const int mode = f.positive("mode");
  const double t = f.real("t");
  const int samples = f.positive("samples");
  require(samples >= 2, ErrorKind::parse, "flag --samples must be at least 2");
  w.phi[mode] = 1.0;
  const double omega = mode * kPi / w.length;
  std::vector<double> xs;
  for (int i = 0; i < samples; ++i) xs.push_back(w.length * i / (samples - 1));
  const auto res = pde::wave_dirichlet(w, t, xs);
  double err = 0.0;
  for (int i = 0; i < samples; ++i) {
    err = std::max(err, std::abs(res.values[i] - std::cos(omega * t) * std::sin(omega * xs[i])));
  }
  const double e0 = pde::wave_energy(w, 0.0);
  double drift = 0.0;
  for (int k = 1; k <= 10; ++k) drift = std::max(drift, std::abs(pde::wave_energy(w, 0.37 * k) - e0));
  r.put("max_error", err);
  r.put("energy", e0);
  r.put("energy_drift", drift);
  r.put("boundary_value", std::max(std::abs(res.values.front()), std::abs(res.values.back())));
  r.put("x", xs);
  r.put("u", res.values);
  r.pass = err <= 1e-10 && drift <= 1e-8;
}

// maxwell -------------------------------------------------------------------

void maxwell(const Flags& f, ScenarioResult& r) {
  const int m = f.positive("N");
  require(m % 2 == 0, ErrorKind::parse, "flag --N must be even");
  const int kmax = f.positive("kmax");
  const double t = f.real("t");
  const double step = f.real("step");
  require(step > 0.0, ErrorKind::parse, "flag --step must be positive");
  auto rng = f.rng();
  pde::EMField em;
  em.e = pde::random_solenoidal_field(m, kmax, rng);
  em.h = pde::random_solenoidal_field(m, kmax, rng);
  const double scale = 1.0 / std::sqrt(pde::field_energy(em));
  for (auto& c : em.e) c.samples() *= scale;
  for (auto& c : em.h) c.samples() *= scale;
  const auto res = pde::maxwell_free(em, t, step);
  const double div = std::max(pde::spectral_divergence(res.field.e), pde::spectral_divergence(res.field.h));
  r.put("energy", pde::field_energy(em));
  r.put("energy_drift", res.energy_drift);
  r.put("realness_drift", res.realness_drift);
  r.put("divergence", div);
  r.pass = res.energy_drift <= 1e-8 && res.realness_drift <= 1e-10 && div <= 1e-8;
}

// lorenz --------------------------------------------------------------------

void lorenz(const Flags& f, ScenarioResult& r) {
  stability::LorenzParams p;
  p.sigma = f.real("sigma");
  p.b = f.real("b");
  p.r = f.real("r");
  const auto model = stability::lorenz_model(p);
  const auto roots = stability::lorenz_characteristic_roots(p);
  std::vector<double> re, im;
  double minus_b = 1e300;
  for (const auto& ev : model.origin.eigenvalues) {
    re.push_back(ev.real());
    im.push_back(ev.imag());
    minus_b = std::min(minus_b, std::abs(ev + p.b));
  }
  double root_gap = 0.0;
  for (const auto& root : roots) {
    double nearest = 1e300;
    for (const auto& ev : model.origin.eigenvalues) nearest = std::min(nearest, std::abs(root - ev));
    root_gap = std::max(root_gap, nearest);
  }
  r.put("stability", std::string(stability::to_string(model.origin.stability)));
  r.put("geometry", std::string(stability::to_string(model.origin.geometry)));
  r.put("distance_to_minus_b", minus_b);
  r.put("root_gap", root_gap);
  r.put("eigen_re", re);
  r.put("eigen_im", im);
  r.pass = minus_b <= 1e-8 && root_gap <= 1e-6;
}

// liouville -----------------------------------------------------------------

void liouville(const Flags& f, ScenarioResult& r) {
  const std::string system = f.choice("system", {"oscillator", "pendulum"});
  const double t = f.real("t");
  const double step = f.real("step");
  require(step > 0.0, ErrorKind::parse, "flag --step must be positive");
  hamiltonian::HamiltonianSystem sys;
  sys.n = 1;
  if (system == "oscillator") {
    sys.h = [](const Vec& x) { return 0.5 * (x(0) * x(0) + x(1) * x(1)); };
  } else {
    sys.h = [](const Vec& x) { return 0.5 * x(1) * x(1) - std::cos(x(0)); };
  }
  Vec x0(2);
  x0 << f.real("q0"), f.real("p0");
  const double det = hamiltonian::liouville_determinant(sys, x0, t, step);
  const auto evo = hamiltonian::evolve_hamiltonian(sys, x0, t, step);
  const auto lin = stability::hamiltonian_linearization(sys.h, Vec::Zero(2));
  const double trace = lin.jacobian.trace();
  r.put("determinant", det);
  r.put("determinant_gap", std::abs(det - 1.0));
  r.put("energy_drift", evo.energy_drift);
  r.put("linearization_trace", trace);
  r.put("geometry", std::string(stability::to_string(lin.geometry)));
  r.pass = std::abs(det - 1.0) <= 1e-6 && std::abs(trace) <= 1e-6;
}

// bands ---------------------------------------------------------------------

void bands(const Flags& f, ScenarioResult& r) {
  const std::string kind = f.choice("model", {"honeycomb", "square"});
  lattice::TightBindingModel model;
  model.kind = kind == "honeycomb" ? lattice::ModelKind::honeycomb_two_band
                                   : lattice::ModelKind::square_single_band;
  model.q1 = f.real("q1");
  model.q2 = f.real("q2");
  model.side = f.positive("M");
  require(model.side >= 4, ErrorKind::parse, "flag --M must be at least 4");
  const double t = f.real("t");
  const int side = model.side;

  std::vector<double> k1s, k2s, lower, upper, all;
  for (int m1 = 0; m1 < side; ++m1) {
    for (int m2 = 0; m2 < side; ++m2) {
      const double k1 = 2.0 * kPi * m1 / side;
      const double k2 = 2.0 * kPi * m2 / side;
      k1s.push_back(k1);
      k2s.push_back(k2);
      if (kind == "honeycomb") {
        const auto b = lattice::honeycomb_bloch(model.q1, model.q2, k1, k2);
        lower.push_back(b.e_minus);
        upper.push_back(b.e_plus);
        all.push_back(b.e_minus);
        all.push_back(b.e_plus);
      } else {
        const double e = lattice::square_symbol(model.q1, model.q2, k1, k2);
        lower.push_back(e);
        all.push_back(e);
      }
    }
  }
  Eigen::SelfAdjointEigenSolver<CMat> es(lattice::patch_hamiltonian(model), Eigen::EigenvaluesOnly);
  std::sort(all.begin(), all.end());
  double spectrum_gap = 0.0;
  for (std::size_t i = 0; i < all.size(); ++i) {
    spectrum_gap = std::max(spectrum_gap, std::abs(es.eigenvalues()(static_cast<Eigen::Index>(i)) - all[i]));
  }
  // Deterministic wave packet centred on the patch.
  std::vector<std::pair<std::array<int, 3>, Complex>> entries;
  const double c = 0.5 * side;
  for (int band = 0; band < model.bands(); ++band) {
    for (int g1 = 0; g1 < side; ++g1) {
      for (int g2 = 0; g2 < side; ++g2) {
        const double r2 = (g1 - c) * (g1 - c) + (g2 - c) * (g2 - c);
        entries.push_back({{g1, g2, band}, std::polar(std::exp(-r2 / 8.0), 0.7 * g1 + 0.3 * band)});
      }
    }
  }
  const auto evo = lattice::tb_evolve(model, lattice::patch_state(model, entries), t);
  r.put("spectrum_gap", spectrum_gap);
  r.put("evolution_gap", evo.gap);
  if (kind == "honeycomb") {
    const auto dirac = lattice::honeycomb_bloch(model.q1, model.q2, 2.0 * kPi / 3.0, -2.0 * kPi / 3.0);
    r.put("varpi_at_dirac", std::abs(dirac.varpi));
  }
  r.put("k1", k1s);
  r.put("k2", k2s);
  if (kind == "honeycomb") {
    r.put("E_minus", lower);
    r.put("E_plus", upper);
  } else {
    r.put("E", lower);
  }
  r.pass = spectrum_gap <= 1e-8 && evo.gap <= 1e-8;
}

// birman-schwinger ----------------------------------------------------------

void birman_schwinger(const Flags& f, ScenarioResult& r) {
  const double lambda = f.real("lambda");
  const double depth = f.real("depth");
  const double width = f.real("width");
  const double radius = f.real("R");
  const double spacing = f.real("h");
  require(depth > 0.0 && width > 0.0, ErrorKind::parse, "flags --depth and --width must be positive");
  const auto v = quantum::sample_potential(
      [&](double x) { return std::abs(x) <= 0.5 * width + 1e-12 ? -depth : 0.0; }, radius, spacing);
  const auto bs = quantum::birman_schwinger(v, lambda);
  const double grid_vs_prediction =
      std::abs(bs.grid_diag_energy - bs.weak_coupling_prediction) / std::abs(bs.weak_coupling_prediction);
  const double bisection_vs_grid =
      std::abs(bs.energy - bs.grid_diag_energy) / std::abs(bs.grid_diag_energy);
  r.put("mu_star", bs.mu_star);
  r.put("energy", bs.energy);
  r.put("weak_coupling_prediction", bs.weak_coupling_prediction);
  r.put("grid_diag_energy", bs.grid_diag_energy);
  r.put("grid_vs_prediction", grid_vs_prediction);
  r.put("bisection_vs_grid", bisection_vs_grid);
  r.pass = grid_vs_prediction <= 0.10 && bisection_vs_grid <= 0.02;
}

// minmax --------------------------------------------------------------------

CMat random_unitary(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  CMat z(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) z(i, j) = Complex(g(rng), g(rng));
  }
  Eigen::HouseholderQR<CMat> qr(z);
  return qr.householderQ() * CMat::Identity(n, n);
}

void minmax(const Flags& f, ScenarioResult& r) {
  const int instances = f.positive("instances");
  const int max_dim = f.positive("max_dim");
  require(max_dim >= 3, ErrorKind::parse, "flag --max_dim must be at least 3");
  auto rng = f.rng();
  std::uniform_int_distribution<int> dim_dist(3, max_dim);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  std::normal_distribution<double> g(0.0, 1.0);
  int temple_violations = 0, rayleigh_violations = 0, galerkin_violations = 0;
  double worst_margin = 1e300;
  for (int inst = 0; inst < instances; ++inst) {
    const int n = dim_dist(rng);
    Vec ev(n);
    ev(0) = unif(rng);
    for (int i = 1; i < n; ++i) ev(i) = ev(i - 1) + 0.2 + std::abs(unif(rng));
    const CMat u = random_unitary(n, rng);
    CMat h = u * ev.cast<Complex>().asDiagonal() * u.adjoint();
    h = 0.5 * (h + h.adjoint()).eval();
    CVec psi = u.col(0);
    for (int i = 0; i < n; ++i) psi(i) += 0.02 * Complex(g(rng), g(rng));
    psi.normalize();
    const double mu = 0.5 * (ev(0) + ev(1));
    const double lower = quantum::temple_bound(h, psi, mu);
    const double rq = quantum::rayleigh_quotient(h, psi);
    if (lower > ev(0) + 1e-10) ++temple_violations;
    if (ev(0) > rq + 1e-10) ++rayleigh_violations;
    worst_margin = std::min(worst_margin, std::min(ev(0) - lower, rq - ev(0)));
    const int k = std::uniform_int_distribution<int>(1, n)(rng);
    const CMat q = random_unitary(n, rng).leftCols(k);
    const auto lam = quantum::galerkin_minmax(h, q);
    for (int j = 0; j < k; ++j) {
      if (ev(j) > lam[j] + 1e-10) ++galerkin_violations;
    }
  }
  r.put("temple_violations", static_cast<double>(temple_violations));
  r.put("rayleigh_violations", static_cast<double>(rayleigh_violations));
  r.put("galerkin_violations", static_cast<double>(galerkin_violations));
  r.put("worst_margin", worst_margin);
  r.pass = temple_violations == 0 && rayleigh_violations == 0 && galerkin_violations == 0;
}

// greens --------------------------------------------------------------------

void greens_interval(const Flags& f, ScenarioResult& r) {
  const std::string source = f.choice("f", {"one", "sin"});
  const int n_quad = f.positive("n_quad");
  const int samples = f.positive("samples");
  require(samples >= 2, ErrorKind::parse, "flag --samples must be at least 2");
  std::function<double(double)> src = [](double) { return 1.0; };
  std::function<double(double)> exact = [](double x) { return 0.5 * x * (1.0 - x); };
  if (source == "sin") {
    src = [](double x) { return std::sin(kPi * x); };
    exact = [](double x) { return std::sin(kPi * x) / (kPi * kPi); };
  }
  const auto u = greens::solve_poisson_interval(src, n_quad);
  std::vector<double> xs, us;
  double err = 0.0;
  for (int i = 0; i < samples; ++i) {
    const double x = static_cast<double>(i) / (samples - 1);
    xs.push_back(x);
    us.push_back(u(x));
    err = std::max(err, std::abs(us.back() - exact(x)));
  }
  r.put("max_error", err);
  r.put("boundary_value", std::max(std::abs(us.front()), std::abs(us.back())));
  r.put("x", xs);
  r.put("u", us);
  r.pass = err <= 1e-8;
}

void greens_rectangle(const Flags& f, ScenarioResult& r) {
  const int n = f.positive("n");
  require(n >= 8, ErrorKind::parse, "flag --n must be at least 8");
  const std::string kind = f.choice("case", {"manufactured", "harmonic"});
  std::function<double(double, double)> exact = [](double x, double y) {
    return std::sin(kPi * x) * std::sin(kPi * y);
  };
  std::function<double(double, double)> src = [](double x, double y) {
    return 2.0 * kPi * kPi * std::sin(kPi * x) * std::sin(kPi * y);
  };
  if (kind == "harmonic") {
    exact = [](double x, double y) { return x * x - y * y; };
    src = [](double, double) { return 0.0; };
  }
  const auto p = greens::make_rectangle_problem(n, n, src, exact);
  const auto sol = greens::solve_rectangle_dirichlet(p);
  double err_b = 0.0, err_a = 0.0;
  std::vector<double> xs, ys, us;
  for (int i = 0; i <= n; ++i) {
    for (int j = 0; j <= n; ++j) {
      const double x = static_cast<double>(i) / n;
      const double y = static_cast<double>(j) / n;
      err_b = std::max(err_b, std::abs(sol.u(i, j) - exact(x, y)));
      err_a = std::max(err_a, std::abs(sol.u_fd(i, j) - exact(x, y)));
      xs.push_back(x);
      ys.push_back(y);
      us.push_back(sol.u(i, j));
    }
  }
  const double h2 = 1.0 / (static_cast<double>(n) * n);
  r.put("path_gap", sol.residual);
  r.put("boundary_gap", sol.boundary_gap);
  r.put("error_fd", err_a);
  r.put("error_green", err_b);
  r.put("error_fd_over_h2", err_a / h2);
  r.put("x", xs);
  r.put("y", ys);
  r.put("value", us);
  r.pass = sol.residual <= 10.0 * h2 && err_a <= 5.0 * h2;
}

// helmholtz -----------------------------------------------------------------

void helmholtz(const Flags& f, ScenarioResult& r) {
  const int m = f.positive("N");
  require(m % 2 == 0, ErrorKind::parse, "flag --N must be even");
  auto rng = f.rng();
  std::normal_distribution<double> g(0.0, 1.0);
  VectorGrid u;
  for (int a = 0; a < 3; ++a) {
    TorusGrid c(3, m);
    for (Eigen::Index i = 0; i < c.size(); ++i) c[i] = g(rng);
    u.push_back(std::move(c));
  }
  const auto hh = variational::helmholtz_decompose(u);
  double recon = 0.0, curl = 0.0, inner = 0.0, idem = 0.0;
  const auto curl_par = pde::spectral_curl(hh.longitudinal);
  const auto again = variational::helmholtz_decompose(hh.transverse);
  for (int a = 0; a < 3; ++a) {
    const CVec sum = hh.longitudinal[a].samples() + hh.transverse[a].samples() +
                     CVec::Constant(u[a].size(), hh.mean(a));
    recon = std::max(recon, (sum - u[a].samples()).cwiseAbs().maxCoeff());
    curl = std::max(curl, curl_par[a].samples().cwiseAbs().maxCoeff());
    inner += hh.longitudinal[a].samples().dot(hh.transverse[a].samples()).real();
    idem = std::max({idem, again.longitudinal[a].samples().cwiseAbs().maxCoeff(),
                     (again.transverse[a].samples() - hh.transverse[a].samples()).cwiseAbs().maxCoeff()});
  }
  inner = std::abs(inner) / static_cast<double>(u[0].size());
  const double div = pde::spectral_divergence(hh.transverse);
  r.put("reconstruction", recon);
  r.put("div_transverse", div);
  r.put("curl_longitudinal", curl);
  r.put("orthogonality", inner);
  r.put("projection_defect", idem);
  r.pass = recon <= 1e-12 && div <= 1e-10 && curl <= 1e-10 && inner <= 1e-10 && idem <= 1e-12;
}

// gl-descent ----------------------------------------------------------------

void gl_descent(const Flags& f, ScenarioResult& r) {
  const int dim = f.positive("dim");
  require(dim <= 3, ErrorKind::parse, "flag --dim must be 1, 2 or 3");
  const int m = f.positive("N");
  require(m % 2 == 0, ErrorKind::parse, "flag --N must be even");
  const double kappa = f.real("kappa");
  const double step = f.real("step");
  const int max_iters = f.positive("max_iters");
  const double tol = f.real("tol");
  const int log_every = f.positive("log_every");
  auto rng = f.rng();
  std::uniform_real_distribution<double> noise(-0.01, 0.01);
  auto s = variational::gl_state(dim, m, kappa);
  for (Eigen::Index i = 0; i < s.psi.size(); ++i) s.psi[i] = 0.1 + noise(rng);
  const auto res = variational::gl_minimize(s, step, max_iters, tol, true);
  double lo = 1e300, hi = 0.0;
  for (Eigen::Index i = 0; i < res.state.psi.size(); ++i) {
    lo = std::min(lo, std::abs(res.state.psi[i]));
    hi = std::max(hi, std::abs(res.state.psi[i]));
  }
  std::vector<double> iters, energy, grad;
  for (std::size_t i = 0; i < res.energy_path.size(); ++i) {
    if (i % static_cast<std::size_t>(log_every) != 0 && i + 1 != res.energy_path.size()) continue;
    iters.push_back(static_cast<double>(i));
    energy.push_back(res.energy_path[i]);
    grad.push_back(res.gradient_norms[i]);
  }
  bool monotone = true;
  for (std::size_t i = 1; i < res.energy_path.size(); ++i) {
    monotone = monotone && res.energy_path[i] <= res.energy_path[i - 1];
  }
  const double modulus_error = std::max(std::abs(lo - 1.0), std::abs(hi - 1.0));
  r.put("iterations", static_cast<double>(res.iterations));
  r.put("converged", res.converged ? 1.0 : 0.0);
  r.put("final_energy", res.energy_path.back());
  r.put("final_gradient", res.gradient_norms.back());
  r.put("modulus_error", modulus_error);
  r.put("monotone", monotone ? 1.0 : 0.0);
  r.put("iter", iters);
  r.put("energy", energy);
  r.put("grad_norm", grad);
  r.pass = res.converged && monotone && modulus_error <= 1e-3;
}

// bifurcation ---------------------------------------------------------------

void bifurcation(const Flags& f, ScenarioResult& r) {
  const std::string problem = f.choice("problem", {"pitchfork", "dirichlet"});
  const int points = f.positive("points");
  variational::BifurcationScan scan;
  std::vector<double> reference;
  if (problem == "pitchfork") {
    const auto map = [](double mu, const Vec& x) -> Vec {
      return (mu * x.array() - x.array().cube()).matrix();
    };
    scan = variational::bifurcation_scan(map, f.real("mu_lo"), f.real("mu_hi"), points, 1);
    reference.push_back(0.0);
  } else {
    const int n = f.positive("n");
    const double h = 1.0 / (n + 1);
    const auto map = [n, h](double mu, const Vec& u) -> Vec {
      Vec out(n);
      for (int i = 0; i < n; ++i) {
        const double left = i > 0 ? u(i - 1) : 0.0;
        const double right = i + 1 < n ? u(i + 1) : 0.0;
        out(i) = (left - 2.0 * u(i) + right) / (h * h) + mu * u(i) - u(i) * u(i) * u(i);
      }
      return out;
    };
    scan = variational::bifurcation_scan(map, f.real("mu_lo"), f.real("mu_hi"), points, n);
    for (int j = 1; j * j * kPi * kPi <= f.real("mu_hi"); ++j) {
      if (j * j * kPi * kPi >= f.real("mu_lo")) reference.push_back(j * j * kPi * kPi);
    }
  }
  std::vector<double> mus, trans, sig;
  for (const auto& c : scan.candidates) {
    mus.push_back(c.mu);
    trans.push_back(c.transversality);
    sig.push_back(c.smallest_singular);
  }
  bool ok = mus.size() == reference.size();
  for (std::size_t i = 0; ok && i < mus.size(); ++i) {
    const double tol = reference[i] == 0.0 ? 1e-6 : 0.05 * reference[i];
    ok = std::abs(mus[i] - reference[i]) <= tol;
    if (problem == "pitchfork") ok = ok && std::abs(trans[i] - 1.0) <= 1e-6;
  }
  r.put("candidates", static_cast<double>(mus.size()));
  r.put("mu", mus);
  r.put("transversality", trans);
  r.put("smallest_singular", sig);
  r.put("reference", reference);
  r.pass = ok;
}

using Runner = void (*)(const Flags&, ScenarioResult&);

struct Entry {
  ScenarioSpec spec;
  Runner run;
};

const std::vector<Entry>& entries() {
  static const std::vector<Entry> table = {
      {{"heat", "heat flow on the torus against the single-mode oracle",
        {{"dim", "1", "torus dimension"}, {"N", "256", "points per axis"},
         {"D", "1", "diffusion constant"}, {"t", "1", "time"},
         {"init", "sin", "initial datum: sin or cos2"}}},
       heat},
      {{"schroedinger", "free Schroedinger unitarity and best-approximation stability",
        {{"N", "256", "grid points"}, {"t", "7", "time"}, {"states", "20", "random states"},
         {"eps", "0.05", "approximation tolerance"}, {"radius", "1000", "stored modes of 1/n"}},
        true},
       schroedinger},
      {{"wave", "Dirichlet wave equation by sine modes",
        {{"L", "1", "interval length"}, {"mode", "1", "initial sine mode"}, {"t", "0.3", "time"},
         {"samples", "101", "sample points"}}},
       wave},
      {{"maxwell", "vacuum Maxwell evolution of a random source-free field",
        {{"N", "16", "points per axis"}, {"kmax", "2", "largest wavevector component"},
         {"t", "1", "time"}, {"step", "1e-3", "time step"}},
        true},
       maxwell},
      {{"lorenz", "linear stability of the Lorenz origin",
        {{"sigma", "10", "sigma"}, {"b", "1.6", "b"}, {"r", "0.5", "r"}}},
       lorenz},
      {{"liouville", "phase-space volume of Hamiltonian flows",
        {{"system", "oscillator", "oscillator or pendulum"}, {"t", "1", "time"},
         {"step", "1e-3", "time step"}, {"q0", "0.5", "initial position"},
         {"p0", "0.3", "initial momentum"}}},
       liouville},
      {{"bands", "tight-binding band structure and evolution equivalence",
        {{"model", "honeycomb", "honeycomb or square"}, {"q1", "1", "hopping q1"},
         {"q2", "1", "hopping q2"}, {"M", "16", "patch side"}, {"t", "1", "time"}}},
       bands},
      {{"birman-schwinger", "weakly coupled bound state of a square well",
        {{"lambda", "0.2", "coupling"}, {"depth", "1", "well depth"}, {"width", "1", "well width"},
         {"R", "40", "window half-width"}, {"h", "0.005", "grid spacing"}}},
       birman_schwinger},
      {{"minmax", "Temple, Rayleigh-Ritz and min-max sweeps",
        {{"instances", "50", "random instances"}, {"max_dim", "20", "largest dimension"}},
        true},
       minmax},
      {{"greens-interval", "Poisson problem on [0, 1] via the Green's function",
        {{"f", "one", "source: one or sin"}, {"n_quad", "64", "Simpson panels"},
         {"samples", "101", "sample points"}}},
       greens_interval},
      {{"greens-rectangle", "Dirichlet problem on the unit square by two paths",
        {{"n", "32", "intervals per side"}, {"case", "manufactured", "manufactured or harmonic"}}},
       greens_rectangle},
      {{"helmholtz", "Helmholtz projection of a random periodic field",
        {{"N", "16", "points per axis"}},
        true},
       helmholtz},
      {{"gl-descent", "Ginzburg-Landau gradient descent with A frozen at zero",
        {{"dim", "1", "torus dimension"}, {"N", "64", "points per axis"}, {"kappa", "2", "kappa"},
         {"step", "1e-3", "descent step"}, {"max_iters", "100000", "iteration budget"},
         {"tol", "1e-8", "gradient tolerance"}, {"log_every", "100", "log stride"}},
        true},
       gl_descent},
      {{"bifurcation", "smallest singular value scan along the trivial branch",
        {{"problem", "pitchfork", "pitchfork or dirichlet"}, {"mu_lo", "-1", "scan start"},
         {"mu_hi", "1", "scan end"}, {"points", "41", "scan points"},
         {"n", "64", "interior points (dirichlet)"}}},
       bifurcation},
  };
  return table;
}

}  // namespace

const std::vector<ScenarioSpec>& registered_scenarios() {
  static const std::vector<ScenarioSpec> specs = [] {
    std::vector<ScenarioSpec> out;
    for (const auto& e : entries()) out.push_back(e.spec);
    return out;
  }();
  return specs;
}

const ScenarioSpec* find_scenario(const std::string& name) {
  for (const auto& s : registered_scenarios()) {
    if (s.name == name) return &s;
  }
  return nullptr;
}

ScenarioResult run_scenario(const std::string& name,
                            const std::map<std::string, std::string>& flags) {
  const Entry* entry = nullptr;
  for (const auto& e : entries()) {
    if (e.spec.name == name) entry = &e;
  }
  if (entry == nullptr) {
    std::string list;
    for (const auto& e : entries()) list += (list.empty() ? "" : ", ") + e.spec.name;
    fail(ErrorKind::usage, "unknown scenario '" + name + "'; registered: " + list);
  }
  const Flags parsed(entry->spec, flags);
  ScenarioResult r;
  r.name = name;
  r.inputs = parsed.all();
  const auto start = std::chrono::steady_clock::now();
  entry->run(parsed, r);
  const auto stop = std::chrono::steady_clock::now();
  r.runtime_ms = std::chrono::duration_cast<std::chrono::milliseconds>(stop - start).count();
  for (const auto& [k, v] : r.outputs) {
    if (const auto* d = std::get_if<double>(&v)) {
      require(std::isfinite(*d), ErrorKind::internal, "output " + k + " is not finite");
    } else if (const auto* a = std::get_if<std::vector<double>>(&v)) {
      for (double x : *a) require(std::isfinite(x), ErrorKind::internal, "output " + k + " is not finite");
    }
  }
  return r;
}

}  // namespace mpw::cli
