// Acceptance gate: one test case per criterion, each printing a PASS/FAIL line.
#include "mpw/fourier.hpp"
#include "mpw/greens.hpp"
#include "mpw/hamiltonian.hpp"
#include "mpw/lattice.hpp"
#include "mpw/linear_flow.hpp"
#include "mpw/quantum_spectra.hpp"
#include "mpw/spectral_pde.hpp"
#include "mpw/stability.hpp"
#include "mpw/variational.hpp"
#include "support.hpp"

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Eigenvalues>
#include <Eigen/QR>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>

using namespace mpw;

namespace {

void verdict(int n, bool ok, const std::string& detail) {
  std::printf("%s criterion %d: %s\n", ok ? "PASS" : "FAIL", n, detail.c_str());
  std::fflush(stdout);
  CHECK_MESSAGE(ok, "criterion ", n, ": ", detail);
}

std::string fmt(const char* format, double a, double b = 0.0, double c = 0.0, double d = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, format, a, b, c, d);
  return buf;
}

TorusGrid sample1(int m, const std::function<Complex(double)>& f) {
  return TorusGrid::sample(1, m, [&](const Vec& x) { return f(x(0)); });
}

double max_gap(const TorusGrid& a, const TorusGrid& b) {
  return (a.samples() - b.samples()).cwiseAbs().maxCoeff();
}

Vec spectrum(const CMat& h) {
  return Eigen::SelfAdjointEigenSolver<CMat>(h, Eigen::EigenvaluesOnly).eigenvalues();
}

Complex sawtooth(int k) { return k == 0 ? 0.0 : std::pow(-1.0, k) * kI / static_cast<double>(k); }

}  // namespace

TEST_CASE("criterion 1: Fourier coefficients of f(x) = x") {
  // 256 Gauss-Legendre panels of 16 nodes: 4096 samples on [-pi, pi].
  const auto c = fourier::fourier_coeffs_quadrature([](double x) { return x; }, 64, 256, 16);
  double err = 0.0;
  for (int k = -64; k <= 64; ++k) {
    if (k != 0) err = std::max(err, std::abs(c[k] - sawtooth(k)));
  }
  verdict(1, err <= 1e-8, fmt("max |c_k - (-1)^k i/k| over 1<=|k|<=64 = %.3e (4096 nodes)", err));
}

TEST_CASE("criterion 2: Parseval partial sum for f(x) = x") {
  const int n = 10000;
  const auto c = fourier::fourier_coeffs_quadrature([](double x) { return x; }, n, 8192, 16);
  double sum = 0.0;
  double coeff_err = 0.0;
  for (int k = n; k >= 1; --k) {
    sum += std::norm(c[k]) + std::norm(c[-k]);
    coeff_err = std::max(coeff_err, std::abs(c[k] - sawtooth(k)));
  }
  // Oracle: 2 sum_{k<=N} 1/k^2, accumulated from the small end.
  double exact = 0.0;
  for (int k = n; k >= 1; --k) exact += 2.0 / (static_cast<double>(k) * k);
  const double gap = kPi * kPi / 3.0 - sum;
  const bool ok = gap >= 0.0 && gap <= 2.0 / n && std::abs(sum - exact) <= 1e-10;
  verdict(2, ok, fmt("pi^2/3 - S_N = %.6e <= 2/N = %.1e; |S_N - oracle| = %.2e; max coeff error %.2e",
                     gap, 2.0 / n, std::abs(sum - exact), coeff_err));
}

TEST_CASE("criterion 3: heat flow on the torus") {
  const auto u0 = sample1(256, [](double x) { return Complex(std::sin(x)); });
  const auto u1 = pde::heat_torus(u0, 1.0, 1.0);
  const auto exact = sample1(256, [](double x) { return Complex(std::exp(-1.0) * std::sin(x)); });
  const double err = max_gap(u1, exact);
  std::mt19937_64 rng(3);
  TorusGrid rnd(1, 256);
  for (Eigen::Index i = 0; i < rnd.size(); ++i) rnd[i] = test::random_vec(1, rng)(0);
  const double semigroup = std::max(
      max_gap(pde::heat_torus(pde::heat_torus(u0, 1.0, 0.4), 1.0, 0.6), u1),
      max_gap(pde::heat_torus(pde::heat_torus(rnd, 1.0, 0.25), 1.0, 0.5), pde::heat_torus(rnd, 1.0, 0.75)));
  verdict(3, err <= 1e-12 && semigroup <= 1e-12,
          fmt("max error %.2e, semigroup gap %.2e", err, semigroup));
}

TEST_CASE("criterion 4: Tychonoff residual") {
  std::vector<std::pair<double, double>> pts;
  for (int i = 0; i <= 50; ++i) {
    for (int j = 0; j <= 40; ++j) pts.emplace_back(0.01 * i, -1.0 + 0.05 * j);
  }
  auto u = [](double t, double x) { return std::exp(x * x / (4 * (1 - t))) / std::sqrt(1 - t); };
  const double r = pde::heat_residual(u, 1.0, pts, 1e-4);
  verdict(4, r <= 1e-4, fmt("max |u_t - u_xx| = %.2e on t in [0, 0.5], |x| <= 1", r));
}

TEST_CASE("criterion 5: Schroedinger unitarity and stable approximation") {
  std::mt19937_64 rng(5);
  std::normal_distribution<double> g(0.0, 1.0);
  double drift = 0.0;
  for (int s = 0; s < 20; ++s) {
    TorusGrid psi(1, 256);
    for (Eigen::Index i = 0; i < psi.size(); ++i) psi[i] = Complex(g(rng), g(rng));
    psi.samples() /= psi.normalized_l2_norm();
    for (double t : {0.5, 7.0}) drift = std::max(drift, pde::schroedinger_torus(psi, t).norm_drift);
  }
  const int radius = 1000;
  fourier::FourierSeries h(1, radius);
  for (int k = 1; k <= radius; ++k) h[k] = 1.0 / k;
  const auto best = pde::best_approximation(h, 0.05, 1.0 / radius);
  const double e0 = pde::truncation_error(h, best.order, 0.0);
  const double e7 = pde::truncation_error(h, best.order, 7.0);
  verdict(5, drift <= 1e-12 && std::abs(e7 - e0) <= 1e-12,
          fmt("norm drift %.2e over 20 states; N(eps) = %.0f, |err(7) - err(0)| = %.2e", drift,
              best.order, std::abs(e7 - e0)));
}

TEST_CASE("criterion 6: Dirichlet wave equation") {
  double err = 0.0, drift = 0.0;
  for (double len : {1.0, 2.5}) {
    pde::WaveData w;
    w.length = len;
    w.phi[1] = 1.0;
    std::vector<double> xs;
    for (int i = 0; i <= 100; ++i) xs.push_back(len * i / 100.0);
    const double e0 = pde::wave_energy(w, 0.0);
    for (double t : {0.1, 0.3, 1.0, 3.7}) {
      const auto r = pde::wave_dirichlet(w, t, xs);
      for (std::size_t i = 0; i < xs.size(); ++i) {
        err = std::max(err, std::abs(r.values[i] - std::cos(kPi * t / len) * std::sin(kPi * xs[i] / len)));
      }
      drift = std::max(drift, std::abs(pde::wave_energy(w, t) - e0));
    }
  }
  verdict(6, err <= 1e-10 && drift <= 1e-8, fmt("max error %.2e, energy drift %.2e", err, drift));
}

TEST_CASE("criterion 7: vacuum Maxwell") {
  std::mt19937_64 rng(7);
  pde::EMField em;
  em.e = pde::random_solenoidal_field(16, 2, rng);
  em.h = pde::random_solenoidal_field(16, 2, rng);
  const double scale = 1.0 / std::sqrt(pde::field_energy(em));
  for (auto* v : {&em.e, &em.h}) {
    for (auto& c : *v) c.samples() *= scale;
  }
  const auto r = pde::maxwell_free(em, 1.0, 1e-3);
  verdict(7, r.energy_drift <= 1e-8 && r.realness_drift <= 1e-10,
          fmt("energy drift %.2e, max imaginary part %.2e (16^3, t = 1, step 1e-3)", r.energy_drift,
              r.realness_drift));
}

TEST_CASE("criterion 8: Lorenz origin") {
  using namespace mpw::stability;
  LorenzParams p;
  p.sigma = 10.0;
  p.b = 1.6;
  auto labelled = [](const LorenzParams& lp) {
    FixedPointReport rep;
    rep.eigenvalues = lorenz_characteristic_roots(lp);
    classify(rep, kDefaultTolerance);
    return rep;
  };
  p.r = 0.5;
  const auto cold = labelled(p);
  double to_b = 1e300;
  for (Complex z : cold.eigenvalues) to_b = std::min(to_b, std::abs(z + p.b));
  p.r = 2.0;
  const auto hot = labelled(p);
  double hot_b = 1e300;
  for (Complex z : hot.eigenvalues) hot_b = std::min(hot_b, std::abs(z + p.b));
  to_b = std::max(to_b, hot_b);
  const bool ok = to_b <= 1e-10 && cold.stability == Stability::stable &&
                  hot.stability == Stability::unstable && hot.geometry == Geometry::hyperbolic;
  verdict(8, ok, std::string("r=0.5: ") + to_string(cold.stability) + ", r=2: " + to_string(hot.stability) +
                     "/" + to_string(hot.geometry) + fmt(", distance to -b %.1e", to_b));
}

TEST_CASE("criterion 9: Liouville") {
  using namespace mpw::hamiltonian;
  const HamiltonianSystem osc{1, [](const Vec& x) { return 0.5 * (x(0) * x(0) + x(1) * x(1)); }, std::nullopt};
  const HamiltonianSystem pend{1, [](const Vec& x) { return 0.5 * x(1) * x(1) - std::cos(x(0)); }, std::nullopt};
  Vec x0(2);
  x0 << 0.5, 0.3;
  const double d1 = std::abs(liouville_determinant(osc, x0, 1.0, 1e-3) - 1.0);
  const double d2 = std::abs(liouville_determinant(pend, x0, 1.0, 1e-3) - 1.0);
  double trace = 0.0;
  Vec q(2);
  for (const auto& [h, pts] : std::vector<std::pair<ScalarField, std::vector<std::pair<double, double>>>>{
           {osc.h, {{0.0, 0.0}}}, {pend.h, {{0.0, 0.0}, {kPi, 0.0}}}}) {
    for (auto [a, b] : pts) {
      q << a, b;
      trace = std::max(trace, std::abs(stability::hamiltonian_linearization(h, q).jacobian.trace()));
    }
  }
  verdict(9, d1 <= 1e-6 && d2 <= 1e-6 && trace <= 1e-6,
          fmt("|det - 1|: oscillator %.2e, pendulum %.2e; max |trace| %.2e", d1, d2, trace));
}

TEST_CASE("criterion 10: tight-binding models") {
  using namespace mpw::lattice;
  TightBindingModel sq;
  sq.q1 = 0.7;
  sq.q2 = -0.4;
  sq.side = 16;
  std::vector<double> expected;
  for (int a = 0; a < 16; ++a) {
    for (int b = 0; b < 16; ++b) expected.push_back(band_function_square(0.7, -0.4, 2 * kPi * a / 16, 2 * kPi * b / 16));
  }
  std::sort(expected.begin(), expected.end());
  const Vec spec = spectrum(patch_hamiltonian(sq));
  double spec_gap = 0.0;
  for (Eigen::Index i = 0; i < spec.size(); ++i) spec_gap = std::max(spec_gap, std::abs(spec(i) - expected[i]));

  std::mt19937_64 rng(10);
  double evo_gap = 0.0;
  for (auto kind : {ModelKind::square_single_band, ModelKind::honeycomb_two_band}) {
    TightBindingModel m;
    m.kind = kind;
    m.side = 16;
    evo_gap = std::max(evo_gap, tb_evolve(m, test::random_unit(static_cast<int>(m.state_size()), rng), 1.0).gap);
  }
  const double varpi = std::abs(honeycomb_bloch(1.0, 1.0, 2 * kPi / 3, -2 * kPi / 3).varpi);
  verdict(10, spec_gap <= 1e-8 && evo_gap <= 1e-8 && varpi <= 1e-12,
          fmt("spectrum gap %.2e, evolution gap %.2e, |varpi| at Dirac point %.2e", spec_gap, evo_gap, varpi));
}

TEST_CASE("criterion 11: Birman-Schwinger weak coupling") {
  using namespace mpw::quantum;
  const double lambda = 0.2;
  auto well = [](double x) { return std::abs(x) <= 0.5 + 1e-12 ? -1.0 : 0.0; };
  const auto v = sample_potential(well);
  const auto bs = birman_schwinger(v, lambda);
  const double target = -0.01;
  const double grid_rel = std::abs(bs.grid_diag_energy - target) / std::abs(target);
  const double bis_rel = std::abs(bs.energy - bs.grid_diag_energy) / std::abs(bs.grid_diag_energy);
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> extra(0.0, 0.5);
  int violations = 0;
  for (int trial = 0; trial < 10; ++trial) {
    auto w = v;
    const double a = extra(rng), c = extra(rng) - 0.25, width = extra(rng);
    for (Eigen::Index i = 0; i < w.size(); ++i) {
      const double x = w.point(i);
      if (std::abs(x) <= 0.5 + 1e-12) w.values(i) -= a;
      if (std::abs(x - c) <= width) w.values(i) -= 0.3;
    }
    if (birman_schwinger(w, lambda).energy > bs.energy) ++violations;
  }
  verdict(11, grid_rel <= 0.10 && bis_rel <= 0.02 && violations == 0,
          fmt("grid energy %.6f (%.1f%% from -0.01), bisection vs grid %.2f%%, monotonicity violations %.0f",
              bs.grid_diag_energy, 100 * grid_rel, 100 * bis_rel, violations));
}

TEST_CASE("criterion 12: spectral bound sandwich") {
  using namespace mpw::quantum;
  std::mt19937_64 rng(12);
  std::uniform_int_distribution<int> dim(3, 20);
  int violations = 0;
  double worst = -1e300;
  for (int inst = 0; inst < 50; ++inst) {
    const int n = dim(rng);
    const CMat h = test::random_hermitian(n, rng);
    Eigen::SelfAdjointEigenSolver<CMat> es(h);
    const Vec e = es.eigenvalues();
    if (e(1) - e(0) < 1e-3) {
      --inst;
      continue;  // keep gapped instances only
    }
    const CVec psi = (es.eigenvectors().col(0) + 0.05 * test::random_unit(n, rng)).normalized();
    const double rq = rayleigh_quotient(h, psi);
    const double mu = rq + 0.9 * (e(1) - rq);
    const double temple = temple_bound(h, psi, mu);
    worst = std::max({worst, temple - e(0), e(0) - rq});
    if (temple > e(0) + 1e-10 || e(0) > rq + 1e-10) ++violations;

    const int k = 1 + inst % (n - 1);
    CMat z(n, k);
    for (int j = 0; j < k; ++j) z.col(j) = test::random_unit(n, rng);
    Eigen::HouseholderQR<CMat> qr(z);
    const CMat phis = qr.householderQ() * CMat::Identity(n, k);
    const auto lam = galerkin_minmax(h, phis);
    for (int j = 0; j < k; ++j) {
      worst = std::max(worst, e(j) - lam[j]);
      if (e(j) > lam[j] + 1e-10) ++violations;
    }
  }
  verdict(12, violations == 0, fmt("%.0f violations over 50 instances; worst signed excess %.2e", violations, worst));
}

TEST_CASE("criterion 13: uncertainty and Duhamel sweeps") {
  using namespace mpw::quantum;
  std::mt19937_64 rng(13);
  std::uniform_int_distribution<int> dim(2, 12);
  int unc = 0, duh = 0;
  for (int i = 0; i < 200; ++i) {
    const int n = dim(rng);
    const auto r = uncertainty_check(test::random_hermitian(n, rng), test::random_hermitian(n, rng),
                                     test::random_unit(n, rng));
    if (r.lhs > r.rhs + 1e-10) ++unc;
  }
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 200; ++i) {
    const int n = dim(rng);
    const auto r = duhamel_gap(test::random_hermitian(n, rng), test::random_hermitian(n, rng),
                               0.2 * u(rng), 5.0 * u(rng));
    if (r.lhs > r.rhs + 1e-10) ++duh;
  }
  CMat s1(2, 2), s2(2, 2);
  s1 << 0, 1, 1, 0;
  s2 << 0, Complex(0, -1), Complex(0, 1), 0;
  CVec up(2);
  up << 1, 0;
  const auto eq = uncertainty_check(s1, s2, up);
  const double eq_gap = std::abs(eq.lhs - eq.rhs);
  verdict(13, unc == 0 && duh == 0 && eq_gap <= 1e-12,
          fmt("uncertainty violations %.0f/200, Duhamel violations %.0f/200, sigma1/sigma2 equality gap %.1e",
              unc, duh, eq_gap));
}

TEST_CASE("criterion 14: Green's functions") {
  using namespace mpw::greens;
  const auto u = solve_poisson_interval([](double) { return 1.0; }, 64);
  double err = 0.0;
  for (int i = 0; i <= 100; ++i) {
    const double x = i / 100.0;
    err = std::max(err, std::abs(u(x) - 0.5 * x * (1 - x)));
  }
  std::vector<double> errs;
  for (int n : {16, 32, 64}) {
    const auto s = solve_rectangle_dirichlet(make_rectangle_problem(
        n, n, [](double x, double y) { return 2 * kPi * kPi * std::sin(kPi * x) * std::sin(kPi * y); },
        [](double, double) { return 0.0; }));
    double e = 0.0;
    for (int i = 0; i <= n; ++i) {
      for (int j = 0; j <= n; ++j) e = std::max(e, std::abs(s.u_fd(i, j) - std::sin(kPi * i / n) * std::sin(kPi * j / n)));
    }
    errs.push_back(e);
  }
  const double order = std::min(std::log2(errs[0] / errs[1]), std::log2(errs[1] / errs[2]));
  Vec y(3);
  y << 0.1, -0.2, 0.15;
  auto bump = [](const Vec& x) {
    const double r2 = x.squaredNorm();
    return r2 < 1.0 ? std::exp(-1.0 / (1.0 - r2)) : 0.0;
  };
  const double dist = std::abs(free_space_pairing(bump, y, 2.0) - bump(y));
  verdict(14, err <= 1e-8 && order >= 1.9 && dist <= 1e-3,
          fmt("interval error %.2e, observed order %.3f, d=3 pairing gap %.2e", err, order, dist));
}

TEST_CASE("criterion 15: variational toolkit") {
  using namespace mpw::variational;
  std::mt19937_64 rng(15);
  // GL gradient against central differences on 64-point grids.
  double gl_gap = 0.0;
  for (int dim : {1, 2}) {
    const Functional f = gl_functional(dim, 64, 1.3);
    const Eigen::Index n = gl_pack(gl_state(dim, 64, 1.3)).size();
    for (int trial = 0; trial < 3; ++trial) {
      const Vec x = test::random_vec(static_cast<int>(n), rng, 0.5);
      const Vec phi = test::random_vec(static_cast<int>(n), rng);
      const double fd = gateaux_derivative(f, x, phi, 1e-5);
      const double exact = (*f.gradient)(x).dot(phi);
      gl_gap = std::max(gl_gap, std::abs(fd - exact) / std::max(1.0, std::abs(exact)));
    }
  }
  // Helmholtz defects on a random field with both parts present.
  const int m = 16;
  VectorGrid field = pde::random_solenoidal_field(m, 3, rng);
  const auto pot = TorusGrid::sample(3, m, [](const Vec& x) { return Complex(std::sin(x(0) + 2 * x(1)) * std::cos(x(2))); });
  for (int a = 0; a < 3; ++a) {
    CVec c = fft::modes(pot);
    for (Eigen::Index i = 0; i < c.size(); ++i) {
      const auto k = fft::wavevector(i, 3, m);
      c(i) *= kI * static_cast<double>(k[a] == -m / 2 ? 0 : k[a]);
    }
    field[a].samples() += fft::synthesize(c, 3, m).samples();
  }
  const auto h = helmholtz_decompose(field);
  const double div = pde::spectral_divergence(h.transverse);
  double curl = 0.0;
  for (const auto& c : pde::spectral_curl(h.longitudinal)) curl = std::max(curl, c.samples().cwiseAbs().maxCoeff());
  // Pitchfork.
  const auto scan = bifurcation_scan([](double mu, const Vec& x) { return Vec(Vec::Constant(1, mu * x(0) - std::pow(x(0), 3))); },
                                     -1.0, 1.0, 41, 1);
  const bool pitch = scan.candidates.size() == 1 && std::abs(scan.candidates[0].mu) <= 1e-6 &&
                     std::abs(scan.candidates[0].transversality - 1.0) <= 1e-6;
  // Gradient consistency for every functional with an analytic gradient.
  const Mat a = Mat::Random(5, 5);
  const Mat q = a.transpose() * a + Mat::Identity(5, 5);
  const Vec b = test::random_vec(5, rng);
  const std::vector<std::pair<Functional, int>> functionals = {
      {{[](const Vec& x) { return x.squaredNorm(); }, [](const Vec& x) -> Vec { return 2.0 * x; }, "norm"}, 5},
      {{[b](const Vec& x) { return b.dot(x); }, [b](const Vec&) -> Vec { return b; }, "linear"}, 5},
      {{[q, b](const Vec& x) { return 0.5 * x.dot(q * x) - b.dot(x); }, [q, b](const Vec& x) -> Vec { return q * x - b; }, "quadratic"}, 5},
      {gl_functional(1, 64, 2.0), 64 * 3},
      {gl_functional(2, 16, 0.7), 256 * 4},
  };
  int consistency_failures = 0;
  for (const auto& [f, n] : functionals) {
    for (int trial = 0; trial < 3; ++trial) {
      if (!gradient_consistency(f, test::random_vec(n, rng, 0.5), test::random_vec(n, rng), 1e-4).pass) {
        ++consistency_failures;
      }
    }
  }
  const bool ok = gl_gap <= 1e-5 && div <= 1e-10 && curl <= 1e-10 && pitch && consistency_failures == 0;
  verdict(15, ok,
          fmt("GL gradient gap %.2e, div transverse %.2e, curl longitudinal %.2e, pitchfork transversality %.8f",
              gl_gap, div, curl, scan.candidates.empty() ? 0.0 : scan.candidates[0].transversality) +
              (consistency_failures ? ", gradient consistency failures" : ", gradient consistency ok"));
}

TEST_CASE("criterion 16: Picard contraction and flow divergence") {
  using namespace mpw::flow;
  const VectorField f{1, [](const Vec& x) { return x; }, 1.0, 1.0};
  const int samples = 2001;
  const auto res = picard_solve(f, Vec::Ones(1), 8, samples);
  const double slack = 10.0 * res.existence_time / (static_cast<double>(samples) * samples);
  double worst_ratio = 0.0;
  int contraction_failures = 0;
  for (std::size_t k = 1; k < res.iterate_gaps.size(); ++k) {
    if (res.iterate_gaps[k] > 0.5 * res.iterate_gaps[k - 1] + slack) ++contraction_failures;
    if (res.iterate_gaps[k - 1] > 0.0) worst_ratio = std::max(worst_ratio, res.iterate_gaps[k] / res.iterate_gaps[k - 1]);
  }
  const VectorField f0{1, [](const Vec& x) { return Vec(-x); }, 1.0, 1.0};
  const VectorField f1{1, [](const Vec& x) { return Vec::Ones(x.size()); }};
  int flow_failures = 0;
  for (double eps : {0.01, 0.1, 0.5}) {
    for (double t : {0.5, 1.0, 2.0}) {
      for (double x : {-0.5, 0.0, 0.7}) {
        if (!flow_divergence_gap(f0, f1, eps, Vec::Constant(1, x), t).report.pass) ++flow_failures;
      }
    }
  }
  verdict(16, contraction_failures == 0 && flow_failures == 0,
          fmt("largest iterate-gap ratio %.4f, contraction failures %.0f, flow-bound violations %.0f/27",
              worst_ratio, contraction_failures, flow_failures));
}
