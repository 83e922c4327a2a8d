#include "mpw/hamiltonian.hpp"
#include "mpw/stability.hpp"
#include "support.hpp"

#include <doctest.h>

#include <cmath>

using namespace mpw;
using namespace mpw::hamiltonian;

namespace {

HamiltonianSystem oscillator() {
  return {1, [](const Vec& x) { return 0.5 * (x(0) * x(0) + x(1) * x(1)); }, std::nullopt};
}

HamiltonianSystem pendulum() {
  return {1, [](const Vec& x) { return 0.5 * x(1) * x(1) - std::cos(x(0)); }, std::nullopt};
}

HamiltonianSystem cyclotron(double b) {
  HamiltonianSystem sys;
  sys.n = 3;
  sys.h = [](const Vec& x) { return 0.5 * x.tail(3).squaredNorm(); };
  const Mat bm = stability::magnetic_field_matrix(Eigen::Vector3d(0, 0, b)).matrix;
  sys.magnetic = [bm](const Vec&) { return bm; };
  return sys;
}

Vec pack(std::initializer_list<double> v) {
  Vec out(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double x : v) out(i++) = x;
  return out;
}

}  // namespace

TEST_SUITE("hamiltonian") {

TEST_CASE("Hamiltonian vector fields") {
  HamiltonianSystem free{1, [](const Vec& x) { return 0.5 * x(1) * x(1); }, std::nullopt};
  Vec v = hamiltonian_vector_field(free, pack({0.3, 1.7}));
  CHECK(std::abs(v(0) - 1.7) < 1e-8);
  CHECK(std::abs(v(1)) < 1e-8);
  v = hamiltonian_vector_field(oscillator(), pack({0.3, 1.7}));
  CHECK(std::abs(v(0) - 1.7) < 1e-8);
  CHECK(std::abs(v(1) + 0.3) < 1e-8);

  const auto sys = cyclotron(1.5);
  const Vec x = pack({0.1, 0.2, 0.3, 0.4, -0.5, 0.6});
  v = hamiltonian_vector_field(sys, x);
  const Eigen::Vector3d qdot = v.head(3);
  const Eigen::Vector3d pdot = v.tail(3);
  CHECK((qdot - x.tail(3)).norm() < 1e-8);
  CHECK((pdot - qdot.cross(Eigen::Vector3d(0, 0, 1.5))).norm() < 1e-8);
}

TEST_CASE("Poisson bracket") {
  const auto h = pendulum().h;
  const Vec x = pack({0.4, -0.9});
  ScalarField q = [](const Vec& y) { return y(0); };
  CHECK(std::abs(poisson_bracket(h, q, x, 1) - x(1)) < 1e-6);
  CHECK(std::abs(poisson_bracket(h, h, x, 1)) < 1e-10);

  std::mt19937_64 rng(2);
  auto quadratic = [&]() {
    Mat s = Mat::Random(4, 4);
    s = (s + s.transpose()).eval();
    return ScalarField([s](const Vec& y) { return 0.5 * y.dot(s * y); });
  };
  const auto f = quadratic(), g = quadratic(), k = quadratic();
  for (int trial = 0; trial < 10; ++trial) {
    const Vec y = test::random_vec(4, rng);
    CHECK(std::abs(poisson_bracket(f, g, y, 2) + poisson_bracket(g, f, y, 2)) < 1e-10);
  }
  // Jacobi identity with nested brackets.
  const double step = 1e-3;
  auto br = [&](const ScalarField& a, const ScalarField& b) {
    return ScalarField([a, b, step](const Vec& y) { return poisson_bracket(a, b, y, 2, step); });
  };
  const Vec y = test::random_vec(4, rng);
  const double jacobi = poisson_bracket(f, br(g, k), y, 2, step) +
                        poisson_bracket(g, br(k, f), y, 2, step) +
                        poisson_bracket(k, br(f, g), y, 2, step);
  CHECK(std::abs(jacobi) < 1e-5);
}

TEST_CASE("evolution conserves energy") {
  HamiltonianSystem free{1, [](const Vec& x) { return 0.5 * x(1) * x(1); }, std::nullopt};
  auto ev = evolve_hamiltonian(free, pack({1.0, 0.5}), 2.0, 1e-2);
  CHECK(std::abs(ev.trajectory.back()(0) - 2.0) < 1e-9);

  const Vec x0 = pack({1.0, 0.2});
  ev = evolve_hamiltonian(oscillator(), x0, 2 * kPi, 1e-3);
  CHECK((ev.trajectory.back() - x0).norm() < 1e-8);
  CHECK(ev.energy_drift < 1e-10);

  ev = evolve_hamiltonian(pendulum(), pack({2.0, 0.0}), 5.0, 1e-3);
  CHECK(ev.energy_drift < 1e-6);

  // Cyclotron: circular orbit with angular speed |B|.
  const double b = 2.0;
  const Vec c0 = pack({0, 0, 0, 1, 0, 0});
  ev = evolve_hamiltonian(cyclotron(b), c0, kPi / b, 1e-3);
  CHECK(ev.energy_drift < 1e-8);
  // Half a revolution later the velocity has flipped and the orbit diameter is 2 |v| / b.
  CHECK(std::abs(ev.trajectory.back()(3) + 1.0) < 1e-6);
  CHECK(std::abs(ev.trajectory.back()(1) + 2.0 / b) < 1e-6);
}

TEST_CASE("Liouville determinant") {
  CHECK(liouville_determinant(oscillator(), pack({0.3, 0.1}), 0.0, 1e-3) == 1.0);
  CHECK(std::abs(liouville_determinant(oscillator(), pack({0.3, 0.1}), 1.0, 1e-3) - 1.0) < 1e-8);
  CHECK(std::abs(liouville_determinant(pendulum(), pack({0.5, 0.3}), 1.0, 1e-3) - 1.0) < 1e-6);
  HamiltonianSystem two{2, [](const Vec& x) {
                          return 0.5 * x.tail(2).squaredNorm() + 0.25 * std::pow(x(0), 4) + x(0) * x(1);
                        }, std::nullopt};
  CHECK(std::abs(liouville_determinant(two, pack({0.2, -0.1, 0.3, 0.4}), 2.0, 1e-3) - 1.0) < 1e-6);
}

TEST_CASE("gauge transformations") {
  auto same = gauge_transform(symmetric_gauge(1.0), [](const Vec&) { return 3.0; });
  CHECK(same.curl_gap == 0.0);

  const double b = 1.3;
  auto g = gauge_transform(landau_gauge(b), [b](const Vec& q) { return 0.5 * b * q(0) * q(1); });
  CHECK(g.curl_gap < 1e-6);
  for (const auto& q : {Eigen::Vector3d(0.3, -0.2, 0.5), Eigen::Vector3d(-1, 1, 0)}) {
    CHECK((g.transformed(q) - symmetric_gauge(b)(q)).norm() < 1e-8);
  }
  const Eigen::Vector3d curl = fd_curl(symmetric_gauge(b), Eigen::Vector3d(0.1, 0.2, 0.3), 1e-5);
  CHECK((curl - Eigen::Vector3d(0, 0, b)).norm() < 1e-8);
}

TEST_CASE("gauge choice does not change trajectories") {
  const double b = 1.1;
  ScalarField chi = [](const Vec& q) { return 0.3 * std::sin(q(0)) * q(1) + 0.2 * q(2) * q(2); };
  const auto a = symmetric_gauge(b);
  const auto ga = gauge_transform(a, chi);
  const Eigen::Vector3d q0(0.2, -0.1, 0.3);
  const Eigen::Vector3d v0(0.5, 0.4, -0.2);
  auto evolve_q = [&](const VectorPotential& pot) {
    Vec x0(6);
    x0 << q0, v0 + pot(q0);
    return evolve_hamiltonian(minimal_substitution(pot), x0, 2.0, 1e-3).trajectory.back().head(3).eval();
  };
  const Vec qa = evolve_q(a);
  const Vec qb = evolve_q(ga.transformed);
  CHECK((qa - qb).norm() < 1e-6);

  // The magnetic formulation reaches the same positions without any potential.
  Vec x0(6);
  x0 << q0, v0;
  const Vec qm = evolve_hamiltonian(cyclotron(b), x0, 2.0, 1e-3).trajectory.back().head(3);
  CHECK((qa - qm).norm() < 1e-6);
}

}  // TEST_SUITE
