#include "mpw/greens.hpp"
#include "support.hpp"

#include <doctest.h>

#include <cmath>

using namespace mpw;
using namespace mpw::greens;

namespace {

double bump3(const Vec& x) {
  const double r2 = x.squaredNorm();
  return r2 < 1.0 ? std::exp(-1.0 / (1.0 - r2)) : 0.0;
}

double manufactured_error(int n) {
  const auto p = make_rectangle_problem(
      n, n, [](double x, double y) { return 2 * kPi * kPi * std::sin(kPi * x) * std::sin(kPi * y); },
      [](double, double) { return 0.0; });
  const auto s = solve_rectangle_dirichlet(p);
  double err = 0.0;
  for (int i = 0; i <= n; ++i) {
    for (int j = 0; j <= n; ++j) {
      err = std::max(err, std::abs(s.u_fd(i, j) - std::sin(kPi * i / n) * std::sin(kPi * j / n)));
    }
  }
  return err;
}

}  // namespace

TEST_SUITE("greens") {

TEST_CASE("interval Green's function") {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 100; ++i) {
    const double x = u(rng), y = u(rng);
    CHECK(green_interval(x, y) == green_interval(y, x));
    CHECK(green_interval(0.0, y) == 0.0);
    CHECK(green_interval(1.0, y) == 0.0);
  }
  CHECK(green_interval(0.25, 0.5) == 0.125);
  CHECK_THROWS_AS(green_interval(-0.1, 0.5), Error);

  // int G(x, y) (-phi'')(x) dx = phi(y) for a bump inside (0, 1).
  auto phi = [](double x) {
    const double s = (x - 0.5) / 0.3;
    return std::abs(s) < 1 ? std::exp(-1.0 / (1 - s * s)) : 0.0;
  };
  auto minus_phi2 = [&](double x) {
    const double h = 1e-4;
    return -(phi(x + h) - 2 * phi(x) + phi(x - h)) / (h * h);
  };
  for (double y : {0.3, 0.5, 0.61}) {
    const auto left = simpson(std::function<double(double)>([&](double x) { return green_interval(x, y) * minus_phi2(x); }), 0.0, y, 2000);
    const auto right = simpson(std::function<double(double)>([&](double x) { return green_interval(x, y) * minus_phi2(x); }), y, 1.0, 2000);
    CHECK(std::abs(left + right - phi(y)) < 1e-6);
  }
}

TEST_CASE("Poisson on the interval") {
  const auto u1 = solve_poisson_interval([](double) { return 1.0; }, 64);
  const auto us = solve_poisson_interval([](double x) { return std::sin(kPi * x); }, 64);
  const auto u0 = solve_poisson_interval([](double) { return 0.0; }, 16);
  for (int i = 0; i <= 20; ++i) {
    const double x = i / 20.0;
    CHECK(std::abs(u1(x) - 0.5 * x * (1 - x)) < 1e-8);
    CHECK(std::abs(us(x) - std::sin(kPi * x) / (kPi * kPi)) < 1e-8);
    CHECK(u0(x) == 0.0);
  }
  CHECK(std::abs(u1(0.0)) < 1e-10);
  CHECK(std::abs(us(1.0)) < 1e-10);

  auto f = [](double x) { return std::exp(x); };
  auto g = [](double x) { return std::cos(3 * x); };
  const auto uf = solve_poisson_interval(f, 64);
  const auto ug = solve_poisson_interval(g, 64);
  const auto ufg = solve_poisson_interval([&](double x) { return 2.0 * f(x) - 0.5 * g(x); }, 64);
  for (double x : {0.1, 0.45, 0.9}) CHECK(std::abs(ufg(x) - (2.0 * uf(x) - 0.5 * ug(x))) < 1e-12);

  // -u'' = f by finite differences.
  const double h = 1e-3;
  for (double x : {0.2, 0.7}) CHECK(std::abs(-(uf(x + h) - 2 * uf(x) + uf(x - h)) / (h * h) - f(x)) < 1e-4);
}

TEST_CASE("free-space Green's functions") {
  Vec x2(2), y2(2);
  x2 << 1.0, 0.0;
  y2 << 0.0, 0.0;
  CHECK(green_free_space(x2, y2) == 0.0);
  Vec x3(3), y3(3);
  x3 << 0.0, 1.0, 0.0;
  y3 << 0.0, 0.0, 0.0;
  CHECK(green_free_space(x3, y3) == doctest::Approx(1.0 / (4 * kPi)));
  CHECK_THROWS_AS(green_free_space(y3, y3), Error);

  Vec y(3);
  y << 0.1, -0.2, 0.15;
  CHECK(std::abs(free_space_pairing(bump3, y, 2.0) - bump3(y)) < 1e-3);
  Vec c(2);
  c << 0.2, 0.1;
  auto bump2 = [](const Vec& x) {
    const double r2 = x.squaredNorm();
    return r2 < 1.0 ? std::exp(-1.0 / (1.0 - r2)) : 0.0;
  };
  CHECK(std::abs(free_space_pairing(bump2, c, 2.0) - bump2(c)) < 1e-3);
}

TEST_CASE("Dirichlet problem on the square") {
  const auto zero = solve_rectangle_dirichlet(
      make_rectangle_problem(16, 16, [](double, double) { return 0.0; }, [](double, double) { return 0.0; }));
  CHECK(zero.u.cwiseAbs().maxCoeff() == 0.0);
  CHECK_THROWS_AS(make_rectangle_problem(4, 16, [](double, double) { return 0.0; }, [](double, double) { return 0.0; }),
                  Error);

  for (int n : {16, 32, 64}) {
    const double h2 = 1.0 / (n * n);
    CHECK(manufactured_error(n) <= 5.0 * h2);
  }

  const int n = 32;
  const auto harmonic = solve_rectangle_dirichlet(make_rectangle_problem(
      n, n, [](double, double) { return 0.0; }, [](double x, double y) { return x * x - y * y; }));
  double err = 0.0;
  for (int i = 0; i <= n; ++i) {
    for (int j = 0; j <= n; ++j) {
      err = std::max(err, std::abs(harmonic.u_fd(i, j) - (static_cast<double>(i * i) - j * j) / (n * n)));
    }
  }
  CHECK(err <= 1e-10);
  CHECK(harmonic.residual <= 10.0 / (n * n));
  CHECK(harmonic.boundary_gap < 1e-12);
}

TEST_CASE("the two rectangle paths agree") {
  const int n = 32;
  const double h2 = 1.0 / (n * n);
  const std::vector<std::function<double(double, double)>> sources = {
      [](double x, double y) { return 2 * kPi * kPi * std::sin(kPi * x) * std::sin(kPi * y); },
      [](double x, double y) { return x * (1 - x) * y * (1 - y); },
      [](double x, double) { return std::sin(2 * kPi * x); },
  };
  for (const auto& f : sources) {
    const auto s = solve_rectangle_dirichlet(make_rectangle_problem(n, n, f, [](double x, double y) { return x + y; }));
    CHECK(s.residual <= 10.0 * h2);
  }
}

}  // TEST_SUITE
