#include "mpw/lattice.hpp"
#include "support.hpp"

#include <doctest.h>

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>

using namespace mpw;
using namespace mpw::lattice;

namespace {

const Eigen::Matrix2cd kSigma1 = (Eigen::Matrix2cd() << 0, 1, 1, 0).finished();

std::vector<double> patch_spectrum(const TightBindingModel& m) {
  Eigen::SelfAdjointEigenSolver<CMat> es(patch_hamiltonian(m), Eigen::EigenvaluesOnly);
  return {es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size()};
}

CVec random_state(const TightBindingModel& m, std::mt19937_64& rng) {
  return test::random_unit(static_cast<int>(m.state_size()), rng);
}

}  // namespace

TEST_SUITE("lattice") {

TEST_CASE("square band function") {
  CHECK(band_function_square(0.3, -0.4, 0.0, 0.0) == doctest::Approx(1.0 + 0.6 - 0.8));
  CHECK(band_function_square(0.0, 0.0, 1.1, -2.0) == 1.0);
  CHECK(square_symbol(0.3, -0.4, 0.7, 0.2) == doctest::Approx(band_function_square(0.3, -0.4, 0.7, 0.2)));

  TightBindingModel m;
  m.q1 = 0.7;
  m.q2 = -0.3;
  m.side = 12;
  std::vector<double> expected;
  for (int a = 0; a < m.side; ++a) {
    for (int b = 0; b < m.side; ++b) {
      expected.push_back(band_function_square(0.7, -0.3, 2 * kPi * a / m.side, 2 * kPi * b / m.side));
    }
  }
  std::sort(expected.begin(), expected.end());
  const auto spec = patch_spectrum(m);
  for (std::size_t i = 0; i < spec.size(); ++i) CHECK(std::abs(spec[i] - expected[i]) <= 1e-8);
}

TEST_CASE("honeycomb Bloch analysis") {
  const auto origin = honeycomb_bloch(1.0, 1.0, 0.0, 0.0);
  CHECK(std::abs(origin.varpi - 3.0) < 1e-15);
  CHECK(origin.e_plus == doctest::Approx(3.0));
  CHECK(origin.e_minus == doctest::Approx(-3.0));
  const Eigen::Matrix2cd id = Eigen::Matrix2cd::Identity();
  CHECK((origin.projection(+1) - 0.5 * (id + kSigma1)).norm() < 1e-15);
  CHECK((origin.projection(-1) - 0.5 * (id - kSigma1)).norm() < 1e-15);

  const auto dirac = honeycomb_bloch(1.0, 1.0, 2 * kPi / 3, -2 * kPi / 3);
  CHECK(std::abs(dirac.varpi) <= 1e-12);
  CHECK(dirac.degenerate);
  CHECK(dirac.e_plus == doctest::Approx(0.0).epsilon(1e-12));
  CHECK_THROWS_AS(dirac.projection(1), Error);

  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> u(-kPi, kPi);
  for (int i = 0; i < 100; ++i) {
    const Complex q1(u(rng) / 2, u(rng) / 4), q2(u(rng) / 2, 0.0);
    const double k1 = u(rng), k2 = u(rng);
    const auto b = honeycomb_bloch(q1, q2, k1, k2);
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> es(b.symbol());
    CHECK(std::abs(es.eigenvalues()(0) - b.e_minus) < 1e-12);
    CHECK(std::abs(es.eigenvalues()(1) - b.e_plus) < 1e-12);
    const auto& pp = b.projection(1);
    const auto& pm = b.projection(-1);
    CHECK((pp * pp - pp).norm() < 1e-12);
    CHECK((pp * pm).norm() < 1e-12);
    CHECK((pp + pm - id).norm() < 1e-12);
    CHECK((pp - pp.adjoint()).norm() < 1e-12);
    CHECK((b.symbol() * pp - b.e_plus * pp).norm() < 1e-12);
    // Time reversal for real hoppings.
    const auto fwd = honeycomb_bloch(q1.real(), q2.real(), k1, k2);
    const auto back = honeycomb_bloch(q1.real(), q2.real(), -k1, -k2);
    CHECK(std::abs(fwd.e_plus - back.e_plus) < 1e-12);
  }

  TightBindingModel hc;
  hc.kind = ModelKind::honeycomb_two_band;
  hc.q1 = Complex(0.8, 0.3);
  hc.q2 = 1.2;
  hc.side = 8;
  std::vector<double> expected;
  for (int a = 0; a < hc.side; ++a) {
    for (int b = 0; b < hc.side; ++b) {
      const auto bp = honeycomb_bloch(hc.q1, hc.q2, 2 * kPi * a / hc.side, 2 * kPi * b / hc.side);
      expected.push_back(bp.e_plus);
      expected.push_back(bp.e_minus);
    }
  }
  std::sort(expected.begin(), expected.end());
  const auto spec = patch_spectrum(hc);
  for (std::size_t i = 0; i < spec.size(); ++i) CHECK(std::abs(spec[i] - expected[i]) <= 1e-8);
}

TEST_CASE("patch operators") {
  std::mt19937_64 rng(3);
  const int side = 7;
  const CVec psi = test::random_unit(side * side, rng);
  for (int axis : {0, 1}) CHECK(shift(psi, side, axis).norm() == doctest::Approx(psi.norm()).epsilon(1e-15));
  for (auto kind : {ModelKind::square_single_band, ModelKind::honeycomb_two_band}) {
    TightBindingModel m;
    m.kind = kind;
    m.q1 = Complex(0.4, -0.9);
    m.side = 6;
    const CMat h = patch_hamiltonian(m);
    CHECK((h - h.adjoint()).cwiseAbs().maxCoeff() == 0.0);
  }
  TightBindingModel m;
  CHECK_THROWS_AS(site_index(m, m.side, 0), Error);
  CHECK_THROWS_AS(patch_state(m, {{{-1, 0, 0}, 1.0}}), Error);
  CHECK_THROWS_AS(tb_evolve(m, CVec::Zero(5), 1.0), Error);
}

TEST_CASE("position and Bloch evolution agree") {
  std::mt19937_64 rng(15);
  for (auto kind : {ModelKind::square_single_band, ModelKind::honeycomb_two_band}) {
    TightBindingModel m;
    m.kind = kind;
    m.side = 16;
    const CVec psi = random_state(m, rng);
    CHECK(tb_evolve(m, psi, 0.0).gap <= 1e-14);
    const auto r = tb_evolve(m, psi, 1.0);
    CHECK(r.gap <= 1e-8);
    CHECK(r.position.norm() == doctest::Approx(1.0).epsilon(1e-12));
  }

  // Bloch wave on the square model picks up a global phase.
  TightBindingModel sq;
  sq.q1 = 0.6;
  sq.q2 = 0.25;
  sq.side = 10;
  const double k1 = 2 * kPi * 3 / sq.side, k2 = 2 * kPi * 7 / sq.side;
  std::vector<std::pair<std::array<int, 3>, Complex>> entries;
  for (int a = 0; a < sq.side; ++a) {
    for (int b = 0; b < sq.side; ++b) entries.push_back({{a, b, 0}, std::polar(0.1, k1 * a + k2 * b)});
  }
  const CVec wave = patch_state(sq, entries);
  const double t = 1.3;
  const auto r = tb_evolve(sq, wave, t);
  const Complex phase = std::polar(1.0, -t * band_function_square(0.6, 0.25, k1, k2));
  CHECK((r.position - phase * wave).cwiseAbs().maxCoeff() <= 1e-10);
  CHECK(r.gap <= 1e-10);
}

}  // TEST_SUITE
