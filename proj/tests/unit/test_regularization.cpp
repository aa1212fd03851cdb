#include <cmath>
#include <numbers>

#include "doctest.h"
#include "qmhd/diagnostics.hpp"
#include "qmhd/regularization.hpp"
#include "test_util.hpp"

using namespace qmhd;
using namespace qmhd::testing;

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

const EosModel ideal = EosModel::ideal(1.0, 1.5);

// 1D periodic grid with a cell centre at x = 0.
Grid centred_line(int n, int order) {
  const double h = two_pi / n;
  return Grid::line(n, -0.5 * h, two_pi - 0.5 * h, Boundary::periodic, order);
}

FieldState random_state(std::uint64_t seed, int n = 32, int dim = 2) {
  const Grid g = dim == 2 ? Grid::square(n, 0.0, two_pi, Boundary::periodic)
                          : Grid::line(n, 0.0, two_pi, Boundary::periodic);
  return random_manufactured(seed, g).sample(g, true);
}

double tensor_diff(const TensorField& a, const TensorField& b) {
  double m = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) m = std::max(m, max_abs(a[k] - b[k]));
  return m;
}

}  // namespace

TEST_CASE("relaxation time") {
  const Grid g = Grid::line(100, 0.0, 1.0, Boundary::periodic);
  const FieldState s = uniform(g, 1.0, Vec3{}, 1.0, Vec3{});
  RegParams p = constant_params(0.1, 0, 0, 0);
  for (double t : compute_tau(s, p, ideal)) CHECK(t == 0.1);

  p.tau_mode = TauMode::scaled;
  p.alpha = 0.5;
  const ScalarField tau = compute_tau(s, p, EosModel::ideal_gamma(5.0 / 3.0));
  CHECK(tau[17] == doctest::Approx(0.5 * 0.01 / std::sqrt(5.0 / 3.0)).epsilon(1e-14));

  const FieldState moving = uniform(g, 2.0, Vec3{0.3, 0.4, 0}, 1.5, Vec3{0, 1, 0});
  const double cf = std::sqrt(5.0 / 3.0 * 1.5 + 0.5);
  CHECK(compute_tau(moving, p, EosModel::ideal_gamma(5.0 / 3.0))[3] ==
        doctest::Approx(0.005 / (cf + 0.5)).epsilon(1e-14));

  p.alpha = 0.0;
  CHECK_THROWS_AS(compute_tau(s, p, ideal), ConfigError);
  RegParams neg = constant_params(-1.0, 0, 0, 0);
  CHECK_THROWS_AS(neg.validate(), ConfigError);
}

TEST_CASE("tau-linked transport law") {
  const Grid g = Grid::line(8, 0.0, 1.0, Boundary::periodic);
  const FieldState s = uniform(g, 2.0, Vec3{}, 3.0, Vec3{});
  RegParams p = constant_params(0.01, 0, 0.2, 0);
  p.mu = CoefficientLaw::tau_linked(0.5);
  p.kappa = CoefficientLaw::tau_linked(0.25);
  const auto th = thermo_field(s, ideal);
  const TransportFields t = compute_transport(s, compute_tau(s, p, th), p, th);
  const double cs2 = 5.0 / 3.0 * 3.0;
  CHECK(t.mu[0] == doctest::Approx(0.5 * 0.01 * 2.0 * cs2));
  CHECK(t.lambda[0] == 0.2);
  CHECK(t.kappa[0] == doctest::Approx(0.25 * 0.01 * 2.0 * cs2 * 1.5));
}

TEST_CASE("auxiliary velocities on uniform states") {
  const Grid g = Grid::square(8, 0.0, 1.0, Boundary::periodic);
  const FieldState s = uniform(g, 1.3, Vec3{0.2, -0.1, 0.4}, 0.8, Vec3{0.5, 0.1, -0.3});
  const ScalarField tau(g, 0.2);
  const VectorField zero(g);
  CHECK(max_abs(compute_w(s, tau, zero, ideal)) == 0.0);
  CHECK(max_abs(compute_w_hat(s, tau, zero, ideal)) == 0.0);

  const VectorField F(g, Vec3{0.0, -9.8, 1.0});
  const VectorField w = compute_w(s, tau, F, ideal);
  const VectorField wh = compute_w_hat(s, tau, F, ideal);
  for (std::size_t k = 0; k < g.size(); ++k) {
    CHECK(max_abs(w[k] - (-0.2) * F[k]) <= 1e-15);
    CHECK(max_abs(wh[k] - (-0.2) * F[k]) <= 1e-15);
  }
}

TEST_CASE("w from a density perturbation") {
  std::vector<int> levels{32, 64, 128};
  std::vector<double> err;
  const double tau = 0.05;
  for (int n : levels) {
    const Grid g = centred_line(n, 2);
    FieldState s(g);
    for (std::size_t k = 0; k < g.size(); ++k) s.rho[k] = 1.0 + 0.1 * std::sin(g.center(k)[0]);
    REQUIRE(g.center(0)[0] == doctest::Approx(0.0));
    const VectorField w = compute_w(s, ScalarField(g, tau), VectorField(g), ideal);
    err.push_back(std::abs(w[0][0] - tau * 0.1));
    CHECK(w[0][1] == 0.0);
  }
  // leading truncation term of the central difference: tau 0.1 h^2 / 6
  const double h = two_pi / levels.back();
  CHECK(err.back() <= 1.01 * tau * 0.1 * h * h / 6.0);
  CHECK(fitted_rate(levels, err) >= 1.8);

  const Grid g4 = centred_line(64, 4);
  FieldState s(g4);
  for (std::size_t k = 0; k < g4.size(); ++k) s.rho[k] = 1.0 + 0.1 * std::sin(g4.center(k)[0]);
  const VectorField w = compute_w(s, ScalarField(g4, tau), VectorField(g4), ideal);
  CHECK(w[0][0] == doctest::Approx(tau * 0.1).epsilon(1e-6));
}

TEST_CASE("w equals w_hat when the fluid is at rest") {
  FieldState s = random_state(9);
  for (auto& v : s.u) v = Vec3{};
  const ScalarField tau(s.grid, 0.03);
  const VectorField F(s.grid, Vec3{0.1, 0.2, -0.3});
  const VectorField w = compute_w(s, tau, F, ideal);
  const VectorField wh = compute_w_hat(s, tau, F, ideal);
  CHECK(max_diff(w, wh) <= 1e-12 * max_abs(w));
}

TEST_CASE("b_hat") {
  const Grid g = centred_line(64, 2);
  FieldState s = uniform(g, 1.0, Vec3{1, 0, 0}, 1.0, Vec3{});
  CHECK(max_abs(compute_bhat(s)) == 0.0);
  for (std::size_t k = 0; k < g.size(); ++k) s.B[k] = Vec3{0, std::sin(g.center(k)[0]), 0};
  const VectorField b = compute_bhat(s);
  double err = 0.0;
  for (std::size_t k = 0; k < g.size(); ++k)
    err = std::max(err, max_abs(b[k] - Vec3{0, std::cos(g.center(k)[0]), 0}));
  const double h = g.spacing(0);
  CHECK(err <= h * h / 6.0 * 1.01);
  CHECK(b[0][1] == doctest::Approx(1.0).epsilon(h * h));

  for (std::uint64_t seed : {1u, 2u, 3u}) {
    const FieldState r = random_state(seed);
    const VectorField bh = compute_bhat(r);
    CHECK(max_abs(div(r.grid, bh)) <= 1e-12 * max_abs(bh) / r.grid.min_spacing());
  }
}

TEST_CASE("pressure time derivative") {
  const Grid g = Grid::line(32, 0.0, two_pi, Boundary::periodic);
  const FieldState s = uniform(g, 1.0, Vec3{0.3, 0, 0}, 1.0, Vec3{0.2, 0.7, 0});
  CHECK(max_abs(compute_pt_hat_p(s, ScalarField(g), ideal)) == 0.0);
  const ScalarField pt = compute_pt_hat_p(s, ScalarField(g, 1.0), ideal);
  CHECK(pt[5] == doctest::Approx(1.0 / 1.5).epsilon(1e-15));

  const Grid c = centred_line(128, 4);
  FieldState wave(c);
  for (std::size_t k = 0; k < c.size(); ++k) wave.u[k] = Vec3{std::sin(c.center(k)[0]), 0, 0};
  const ScalarField pw = compute_pt_hat_p(wave, ScalarField(c), EosModel::ideal_gamma(5.0 / 3.0));
  double err = 0.0;
  for (std::size_t k = 0; k < c.size(); ++k)
    err = std::max(err, std::abs(pw[k] + 5.0 / 3.0 * std::cos(c.center(k)[0])));
  CHECK(err <= 1e-6);

  FieldState magnetised = random_state(4);
  FieldState bare = magnetised;
  for (auto& b : bare.B) b = Vec3{};
  const ScalarField Q(magnetised.grid, 0.4);
  CHECK(compute_pt_hat_p(magnetised, Q, ideal) == compute_pt_hat_p(bare, Q, ideal));
}

TEST_CASE("heat flux") {
  const Grid g = Grid::line(64, 0.0, two_pi, Boundary::periodic);
  const FieldState s = uniform(g, 1.0, Vec3{1, 0, 0}, 1.0, Vec3{});
  const VectorField q = compute_q(s, ScalarField(g, 0.1), ScalarField(g, 1.0), ideal,
                                  ScalarField(g, 0.3));
  CHECK(q[7][0] == doctest::Approx(0.1).epsilon(1e-15));
  CHECK(q[7][1] == 0.0);

  FieldState rest = random_state(6);
  for (auto& v : rest.u) v = Vec3{};
  const ScalarField kappa(rest.grid, 0.3);
  const VectorField qr = compute_q(rest, ScalarField(rest.grid, 0.1), ScalarField(rest.grid, 0.5),
                                   ideal, kappa);
  const VectorField gt = grad(rest.grid, rest.theta);
  for (std::size_t k = 0; k < rest.grid.size(); ++k) REQUIRE(qr[k] == (-0.3) * gt[k]);
}

TEST_CASE("zero relaxation time removes every regularizing term") {
  for (std::uint64_t seed : {11u, 12u}) {
    const FieldState s = random_state(seed);
    const RegParams p = constant_params(0.0, 0.05, 0.02, 0.04);
    const SourceFields src = constant_sources(s.grid, Vec3{0.1, -0.2, 0.3}, 0.7);
    const RegTerms r = compute_regterms(s, p, src, ideal);
    CHECK(max_abs(r.w) == 0.0);
    CHECK(max_abs(r.w_hat) == 0.0);
    CHECK(tensor_diff(r.Pi, r.Pi_ns) == 0.0);
    const VectorField gt = grad(s.grid, s.theta);
    for (std::size_t k = 0; k < s.grid.size(); ++k) REQUIRE(r.q[k] == (-0.04) * gt[k]);
  }
}

TEST_CASE("stress tensors on uniform states") {
  const Grid g = Grid::square(8, 0.0, 1.0, Boundary::periodic);
  const FieldState s = uniform(g, 1.0, Vec3{0.3, 0.1, 0}, 2.0, Vec3{0.4, 0, 0.2});
  const RegParams p = constant_params(0.1, 0.05, 0.01, 0.02);
  const RegTerms r = compute_regterms(s, p, constant_sources(g, Vec3{}, 0.0), ideal);
  for (std::size_t k = 0; k < g.size(); ++k) {
    CHECK(max_abs(r.Pi[k]) == 0.0);
    CHECK(max_abs(r.Pi_ns[k]) == 0.0);
  }
}

TEST_CASE("Navier-Stokes stress is symmetric") {
  const FieldState s = random_state(21);
  const RegParams p = constant_params(0.02, 0.05, 0.01, 0.02);
  const RegTerms r = compute_regterms(s, p, constant_sources(s.grid, Vec3{}, 0.0), ideal);
  for (const Mat3& m : r.Pi_ns) REQUIRE(max_abs(m - transpose(m)) == 0.0);
}

TEST_CASE("linking identity converges") {
  const StudySetup setup = study_setup(2, 2, constant_params(0.05, 0.02, 0.01, 0.03));
  const Grid g0 = study_grid(setup, 32);
  const StudyReport rep = identity_suite(random_manufactured(8, g0), setup, {32, 64, 128}, ideal);
  CHECK(rep.at("linking").pass);
  CHECK(rep.at("linking").rate >= 1.8);
}
