#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "helix/errors.hpp"
#include "helix/ict.hpp"
#include "helix/nonrel.hpp"
#include "helix/numerics/residual.hpp"

using namespace helix;
using namespace helix::ict;
using numerics::Grid3;

namespace {

classical::PhaseSpacePoint pt(double x, double y, double z, double px, double py, double pz) {
  classical::PhaseSpacePoint p;
  p.x = x, p.y = y, p.z = z, p.px = px, p.py = py, p.pz = pz;
  return p;
}

QuadraticHamiltonian harmonic_1d() {
  Mat3 A{}, B{}, C{};
  A[0][0] = 1;
  B[0][0] = 1;
  return QuadraticHamiltonian::make(1, A, B, C);
}

QuadraticHamiltonian free_2d() {
  Mat3 A{}, B{}, C{};
  A[0][0] = A[1][1] = 1;
  return QuadraticHamiltonian::make(2, A, B, C);
}

// Residual pair (untransformed, transformed) for a solution sampled on a grid
// of N points per axis with dt proportional to h^2.
struct Study {
  QuadraticHamiltonian H;
  int dim;
  double half_width;
  std::function<cplx(const Vec3&, double)> psi;
  ClassicalFlowState start;
};

std::pair<double, double> residuals(const Study& s, int N, bool flip_momentum = false) {
  const auto g = Grid3::centered(s.dim, N, s.half_width);
  const double h = g.spacing[0], dt = 0.5 * h * h, t0 = 0.2;
  auto series = numerics::sample_series(g, t0 - dt, dt, 3, s.psi);
  std::vector<ClassicalFlowState> flow;
  for (int i = 0; i < 3; ++i) {
    auto f = classical_flow(s.H, s.start, t0 + (i - 1) * dt, 1e-4);
    if (flip_momentum)
      for (auto& p : f.p) p = -p;
    flow.push_back(f);
  }
  return {numerics::residual_schrodinger(series, s.H, 1.0), theorem_residual(s.H, series, flow, 1.0)};
}

}  // namespace

TEST_CASE("magnetic_to_quadratic") {
  const auto H0 = magnetic_to_quadratic(natural_units(0.0), 2.0, 3);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      CHECK(H0.A[i][j] == (i == j ? 0.5 : 0.0));
      CHECK(H0.Bq[i][j] == 0.0);
      CHECK(H0.C[i][j] == 0.0);
    }
  const auto H = magnetic_to_quadratic(natural_units(1.0), 1.0, 2);
  CHECK(H.dim == 2);
  CHECK(H.C[0][1] == 0.5);
  CHECK(H.C[1][0] == -0.5);
  CHECK(H.Bq[0][0] == 0.25);
  CHECK(H.Bq[1][1] == 0.25);
  CHECK(H.Bq[0][1] == 0.0);
  CHECK_THROWS_AS(magnetic_to_quadratic(natural_units(1.0), 0.0), DomainError);
  const auto rec = recognize_magnetic(magnetic_to_quadratic(natural_units(2.0), 4.0, 3));
  REQUIRE(rec);
  CHECK(rec->first == doctest::Approx(4.0));
  CHECK(rec->second == doctest::Approx(0.5));
  CHECK_FALSE(recognize_magnetic(harmonic_1d()));
}

TEST_CASE("quadratic Hamiltonian is symmetrised and checked") {
  Mat3 A{}, B{}, C{};
  A[0][1] = 1.0;
  A[1][0] = 0.0;
  const auto H = QuadraticHamiltonian::make(2, A, B, C);
  CHECK(H.A[0][1] == 0.5);
  CHECK(H.A[1][0] == 0.5);
  A[0][0] = NAN;
  CHECK_THROWS_AS(QuadraticHamiltonian::make(2, A, B, C), DomainError);
  CHECK_THROWS_AS(QuadraticHamiltonian::make(4, A, B, C), DomainError);
}

TEST_CASE("classical flow examples") {
  const auto H1 = harmonic_1d();
  const auto z0 = ClassicalFlowState::start(1, {1, 0, 0}, {0, 0, 0});
  const auto same = classical_flow(H1, z0, 0.0, 1e-3);
  CHECK(same.x == z0.x);
  CHECK(same.action == z0.action);
  const auto q = classical_flow(H1, z0, M_PI / 2, 1e-4);
  CHECK(std::abs(q.x[0]) < 1e-12);
  CHECK(q.p[0] == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK_THROWS_AS(classical_flow(H1, z0, 1.0, 0.0), DomainError);
  CHECK_THROWS_AS(classical_flow(H1, z0, 1.0, 1e-9), ResourceError);
  CHECK_THROWS_AS(classical_flow(free_2d(), z0, 1.0, 1e-3), DomainError);
}

TEST_CASE("magnetic flow matches the closed-form helix over one period") {
  const auto P = natural_units(1.0);
  const auto tp = classical::TrajectoryParams::nonrelativistic(pt(1, 0.3, 0.2, -0.1, 0.4, 0.5), P);
  const auto H = magnetic_to_quadratic(P, 1.0, 3);
  const auto z0 = magnetic_flow(tp, 0.0, 3);
  const double T = tp.period();
  for (double t : {0.25 * T, 0.5 * T, T}) {
    const auto a = classical_flow(H, z0, t, default_time_step(H, t));
    const auto b = magnetic_flow(tp, t, 3);
    for (int i = 0; i < 3; ++i) {
      CHECK(std::abs(a.x[i] - b.x[i]) < 1e-8);
      CHECK(std::abs(a.p[i] - b.p[i]) < 1e-8);
    }
    // the integrated action keeps the -p.x/2 form
    CHECK(std::abs(a.action - b.action) < 1e-8);
  }
}

TEST_CASE("action stays -p.x/2 for a generic quadratic Hamiltonian") {
  Mat3 A{{{1.0, 0.2, 0}, {0.2, 0.7, 0}, {0, 0, 0}}};
  Mat3 B{{{0.5, -0.1, 0}, {-0.1, 1.3, 0}, {0, 0, 0}}};
  Mat3 C{{{0.1, 0.3, 0}, {-0.2, 0.05, 0}, {0, 0, 0}}};
  const auto H = QuadraticHamiltonian::make(2, A, B, C);
  const auto s = classical_flow(H, ClassicalFlowState::start(2, {0.4, -0.6, 0}, {0.3, 0.8, 0}), 2.3, 1e-4);
  CHECK(s.action == doctest::Approx(-0.5 * (s.p[0] * s.x[0] + s.p[1] * s.x[1])).epsilon(1e-10));
}

TEST_CASE("ict_apply on evaluators") {
  SliceEvaluator g{2, [](const Vec3& r) { return cplx(std::exp(-r[0] * r[0] - 0.5 * r[1] * r[1]), r[0]); }};
  const Vec3 r{0.3, -0.7, 0};
  const auto id = ict_apply(g, ClassicalFlowState::start(2, {0, 0, 0}, {0, 0, 0}), 1.0);
  CHECK(id.f(r) == g.f(r));
  const auto sh = ict_apply(g, ClassicalFlowState::start(2, {0.5, 1, 0}, {0, 0, 0}), 1.0);
  CHECK(sh.f(r) == g.f({-0.2, -1.7, 0}));
  const auto gen = ict_apply(g, ClassicalFlowState::start(2, {0.5, 1, 0}, {2, -3, 0}), 0.7);
  CHECK(std::abs(gen.f(r)) == doctest::Approx(std::abs(g.f({-0.2, -1.7, 0}))).epsilon(1e-15));
  CHECK_THROWS_AS(ict_apply(g, ClassicalFlowState::start(3, {}, {}), 1.0), DomainError);
}

TEST_CASE("grid injection is unitary and composes") {
  const auto g = Grid3::centered(2, 64, 10.0);
  auto f = numerics::sample(g, [](const Vec3& r) {
    return std::exp(-0.5 * (r[0] * r[0] + r[1] * r[1])) * cplx(1 + 0.2 * r[0], r[1]);
  });
  const auto s1 = ClassicalFlowState::start(2, {0.7, -0.4, 0}, {1.2, 0.3, 0});
  const auto s2 = ClassicalFlowState::start(2, {-0.2, 0.9, 0}, {-0.5, 2.0, 0});
  const auto a = ict_apply_grid(f, s1, 1.0);
  CHECK(numerics::l2_norm_squared(a) == doctest::Approx(numerics::l2_norm_squared(f)).epsilon(1e-12));
  const auto twice = ict_apply_grid(a, s2, 1.0);
  const auto once = ict_apply_grid(f, ClassicalFlowState::start(2, {0.5, 0.5, 0}, {0, 0, 0}), 1.0);
  double worst = 0;
  for (std::size_t i = 0; i < f.data.size(); ++i)
    worst = std::max(worst, std::abs(std::abs(twice.data[i]) - std::abs(once.data[i])));
  CHECK(worst < 1e-12);
}

TEST_CASE("theorem residual with the rest flow equals the input residual") {
  const auto P = natural_units(1.0);
  const auto H = magnetic_to_quadratic(P, 1.0, 2);
  const auto g = Grid3::centered(2, 64, 12.0);
  const double dt = 0.01;
  auto series = numerics::sample_series(g, 0.0, dt, 3, [&](const Vec3& r, double t) {
    return nonrel::landau_profile({1, 2}, 1.0, r[0], r[1]).value * std::polar(1.0, -1.5 * t);
  });
  std::vector<ClassicalFlowState> rest(3, ClassicalFlowState::start(2, {0, 0, 0}, {0, 0, 0}));
  CHECK(theorem_residual(H, series, rest, 1.0) ==
        doctest::Approx(numerics::residual_schrodinger(series, H, 1.0)).epsilon(1e-10));
  CHECK_THROWS_AS(theorem_residual(H, series, std::span(rest).first(2), 1.0), DomainError);
}

TEST_CASE("theorem residual converges for free, harmonic and magnetic Hamiltonians") {
  const auto P = natural_units(1.0);
  const auto tp = classical::TrajectoryParams::nonrelativistic(pt(1, 0, 0, 0, 0.5, 0), P);
  std::vector<Study> studies;
  studies.push_back({free_2d(), 2, 14.0,
                     [](const Vec3& r, double t) {
                       const cplx w(1.0, t);  // free Gaussian of unit width, m = hbar = 1
                       return std::exp(-(r[0] * r[0] + r[1] * r[1]) / (2.0 * w)) / w;
                     },
                     ClassicalFlowState::start(2, {0.5, -0.3, 0}, {0.8, 0.4, 0})});
  studies.push_back({harmonic_1d(), 1, 12.0,
                     [](const Vec3& r, double t) { return std::exp(-0.5 * r[0] * r[0]) * std::polar(1.0, -0.5 * t); },
                     ClassicalFlowState::start(1, {1.5, 0, 0}, {0.5, 0, 0})});
  studies.push_back({magnetic_to_quadratic(P, 1.0, 2), 2, 12.0,
                     [](const Vec3& r, double t) {
                       return nonrel::landau_profile({0, 0}, 1.0, r[0], r[1]).value * std::polar(1.0, -0.5 * t);
                     },
                     magnetic_flow(tp, 0.0, 2)});
  for (const auto& s : studies) {
    const auto [u1, r1] = residuals(s, 64);
    const auto [u2, r2] = residuals(s, 128);
    CAPTURE(s.dim);
    CHECK(numerics::convergence_order(r1, r2) > 3.5);
    // the injected plane wave adds k^4 h^4 stencil error; only the magnetic
    // case is held to the factor-10 bound
    if (&s == &studies.back()) CHECK(r2 < 10 * u2);
    const auto [ub, rb] = residuals(s, 128, true);
    CHECK(rb > 1e3 * u2);
  }
}
