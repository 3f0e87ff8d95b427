#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "helix/errors.hpp"
#include "helix/numerics/grid.hpp"
#include "helix/numerics/quadrature.hpp"
#include "helix/numerics/residual.hpp"
#include "helix/rel.hpp"

using namespace helix;
using namespace helix::rel;

namespace {

classical::PhaseSpacePoint pt(double x, double y, double px, double py) {
  classical::PhaseSpacePoint p;
  p.x = x, p.y = y, p.px = px, p.py = py;
  return p;
}

KGHelicalParams sample_params(Spin s = Spin::up) {
  return {{2, 1}, 1.3, pt(0.8, -0.4, 0.3, 0.5), s};
}

}  // namespace

TEST_CASE("lightcone coordinates round trip") {
  const auto lc = LightconeTime::from(2.0, 0.6, 3.0);
  CHECK(lc.t_plus == doctest::Approx(2.2));
  CHECK(lc.t_minus == doctest::Approx(1.8));
  CHECK(lc.t() == doctest::Approx(2.0));
  CHECK(lc.z(3.0) == doctest::Approx(0.6));
}

TEST_CASE("lightcone frequencies") {
  const auto P = natural_units(0.5);
  KGHelicalParams p{{0, 0}, 2.0, {}, Spin::up};
  auto [ap, am] = lightcone_frequencies(p, P);
  CHECK(ap == doctest::Approx(1.0));
  CHECK(am == doctest::Approx((1.0 - 0.5) / 4.0));
  p.spin = Spin::down;
  std::tie(ap, am) = lightcone_frequencies(p, P);
  CHECK(am == doctest::Approx((1.0 + 0.5) / 4.0));
}

TEST_CASE("parameter validation") {
  const auto P = natural_units(1.0);
  KGHelicalParams p = sample_params();
  p.M = 0.5;
  CHECK_THROWS_AS(p.validate(P), DomainError);
  CHECK_THROWS_AS(sample_params().validate(natural_units(0.0)), DomainError);
  p = sample_params();
  p.traj.px = INFINITY;
  CHECK_THROWS_AS(p.validate(P), DomainError);
  CHECK_NOTHROW(sample_params().validate(P));
}

TEST_CASE("lift of a plane wave at rest") {
  const auto P = natural_units(0.0);
  const double t = 0.7;
  const cplx phi = std::polar(1.0, -t);
  ScalarJet j{phi, cplx(0, -1) * phi, 0.0, 0.0, 0.0};
  const auto up = dirac_lift(j, Spin::up, P, {0, 0, 0});
  CHECK(std::abs(up.c[0] - phi) < 1e-15);
  CHECK(std::abs(up.c[1]) == 0.0);
  CHECK(std::abs(up.c[2] - phi) < 1e-15);
  CHECK(std::abs(up.c[3]) < 1e-15);
  const auto down = dirac_lift(j, Spin::down, P, {0, 0, 0});
  CHECK(std::abs(down.c[1] - phi) < 1e-15);
  CHECK(std::abs(down.c[3] - phi) < 1e-15);
  j.dz.reset();
  CHECK_THROWS_AS(dirac_lift(j, Spin::up, P, {0, 0, 0}), DomainError);
}

TEST_CASE("zero trajectory at the guiding centre") {
  const auto P = natural_units(1.0);
  const KGHelicalParams p{{1, 0}, 1.5, {}, Spin::up};
  const auto b = dirac_helical(p, P, {0, 0, 0}, 0.0);
  CHECK(std::abs(b.c[2] / b.c[0] - 1.5) < 1e-14);
  CHECK(std::abs(b.c[1]) == 0.0);
  CHECK(std::abs(b.c[3]) == 0.0);
}

TEST_CASE("analytic jet matches central differences") {
  const auto P = natural_units(0.7);
  for (Spin s : {Spin::up, Spin::down}) {
    const auto p = sample_params(s);
    const Vec3 r{0.4, -0.9, 0.3};
    const double t = 1.1, h = 1e-5;
    const auto j = kg_helical_jet(p, P, r, t);
    auto f = [&](Vec3 q, double tt) { return kg_helical(p, P, q, tt); };
    auto shift = [&](int a, double d) {
      Vec3 q = r;
      q[a] += d;
      return q;
    };
    CHECK(std::abs(j.value - f(r, t)) == 0.0);
    CHECK(std::abs(*j.dt - (f(r, t + h) - f(r, t - h)) / (2 * h)) < 1e-8);
    CHECK(std::abs(*j.dx - (f(shift(0, h), t) - f(shift(0, -h), t)) / (2 * h)) < 1e-8);
    CHECK(std::abs(*j.dy - (f(shift(1, h), t) - f(shift(1, -h), t)) / (2 * h)) < 1e-8);
    CHECK(std::abs(*j.dz - (f(shift(2, h), t) - f(shift(2, -h), t)) / (2 * h)) < 1e-8);
  }
}

TEST_CASE("closed-form bispinor equals the lift of the scalar") {
  const auto P = natural_units(0.9);
  for (auto qn : {QuantumNumbers{0, 0}, {2, 1}, {3, 4}}) {
    KGHelicalParams p{qn, 1.4, pt(1.1, 0.3, -0.2, 0.6), Spin::up};
    for (const Vec3 r : {Vec3{0.2, 0.4, 0.0}, Vec3{-1.0, 1.5, 0.8}, Vec3{2.2, -0.3, -0.6}}) {
      const double t = 0.9;
      const auto a = dirac_helical(p, P, r, t);
      const auto b = dirac_lift(kg_helical_jet(p, P, r, t), Spin::up, P, r);
      double scale = 0;
      for (const auto& v : b.c) scale = std::max(scale, std::abs(v));
      for (int k = 0; k < 4; ++k) CHECK(std::abs(a.c[k] - b.c[k]) <= 1e-12 * scale);
    }
  }
}

TEST_CASE("closed-form density agrees with the bispinor and its norm") {
  const auto P = natural_units(0.9);
  const auto p = sample_params();
  for (double t : {0.0, 2.5}) {
    const Vec3 r{0.5, -0.2, 0.3};
    CHECK(dirac_density_raw(p, P, r, t) ==
          doctest::Approx(dirac_helical(p, P, r, t).density()).epsilon(1e-12));
    CHECK(dirac_density(p, P, r, t) ==
          doctest::Approx(dirac_density_raw(p, P, r, t) / dirac_density_norm(p, P)));
  }
  for (double tm : {0.0, 1.7, 5.2}) {
    auto q = default_corrections_quadrature(p, P, tm);
    const auto I = numerics::integrate(
        [&](const Vec3& v) { return dirac_density_raw(p, P, {v[0], v[1], 0.0}, tm); }, q);
    CHECK(I.value == doctest::Approx(dirac_density_norm(p, P)).epsilon(1e-10));
  }
  CHECK_THROWS_AS(dirac_density(sample_params(Spin::down), P, {0, 0, 0}, 0.0), DomainError);
}

TEST_CASE("centroid corrections") {
  const auto P = natural_units(0.9);
  KGHelicalParams ground{{0, 2}, 1.3, pt(0.8, -0.4, 0.3, 0.5), Spin::up};
  const auto c0 = dirac_corrections(ground, P, 1.0);
  CHECK(c0.x == 0.0);
  CHECK(c0.y == 0.0);
  const auto p = sample_params();
  for (double tm : {0.0, 2.0}) {
    const auto closed = dirac_corrections(p, P, tm);
    const auto quad = corrections_oracle(p, P, tm, default_corrections_quadrature(p, P, tm));
    CHECK(std::abs(closed.x - quad.x) < 1e-9);
    CHECK(std::abs(closed.y - quad.y) < 1e-9);
    const auto other = dirac_corrections(p, P, tm, DenominatorForm::one_mass);
    CHECK(std::abs(other.x - quad.x) > 1e-3);
  }
  CHECK_THROWS_AS(dirac_corrections(sample_params(Spin::down), P, 0.0), DomainError);
}

TEST_CASE("positive-frequency content") {
  const auto P = natural_units(0.1);
  const KGHelicalParams p{{2, 1}, 1.2, pt(2.0, 0.0, 0.0, 0.1), Spin::up};
  const double T = 2 * M_PI / P.cyclotron_frequency(p.M);
  const Vec3 probe{0.5, -0.3, 0.0};
  const auto good = positivity_spectrum(p, P, probe, 16 * T, 4096);
  CHECK(good.wrong_side_fraction < 1e-6);
  const auto bad = positivity_spectrum(p, P, probe, 16 * T, 4096, true);
  CHECK(bad.wrong_side_fraction > 0.99);
  CHECK_THROWS_AS(positivity_spectrum(p, P, probe, 16 * T, 1000), DomainError);
  CHECK_THROWS_AS(positivity_spectrum(p, P, probe, 4 * T, 4096), DomainError);
  CHECK_THROWS_AS(positivity_spectrum(p, P, probe, 16 * T, 256), DomainError);
}

TEST_CASE("reduced transverse field solves the 2D equation with mass M") {
  const auto P = natural_units(1.0);
  const auto p = sample_params();
  const auto [ap, am] = lightcone_frequencies(p, P);
  auto run = [&](int N, bool drop_phase) {
    const auto g = numerics::Grid3::centered(2, N, 9.0);
    const double h = g.spacing[0], dt = 0.5 * h * h;
    const auto series = numerics::sample_series(g, 0.4, dt, 3, [&](const Vec3& r, double tau) {
      const cplx v = kg_helical(p, P, {r[0], r[1], 0.0}, tau);
      return drop_phase ? v : v * std::polar(1.0, (ap + am) * tau);
    });
    return kg_reduced_residual(series, p.M, P);
  };
  const double r1 = run(64, false), r2 = run(128, false);
  CHECK(numerics::convergence_order(r1, r2) > 3.5);
  CHECK(run(128, true) > 1e3 * r2);
  CHECK_THROWS_AS(kg_reduced_residual({}, 0.0, P), DomainError);
}
