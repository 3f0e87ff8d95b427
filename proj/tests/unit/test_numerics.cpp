#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "helix/errors.hpp"
#include "helix/ict.hpp"
#include "helix/nonrel.hpp"
#include "helix/numerics/fft.hpp"
#include "helix/numerics/grid.hpp"
#include "helix/numerics/parallel.hpp"
#include "helix/numerics/propagate.hpp"
#include "helix/numerics/quadrature.hpp"
#include "helix/numerics/residual.hpp"
#include "helix/numerics/spectral.hpp"

using namespace helix;
using namespace helix::numerics;

namespace {

double max_abs_diff(const ComplexField& a, const ComplexField& b) {
  double w = 0;
  for (std::size_t i = 0; i < a.data.size(); ++i) w = std::max(w, std::abs(a.data[i] - b.data[i]));
  return w;
}

ComplexField gaussian(const Grid3& g, double x0, double y0, double s = 1.0) {
  return sample(g, [=](const Vec3& r) {
    const double dx = r[0] - x0, dy = r[1] - y0;
    return cplx(std::exp(-(dx * dx + dy * dy) / (2 * s * s)), 0.0);
  });
}

}  // namespace

TEST_CASE("Gauss-Hermite moments") {
  const auto rule = gauss_hermite(20);
  double m0 = 0, m4 = 0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    const double u = rule.nodes[i], w = rule.scaled_weights[i] * std::exp(-u * u);
    m0 += w;
    m4 += w * u * u * u * u;
  }
  CHECK(m0 == doctest::Approx(std::sqrt(M_PI)).epsilon(1e-14));
  CHECK(m4 == doctest::Approx(0.75 * std::sqrt(M_PI)).epsilon(1e-13));
  CHECK_THROWS_AS(gauss_hermite(0), DomainError);
}

TEST_CASE("tensor quadrature") {
  QuadratureSpec q;
  q.dim = 2;
  q.points = {64, 64, 1};
  q.center = {1.0, -2.0, 0};
  const auto g = integrate(
      [](const Vec3& r) { return std::exp(-(r[0] - 1) * (r[0] - 1) - (r[1] + 2) * (r[1] + 2)); }, q);
  CHECK(g.value == doctest::Approx(M_PI).epsilon(1e-13));
  CHECK(g.error_estimate < 1e-12);
  const auto odd = integrate([](const Vec3& r) { return (r[0] - 1) * std::exp(-(r[0] - 1) * (r[0] - 1) - (r[1] + 2) * (r[1] + 2)); }, q);
  CHECK(std::abs(odd.value) < 1e-13);
  CHECK_THROWS_AS(integrate([](const Vec3&) { return 1.0; }, q), AccuracyError);
  q.rule = QuadRule::gauss_hermite;
  q.points = {24, 24, 1};
  const auto h = integrate([](const Vec3& r) { return std::exp(-(r[0] - 1) * (r[0] - 1) - (r[1] + 2) * (r[1] + 2)); }, q);
  CHECK(h.value == doctest::Approx(M_PI).epsilon(1e-13));
  q.points = {4, 24, 1};
  CHECK_THROWS_AS(q.validate(), DomainError);
}

TEST_CASE("FFT round trip and single mode") {
  const auto g = Grid3::centered(2, 32, 4.0);
  std::mt19937 rng(7);
  std::normal_distribution<double> nd;
  ComplexField f(g);
  for (auto& v : f.data) v = {nd(rng), nd(rng)};
  auto h = f;
  fft(h, FftDirection::forward);
  fft(h, FftDirection::inverse);
  CHECK(max_abs_diff(h, f) < 1e-13);

  const auto k = wavenumbers(32, g.spacing[0]);
  CHECK(k[0] == 0.0);
  CHECK(k[1] == doctest::Approx(2 * M_PI / 8.0));
  CHECK(k[16] == doctest::Approx(-16 * 2 * M_PI / 8.0));
  auto mode = sample(g, [&](const Vec3& r) { return std::polar(1.0, k[3] * (r[0] - g.origin[0])); });
  fft(mode, FftDirection::forward);
  CHECK(std::abs(mode.at(3, 0, 0) - cplx(32.0 * 32.0, 0)) < 1e-9);
  CHECK(std::abs(mode.at(4, 0, 0)) < 1e-9);
}

TEST_CASE("Fourier shift and rotation") {
  const auto g = Grid3::centered(2, 64, 10.0);
  const auto f = gaussian(g, 0.5, -1.0);
  CHECK(max_abs_diff(fourier_shift(f, {0.7, 0.3, 0}), gaussian(g, 1.2, -0.7)) < 1e-12);
  CHECK(max_abs_diff(rotate(f, M_PI / 2), gaussian(g, 1.0, 0.5)) < 1e-14);
  const double th = 0.4;
  const auto r = rotate(f, th);
  const auto expect = gaussian(g, 0.5 * std::cos(th) + 1.0 * std::sin(th), 0.5 * std::sin(th) - 1.0 * std::cos(th));
  CHECK(max_abs_diff(r, expect) < 1e-10);
  CHECK(max_abs_diff(rotate(r, -th), f) < 1e-10);
  CHECK(spectral_tail_fraction(f) < 1e-20);
}

TEST_CASE("split-step oscillator") {
  const auto g = Grid3::centered(2, 64, 10.0);
  const auto f = gaussian(g, 1.5, 0.0);
  CHECK(max_abs_diff(splitstep_oscillator(f, 1.0, 1.0, 1.0, 1.0, 0), f) == 0.0);
  CHECK_THROWS_AS(splitstep_oscillator(f, 1.0, 1.0, 1.0, 1.0, 10), DomainError);

  // frequency 0 is free motion: a unit Gaussian spreads as 1/(1 + i t)
  const double t = 1.3;
  const auto wide = Grid3::centered(2, 128, 16.0);
  const auto free = splitstep_oscillator(gaussian(wide, 0, 0), 1.0, 0.0, 1.0, t, 100);
  const auto exact = sample(wide, [&](const Vec3& r) {
    const cplx w(1.0, t);
    return std::exp(-(r[0] * r[0] + r[1] * r[1]) / (2.0 * w)) / w;
  });
  CHECK(max_abs_diff(free, exact) < 1e-12);

  // coherent state returns after a full period; error falls as steps^-2 over a factor-8 range
  const double T = 2 * M_PI;
  auto err = [&](int steps) { return l2_relative_error(splitstep_oscillator(f, 1.0, 1.0, 1.0, T, steps), f); };
  const double e1 = err(200), e8 = err(1600);
  CHECK(convergence_order(e1, e8, 8.0) == doctest::Approx(2.0).epsilon(0.02));
  CHECK(std::abs(l2_norm_squared(splitstep_oscillator(f, 1.0, 1.0, 1.0, 2.0, 1000)) / l2_norm_squared(f) - 1) < 1e-12);
}

TEST_CASE("magnetic split-step keeps a Landau state stationary in modulus") {
  const auto P = natural_units(1.0);
  const auto g = Grid3::centered(2, 64, 10.0);
  const auto f = sample(g, [](const Vec3& r) { return nonrel::landau_profile({1, 1}, 1.0, r[0], r[1]).value; });
  const auto out = splitstep_propagate(f, 1.0, P, 1.7, 2000);
  const double phase = std::arg(out.at(40, 32, 0) / f.at(40, 32, 0));
  ComplexField back = out;
  for (auto& v : back.data) v *= std::polar(1.0, -phase);
  CHECK(l2_relative_error(back, f) < 1e-5);
  auto rough = f;
  rough.at(5, 5, 0) = 1.0;
  CHECK_THROWS_AS(splitstep_propagate(rough, 1.0, P, 1.0, 200), AccuracyError);
}

TEST_CASE("spectral analysis sign convention") {
  const int N = 1024;
  const double dt = 0.05, w0 = 3.0;
  std::vector<cplx> s(N);
  for (int i = 0; i < N; ++i) s[i] = std::polar(1.0, -w0 * i * dt);
  const auto sp = spectral_analyze(s, dt);
  CHECK(std::abs(sp.omega[sp.peak()] - w0) <= 2 * M_PI / (N * dt));
  CHECK(sp.wrong_side_fraction() < 1e-8);
  for (auto& v : s) v = std::conj(v);
  CHECK(spectral_analyze(s, dt).wrong_side_fraction() > 0.999);
  s.resize(1000);
  CHECK_THROWS_AS(spectral_analyze(s, dt), DomainError);
}

TEST_CASE("residual scales linearly and checks axes") {
  const auto P = natural_units(1.0);
  const auto H = ict::magnetic_to_quadratic(P, 1.0, 2);
  const auto g = Grid3::centered(2, 32, 6.0);
  auto f = [](const Vec3& r, double t) { return cplx(std::exp(-r[0] * r[0] - 0.3 * r[1] * r[1]), t); };
  const auto a = sample_series(g, 0.0, 0.01, 3, f);
  auto b = a;
  for (auto& s : b.slices)
    for (auto& v : s.data) v *= cplx(0, 2.5);
  CHECK(residual_schrodinger(b, H, 1.0) == doctest::Approx(2.5 * residual_schrodinger(a, H, 1.0)));
  CHECK_THROWS_AS(residual_schrodinger(sample_series(Grid3::centered(3, 16, 6.0), 0.0, 0.01, 3, f), H, 1.0),
                  DomainError);
  auto two = a;
  two.slices.pop_back();
  CHECK_THROWS_AS(residual_schrodinger(two, H, 1.0), DomainError);
}

TEST_CASE("parallel loops and summation are deterministic") {
  std::vector<double> v(100001);
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = 1.0 / double(i + 1);
  const double serial = pairwise_sum(v);
  set_thread_count(4);
  std::vector<double> out(v.size());
  parallel_for(v.size(), [&](std::size_t i) { out[i] = v[i]; });
  set_thread_count(1);
  CHECK(pairwise_sum(out) == serial);
  CHECK_THROWS_AS(Grid3::centered(2, 8, 1.0).validate_for_stencils(), DomainError);
}
