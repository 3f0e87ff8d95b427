#include "helix/numerics/propagate.hpp"

#include <cmath>
#include <string>

#include "helix/errors.hpp"
#include "helix/numerics/fft.hpp"
#include "helix/numerics/parallel.hpp"

namespace helix::numerics {

namespace {

constexpr double kAliasingLimit = 1e-10;

void require_centered_square(const Grid3& g, const char* who) {
  g.validate_for_stencils();
  if (g.n[2] != 1 || g.n[0] != g.n[1] || g.spacing[0] != g.spacing[1])
    throw DomainError(std::string(who) + ": needs a square 2D grid");
  for (int a = 0; a < 2; ++a)
    if (std::abs(g.origin[a] + 0.5 * g.n[a] * g.spacing[a]) > 1e-12 * g.n[a] * g.spacing[a])
      throw DomainError(std::string(who) + ": grid must be centred on the origin");
}

// g(x, y) = f(x + a*y, y): shift each x-line by -a*y.
void shear_x(ComplexField& f, double a) {
  const auto& g = f.grid;
  const int nx = g.n[0], ny = g.n[1];
  const auto k = wavenumbers(nx, g.spacing[0]);
  parallel_for(std::size_t(ny), [&](std::size_t jj) {
    const int j = int(jj);
    const double delta = a * g.point(0, j, 0)[1];
    std::vector<cplx> line(nx);
    for (int i = 0; i < nx; ++i) line[i] = f.at(i, j, 0);
    fft_1d(line, FftDirection::forward);
    for (int i = 0; i < nx; ++i) line[i] *= std::polar(1.0 / nx, k[i] * delta);
    fft_1d(line, FftDirection::inverse);
    for (int i = 0; i < nx; ++i) f.at(i, j, 0) = line[i];
  });
}

// g(x, y) = f(x, y + b*x)
void shear_y(ComplexField& f, double b) {
  const auto& g = f.grid;
  const int nx = g.n[0], ny = g.n[1];
  const auto k = wavenumbers(ny, g.spacing[1]);
  parallel_for(std::size_t(nx), [&](std::size_t ii) {
    const int i = int(ii);
    const double delta = b * g.point(i, 0, 0)[0];
    std::vector<cplx> line(ny);
    for (int j = 0; j < ny; ++j) line[j] = f.at(i, j, 0);
    fft_1d(line, FftDirection::forward);
    for (int j = 0; j < ny; ++j) line[j] *= std::polar(1.0 / ny, k[j] * delta);
    fft_1d(line, FftDirection::inverse);
    for (int j = 0; j < ny; ++j) f.at(i, j, 0) = line[j];
  });
}

// g(x, y) = f(y, -x) on a centred periodic square grid.
ComplexField quarter_turn(const ComplexField& f) {
  ComplexField out(f.grid);
  const int n = f.grid.n[0];
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) out.at(i, j, 0) = f.at(j, (n - i) % n, 0);
  return out;
}

}  // namespace

ComplexField fourier_shift(const ComplexField& f, const Vec3& a) {
  f.grid.validate();
  ComplexField out = f;
  fft(out, FftDirection::forward);
  std::array<std::vector<double>, 3> k;
  for (int ax = 0; ax < 3; ++ax) k[ax] = wavenumbers(f.grid.n[ax], f.grid.spacing[ax]);
  const auto& n = f.grid.n;
  for (int i = 0; i < n[0]; ++i)
    for (int j = 0; j < n[1]; ++j)
      for (int l = 0; l < n[2]; ++l) {
        const double phase = -(k[0][i] * a[0] * (n[0] > 1) + k[1][j] * a[1] * (n[1] > 1) +
                               k[2][l] * a[2] * (n[2] > 1));
        out.at(i, j, l) *= std::polar(1.0, phase);
      }
  fft(out, FftDirection::inverse);
  return out;
}

ComplexField rotate(const ComplexField& f, double theta) {
  require_centered_square(f.grid, "rotate");
  const double quarter = 0.5 * M_PI;
  const long q = std::lround(theta / quarter);
  const double rest = theta - double(q) * quarter;
  // f o (R(-q pi/2) R(-rest)): quarter turns first, then the shears.
  ComplexField out = f;
  for (long i = 0; i < ((q % 4) + 4) % 4; ++i) out = quarter_turn(out);
  if (rest != 0.0) {
    const double t = std::tan(0.5 * rest);
    const double s = std::sin(rest);
    shear_x(out, t);
    shear_y(out, -s);
    shear_x(out, t);
  }
  return out;
}

double spectral_tail_fraction(const ComplexField& f) {
  ComplexField spec = f;
  fft(spec, FftDirection::forward);
  const auto& n = f.grid.n;
  std::vector<double> tail, all;
  tail.reserve(spec.data.size());
  all.reserve(spec.data.size());
  auto outer = [](int i, int len) {
    if (len == 1) return false;
    const int m = i < len / 2 ? i : len - i;
    return 4 * m > 3 * (len / 2);
  };
  for (int i = 0; i < n[0]; ++i)
    for (int j = 0; j < n[1]; ++j)
      for (int l = 0; l < n[2]; ++l) {
        const double p = std::norm(spec.at(i, j, l));
        all.push_back(p);
        tail.push_back(outer(i, n[0]) || outer(j, n[1]) || outer(l, n[2]) ? p : 0.0);
      }
  const double total = pairwise_sum(all);
  return total > 0 ? pairwise_sum(tail) / total : 0.0;
}

ComplexField splitstep_oscillator(const ComplexField& initial, double mass, double frequency,
                                  double hbar, double t_final, int steps) {
  if (steps == 0 || t_final == 0.0) return initial;
  if (steps < 100) throw DomainError("splitstep_propagate: at least 100 steps required");
  if (!(mass > 0) || !(hbar > 0)) throw DomainError("splitstep_propagate: bad mass or hbar");
  const Grid3& g = initial.grid;
  g.validate_for_stencils();
  const double dt = t_final / steps;

  ComplexField half_kick(g), drift(g);
  std::array<std::vector<double>, 3> k;
  for (int a = 0; a < 3; ++a) k[a] = wavenumbers(g.n[a], g.spacing[a]);
  for (int i = 0; i < g.n[0]; ++i)
    for (int j = 0; j < g.n[1]; ++j)
      for (int l = 0; l < g.n[2]; ++l) {
        const Vec3 r = g.point(i, j, l);
        double r2 = 0.0, k2 = 0.0;
        const int idx[3] = {i, j, l};
        for (int a = 0; a < 3; ++a)
          if (g.n[a] > 1) {
            r2 += r[a] * r[a];
            k2 += k[a][idx[a]] * k[a][idx[a]];
          }
        const double V = 0.5 * mass * frequency * frequency * r2;
        half_kick.at(i, j, l) = std::polar(1.0, -0.5 * V * dt / hbar);
        drift.at(i, j, l) = std::polar(1.0, -0.5 * hbar * k2 * dt / mass);
      }

  ComplexField psi = initial;
  auto apply = [](ComplexField& f, const ComplexField& phase) {
    for (std::size_t i = 0; i < f.data.size(); ++i) f.data[i] *= phase.data[i];
  };
  for (int s = 0; s < steps; ++s) {
    apply(psi, half_kick);
    fft(psi, FftDirection::forward);
    apply(psi, drift);
    fft(psi, FftDirection::inverse);
    apply(psi, half_kick);
  }
  return psi;
}

ComplexField splitstep_propagate(const ComplexField& initial, double M, const PhysParams& params,
                                 double t_final, int steps) {
  validate(params);
  if (!(M > 0)) throw DomainError("splitstep_propagate: M must be positive");
  if (steps == 0 || t_final == 0.0) return initial;
  require_centered_square(initial.grid, "splitstep_propagate");
  check_finite(initial);
  if (const double tail = spectral_tail_fraction(initial); tail > kAliasingLimit)
    throw AccuracyError("splitstep_propagate: initial field is under-resolved (spectral tail " +
                        std::to_string(tail) + ")");
  const double omega = params.cyclotron_frequency(M);
  ComplexField psi = splitstep_oscillator(initial, M, 0.5 * omega, params.hbar, t_final, steps);
  // exp(+i omega t L_z / 2 hbar) psi (r) = psi(R(omega t / 2) r)
  psi = rotate(psi, -0.5 * omega * t_final);
  if (const double tail = spectral_tail_fraction(psi); tail > kAliasingLimit)
    throw AccuracyError("splitstep_propagate: aliasing detected (spectral tail " +
                        std::to_string(tail) + ")");
  return psi;
}

}  // namespace helix::numerics
