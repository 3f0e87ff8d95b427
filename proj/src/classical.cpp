#include "helix/classical.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>

#include "helix/errors.hpp"

namespace helix::classical {

bool PhaseSpacePoint::finite() const {
  return std::isfinite(x) && std::isfinite(y) && std::isfinite(z) && std::isfinite(px) &&
         std::isfinite(py) && std::isfinite(pz);
}

TrajectoryParams TrajectoryParams::with_mass(const PhaseSpacePoint& p0, const PhysParams& params,
                                             double M) {
  validate(params);
  if (!(M > 0.0) || !std::isfinite(M)) throw DomainError("TrajectoryParams: M must be positive");
  if (!p0.finite()) throw DomainError("TrajectoryParams: non-finite initial point");
  return TrajectoryParams{p0, M, params.cyclotron_frequency(M)};
}

TrajectoryParams TrajectoryParams::nonrelativistic(const PhaseSpacePoint& p0,
                                                   const PhysParams& params) {
  return with_mass(p0, params, params.m);
}

TrajectoryParams TrajectoryParams::relativistic(const PhaseSpacePoint& p0, const PhysParams& params) {
  return with_mass(p0, params, relativistic_mass(p0, params));
}

double TrajectoryParams::period() const {
  if (omega == 0.0) return std::numeric_limits<double>::infinity();
  return 2.0 * M_PI / std::abs(omega);
}

double hamiltonian_nr(const PhaseSpacePoint& p, const PhysParams& params) {
  const double hb = params.hbar * params.B;
  const double p2 = p.px * p.px + p.py * p.py + p.pz * p.pz;
  return (p2 + 0.25 * hb * hb * (p.x * p.x + p.y * p.y) - hb * (p.x * p.py - p.y * p.px)) /
         (2.0 * params.m);
}

double hamiltonian_rl(const PhaseSpacePoint& p, const PhysParams& params) {
  const double mc = params.m * params.c;
  return params.c * std::sqrt(mc * mc + 2.0 * params.m * hamiltonian_nr(p, params));
}

double relativistic_mass(const PhaseSpacePoint& p0, const PhysParams& params) {
  return hamiltonian_rl(p0, params) / (params.c * params.c);
}

PhaseSpacePoint trajectory_closed_form(const TrajectoryParams& tp, double t) {
  const auto& q = tp.initial;
  const double M = tp.M;
  const double w = tp.omega;
  PhaseSpacePoint r;
  r.z = q.z + q.pz / M * t;
  r.pz = q.pz;
  if (w == 0.0) {
    r.x = q.x + q.px / M * t;
    r.y = q.y + q.py / M * t;
    r.px = q.px;
    r.py = q.py;
    return r;
  }
  const double s = std::sin(w * t);
  const double c = std::cos(w * t);
  const double Mw = M * w;
  r.x = 0.5 * q.x * (1 + c) + 0.5 * q.y * s + q.px * s / Mw + q.py * (1 - c) / Mw;
  r.y = -0.5 * q.x * s + 0.5 * q.y * (1 + c) - q.px * (1 - c) / Mw + q.py * s / Mw;
  r.px = -0.25 * q.x * Mw * s - 0.25 * q.y * Mw * (1 - c) + 0.5 * q.px * (1 + c) + 0.5 * q.py * s;
  // y0 enters with M omega, as in the x-momentum row.
  r.py = 0.25 * q.x * Mw * (1 - c) - 0.25 * q.y * Mw * s - 0.5 * q.px * s + 0.5 * q.py * (1 + c);
  return r;
}

std::array<double, 6> canonical_rhs(const std::array<double, 6>& s, double M, double omega) {
  // s = (x, y, z, px, py, pz); hbar B / 2M = omega / 2, (hbar B)^2 / 4M = M omega^2 / 4.
  const double h = 0.5 * omega;
  const double k = 0.25 * M * omega * omega;
  return {s[3] / M + h * s[1], s[4] / M - h * s[0], s[5] / M,
          -k * s[0] + h * s[4], -k * s[1] - h * s[3], 0.0};
}

PhaseSpacePoint trajectory_rk4(const TrajectoryParams& tp, double t, double dt) {
  if (!(dt > 0.0)) throw DomainError("trajectory_rk4: dt must be positive");
  const double nsteps_real = std::ceil(std::abs(t) / dt - 1e-9);
  if (nsteps_real > 1e8) throw ResourceError("trajectory_rk4: more than 1e8 steps requested");
  const auto n = static_cast<long>(nsteps_real);
  const auto& q = tp.initial;
  std::array<double, 6> s{q.x, q.y, q.z, q.px, q.py, q.pz};
  if (n == 0) return q;
  const double h = t / static_cast<double>(n);
  auto axpy = [](const std::array<double, 6>& a, double f, const std::array<double, 6>& b) {
    std::array<double, 6> r;
    for (int i = 0; i < 6; ++i) r[i] = a[i] + f * b[i];
    return r;
  };
  for (long i = 0; i < n; ++i) {
    const auto k1 = canonical_rhs(s, tp.M, tp.omega);
    const auto k2 = canonical_rhs(axpy(s, 0.5 * h, k1), tp.M, tp.omega);
    const auto k3 = canonical_rhs(axpy(s, 0.5 * h, k2), tp.M, tp.omega);
    const auto k4 = canonical_rhs(axpy(s, h, k3), tp.M, tp.omega);
    for (int j = 0; j < 6; ++j) s[j] += h / 6.0 * (k1[j] + 2 * k2[j] + 2 * k3[j] + k4[j]);
  }
  return {s[0], s[1], s[2], s[3], s[4], s[5]};
}

GuidingCenter guiding_center(const PhaseSpacePoint& p, double M, double omega) {
  if (omega == 0.0) throw DomainError("guiding_center: undefined for omega == 0");
  // kinetic momentum: pi = p - eA, eA = (M omega / 2)(-y, x)
  const double pix = p.px + 0.5 * M * omega * p.y;
  const double piy = p.py - 0.5 * M * omega * p.x;
  const double Mw = M * omega;
  return {p.x + piy / Mw, p.y - pix / Mw, std::hypot(pix, piy) / std::abs(Mw)};
}

void write_trajectory_csv(std::ostream& os, const TrajectoryParams& tp, std::span<const double> times) {
  os << "t,x,y,z,px,py,pz\n";
  char buf[512];
  for (double t : times) {
    const auto p = trajectory_closed_form(tp, t);
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n", t, p.x, p.y, p.z,
                  p.px, p.py, p.pz);
    os << buf;
  }
}

}  // namespace helix::classical
