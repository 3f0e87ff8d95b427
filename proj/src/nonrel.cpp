#include "helix/nonrel.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "helix/errors.hpp"

namespace helix::nonrel {

void PacketParams::validate() const {
  specfun::validate(qn);
  if (!(d > 0) || !std::isfinite(d)) throw DomainError("PacketParams: d must be positive");
  if (!std::isfinite(pz)) throw DomainError("PacketParams: pz must be finite");
}

namespace {

// exp(log_mag) * exp(i phase) without forming huge intermediate factors.
cplx from_log(double log_mag, double phase) { return std::polar(std::exp(log_mag), phase); }

void check_rest_mass(const PhysParams& params, const classical::TrajectoryParams& traj) {
  if (std::abs(traj.M - params.m) > 1e-12 * params.m)
    throw DomainError("helical_state: trajectory mass must equal the rest mass");
}

}  // namespace

TransverseProfile landau_profile(const QuantumNumbers& qn, double B, double x, double y) {
  specfun::validate(qn);
  const int n = qn.n, l = qn.l;
  const double rho2 = x * x + y * y;
  const double u = 0.5 * B * rho2;
  const double logN = specfun::log_landau_norm(n, l, B);
  const double L = specfun::laguerre(n, l, u);
  const double Lp = specfun::laguerre(n - 1, l + 1, u);  // -dL/du
  const double gauss_log = logN - 0.25 * B * rho2;
  const double arg = std::atan2(y, x);
  const double log_r = 0.5 * std::log(rho2);

  // w^l and l w^(l-1) with w = x + iy
  cplx wl, wl1;
  if (l == 0) {
    wl = std::exp(gauss_log);
    wl1 = 0.0;
  } else if (rho2 == 0.0) {
    wl = 0.0;
    wl1 = l == 1 ? cplx(std::exp(gauss_log)) : cplx(0.0);
  } else {
    wl = from_log(gauss_log + l * log_r, l * arg);
    wl1 = double(l) * from_log(gauss_log + (l - 1) * log_r, (l - 1) * arg);
  }
  TransverseProfile p;
  p.value = wl * L;
  // d/dx: (-Bx/2) w^l L + l w^(l-1) L - w^l L' B x     (L' = L_{n-1}^{l+1})
  p.dx = -0.5 * B * x * wl * L + wl1 * L - B * x * wl * Lp;
  p.dy = -0.5 * B * y * wl * L + cplx(0, 1) * wl1 * L - B * y * wl * Lp;
  return p;
}

cplx landau_state(const PhysParams& params, const PacketParams& packet, const Vec3& r, double t) {
  validate(params);
  specfun::validate(packet.qn);
  if (!(params.B > 0)) throw DomainError("landau_state: B must be positive");
  const auto& qn = packet.qn;
  const double hb = params.hbar;
  const double phase = -(packet.pz * packet.pz + (2 * qn.n + 1) * params.B * hb * hb) * t /
                           (2 * params.m * hb) +
                       packet.pz * r[2] / hb;
  return std::polar(1.0, phase) * landau_profile(qn, params.B, r[0], r[1]).value;
}

cplx packet_state(const PhysParams& params, const PacketParams& packet, const Vec3& r, double t) {
  validate(params);
  packet.validate();
  if (!(params.B > 0)) throw DomainError("packet_state: B must be positive");
  const double m = params.m, hb = params.hbar, d = packet.d, z = r[2];
  const cplx I(0, 1);
  // principal branch of (d + i hbar t / m d)^(-1/2), continuous from t = 0
  const cplx width = d + I * hb * t / (m * d);
  const cplx axial = std::pow(M_PI, -0.25) * std::exp(-m * z * z / (2 * m * d * d + 2.0 * I * hb * t)) /
                     std::sqrt(width);
  const double energy_phase = -(2 * packet.qn.n + 1) * params.B * hb * t / (2 * m);
  return axial * std::polar(1.0, energy_phase) *
         landau_profile(packet.qn, params.B, r[0], r[1]).value;
}

cplx helical_state(const PhysParams& params, const PacketParams& packet,
                   const classical::TrajectoryParams& traj, const Vec3& r, double t) {
  check_rest_mass(params, traj);
  const auto flow = ict::magnetic_flow(traj, t, 3);
  return ict::injection_phase(flow, r, params.hbar) *
         packet_state(params, packet, ict::shifted(flow, r), t);
}

ict::WaveEvaluator helical_evaluator(const PhysParams& params, const PacketParams& packet,
                                     const classical::TrajectoryParams& traj) {
  check_rest_mass(params, traj);
  ict::WaveEvaluator packet_eval{
      3, [params, packet](const Vec3& r, double t) { return packet_state(params, packet, r, t); }};
  return ict::inject(packet_eval, [traj](double t) { return ict::magnetic_flow(traj, t, 3); },
                     params.hbar);
}

double density_norm(const PhysParams& params, const PacketParams& packet) {
  const double logN = specfun::log_landau_norm(packet.qn.n, packet.qn.l, params.B);
  return std::exp(2 * logN) / std::sqrt(M_PI);
}

double axial_width(const PhysParams& params, double d, double t) {
  const double s = params.hbar * t / (params.m * d);
  return std::sqrt(d * d + s * s);
}

double density_helical(const PhysParams& params, const PacketParams& packet,
                       const classical::TrajectoryParams& traj, const Vec3& r, double t) {
  validate(params);
  packet.validate();
  check_rest_mass(params, traj);
  const auto q = classical::trajectory_closed_form(traj, t);
  const double xs = r[0] - q.x, ys = r[1] - q.y, zs = r[2] - q.z;
  const double m = params.m, d = packet.d, hb = params.hbar, B = params.B;
  const int n = packet.qn.n, l = packet.qn.l;
  const double rho2 = xs * xs + ys * ys;
  const double w2 = d * d + hb * hb * t * t / (m * m * d * d);
  double log_rho = 2 * specfun::log_landau_norm(n, l, B) - 0.5 * std::log(M_PI) -
                   m * m * d * d * zs * zs / (m * m * d * d * d * d + hb * hb * t * t) -
                   0.5 * std::log(w2) - 0.5 * B * rho2;
  if (l > 0) {
    if (rho2 == 0.0) return 0.0;
    log_rho += l * std::log(rho2);
  }
  const double L = specfun::laguerre(n, l, 0.5 * B * rho2);
  return std::exp(log_rho) * L * L;
}

numerics::QuadratureSpec default_quadrature(const PhysParams& params, const PacketParams& packet,
                                            const classical::TrajectoryParams& traj, double t) {
  const double ell = params.magnetic_length();
  const int n = packet.qn.n, l = packet.qn.l;
  numerics::QuadratureSpec q;
  q.rule = numerics::QuadRule::trapezoid;
  q.dim = 3;
  double cx = 0, cy = 0, radius = 0;
  if (traj.omega != 0.0) {
    const auto gc = classical::guiding_center(traj.initial, traj.M, traj.omega);
    cx = gc.x;
    cy = gc.y;
    radius = gc.radius;
  }
  const double transverse = radius + 8 * ell + 2 * ell * std::sqrt(double(n + l));
  const double s = axial_width(params, packet.d, t);
  q.center = {cx, cy, classical::trajectory_closed_form(traj, t).z};
  q.scale = {ell, ell, s};
  q.half_width = {transverse / ell, transverse / ell, 8.0};
  // spacing ~ ell / (3 + sqrt(2n + l + 1)) resolves the Laguerre oscillations
  const double h = ell / (3.0 + std::sqrt(2.0 * n + l + 1.0));
  const int pts = std::max(32, int(std::ceil(2 * transverse / h)));
  q.points = {pts, pts, 64};
  return q;
}

CentroidResult centroid(const PhysParams& params, const PacketParams& packet,
                        const classical::TrajectoryParams& traj, double t,
                        const numerics::QuadratureSpec& quad, double tolerance) {
  auto res = numerics::integrate_many(
      [&](const Vec3& r, std::span<double> out) {
        const double rho = density_helical(params, packet, traj, r, t);
        out[0] = rho;
        out[1] = r[0] * rho;
        out[2] = r[1] * rho;
        out[3] = r[2] * rho;
      },
      4, quad);
  CentroidResult c;
  c.norm = res[0].value;
  for (int a = 0; a < 3; ++a) {
    c.mean[a] = res[a + 1].value / c.norm;
    c.error_estimate[a] =
        (res[a + 1].error_estimate + std::abs(c.mean[a]) * res[0].error_estimate) / c.norm;
  }
  for (int a = 0; a < 3; ++a)
    if (!(c.error_estimate[a] <= tolerance)) {
      std::ostringstream os;
      os << "centroid: quadrature not converged on axis " << a << " (estimate "
         << c.error_estimate[a] << " > " << tolerance << ", norm " << c.norm << ")";
      throw AccuracyError(os.str());
    }
  return c;
}

}  // namespace helix::nonrel
