#include "helix/rel.hpp"

#include <cmath>
#include <sstream>

#include "helix/errors.hpp"
#include "helix/nonrel.hpp"
#include "helix/numerics/residual.hpp"

namespace helix::rel {

double Bispinor::density() const {
  double s = 0.0;
  for (const auto& v : c) s += std::norm(v);
  return s;
}

bool Bispinor::finite() const {
  for (const auto& v : c)
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
  return true;
}

void KGHelicalParams::validate(const PhysParams& params) const {
  helix::validate(params);
  specfun::validate(qn);
  if (!(params.B > 0)) throw DomainError("KGHelicalParams: B must be positive");
  if (!std::isfinite(M) || M < params.m * (1 - 1e-15))
    throw DomainError("KGHelicalParams: M must satisfy M >= m");
  if (!traj.finite()) throw DomainError("KGHelicalParams: trajectory data must be finite");
}

classical::TrajectoryParams transverse_trajectory(const KGHelicalParams& p, const PhysParams& params) {
  classical::PhaseSpacePoint q = p.traj;
  q.z = 0.0;
  q.pz = 0.0;
  return classical::TrajectoryParams::with_mass(q, params, p.M);
}

ict::ClassicalFlowState transverse_flow(const KGHelicalParams& p, const PhysParams& params,
                                        double t_minus) {
  return ict::magnetic_flow(transverse_trajectory(p, params), t_minus, 2);
}

std::pair<double, double> lightcone_frequencies(const KGHelicalParams& p, const PhysParams& params) {
  const double c = params.c, hb = params.hbar, m = params.m, M = p.M;
  const double a_plus = M * c * c / (2 * hb);
  const double a_minus = (m * m * c * c - spin_sign(p.spin) * hb * hb * params.B) / (2 * M * hb);
  return {a_plus, a_minus};
}

namespace {

// Landau factor without the Laguerre polynomial:
//   N exp(-B rho^2/4) (x + iy)^l
cplx landau_envelope(const QuantumNumbers& qn, double B, double x, double y) {
  const double rho2 = x * x + y * y;
  const double log_mag = specfun::log_landau_norm(qn.n, qn.l, B) - 0.25 * B * rho2;
  if (qn.l == 0) return std::exp(log_mag);
  if (rho2 == 0.0) return 0.0;
  return std::polar(std::exp(log_mag + 0.5 * qn.l * std::log(rho2)), qn.l * std::atan2(y, x));
}

// Everything the Klein-Gordon solution needs at one point.
struct KGPoint {
  double tau;             // t_-
  ict::ClassicalFlowState flow;
  ict::ClassicalFlowState rates;
  Vec3 rs;                // transverse offset from x(t_-)
  cplx carrier;           // lightcone prefactor * injection phase * Landau energy phase
  double energy;          // Landau energy with mass M
};

KGPoint kg_point(const KGHelicalParams& p, const PhysParams& params, const Vec3& r, double t) {
  p.validate(params);
  const auto lc = LightconeTime::from(t, r[2], params.c);
  const auto [a_plus, a_minus] = lightcone_frequencies(p, params);
  KGPoint k;
  k.tau = lc.t_minus;
  k.flow = transverse_flow(p, params, k.tau);
  k.rates = ict::flow_rates(ict::magnetic_to_quadratic(params, p.M, 2), k.flow);
  k.rs = {r[0] - k.flow.x[0], r[1] - k.flow.x[1], 0.0};
  k.energy = (2 * p.qn.n + 1) * params.hbar * params.hbar * params.B / (2 * p.M);
  const Vec3 r2{r[0], r[1], 0.0};
  k.carrier = std::polar(1.0, -(a_plus * lc.t_plus + a_minus * k.tau) - k.energy * k.tau / params.hbar) *
              ict::injection_phase(k.flow, r2, params.hbar);
  return k;
}

}  // namespace

cplx kg_helical(const KGHelicalParams& p, const PhysParams& params, const Vec3& r, double t) {
  const auto k = kg_point(p, params, r, t);
  return k.carrier * nonrel::landau_profile(p.qn, params.B, k.rs[0], k.rs[1]).value;
}

ScalarJet kg_helical_jet(const KGHelicalParams& p, const PhysParams& params, const Vec3& r, double t) {
  const auto k = kg_point(p, params, r, t);
  const auto prof = nonrel::landau_profile(p.qn, params.B, k.rs[0], k.rs[1]);
  const double hb = params.hbar, c = params.c;
  const cplx I(0, 1);
  const auto [a_plus, a_minus] = lightcone_frequencies(p, params);
  const double px = k.flow.p[0], py = k.flow.p[1];

  ScalarJet j;
  j.value = k.carrier * prof.value;
  j.dx = k.carrier * (I * px / hb * prof.value + prof.dx);
  j.dy = k.carrier * (I * py / hb * prof.value + prof.dy);
  // d/dt_- of the injected Landau state, then the lightcone prefactor
  const double pdot_r = k.rates.p[0] * r[0] + k.rates.p[1] * r[1];
  const cplx dtau_phi = I * (k.rates.action + pdot_r - k.energy) / hb * prof.value -
                        k.rates.x[0] * prof.dx - k.rates.x[1] * prof.dy;
  const cplx d_minus = k.carrier * (-I * a_minus * prof.value + dtau_phi);
  const cplx d_plus = -I * a_plus * j.value;
  j.dt = d_plus + d_minus;
  j.dz = (d_plus - d_minus) / c;
  return j;
}

Bispinor dirac_lift(const ScalarJet& phi, Spin spin, const PhysParams& params, const Vec3& r) {
  if (!phi.dt || !phi.dx || !phi.dy || !phi.dz)
    throw DomainError("dirac_lift: scalar must supply d/dt, d/dx, d/dy and d/dz");
  const cplx I(0, 1);
  const double c = params.c, B = params.B;
  const cplx il = I * params.lambda_bar();
  const cplx w(r[0], r[1]);
  Bispinor out;
  if (spin == Spin::up) {
    out.c[0] = phi.value;
    out.c[2] = il * (*phi.dt / c + *phi.dz);
    out.c[3] = il * (*phi.dx + I * *phi.dy + 0.5 * B * w * phi.value);
  } else {
    out.c[1] = phi.value;
    out.c[2] = il * (*phi.dx - I * *phi.dy - 0.5 * B * std::conj(w) * phi.value);
    out.c[3] = il * (*phi.dt / c - *phi.dz);
  }
  return out;
}

Bispinor dirac_helical(const KGHelicalParams& p, const PhysParams& params, const Vec3& r, double t) {
  if (p.spin == Spin::down) return dirac_lift(kg_helical_jet(p, params, r, t), p.spin, params, r);
  const auto k = kg_point(p, params, r, t);
  const double m = params.m, c = params.c, hb = params.hbar, B = params.B, M = p.M;
  const cplx I(0, 1);
  const double xs = k.rs[0], ys = k.rs[1];
  const double u = 0.5 * B * (xs * xs + ys * ys);
  const double L = specfun::laguerre(p.qn.n, p.qn.l, u);
  const double Lp = specfun::laguerre(p.qn.n - 1, p.qn.l + 1, u);
  const cplx env = k.carrier * landau_envelope(p.qn, B, xs, ys);
  const double xt = k.flow.x[0], yt = k.flow.x[1], px = k.flow.p[0], py = k.flow.p[1];
  const cplx c1 = -(1.0 / (2 * m * c)) * cplx(hb * B * yt + 2 * px, -(hb * B * xt - 2 * py));
  const cplx c2 = -(I / (m * c)) * hb * B * cplx(xs, ys);
  Bispinor out;
  out.c[0] = env * L;
  out.c[2] = (M / m) * env * L;
  out.c[3] = env * (c1 * L + c2 * Lp);
  return out;
}

namespace {

struct DCoefficients {
  double alpha, beta;  // hbar B y(t_-) + 2 px(t_-),  hbar B x(t_-) - 2 py(t_-)
};

DCoefficients d_coefficients(const KGHelicalParams& p, const PhysParams& params, double t_minus) {
  const auto s = transverse_flow(p, params, t_minus);
  const double hbB = params.hbar * params.B;
  return {hbB * s.x[1] + 2 * s.p[0], hbB * s.x[0] - 2 * s.p[1]};
}

}  // namespace

double dirac_density_raw(const KGHelicalParams& p, const PhysParams& params, const Vec3& r, double t) {
  p.validate(params);
  if (p.spin != Spin::up) throw DomainError("dirac_density: closed form covers spin up only");
  const double tau = t - r[2] / params.c;
  const auto s = transverse_flow(p, params, tau);
  const auto [alpha, beta] = d_coefficients(p, params, tau);
  const double m = params.m, c = params.c, hb = params.hbar, B = params.B, M = p.M;
  const double mc2 = m * m * c * c;
  const double xs = r[0] - s.x[0], ys = r[1] - s.x[1];
  const double rho2 = xs * xs + ys * ys;
  const int n = p.qn.n, l = p.qn.l;
  const double d1 = ((m * m + M * M) * c * c + 0.25 * (beta * beta + alpha * alpha)) / mc2;
  const double d2 = B * B * hb * hb * rho2 / mc2;
  const double d3 = -B * hb * (xs * beta + ys * alpha) / mc2;
  const double u = 0.5 * B * rho2;
  const double L = specfun::laguerre(n, l, u);
  const double Lp = specfun::laguerre(n - 1, l + 1, u);
  double log_w = 2 * specfun::log_landau_norm(n, l, B) - 0.5 * B * rho2;
  if (l > 0) {
    if (rho2 == 0.0) return 0.0;
    log_w += l * std::log(rho2);
  }
  return std::exp(log_w) * (d1 * L * L + d2 * Lp * Lp + d3 * L * Lp);
}

double dirac_density_norm(const KGHelicalParams& p, const PhysParams& params) {
  p.validate(params);
  if (p.spin != Spin::up) throw DomainError("dirac_density_norm: closed form covers spin up only");
  const auto [alpha, beta] = d_coefficients(p, params, 0.0);
  const double m = params.m, c = params.c, hb = params.hbar, M = p.M;
  const double mc2 = m * m * c * c;
  return ((m * m + M * M) * c * c + 0.25 * (alpha * alpha + beta * beta) +
          2.0 * p.qn.n * hb * hb * params.B) /
         mc2;
}

double dirac_density(const KGHelicalParams& p, const PhysParams& params, const Vec3& r, double t) {
  return dirac_density_raw(p, params, r, t) / dirac_density_norm(p, params);
}

Corrections dirac_corrections(const KGHelicalParams& p, const PhysParams& params, double t_minus,
                              DenominatorForm form) {
  p.validate(params);
  if (p.spin != Spin::up) throw DomainError("dirac_corrections: closed form covers spin up only");
  const auto [alpha, beta] = d_coefficients(p, params, t_minus);
  const double m = params.m, c = params.c, hb = params.hbar, M = p.M;
  const int n = p.qn.n;
  const double k = form == DenominatorForm::four_mass ? 4.0 : 1.0;
  const double D = k * (m * m + M * M) * c * c + 8.0 * n * hb * hb * params.B + alpha * alpha +
                   beta * beta;
  return {4.0 * n * hb * beta / D, 4.0 * n * hb * alpha / D};
}

numerics::QuadratureSpec default_corrections_quadrature(const KGHelicalParams& p,
                                                        const PhysParams& params, double t_minus) {
  const auto s = transverse_flow(p, params, t_minus);
  const double ell = params.magnetic_length();
  const int n = p.qn.n, l = p.qn.l;
  numerics::QuadratureSpec q;
  q.rule = numerics::QuadRule::trapezoid;
  q.dim = 2;
  q.center = {s.x[0], s.x[1], 0.0};
  q.scale = {ell, ell, 1.0};
  const double hw = 8.0 + 2.0 * std::sqrt(double(n + l));
  q.half_width = {hw, hw, 1.0};
  const double h = 1.0 / (3.0 + std::sqrt(2.0 * n + l + 1.0));
  const int pts = std::max(32, int(std::ceil(2 * hw / h)));
  q.points = {pts, pts, 1};
  return q;
}

Corrections corrections_oracle(const KGHelicalParams& p, const PhysParams& params, double t_minus,
                               const numerics::QuadratureSpec& quad, double tolerance) {
  p.validate(params);
  if (quad.dim != 2) throw DomainError("corrections_oracle: quadrature must be two-dimensional");
  const auto s = transverse_flow(p, params, t_minus);
  auto res = numerics::integrate_many(
      [&](const Vec3& r, std::span<double> out) {
        const double rho = dirac_helical(p, params, {r[0], r[1], 0.0}, t_minus).density();
        out[0] = rho;
        out[1] = (r[0] - s.x[0]) * rho;
        out[2] = (r[1] - s.x[1]) * rho;
      },
      3, quad);
  const double norm = res[0].value;
  Corrections c{res[1].value / norm, res[2].value / norm};
  const double ex = (res[1].error_estimate + std::abs(c.x) * res[0].error_estimate) / norm;
  const double ey = (res[2].error_estimate + std::abs(c.y) * res[0].error_estimate) / norm;
  if (!(ex <= tolerance) || !(ey <= tolerance)) {
    std::ostringstream os;
    os << "corrections_oracle: quadrature not converged (estimates " << ex << ", " << ey << " > "
       << tolerance << ")";
    throw AccuracyError(os.str());
  }
  return c;
}

PositivityResult positivity_spectrum(const KGHelicalParams& p, const PhysParams& params,
                                     const Vec3& probe, double T_span, int samples, bool conjugate) {
  p.validate(params);
  if (samples < 256 || (samples & (samples - 1)) != 0)
    throw DomainError("positivity_spectrum: samples must be a power of two >= 256");
  const double omega = params.cyclotron_frequency(p.M);
  const double period = 2 * M_PI / omega;
  if (!(T_span >= 8 * period))
    throw DomainError("positivity_spectrum: T_span must cover at least 8 cyclotron periods");
  const double dt = T_span / samples;
  const double nyquist = M_PI / dt;
  const auto [a_plus, a_minus] = lightcone_frequencies(p, params);
  const double carrier = a_plus + a_minus +
                         (2 * p.qn.n + 1) * params.hbar * params.B / (2 * p.M);
  if (omega >= nyquist || carrier >= nyquist) {
    std::ostringstream os;
    os << "positivity_spectrum: sampling too coarse (Nyquist " << nyquist << ", carrier " << carrier
       << ", cyclotron " << omega << ")";
    throw DomainError(os.str());
  }
  std::vector<cplx> series(samples);
  for (int i = 0; i < samples; ++i) {
    const cplx v = kg_helical(p, params, probe, i * dt);
    series[i] = conjugate ? std::conj(v) : v;
  }
  PositivityResult out;
  out.spectrum = numerics::spectral_analyze(series, dt);
  out.wrong_side_fraction = out.spectrum.wrong_side_fraction();
  return out;
}

double kg_reduced_residual(const numerics::FieldSeries& field, double M, const PhysParams& params) {
  if (!(M > 0)) throw DomainError("kg_reduced_residual: M must be positive");
  for (const auto& s : field.slices) s.grid.validate_for_stencils();
  return numerics::residual_schrodinger(field, ict::magnetic_to_quadratic(params, M, 2), params.hbar);
}

}  // namespace helix::rel
