#include "helix/ict.hpp"

#include <algorithm>
#include <cmath>

#include "helix/errors.hpp"
#include "helix/numerics/propagate.hpp"
#include "helix/numerics/residual.hpp"

namespace helix::ict {

ClassicalFlowState ClassicalFlowState::start(int dim, const Vec3& x, const Vec3& p) {
  if (dim < 1 || dim > 3) throw DomainError("ClassicalFlowState: dim must be 1..3");
  ClassicalFlowState s;
  s.dim = dim;
  for (int a = 0; a < dim; ++a) {
    s.x[a] = x[a];
    s.p[a] = p[a];
    s.action -= 0.5 * p[a] * x[a];
  }
  return s;
}

bool ClassicalFlowState::finite() const {
  for (int a = 0; a < 3; ++a)
    if (!std::isfinite(x[a]) || !std::isfinite(p[a])) return false;
  return std::isfinite(action);
}

QuadraticHamiltonian magnetic_to_quadratic(const PhysParams& params, double M, int dim) {
  validate(params);
  if (!(M > 0)) throw DomainError("magnetic_to_quadratic: M must be positive");
  if (dim != 2 && dim != 3) throw DomainError("magnetic_to_quadratic: dim must be 2 or 3");
  const double hb = params.hbar * params.B;
  Mat3 A{}, Bq{}, C{};
  for (int a = 0; a < dim; ++a) A[a][a] = 1.0 / M;
  Bq[0][0] = Bq[1][1] = hb * hb / (4.0 * M);
  C[0][1] = hb / (2.0 * M);
  C[1][0] = -hb / (2.0 * M);
  return QuadraticHamiltonian::make(dim, A, Bq, C);
}

std::optional<std::pair<double, double>> recognize_magnetic(const QuadraticHamiltonian& H) {
  if (H.dim < 2) return std::nullopt;
  const double invM = H.A[0][0];
  if (!(invM > 0)) return std::nullopt;
  const double M = 1.0 / invM;
  const double half_w = H.C[0][1];  // hbar B / 2M = omega / 2
  const double omega = 2.0 * half_w;
  auto close = [](double a, double b) { return std::abs(a - b) <= 1e-14 * (1 + std::abs(b)); };
  for (int i = 0; i < H.dim; ++i)
    for (int j = 0; j < H.dim; ++j) {
      const double a_exp = i == j ? invM : 0.0;
      const double b_exp = (i == j && i < 2) ? 0.25 * M * omega * omega : 0.0;
      double c_exp = 0.0;
      if (i == 0 && j == 1) c_exp = half_w;
      if (i == 1 && j == 0) c_exp = -half_w;
      if (!close(H.A[i][j], a_exp) || !close(H.Bq[i][j], b_exp) || !close(H.C[i][j], c_exp))
        return std::nullopt;
    }
  return std::pair{M, omega};
}

ClassicalFlowState flow_rates(const QuadraticHamiltonian& H, const ClassicalFlowState& s) {
  ClassicalFlowState r;
  r.dim = s.dim;
  const int d = H.dim;
  double xBx = 0.0, pAp = 0.0;
  for (int i = 0; i < d; ++i) {
    double dx = 0.0, dp = 0.0;
    for (int j = 0; j < d; ++j) {
      dx += H.A[i][j] * s.p[j] + H.C[i][j] * s.x[j];
      dp += -H.Bq[i][j] * s.x[j] - H.C[j][i] * s.p[j];
      xBx += s.x[i] * H.Bq[i][j] * s.x[j];
      pAp += s.p[i] * H.A[i][j] * s.p[j];
    }
    r.x[i] = dx;
    r.p[i] = dp;
  }
  r.action = 0.5 * xBx - 0.5 * pAp;
  return r;
}

double default_time_step(const QuadraticHamiltonian& H, double t) {
  double a = 0.0, b = 0.0, c = 0.0;
  for (int i = 0; i < H.dim; ++i)
    for (int j = 0; j < H.dim; ++j) {
      a += H.A[i][j] * H.A[i][j];
      b += H.Bq[i][j] * H.Bq[i][j];
      c += H.C[i][j] * H.C[i][j];
    }
  const double freq = std::max(std::sqrt(std::sqrt(a * b)), std::sqrt(c));
  if (freq == 0.0) return std::max(std::abs(t), 1.0) * 1e-4;
  return 2.0 * M_PI / freq * 1e-4;
}

ClassicalFlowState classical_flow(const QuadraticHamiltonian& H, const ClassicalFlowState& z0,
                                  double t, double dt) {
  if (!(dt > 0)) throw DomainError("classical_flow: dt must be positive");
  if (z0.dim != H.dim) throw DomainError("classical_flow: dimension mismatch");
  const double steps_real = std::ceil(std::abs(t) / dt - 1e-9);
  if (steps_real > 1e8) throw ResourceError("classical_flow: more than 1e8 steps requested");
  const long n = long(steps_real);
  if (n == 0) return z0;
  const double h = t / double(n);
  auto axpy = [](const ClassicalFlowState& a, double f, const ClassicalFlowState& k) {
    ClassicalFlowState r = a;
    for (int i = 0; i < 3; ++i) {
      r.x[i] += f * k.x[i];
      r.p[i] += f * k.p[i];
    }
    r.action += f * k.action;
    return r;
  };
  ClassicalFlowState s = z0;
  for (long i = 0; i < n; ++i) {
    const auto k1 = flow_rates(H, s);
    const auto k2 = flow_rates(H, axpy(s, 0.5 * h, k1));
    const auto k3 = flow_rates(H, axpy(s, 0.5 * h, k2));
    const auto k4 = flow_rates(H, axpy(s, h, k3));
    for (int a = 0; a < 3; ++a) {
      s.x[a] += h / 6.0 * (k1.x[a] + 2 * k2.x[a] + 2 * k3.x[a] + k4.x[a]);
      s.p[a] += h / 6.0 * (k1.p[a] + 2 * k2.p[a] + 2 * k3.p[a] + k4.p[a]);
    }
    s.action += h / 6.0 * (k1.action + 2 * k2.action + 2 * k3.action + k4.action);
  }
  return s;
}

ClassicalFlowState magnetic_flow(const classical::TrajectoryParams& tp, double t, int dim) {
  const auto q = classical::trajectory_closed_form(tp, t);
  return ClassicalFlowState::start(dim, {q.x, q.y, q.z}, {q.px, q.py, q.pz});
}

cplx injection_phase(const ClassicalFlowState& s, const Vec3& r, double hbar) {
  double pr = 0.0;
  for (int a = 0; a < s.dim; ++a) pr += s.p[a] * r[a];
  return std::polar(1.0, (s.action + pr) / hbar);
}

Vec3 shifted(const ClassicalFlowState& s, const Vec3& r) {
  Vec3 out = r;
  for (int a = 0; a < s.dim; ++a) out[a] -= s.x[a];
  return out;
}

SliceEvaluator ict_apply(const SliceEvaluator& psi, const ClassicalFlowState& flow, double hbar) {
  if (psi.dim != flow.dim) throw DomainError("ict_apply: dimension mismatch");
  if (!(hbar > 0)) throw DomainError("ict_apply: hbar must be positive");
  return {psi.dim, [f = psi.f, flow, hbar](const Vec3& r) {
            return injection_phase(flow, r, hbar) * f(shifted(flow, r));
          }};
}

WaveEvaluator inject(const WaveEvaluator& psi, FlowFunction flow, double hbar) {
  if (!(hbar > 0)) throw DomainError("inject: hbar must be positive");
  return {psi.dim, [f = psi.f, flow = std::move(flow), hbar, dim = psi.dim](const Vec3& r, double t) {
            const auto s = flow(t);
            if (s.dim != dim) throw DomainError("inject: dimension mismatch");
            return injection_phase(s, r, hbar) * f(shifted(s, r), t);
          }};
}

numerics::ComplexField ict_apply_grid(const numerics::ComplexField& psi,
                                      const ClassicalFlowState& flow, double hbar) {
  if (psi.grid.used_axes() != flow.dim) throw DomainError("ict_apply_grid: dimension mismatch");
  Vec3 shift{0, 0, 0};
  for (int a = 0; a < flow.dim; ++a) shift[a] = flow.x[a];
  auto out = numerics::fourier_shift(psi, shift);
  const auto& g = out.grid;
  for (int i = 0; i < g.n[0]; ++i)
    for (int j = 0; j < g.n[1]; ++j)
      for (int k = 0; k < g.n[2]; ++k) out.at(i, j, k) *= injection_phase(flow, g.point(i, j, k), hbar);
  return out;
}

double theorem_residual(const QuadraticHamiltonian& H, const numerics::FieldSeries& psi,
                        std::span<const ClassicalFlowState> flow, double hbar) {
  if (flow.size() != psi.slices.size())
    throw DomainError("theorem_residual: need one flow state per time slice");
  numerics::FieldSeries out;
  out.t0 = psi.t0;
  out.dt = psi.dt;
  for (std::size_t s = 0; s < flow.size(); ++s) {
    if (flow[s].dim != H.dim) throw DomainError("theorem_residual: dimension mismatch");
    if (!(psi.slices[s].grid == psi.slices.front().grid))
      throw DomainError("theorem_residual: inconsistent grids");
    out.slices.push_back(ict_apply_grid(psi.slices[s], flow[s], hbar));
  }
  return numerics::residual_schrodinger(out, H, hbar);
}

}  // namespace helix::ict
