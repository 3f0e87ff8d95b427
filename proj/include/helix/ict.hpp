#pragma once

#include <functional>
#include <optional>
#include <span>

#include "helix/classical.hpp"
#include "helix/numerics/grid.hpp"
#include "helix/params.hpp"
#include "helix/quadratic.hpp"

/// Injection of classical trajectories: for any quadratic Hamiltonian, the map
///   psi(r, t) -> exp(i S(t)/hbar) exp(i p(t).r/hbar) psi(r - x(t), t)
/// sends solutions to solutions whenever (x, p) follow the classical flow and
/// S(t) = -p(t).x(t)/2 (up to a constant).
namespace helix::ict {

/// Classical data carried alongside a wavefunction: position, momentum and
/// the action S whose S/hbar is the c-number phase of the injection map.
struct ClassicalFlowState {
  int dim = 3;
  Vec3 x{0, 0, 0};
  Vec3 p{0, 0, 0};
  double action = 0.0;

  /// Initial state with the canonical phase convention S = -p.x/2.
  static ClassicalFlowState start(int dim, const Vec3& x, const Vec3& p);
  bool finite() const;
};

/// Symmetric-gauge magnetic Hamiltonian of mass M written as a quadratic form.
QuadraticHamiltonian magnetic_to_quadratic(const PhysParams& params, double M, int dim = 3);

/// If H has the magnetic structure, returns (M, omega).
std::optional<std::pair<double, double>> recognize_magnetic(const QuadraticHamiltonian& H);

/// Time derivatives (dx/dt, dp/dt, dS/dt) at a state.
ClassicalFlowState flow_rates(const QuadraticHamiltonian& H, const ClassicalFlowState& s);

/// Default RK4 step: characteristic period / 1e4.
double default_time_step(const QuadraticHamiltonian& H, double t);

/// RK4 integration of dx/dt = A p + C x, dp/dt = -Bq x - C^T p and
/// dS/dt = x Bq x / 2 - p A p / 2. Throws ResourceError past 1e8 steps.
ClassicalFlowState classical_flow(const QuadraticHamiltonian& H, const ClassicalFlowState& z0,
                                  double t, double dt);

/// Closed-form magnetic flow (fast path), action set to -p.x/2.
ClassicalFlowState magnetic_flow(const classical::TrajectoryParams& tp, double t, int dim = 3);

/// exp(i S/hbar) exp(i p.r/hbar): the phase part of the injection map at r.
cplx injection_phase(const ClassicalFlowState& s, const Vec3& r, double hbar);
/// r - x(t) on the used axes.
Vec3 shifted(const ClassicalFlowState& s, const Vec3& r);

struct SliceEvaluator {
  int dim = 3;
  std::function<cplx(const Vec3&)> f;
};

struct WaveEvaluator {
  int dim = 3;
  std::function<cplx(const Vec3&, double)> f;
};

using FlowFunction = std::function<ClassicalFlowState(double)>;

/// Position-space action of the injection map at one instant.
SliceEvaluator ict_apply(const SliceEvaluator& psi, const ClassicalFlowState& flow, double hbar);

/// Space-time version: the flow is evaluated at the requested time.
WaveEvaluator inject(const WaveEvaluator& psi, FlowFunction flow, double hbar);

/// Injection on sampled data: periodic Fourier shift by x(t) followed by the
/// phase factors. The field must decay well inside the periodic box.
numerics::ComplexField ict_apply_grid(const numerics::ComplexField& psi,
                                      const ClassicalFlowState& flow, double hbar);

/// Transforms every slice with its flow state and returns the Schroedinger
/// residual of the result. `flow` holds one state per slice.
double theorem_residual(const QuadraticHamiltonian& H, const numerics::FieldSeries& psi,
                        std::span<const ClassicalFlowState> flow, double hbar);

}  // namespace helix::ict
