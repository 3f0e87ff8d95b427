#pragma once

#include <array>
#include <iosfwd>
#include <span>

#include "helix/params.hpp"

namespace helix::classical {

/// Canonical position and momentum (symmetric gauge, z along B).
struct PhaseSpacePoint {
  double x = 0, y = 0, z = 0;
  double px = 0, py = 0, pz = 0;

  bool finite() const;
  friend bool operator==(const PhaseSpacePoint&, const PhaseSpacePoint&) = default;
};

/// Initial data plus the effective mass M that fixes the cyclotron frequency
/// omega = hbar B / M. M == m for nonrelativistic motion, H_RL / c^2 otherwise.
struct TrajectoryParams {
  PhaseSpacePoint initial;
  double M = 1.0;
  double omega = 0.0;

  static TrajectoryParams with_mass(const PhaseSpacePoint& p0, const PhysParams& params, double M);
  static TrajectoryParams nonrelativistic(const PhaseSpacePoint& p0, const PhysParams& params);
  static TrajectoryParams relativistic(const PhaseSpacePoint& p0, const PhysParams& params);

  /// Cyclotron period 2 pi / omega (infinite when omega == 0).
  double period() const;
};

double hamiltonian_nr(const PhaseSpacePoint& p, const PhysParams& params);
double hamiltonian_rl(const PhaseSpacePoint& p, const PhysParams& params);
double relativistic_mass(const PhaseSpacePoint& p0, const PhysParams& params);

/// Exact solution of the canonical equations; B = 0 is handled by the
/// free-motion limit.
PhaseSpacePoint trajectory_closed_form(const TrajectoryParams& tp, double t);

/// Classic RK4 integration of the canonical equations. Test oracle only.
/// Throws ResourceError when |t| / dt exceeds 1e8 steps.
PhaseSpacePoint trajectory_rk4(const TrajectoryParams& tp, double t, double dt);

/// Right-hand side of the canonical equations in the form used by both regimes.
std::array<double, 6> canonical_rhs(const std::array<double, 6>& state, double M, double omega);

/// Fixed centre of the transverse orbit and its radius.
struct GuidingCenter {
  double x = 0, y = 0, radius = 0;
};
GuidingCenter guiding_center(const PhaseSpacePoint& p, double M, double omega);

/// Writes `t,x,y,z,px,py,pz` rows with 17 significant digits.
void write_trajectory_csv(std::ostream& os, const TrajectoryParams& tp, std::span<const double> times);

}  // namespace helix::classical
