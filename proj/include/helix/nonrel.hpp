#pragma once

#include "helix/classical.hpp"
#include "helix/ict.hpp"
#include "helix/numerics/quadrature.hpp"
#include "helix/params.hpp"
#include "helix/specfun.hpp"

namespace helix::nonrel {

using specfun::QuantumNumbers;

/// Quantum numbers plus the axial data: Gaussian width d for packets and the
/// axial momentum pz for stationary Landau states.
struct PacketParams {
  QuantumNumbers qn;
  double d = 1.0;
  double pz = 0.0;

  void validate() const;
  friend bool operator==(const PacketParams&, const PacketParams&) = default;
};

/// Normalised transverse Landau profile
///   N exp(-B rho^2/4) (x + iy)^l L_n^l(B rho^2/2)
/// and its x/y derivatives, evaluated in the log domain for large n + l.
struct TransverseProfile {
  cplx value;
  cplx dx;
  cplx dy;
};
TransverseProfile landau_profile(const QuantumNumbers& qn, double B, double x, double y);

/// Stationary state with axial plane wave exp(i pz z / hbar).
cplx landau_state(const PhysParams& params, const PacketParams& packet, const Vec3& r, double t);

/// Landau profile times a freely spreading axial Gaussian of width d.
cplx packet_state(const PhysParams& params, const PacketParams& packet, const Vec3& r, double t);

/// Injection of the classical trajectory into packet_state. The trajectory
/// must carry the rest mass (M == m).
cplx helical_state(const PhysParams& params, const PacketParams& packet,
                   const classical::TrajectoryParams& traj, const Vec3& r, double t);

/// helical_state as a space-time evaluator built from ict::inject.
ict::WaveEvaluator helical_evaluator(const PhysParams& params, const PacketParams& packet,
                                     const classical::TrajectoryParams& traj);

/// Prefactor N of the closed-form helical density.
double density_norm(const PhysParams& params, const PacketParams& packet);

/// Axial Gaussian width sqrt(d^2 + hbar^2 t^2 / m^2 d^2) at time t.
double axial_width(const PhysParams& params, double d, double t);

/// Closed-form probability density of the helical state (real arithmetic only).
double density_helical(const PhysParams& params, const PacketParams& packet,
                       const classical::TrajectoryParams& traj, const Vec3& r, double t);

/// Lab-frame quadrature box for the helical density at time t: the
/// transverse box covers the whole cyclotron orbit around the guiding centre.
numerics::QuadratureSpec default_quadrature(const PhysParams& params, const PacketParams& packet,
                                            const classical::TrajectoryParams& traj, double t);

struct CentroidResult {
  Vec3 mean{0, 0, 0};
  double norm = 0.0;
  Vec3 error_estimate{0, 0, 0};
};

/// <r> = int r rho / int rho by tensor quadrature of density_helical. Throws
/// AccuracyError (with the estimates) when any refinement estimate exceeds
/// `tolerance` (length units).
CentroidResult centroid(const PhysParams& params, const PacketParams& packet,
                        const classical::TrajectoryParams& traj, double t,
                        const numerics::QuadratureSpec& quad, double tolerance = 1e-8);

}  // namespace helix::nonrel
