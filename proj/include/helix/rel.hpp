#pragma once

#include <array>
#include <optional>
#include <utility>

#include "helix/classical.hpp"
#include "helix/ict.hpp"
#include "helix/numerics/grid.hpp"
#include "helix/numerics/quadrature.hpp"
#include "helix/numerics/spectral.hpp"
#include "helix/params.hpp"
#include "helix/specfun.hpp"

namespace helix::rel {

using specfun::QuantumNumbers;

enum class Spin { up, down };
inline int spin_sign(Spin s) { return s == Spin::up ? 1 : -1; }

struct LightconeTime {
  double t_plus = 0.0;
  double t_minus = 0.0;

  static LightconeTime from(double t, double z, double c) { return {t + z / c, t - z / c}; }
  double t() const { return 0.5 * (t_plus + t_minus); }
  double z(double c) const { return 0.5 * c * (t_plus - t_minus); }
};

/// Weyl components (phi_up, phi_down, chi_up, chi_down).
struct Bispinor {
  std::array<cplx, 4> c{};
  double density() const;
  bool finite() const;
};

/// Helical Klein-Gordon solution data. Only the transverse part of `traj`
/// (x, y, px, py) is used; M >= m sets the t_+ frequency M c^2 / hbar and the
/// cyclotron frequency hbar B / M.
struct KGHelicalParams {
  QuantumNumbers qn;
  double M = 1.0;
  classical::PhaseSpacePoint traj;
  Spin spin = Spin::up;

  void validate(const PhysParams& params) const;
};

/// Transverse trajectory with mass M evaluated in t_-.
classical::TrajectoryParams transverse_trajectory(const KGHelicalParams& p, const PhysParams& params);
ict::ClassicalFlowState transverse_flow(const KGHelicalParams& p, const PhysParams& params,
                                        double t_minus);

/// Lightcone frequencies of the extracted prefactor exp(-i(a_+ t_+ + a_- t_-)).
std::pair<double, double> lightcone_frequencies(const KGHelicalParams& p, const PhysParams& params);

cplx kg_helical(const KGHelicalParams& p, const PhysParams& params, const Vec3& r, double t);

/// Value and optional first derivatives of a scalar field at one point.
struct ScalarJet {
  cplx value;
  std::optional<cplx> dt, dx, dy, dz;
};

using JetEvaluator = std::function<ScalarJet(const Vec3&, double)>;

/// kg_helical with analytic first derivatives.
ScalarJet kg_helical_jet(const KGHelicalParams& p, const PhysParams& params, const Vec3& r, double t);

/// Bispinor built from a Klein-Gordon scalar by the Weyl first-order operator.
/// Throws DomainError when a required derivative is missing.
Bispinor dirac_lift(const ScalarJet& phi, Spin spin, const PhysParams& params, const Vec3& r);

/// Closed-form helical Dirac bispinor. Spin down is built through dirac_lift.
Bispinor dirac_helical(const KGHelicalParams& p, const PhysParams& params, const Vec3& r, double t);

/// Closed-form |Psi_D|^2 from the d1, d2, d3 coefficients (unnormalised).
double dirac_density_raw(const KGHelicalParams& p, const PhysParams& params, const Vec3& r, double t);
/// Transverse integral of dirac_density_raw (independent of t_-).
double dirac_density_norm(const KGHelicalParams& p, const PhysParams& params);
/// dirac_density_raw / dirac_density_norm.
double dirac_density(const KGHelicalParams& p, const PhysParams& params, const Vec3& r, double t);

struct Corrections {
  double x = 0.0;
  double y = 0.0;
};

enum class DenominatorForm { four_mass, one_mass };

/// Closed-form centroid shift <x_S>, <y_S> at t_-. `one_mass` uses
/// (m^2 + M^2) c^2 instead of 4 (m^2 + M^2) c^2 in the denominator; it is kept
/// only for comparison against the quadrature result.
Corrections dirac_corrections(const KGHelicalParams& p, const PhysParams& params, double t_minus,
                              DenominatorForm form = DenominatorForm::four_mass);

/// Quadrature box in the transverse plane around x(t_-).
numerics::QuadratureSpec default_corrections_quadrature(const KGHelicalParams& p,
                                                        const PhysParams& params, double t_minus);

/// <x> - x(t_-), <y> - y(t_-) from a 2D quadrature of the component sum of
/// dirac_helical at z = 0, t = t_-. Throws AccuracyError if not converged.
Corrections corrections_oracle(const KGHelicalParams& p, const PhysParams& params, double t_minus,
                               const numerics::QuadratureSpec& quad, double tolerance = 1e-9);

struct PositivityResult {
  double wrong_side_fraction = 0.0;
  numerics::Spectrum spectrum;
};

/// Samples kg_helical at a fixed probe over [0, T_span) and measures the
/// fraction of Hann-windowed spectral power at non-positive frequencies.
/// `conjugate` samples the complex conjugate (negative control).
PositivityResult positivity_spectrum(const KGHelicalParams& p, const PhysParams& params,
                                     const Vec3& probe, double T_span, int samples,
                                     bool conjugate = false);

/// Residual of the reduced 2D Schroedinger equation in (x, y, t_-) with mass M.
double kg_reduced_residual(const numerics::FieldSeries& field, double M, const PhysParams& params);

}  // namespace helix::rel
