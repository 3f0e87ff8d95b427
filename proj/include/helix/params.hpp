#pragma once

#include <array>
#include <complex>

namespace helix {

using cplx = std::complex<double>;
using Vec3 = std::array<double, 3>;

namespace codata {
// CODATA 2018, exact or recommended values (SI).
inline constexpr double elementary_charge = 1.602176634e-19;  // C
inline constexpr double hbar = 1.054571817e-34;               // J s
inline constexpr double speed_of_light = 299792458.0;         // m / s
inline constexpr double electron_mass = 9.1093837015e-31;     // kg
}  // namespace codata

/// Particle and field constants. B is the magnetic induction in geometric
/// units (1/length^2), related to tesla by B = e B_SI / hbar.
struct PhysParams {
  double m = 1.0;
  double c = 1.0;
  double hbar = 1.0;
  double B = 0.0;

  /// Reduced Compton wavelength hbar / (m c).
  double lambda_bar() const { return hbar / (m * c); }
  /// Magnetic length sqrt(2 / B); infinite for B == 0.
  double magnetic_length() const;
  /// Cyclotron frequency hbar B / M for an effective mass M.
  double cyclotron_frequency(double M) const { return hbar * B / M; }

  friend bool operator==(const PhysParams&, const PhysParams&) = default;
};

/// Throws DomainError unless m, c, hbar > 0 and B >= 0 (all finite).
void validate(const PhysParams& p);

/// SI parameter set for a particle of the given mass in a field of B_tesla.
PhysParams from_si(double mass_kg, double B_tesla);

/// m = c = hbar = 1 with the given geometric field strength.
PhysParams natural_units(double B);

/// Inverse of the SI field conversion: B_SI = hbar B / e.
double tesla_from_geometric(double B_geometric);

}  // namespace helix
