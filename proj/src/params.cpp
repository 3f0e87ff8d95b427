#include "helix/params.hpp"

#include <cmath>
#include <limits>

#include "helix/errors.hpp"

namespace helix {

double PhysParams::magnetic_length() const {
  if (B <= 0.0) return std::numeric_limits<double>::infinity();
  return std::sqrt(2.0 / B);
}

void validate(const PhysParams& p) {
  auto positive = [](double v) { return std::isfinite(v) && v > 0.0; };
  if (!positive(p.m)) throw DomainError("PhysParams: mass must be positive and finite");
  if (!positive(p.c)) throw DomainError("PhysParams: speed of light must be positive and finite");
  if (!positive(p.hbar)) throw DomainError("PhysParams: hbar must be positive and finite");
  if (!std::isfinite(p.B) || p.B < 0.0) throw DomainError("PhysParams: B must be finite and >= 0");
}

PhysParams from_si(double mass_kg, double B_tesla) {
  if (!(mass_kg > 0.0) || !std::isfinite(mass_kg)) throw DomainError("from_si: mass must be positive");
  if (!(B_tesla >= 0.0) || !std::isfinite(B_tesla)) throw DomainError("from_si: B must be >= 0");
  PhysParams p{mass_kg, codata::speed_of_light, codata::hbar,
               codata::elementary_charge * B_tesla / codata::hbar};
  return p;
}

PhysParams natural_units(double B) {
  if (!(B >= 0.0) || !std::isfinite(B)) throw DomainError("natural_units: B must be >= 0");
  return PhysParams{1.0, 1.0, 1.0, B};
}

double tesla_from_geometric(double B_geometric) {
  return codata::hbar * B_geometric / codata::elementary_charge;
}

}  // namespace helix
