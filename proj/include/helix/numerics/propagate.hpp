#pragma once

#include "helix/numerics/grid.hpp"

namespace helix::numerics {

/// Periodic translation g(r) = f(r - a) by a Fourier phase ramp.
ComplexField fourier_shift(const ComplexField& f, const Vec3& a);

/// Rotation g(r) = f(R(-theta) r) of a 2D field on a square grid centred on
/// the origin. Quarter turns are exact index permutations; the remainder
/// (|angle| <= pi/4) uses three Fourier shears.
ComplexField rotate(const ComplexField& f, double theta);

/// Fraction of spectral power in the outer quarter of the wavenumber range
/// on any used axis.
double spectral_tail_fraction(const ComplexField& f);

/// Evolves a transverse (2D) slice under the symmetric-gauge magnetic
/// Hamiltonian of mass M for t_final.
///
/// The propagator factors exactly into an isotropic oscillator of frequency
/// omega/2 (Strang split-step: half potential kick, spectral drift, half
/// kick) and a rigid rotation by -omega t / 2 generated by L_z, applied once
/// after the oscillator steps. Throws AccuracyError when the spectral tail
/// exceeds 1e-10 of the total power at input or output.
ComplexField splitstep_propagate(const ComplexField& initial, double M, const PhysParams& params,
                                 double t_final, int steps);

/// The oscillator part on its own (no rotation); exposed for order studies.
ComplexField splitstep_oscillator(const ComplexField& initial, double mass, double frequency,
                                  double hbar, double t_final, int steps);

}  // namespace helix::numerics
