#pragma once

#include "helix/numerics/grid.hpp"
#include "helix/quadratic.hpp"

namespace helix::numerics {

/// max |i hbar d_t psi - H psi| over interior points of every interior slice.
/// Spatial derivatives use 4th-order central stencils, d_t the 2nd-order
/// centred difference. The grid's first H.dim axes carry x^1..x^dim.
double residual_schrodinger(const FieldSeries& field, const QuadraticHamiltonian& H, double hbar);

/// Klein-Gordon residual with spin coupling on an (x, y, z, t) series:
/// [c^-2 d_t^2 - (D_x^2 + D_y^2 + d_z^2) + (mc/hbar)^2 - s B] psi,
/// symmetric gauge, s = +1 for spin up and -1 for spin down.
double residual_klein_gordon(const FieldSeries& field, const PhysParams& params, int spin_sign);

/// Max of both Weyl-representation residuals
///   i lambda (c^-1 d_t + sigma.D) phi - chi,  i lambda (c^-1 d_t - sigma.D) chi - phi.
double residual_dirac(const BispinorSeries& field, const PhysParams& params);

/// Observed order log(r_coarse / r_fine) / log(refinement).
double convergence_order(double r_coarse, double r_fine, double refinement = 2.0);

}  // namespace helix::numerics
