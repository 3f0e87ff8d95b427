#include "helix/quadratic.hpp"

#include <cmath>

#include "helix/errors.hpp"

namespace helix {

QuadraticHamiltonian QuadraticHamiltonian::make(int dim, const Mat3& A, const Mat3& Bq,
                                                const Mat3& C) {
  if (dim < 1 || dim > 3) throw DomainError("QuadraticHamiltonian: dim must be 1..3");
  QuadraticHamiltonian H;
  H.dim = dim;
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) {
      if (!std::isfinite(A[i][j]) || !std::isfinite(Bq[i][j]) || !std::isfinite(C[i][j]))
        throw DomainError("QuadraticHamiltonian: non-finite entry");
      H.A[i][j] = 0.5 * (A[i][j] + A[j][i]);
      H.Bq[i][j] = 0.5 * (Bq[i][j] + Bq[j][i]);
      H.C[i][j] = C[i][j];
    }
  return H;
}

}  // namespace helix
