#pragma once

#include <array>

#include "helix/params.hpp"

namespace helix {

using Mat3 = std::array<std::array<double, 3>, 3>;

/// H = 1/2 p A p + 1/2 x Bq x + p_i C^i_j x^j over the first `dim` axes.
/// Entries outside the leading dim x dim block are ignored (kept zero).
struct QuadraticHamiltonian {
  int dim = 3;
  Mat3 A{};
  Mat3 Bq{};
  Mat3 C{};

  /// Symmetrises A and Bq, zeroes the unused block and checks finiteness.
  static QuadraticHamiltonian make(int dim, const Mat3& A, const Mat3& Bq, const Mat3& C);

  friend bool operator==(const QuadraticHamiltonian&, const QuadraticHamiltonian&) = default;
};

}  // namespace helix
