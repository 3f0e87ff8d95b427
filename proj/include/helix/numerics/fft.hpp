#pragma once

#include <vector>

#include "helix/numerics/grid.hpp"

namespace helix::numerics {

enum class FftDirection { forward, inverse };

/// In-place unitary-up-to-scale DFT over the used axes of the field.
/// forward uses exp(-i k x); inverse uses exp(+i k x) and divides by N.
void fft(ComplexField& f, FftDirection dir);

/// In-place 1D DFT of a contiguous complex array (no scaling on inverse).
void fft_1d(std::vector<cplx>& v, FftDirection dir);

/// Angular wavenumbers for an axis of n samples at spacing h, standard DFT
/// order (0, 1, ..., n/2-1, -n/2, ..., -1) * 2 pi / (n h).
std::vector<double> wavenumbers(int n, double h);

}  // namespace helix::numerics
