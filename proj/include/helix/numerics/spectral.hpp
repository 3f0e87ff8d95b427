#pragma once

#include <span>
#include <vector>

#include "helix/params.hpp"

namespace helix::numerics {

/// Power spectrum with frequencies in ascending order. Sign convention:
/// a sample series exp(-i w0 t) peaks at omega = +w0.
struct Spectrum {
  std::vector<double> omega;
  std::vector<double> power;

  double total() const;
  /// Index of the largest power.
  std::size_t peak() const;
  /// Power at omega <= 0 divided by the total.
  double wrong_side_fraction() const;
  /// Power further than `bins` bins from the peak, divided by the total.
  double leakage(std::size_t bins) const;
};

/// Hann-windowed DFT of uniformly spaced samples. Length must be a power of two.
Spectrum spectral_analyze(std::span<const cplx> samples, double dt);

}  // namespace helix::numerics
