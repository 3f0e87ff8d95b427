#include "helix/numerics/spectral.hpp"

#include <algorithm>
#include <cmath>

#include "helix/errors.hpp"
#include "helix/numerics/fft.hpp"
#include "helix/numerics/parallel.hpp"

namespace helix::numerics {

double Spectrum::total() const { return pairwise_sum(power); }

std::size_t Spectrum::peak() const {
  return std::size_t(std::max_element(power.begin(), power.end()) - power.begin());
}

double Spectrum::wrong_side_fraction() const {
  std::vector<double> wrong(power.size(), 0.0);
  for (std::size_t i = 0; i < power.size(); ++i)
    if (omega[i] <= 0.0) wrong[i] = power[i];
  return pairwise_sum(wrong) / total();
}

double Spectrum::leakage(std::size_t bins) const {
  const std::size_t p = peak();
  std::vector<double> far(power.size(), 0.0);
  for (std::size_t i = 0; i < power.size(); ++i) {
    const std::size_t dist = i > p ? i - p : p - i;
    if (dist > bins) far[i] = power[i];
  }
  return pairwise_sum(far) / total();
}

Spectrum spectral_analyze(std::span<const cplx> samples, double dt) {
  const std::size_t N = samples.size();
  if (N < 2 || (N & (N - 1)) != 0)
    throw DomainError("spectral_analyze: sample count must be a power of two");
  if (!(dt > 0)) throw DomainError("spectral_analyze: dt must be positive");
  std::vector<cplx> buf(N);
  for (std::size_t j = 0; j < N; ++j) {
    const double w = 0.5 * (1.0 - std::cos(2.0 * M_PI * double(j) / double(N)));
    buf[j] = w * samples[j];
  }
  // exp(+i omega_k t_j): a component exp(-i w0 t) lands on omega_k = +w0.
  fft_1d(buf, FftDirection::inverse);
  Spectrum s;
  s.omega.resize(N);
  s.power.resize(N);
  const double dw = 2.0 * M_PI / (double(N) * dt);
  for (std::size_t i = 0; i < N; ++i) {
    const long k = long(i) - long(N / 2);  // ascending frequency
    const std::size_t src = std::size_t((k + long(N)) % long(N));
    s.omega[i] = dw * double(k);
    s.power[i] = std::norm(buf[src]);
  }
  return s;
}

}  // namespace helix::numerics
