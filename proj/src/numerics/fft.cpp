#include "helix/numerics/fft.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <mutex>
#include <tuple>

#include "helix/errors.hpp"

namespace helix::numerics {

namespace {

struct PlanCache {
  std::mutex mutex;
  std::map<std::tuple<int, int, int, int>, fftw_plan> plans;

  ~PlanCache() {
    for (auto& [key, plan] : plans) fftw_destroy_plan(plan);
  }

  fftw_plan get(int n0, int n1, int n2, int sign) {
    std::lock_guard lock(mutex);
    auto key = std::make_tuple(n0, n1, n2, sign);
    if (auto it = plans.find(key); it != plans.end()) return it->second;
    int dims[3];
    int rank = 0;
    for (int n : {n0, n1, n2})
      if (n > 1) dims[rank++] = n;
    if (rank == 0) dims[rank++] = 1;
    std::size_t total = std::size_t(n0) * n1 * n2;
    auto* buf = static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * total));
    fftw_plan p = fftw_plan_dft(rank, dims, buf, buf, sign, FFTW_ESTIMATE | FFTW_UNALIGNED);
    fftw_free(buf);
    if (!p) throw DomainError("fft: FFTW could not create a plan");
    plans.emplace(key, p);
    return p;
  }
};

PlanCache& cache() {
  static PlanCache c;
  return c;
}

}  // namespace

void fft(ComplexField& f, FftDirection dir) {
  const auto& n = f.grid.n;
  const int sign = dir == FftDirection::forward ? FFTW_FORWARD : FFTW_BACKWARD;
  fftw_plan p = cache().get(n[0], n[1], n[2], sign);
  auto* data = reinterpret_cast<fftw_complex*>(f.data.data());
  fftw_execute_dft(p, data, data);
  if (dir == FftDirection::inverse) {
    const double scale = 1.0 / static_cast<double>(f.data.size());
    for (auto& v : f.data) v *= scale;
  }
}

void fft_1d(std::vector<cplx>& v, FftDirection dir) {
  const int sign = dir == FftDirection::forward ? FFTW_FORWARD : FFTW_BACKWARD;
  fftw_plan p = cache().get(static_cast<int>(v.size()), 1, 1, sign);
  auto* data = reinterpret_cast<fftw_complex*>(v.data());
  fftw_execute_dft(p, data, data);
}

std::vector<double> wavenumbers(int n, double h) {
  std::vector<double> k(n);
  const double dk = 2.0 * M_PI / (n * h);
  for (int i = 0; i < n; ++i) k[i] = dk * (i < n / 2 ? i : i - n);
  return k;
}

}  // namespace helix::numerics
