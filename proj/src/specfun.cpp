#include "helix/specfun.hpp"

#include <cmath>
#include <string>

#include "helix/errors.hpp"

namespace helix::specfun {

void validate(const QuantumNumbers& qn) {
  if (qn.n < 0 || qn.l < 0) throw DomainError("QuantumNumbers: n and l must be >= 0");
}

double laguerre(int n, int l, double x) {
  if (l < 0) throw DomainError("laguerre: l must be >= 0, got " + std::to_string(l));
  if (n < -1) throw DomainError("laguerre: n must be >= -1, got " + std::to_string(n));
  if (!(x >= 0.0)) throw DomainError("laguerre: x must be >= 0");
  if (n == -1) return 0.0;
  double prev = 0.0;  // L_{-1}
  double cur = 1.0;   // L_0
  for (int k = 0; k < n; ++k) {
    const double next = ((2.0 * k + l + 1.0 - x) * cur - (k + l) * prev) / (k + 1.0);
    prev = cur;
    cur = next;
  }
  return cur;
}

double laguerre_derivative(int n, int l, double x) {
  if (l < 0 || n < -1) (void)laguerre(n, l, x);  // raises with the standard message
  if (n <= 0) return 0.0;
  return -laguerre(n - 1, l + 1, x);
}

double log_landau_norm(int n, int l, double B) {
  if (n < 0 || l < 0) throw DomainError("landau_norm: n and l must be >= 0");
  if (!(B > 0.0) || !std::isfinite(B)) throw DomainError("landau_norm: B must be positive");
  const double log_sq = (l + 1.0) * std::log(B) + std::lgamma(n + 1.0) - std::log(2.0 * M_PI) -
                        l * std::log(2.0) - std::lgamma(n + l + 1.0);
  return 0.5 * log_sq;
}

double landau_norm(int n, int l, double B) { return std::exp(log_landau_norm(n, l, B)); }

}  // namespace helix::specfun
