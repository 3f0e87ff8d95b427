#pragma once

#include <array>
#include <functional>
#include <span>
#include <vector>

#include "helix/params.hpp"

namespace helix::numerics {

enum class QuadRule { trapezoid, gauss_hermite };

/// Tensor-product rule over the first `dim` axes.
///
/// trapezoid: `points[a]` intervals (rounded up to even, >= 32) on
///   [center - half_width * scale, center + half_width * scale].
/// gauss_hermite: `points[a]` nodes (>= 16) of the rule for exp(-u^2),
///   mapped through x = center + scale * u; `half_width` is unused.
struct QuadratureSpec {
  QuadRule rule = QuadRule::trapezoid;
  int dim = 3;
  std::array<int, 3> points{64, 64, 64};
  Vec3 center{0, 0, 0};
  Vec3 scale{1, 1, 1};
  Vec3 half_width{8, 8, 8};
  /// Boundary samples must stay below this fraction of the peak |f|.
  double decay_tolerance = 1e-13;

  void validate() const;
  friend bool operator==(const QuadratureSpec&, const QuadratureSpec&) = default;
};

struct QuadResult {
  double value = 0.0;
  /// |fine - coarse| where the coarse rule uses half the points.
  double error_estimate = 0.0;
};

/// Integrates several integrands sharing one set of nodes; `f` writes
/// `count` values into its output span.
std::vector<QuadResult> integrate_many(
    const std::function<void(const Vec3&, std::span<double>)>& f, int count,
    const QuadratureSpec& spec);

QuadResult integrate(const std::function<double(const Vec3&)>& f, const QuadratureSpec& spec);

/// Nodes and weights of the n-point rule for weight exp(-u^2). Weights are
/// returned premultiplied by exp(u^2) so that sum w_i f(u_i) ~ int f(u) du.
struct GaussHermiteRule {
  std::vector<double> nodes;
  std::vector<double> scaled_weights;
};
GaussHermiteRule gauss_hermite(int n);

}  // namespace helix::numerics
