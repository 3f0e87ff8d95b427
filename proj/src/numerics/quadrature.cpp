#include "helix/numerics/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <string>

#include "helix/errors.hpp"
#include "helix/numerics/parallel.hpp"

namespace helix::numerics {

void QuadratureSpec::validate() const {
  if (dim < 1 || dim > 3) throw DomainError("QuadratureSpec: dim must be 1..3");
  for (int a = 0; a < dim; ++a) {
    const int min_points = rule == QuadRule::trapezoid ? 32 : 16;
    if (points[a] < min_points)
      throw DomainError("QuadratureSpec: axis " + std::to_string(a) + " needs at least " +
                        std::to_string(min_points) + " points");
    if (!(scale[a] > 0) || !std::isfinite(scale[a]))
      throw DomainError("QuadratureSpec: scale must be positive");
    if (rule == QuadRule::trapezoid && !(half_width[a] > 0))
      throw DomainError("QuadratureSpec: half_width must be positive");
  }
}

GaussHermiteRule gauss_hermite(int n) {
  static std::mutex mutex;
  static std::map<int, GaussHermiteRule> memo;
  {
    std::lock_guard lock(mutex);
    if (auto it = memo.find(n); it != memo.end()) return it->second;
  }
  if (n < 1) throw DomainError("gauss_hermite: n must be >= 1");
  GaussHermiteRule rule;
  rule.nodes.resize(n);
  rule.scaled_weights.resize(n);
  const double pim4 = std::pow(M_PI, -0.25);
  // Orthonormal Hermite functions phi_j(u) = p_j(u) exp(-u^2/2); roots by
  // Newton from the classic asymptotic starting guesses.
  auto hermite_pair = [&](double u) {
    double p1 = pim4 * std::exp(-0.5 * u * u), p2 = 0.0;
    for (int j = 1; j <= n; ++j) {
      const double p3 = p2;
      p2 = p1;
      p1 = u * std::sqrt(2.0 / j) * p2 - std::sqrt((j - 1.0) / j) * p3;
    }
    return std::pair{p1, p2};  // phi_n, phi_{n-1}
  };
  const int m = (n + 1) / 2;
  double z = 0.0;
  for (int i = 0; i < m; ++i) {
    if (i == 0)
      z = std::sqrt(2.0 * n + 1) - 1.85575 * std::pow(2.0 * n + 1, -0.16667);
    else if (i == 1)
      z -= 1.14 * std::pow(double(n), 0.426) / z;
    else if (i == 2)
      z = 1.86 * z - 0.86 * rule.nodes[0];
    else if (i == 3)
      z = 1.91 * z - 0.91 * rule.nodes[1];
    else
      z = 2.0 * z - rule.nodes[i - 2];
    double phi_prev = 0.0;
    for (int it = 0; it < 100; ++it) {
      auto [pn, pn1] = hermite_pair(z);
      const double dz = pn / (std::sqrt(2.0 * n) * pn1);
      z -= dz;
      phi_prev = pn1;
      if (std::abs(dz) <= 1e-15 * std::max(1.0, std::abs(z))) break;
    }
    phi_prev = hermite_pair(z).second;
    const double w = 1.0 / (n * phi_prev * phi_prev);
    rule.nodes[i] = z;
    rule.nodes[n - 1 - i] = -z;
    rule.scaled_weights[i] = w;
    rule.scaled_weights[n - 1 - i] = w;
  }
  std::reverse(rule.nodes.begin(), rule.nodes.end());
  std::reverse(rule.scaled_weights.begin(), rule.scaled_weights.end());
  std::lock_guard lock(mutex);
  memo.emplace(n, rule);
  return rule;
}

namespace {

struct Axis {
  std::vector<double> x;
  std::vector<double> w_fine;
  std::vector<double> w_coarse;  // zero where the node is not part of the coarse rule
};

Axis trapezoid_axis(int intervals, double center, double half) {
  const int N = intervals + (intervals % 2);
  const double h = 2.0 * half / N;
  Axis ax;
  ax.x.resize(N + 1);
  ax.w_fine.assign(N + 1, h);
  ax.w_coarse.assign(N + 1, 0.0);
  for (int i = 0; i <= N; ++i) {
    ax.x[i] = center - half + i * h;
    if (i % 2 == 0) ax.w_coarse[i] = 2.0 * h;
  }
  ax.w_fine.front() = ax.w_fine.back() = 0.5 * h;
  ax.w_coarse.front() = ax.w_coarse.back() = h;
  return ax;
}

// Gauss-Hermite: the coarse rule has different nodes, so the axis carries the
// union of both node sets with zero weights where a rule does not use a node.
Axis hermite_axis(int n, double center, double scale) {
  const auto fine = gauss_hermite(n);
  const auto coarse = gauss_hermite(std::max(1, n / 2));
  Axis ax;
  for (std::size_t i = 0; i < fine.nodes.size(); ++i) {
    ax.x.push_back(center + scale * fine.nodes[i]);
    ax.w_fine.push_back(scale * fine.scaled_weights[i]);
    ax.w_coarse.push_back(0.0);
  }
  for (std::size_t i = 0; i < coarse.nodes.size(); ++i) {
    ax.x.push_back(center + scale * coarse.nodes[i]);
    ax.w_fine.push_back(0.0);
    ax.w_coarse.push_back(scale * coarse.scaled_weights[i]);
  }
  return ax;
}

const char* face_name(int axis, bool upper) {
  static const char* names[3][2] = {{"x-", "x+"}, {"y-", "y+"}, {"z-", "z+"}};
  return names[axis][upper ? 1 : 0];
}

}  // namespace

std::vector<QuadResult> integrate_many(
    const std::function<void(const Vec3&, std::span<double>)>& f, int count,
    const QuadratureSpec& spec) {
  spec.validate();
  if (count < 1) throw DomainError("integrate_many: count must be >= 1");
  std::array<Axis, 3> axes;
  for (int a = 0; a < 3; ++a) {
    if (a >= spec.dim) {
      axes[a].x = {spec.center[a]};
      axes[a].w_fine = {1.0};
      axes[a].w_coarse = {1.0};
    } else if (spec.rule == QuadRule::trapezoid) {
      axes[a] = trapezoid_axis(spec.points[a], spec.center[a], spec.half_width[a] * spec.scale[a]);
    } else {
      axes[a] = hermite_axis(spec.points[a], spec.center[a], spec.scale[a]);
    }
  }
  const std::size_t n0 = axes[0].x.size(), n1 = axes[1].x.size(), n2 = axes[2].x.size();
  const std::size_t K = std::size_t(count);

  // Per outer index: K fine sums, K coarse sums, peak |f|, and peak |f| per face.
  struct Row {
    std::vector<double> fine, coarse;
    double peak = 0.0;
    std::array<double, 6> face{};
  };
  std::vector<Row> rows(n0);
  const bool trap = spec.rule == QuadRule::trapezoid;

  parallel_for(n0, [&](std::size_t i) {
    Row& row = rows[i];
    std::vector<double> vals(K);
    std::vector<std::vector<double>> fine_terms(K), coarse_terms(K);
    for (auto& v : fine_terms) v.reserve(n1 * n2);
    for (auto& v : coarse_terms) v.reserve(n1 * n2);
    for (std::size_t j = 0; j < n1; ++j) {
      for (std::size_t k = 0; k < n2; ++k) {
        const double wf = axes[1].w_fine[j] * axes[2].w_fine[k];
        const double wc = axes[1].w_coarse[j] * axes[2].w_coarse[k];
        std::fill(vals.begin(), vals.end(), 0.0);
        f({axes[0].x[i], axes[1].x[j], axes[2].x[k]}, vals);
        for (std::size_t q = 0; q < K; ++q) {
          if (!std::isfinite(vals[q])) throw AccuracyError("integrate: integrand is not finite");
          fine_terms[q].push_back(wf * vals[q]);
          coarse_terms[q].push_back(wc * vals[q]);
        }
        if (trap) {
          double mag = 0.0;
          for (double v : vals) mag = std::max(mag, std::abs(v));
          row.peak = std::max(row.peak, mag);
          const std::size_t idx[3] = {i, j, k};
          const std::size_t len[3] = {n0, n1, n2};
          for (int a = 0; a < spec.dim; ++a) {
            if (idx[a] == 0) row.face[2 * a] = std::max(row.face[2 * a], mag);
            if (idx[a] + 1 == len[a]) row.face[2 * a + 1] = std::max(row.face[2 * a + 1], mag);
          }
        }
      }
    }
    row.fine.resize(K);
    row.coarse.resize(K);
    for (std::size_t q = 0; q < K; ++q) {
      row.fine[q] = axes[0].w_fine[i] * pairwise_sum(fine_terms[q]);
      row.coarse[q] = axes[0].w_coarse[i] * pairwise_sum(coarse_terms[q]);
    }
  });

  if (trap) {
    double peak = 0.0;
    std::array<double, 6> face{};
    for (const auto& r : rows) {
      peak = std::max(peak, r.peak);
      for (int q = 0; q < 6; ++q) face[q] = std::max(face[q], r.face[q]);
    }
    for (int a = 0; a < spec.dim; ++a)
      for (int s = 0; s < 2; ++s)
        if (face[2 * a + s] > spec.decay_tolerance * peak)
          throw AccuracyError(std::string("integrate: integrand does not decay on face ") +
                              face_name(a, s == 1) + " (boundary/peak = " +
                              std::to_string(face[2 * a + s] / peak) + ")");
  }

  std::vector<QuadResult> out(K);
  std::vector<double> col(n0);
  for (std::size_t q = 0; q < K; ++q) {
    for (std::size_t i = 0; i < n0; ++i) col[i] = rows[i].fine[q];
    const double fine = pairwise_sum(col);
    for (std::size_t i = 0; i < n0; ++i) col[i] = rows[i].coarse[q];
    const double coarse = pairwise_sum(col);
    out[q] = {fine, std::abs(fine - coarse)};
  }
  return out;
}

QuadResult integrate(const std::function<double(const Vec3&)>& f, const QuadratureSpec& spec) {
  return integrate_many([&](const Vec3& r, std::span<double> out) { out[0] = f(r); }, 1, spec)[0];
}

}  // namespace helix::numerics
