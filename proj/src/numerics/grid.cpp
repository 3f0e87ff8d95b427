#include "helix/numerics/grid.hpp"

#include <cmath>
#include <string>

#include "helix/errors.hpp"
#include "helix/numerics/parallel.hpp"

namespace helix::numerics {

Grid3 Grid3::centered(int dim, int count, double half_width) {
  if (dim < 1 || dim > 3) throw DomainError("Grid3::centered: dim must be 1..3");
  if (count < 1 || !(half_width > 0)) throw DomainError("Grid3::centered: bad count or width");
  Grid3 g;
  const double h = 2.0 * half_width / count;
  for (int a = 0; a < dim; ++a) {
    g.n[a] = count;
    g.spacing[a] = h;
    g.origin[a] = -half_width;
  }
  return g;
}

int Grid3::used_axes() const {
  int d = 0;
  for (int a = 0; a < 3; ++a) d += n[a] > 1 ? 1 : 0;
  return d;
}

double Grid3::cell_volume() const {
  double v = 1.0;
  for (int a = 0; a < 3; ++a)
    if (n[a] > 1) v *= spacing[a];
  return v;
}

void Grid3::validate() const {
  for (int a = 0; a < 3; ++a) {
    if (n[a] < 1) throw DomainError("Grid3: point counts must be >= 1");
    if (!(spacing[a] > 0) || !std::isfinite(spacing[a]))
      throw DomainError("Grid3: spacing must be positive");
    if (!std::isfinite(origin[a])) throw DomainError("Grid3: origin must be finite");
  }
}

void Grid3::validate_for_stencils() const {
  validate();
  for (int a = 0; a < 3; ++a)
    if (n[a] > 1 && n[a] < 16)
      throw DomainError("Grid3: axis " + std::to_string(a) + " has " + std::to_string(n[a]) +
                        " points; stencil operations need at least 16");
}

ComplexField sample(const Grid3& g, const std::function<cplx(const Vec3&)>& f) {
  g.validate();
  ComplexField out(g);
  parallel_for(std::size_t(g.n[0]), [&](std::size_t i) {
    for (int j = 0; j < g.n[1]; ++j)
      for (int k = 0; k < g.n[2]; ++k) out.at(int(i), j, k) = f(g.point(int(i), j, k));
  });
  return out;
}

FieldSeries sample_series(const Grid3& g, double t0, double dt, int count,
                          const std::function<cplx(const Vec3&, double)>& f) {
  FieldSeries s;
  s.t0 = t0;
  s.dt = dt;
  for (int i = 0; i < count; ++i) {
    const double t = t0 + i * dt;
    s.slices.push_back(sample(g, [&](const Vec3& r) { return f(r, t); }));
  }
  return s;
}

RealField sample_real(const Grid3& g, const std::function<double(const Vec3&)>& f) {
  g.validate();
  RealField out(g);
  parallel_for(std::size_t(g.n[0]), [&](std::size_t i) {
    for (int j = 0; j < g.n[1]; ++j)
      for (int k = 0; k < g.n[2]; ++k) out.at(int(i), j, k) = f(g.point(int(i), j, k));
  });
  return out;
}

double l2_norm_squared(const ComplexField& f) {
  std::vector<double> sq(f.data.size());
  for (std::size_t i = 0; i < sq.size(); ++i) sq[i] = std::norm(f.data[i]);
  return pairwise_sum(sq) * f.grid.cell_volume();
}

double l2_relative_error(const ComplexField& a, const ComplexField& b) {
  if (!(a.grid == b.grid)) throw DomainError("l2_relative_error: grids differ");
  std::vector<double> diff(a.data.size()), ref(a.data.size());
  for (std::size_t i = 0; i < diff.size(); ++i) {
    diff[i] = std::norm(a.data[i] - b.data[i]);
    ref[i] = std::norm(b.data[i]);
  }
  return std::sqrt(pairwise_sum(diff) / pairwise_sum(ref));
}

void check_finite(const ComplexField& f) {
  for (const auto& v : f.data)
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
      throw DomainError("ComplexField: non-finite sample");
}

}  // namespace helix::numerics
