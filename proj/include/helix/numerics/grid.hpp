#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <vector>

#include "helix/params.hpp"

namespace helix::numerics {

/// Axis-aligned sampling grid. An axis with count 1 is unused; sample
/// (i, j, k) sits at origin + (i, j, k) * spacing.
struct Grid3 {
  std::array<int, 3> n{1, 1, 1};
  Vec3 origin{0, 0, 0};
  Vec3 spacing{1, 1, 1};

  /// Cubic/square grid of `count` points per used axis centred on the origin
  /// with periodic spacing (2 half_width / count).
  static Grid3 centered(int dim, int count, double half_width);

  std::size_t size() const { return std::size_t(n[0]) * n[1] * n[2]; }
  int used_axes() const;
  std::size_t index(int i, int j, int k) const { return (std::size_t(i) * n[1] + j) * n[2] + k; }
  Vec3 point(int i, int j, int k) const {
    return {origin[0] + i * spacing[0], origin[1] + j * spacing[1], origin[2] + k * spacing[2]};
  }
  double cell_volume() const;

  /// Throws DomainError unless counts >= 1 and spacings are positive.
  void validate() const;
  /// Additionally requires >= 16 points on every used axis.
  void validate_for_stencils() const;

  friend bool operator==(const Grid3&, const Grid3&) = default;
};

template <class T>
struct Field {
  Grid3 grid;
  std::vector<T> data;

  Field() = default;
  explicit Field(const Grid3& g) : grid(g), data(g.size()) {}

  T& at(int i, int j, int k) { return data[grid.index(i, j, k)]; }
  const T& at(int i, int j, int k) const { return data[grid.index(i, j, k)]; }
};

using ComplexField = Field<cplx>;
using RealField = Field<double>;

/// Uniformly spaced time slices of one field.
struct FieldSeries {
  std::vector<ComplexField> slices;
  double t0 = 0.0;
  double dt = 0.0;
};

/// Four Weyl components per slice: (phi_up, phi_down, chi_up, chi_down).
struct BispinorSeries {
  std::vector<std::array<ComplexField, 4>> slices;
  double t0 = 0.0;
  double dt = 0.0;
};

ComplexField sample(const Grid3& g, const std::function<cplx(const Vec3&)>& f);
/// `count` slices of f(r, t) at t0 + i dt.
FieldSeries sample_series(const Grid3& g, double t0, double dt, int count,
                          const std::function<cplx(const Vec3&, double)>& f);
RealField sample_real(const Grid3& g, const std::function<double(const Vec3&)>& f);

/// sum |psi|^2 dV with pairwise summation.
double l2_norm_squared(const ComplexField& f);
/// ||a - b|| / ||b||.
double l2_relative_error(const ComplexField& a, const ComplexField& b);
/// Throws DomainError if any sample is not finite.
void check_finite(const ComplexField& f);

}  // namespace helix::numerics
