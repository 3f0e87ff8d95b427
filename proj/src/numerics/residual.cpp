#include "helix/numerics/residual.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "helix/errors.hpp"
#include "helix/numerics/parallel.hpp"

namespace helix::numerics {

namespace {

constexpr double kD1[5] = {1.0, -8.0, 0.0, 8.0, -1.0};       // / 12h
constexpr double kD2[5] = {-1.0, 16.0, -30.0, 16.0, -1.0};   // / 12h^2

/// 4th-order central derivatives of one sampled slice.
class Stencil {
 public:
  explicit Stencil(const ComplexField& f) : f_(f) {
    const auto& n = f.grid.n;
    stride_[0] = std::ptrdiff_t(n[1]) * n[2];
    stride_[1] = n[2];
    stride_[2] = 1;
  }

  cplx value(std::size_t idx) const { return f_.data[idx]; }

  cplx d1(int a, std::size_t idx) const {
    if (f_.grid.n[a] == 1) return 0.0;
    cplx s = 0.0;
    for (int p = -2; p <= 2; ++p) s += kD1[p + 2] * at(idx, a, p);
    return s / (12.0 * f_.grid.spacing[a]);
  }

  cplx d2(int a, std::size_t idx) const {
    if (f_.grid.n[a] == 1) return 0.0;
    cplx s = 0.0;
    for (int p = -2; p <= 2; ++p) s += kD2[p + 2] * at(idx, a, p);
    const double h = f_.grid.spacing[a];
    return s / (12.0 * h * h);
  }

  cplx dmix(int a, int b, std::size_t idx) const {
    if (a == b) return d2(a, idx);
    if (f_.grid.n[a] == 1 || f_.grid.n[b] == 1) return 0.0;
    cplx s = 0.0;
    for (int p = -2; p <= 2; ++p)
      for (int q = -2; q <= 2; ++q) {
        if (p == 0 || q == 0) continue;
        s += kD1[p + 2] * kD1[q + 2] *
             f_.data[std::ptrdiff_t(idx) + p * stride_[a] + q * stride_[b]];
      }
    return s / (144.0 * f_.grid.spacing[a] * f_.grid.spacing[b]);
  }

 private:
  cplx at(std::size_t idx, int a, int p) const {
    return f_.data[std::ptrdiff_t(idx) + p * stride_[a]];
  }
  const ComplexField& f_;
  std::ptrdiff_t stride_[3];
};

void check_series(const std::vector<const Grid3*>& grids, std::size_t count, double dt,
                  const char* who) {
  if (count < 3) throw DomainError(std::string(who) + ": need at least 3 time slices");
  if (!(dt > 0.0)) throw DomainError(std::string(who) + ": time step must be positive");
  for (const auto* g : grids)
    if (!(*g == *grids.front())) throw DomainError(std::string(who) + ": inconsistent grids");
  grids.front()->validate_for_stencils();
}

/// Max over interior points of |op(i, j, k, idx)| evaluated slice by slice.
template <class Op>
double interior_max(const Grid3& g, Op&& op) {
  int lo[3], hi[3];
  for (int a = 0; a < 3; ++a) {
    lo[a] = g.n[a] > 1 ? 2 : 0;
    hi[a] = g.n[a] > 1 ? g.n[a] - 3 : 0;
  }
  const std::size_t rows = std::size_t(hi[0] - lo[0] + 1);
  std::vector<double> row_max(rows, 0.0);
  parallel_for(rows, [&](std::size_t r) {
    const int i = lo[0] + int(r);
    double m = 0.0;
    for (int j = lo[1]; j <= hi[1]; ++j)
      for (int k = lo[2]; k <= hi[2]; ++k) m = std::max(m, op(i, j, k, g.index(i, j, k)));
    row_max[r] = m;
  });
  return *std::max_element(row_max.begin(), row_max.end());
}

}  // namespace

double residual_schrodinger(const FieldSeries& field, const QuadraticHamiltonian& H, double hbar) {
  std::vector<const Grid3*> grids;
  for (const auto& s : field.slices) grids.push_back(&s.grid);
  check_series(grids, field.slices.size(), field.dt, "residual_schrodinger");
  const Grid3& g = field.slices.front().grid;
  for (int a = 0; a < 3; ++a) {
    if (a < H.dim && g.n[a] == 1)
      throw DomainError("residual_schrodinger: grid lacks an axis required by the Hamiltonian");
    if (a >= H.dim && g.n[a] != 1)
      throw DomainError("residual_schrodinger: grid has more axes than the Hamiltonian");
  }
  const int d = H.dim;
  double worst = 0.0;
  for (std::size_t s = 1; s + 1 < field.slices.size(); ++s) {
    const Stencil cur(field.slices[s]);
    const auto& prev = field.slices[s - 1].data;
    const auto& next = field.slices[s + 1].data;
    worst = std::max(worst, interior_max(g, [&](int i, int j, int k, std::size_t idx) {
      const Vec3 x = g.point(i, j, k);
      const cplx psi = cur.value(idx);
      cplx h = 0.0;
      for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b) {
          if (H.A[a][b] != 0.0) h += -0.5 * hbar * hbar * H.A[a][b] * cur.dmix(a, b, idx);
          h += 0.5 * x[a] * H.Bq[a][b] * x[b] * psi;
          if (H.C[a][b] != 0.0) {
            const cplx term = (a == b ? psi : cplx(0.0)) + x[b] * cur.d1(a, idx);
            h += cplx(0.0, -hbar) * H.C[a][b] * term;
          }
        }
      const cplx dtpsi = (next[idx] - prev[idx]) / (2.0 * field.dt);
      return std::abs(cplx(0.0, hbar) * dtpsi - h);
    }));
  }
  return worst;
}

double residual_klein_gordon(const FieldSeries& field, const PhysParams& params, int spin_sign) {
  validate(params);
  std::vector<const Grid3*> grids;
  for (const auto& s : field.slices) grids.push_back(&s.grid);
  check_series(grids, field.slices.size(), field.dt, "residual_klein_gordon");
  const Grid3& g = field.slices.front().grid;
  const double B = params.B;
  const double k2 = std::pow(params.m * params.c / params.hbar, 2);
  const double inv_c2 = 1.0 / (params.c * params.c);
  const double s_sign = spin_sign >= 0 ? 1.0 : -1.0;
  const cplx I(0.0, 1.0);
  double worst = 0.0;
  for (std::size_t s = 1; s + 1 < field.slices.size(); ++s) {
    const Stencil cur(field.slices[s]);
    const auto& prev = field.slices[s - 1].data;
    const auto& next = field.slices[s + 1].data;
    worst = std::max(worst, interior_max(g, [&](int i, int j, int k, std::size_t idx) {
      const Vec3 r = g.point(i, j, k);
      const cplx psi = cur.value(idx);
      const cplx dtt = (next[idx] - 2.0 * psi + prev[idx]) / (field.dt * field.dt);
      // (d_x + iBy/2)^2 + (d_y - iBx/2)^2
      const cplx dperp = cur.d2(0, idx) + cur.d2(1, idx) + I * B * r[1] * cur.d1(0, idx) -
                         I * B * r[0] * cur.d1(1, idx) -
                         0.25 * B * B * (r[0] * r[0] + r[1] * r[1]) * psi;
      const cplx res = inv_c2 * dtt - dperp - cur.d2(2, idx) + k2 * psi - s_sign * B * psi;
      return std::abs(res);
    }));
  }
  return worst;
}

double residual_dirac(const BispinorSeries& field, const PhysParams& params) {
  validate(params);
  std::vector<const Grid3*> grids;
  for (const auto& s : field.slices)
    for (const auto& c : s) grids.push_back(&c.grid);
  check_series(grids, field.slices.size(), field.dt, "residual_dirac");
  const Grid3& g = field.slices.front()[0].grid;
  const double lam = params.lambda_bar();
  const double B = params.B;
  const cplx I(0.0, 1.0);
  double worst = 0.0;
  for (std::size_t s = 1; s + 1 < field.slices.size(); ++s) {
    const auto& cur = field.slices[s];
    const auto& prev = field.slices[s - 1];
    const auto& next = field.slices[s + 1];
    const std::array<Stencil, 4> st{Stencil(cur[0]), Stencil(cur[1]), Stencil(cur[2]),
                                    Stencil(cur[3])};
    worst = std::max(worst, interior_max(g, [&](int i, int j, int k, std::size_t idx) {
      const Vec3 r = g.point(i, j, k);
      // D = grad - i (e/hbar) A with (e/hbar) A = (B/2)(-y, x, 0)
      auto D = [&](int c, int a) {
        cplx v = st[c].d1(a, idx);
        if (a == 0) v += I * 0.5 * B * r[1] * st[c].value(idx);
        if (a == 1) v -= I * 0.5 * B * r[0] * st[c].value(idx);
        return v;
      };
      auto dt = [&](int c) { return (next[c].data[idx] - prev[c].data[idx]) / (2.0 * field.dt); };
      // sigma.D acting on a two-spinor (u, v)
      auto sigma_D = [&](int u, int v) {
        return std::array<cplx, 2>{D(u, 2) + D(v, 0) - I * D(v, 1), D(u, 0) + I * D(u, 1) - D(v, 2)};
      };
      const auto sd_phi = sigma_D(0, 1);
      const auto sd_chi = sigma_D(2, 3);
      double m = 0.0;
      for (int a = 0; a < 2; ++a) {
        const cplx r1 = I * lam * (dt(a) / params.c + sd_phi[a]) - cur[2 + a].data[idx];
        const cplx r2 = I * lam * (dt(2 + a) / params.c - sd_chi[a]) - cur[a].data[idx];
        m = std::max({m, std::abs(r1), std::abs(r2)});
      }
      return m;
    }));
  }
  return worst;
}

double convergence_order(double r_coarse, double r_fine, double refinement) {
  return std::log(r_coarse / r_fine) / std::log(refinement);
}

}  // namespace helix::numerics
