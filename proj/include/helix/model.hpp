#pragma once

#include <optional>
#include <string>

#include "helix/classical.hpp"
#include "helix/nonrel.hpp"
#include "helix/params.hpp"
#include "helix/rel.hpp"

namespace helix {

enum class ModelKind { landau, packet, helical, kg_helical, dirac_helical };

std::string to_string(ModelKind k);
ModelKind model_kind_from_string(const std::string& s);

/// One closed-form wavefunction family with its parameters. `traj` holds the
/// initial phase-space point; it is required for helical kinds.
struct WaveModel {
  ModelKind kind = ModelKind::landau;
  PhysParams params;
  nonrel::PacketParams packet;
  std::optional<classical::PhaseSpacePoint> traj;
  double M = 1.0;              // relativistic kinds only
  rel::Spin spin = rel::Spin::up;

  void validate() const;
  bool is_bispinor() const { return kind == ModelKind::dirac_helical; }

  classical::TrajectoryParams trajectory() const;
  rel::KGHelicalParams kg_params() const;

  /// Scalar value; for dirac_helical the first nonzero Weyl component.
  cplx evaluate(const Vec3& r, double t) const;
  rel::Bispinor evaluate_bispinor(const Vec3& r, double t) const;
  /// Probability density. The spin-up Dirac density is normalised over the
  /// transverse plane; spin down returns the raw component sum.
  double density(const Vec3& r, double t) const;

  friend bool operator==(const WaveModel&, const WaveModel&) = default;
};

}  // namespace helix
