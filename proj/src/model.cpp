#include "helix/model.hpp"

#include "helix/errors.hpp"

namespace helix {

std::string to_string(ModelKind k) {
  switch (k) {
    case ModelKind::landau: return "landau";
    case ModelKind::packet: return "packet";
    case ModelKind::helical: return "helical";
    case ModelKind::kg_helical: return "kg_helical";
    case ModelKind::dirac_helical: return "dirac_helical";
  }
  return "?";
}

ModelKind model_kind_from_string(const std::string& s) {
  for (auto k : {ModelKind::landau, ModelKind::packet, ModelKind::helical, ModelKind::kg_helical,
                 ModelKind::dirac_helical})
    if (to_string(k) == s) return k;
  throw DomainError("unknown model kind '" + s + "'");
}

void WaveModel::validate() const {
  helix::validate(params);
  packet.validate();
  if (!(params.B > 0)) throw DomainError("WaveModel: B must be positive");
  switch (kind) {
    case ModelKind::landau:
    case ModelKind::packet: break;
    case ModelKind::helical:
      if (!traj) throw DomainError("WaveModel: helical kind requires a trajectory");
      if (!traj->finite()) throw DomainError("WaveModel: trajectory must be finite");
      break;
    case ModelKind::kg_helical:
    case ModelKind::dirac_helical:
      if (!traj) throw DomainError("WaveModel: relativistic kinds require a trajectory");
      kg_params().validate(params);
      break;
  }
}

classical::TrajectoryParams WaveModel::trajectory() const {
  const auto p0 = traj.value_or(classical::PhaseSpacePoint{});
  if (kind == ModelKind::kg_helical || kind == ModelKind::dirac_helical)
    return rel::transverse_trajectory(kg_params(), params);
  return classical::TrajectoryParams::nonrelativistic(p0, params);
}

rel::KGHelicalParams WaveModel::kg_params() const {
  return {packet.qn, M, traj.value_or(classical::PhaseSpacePoint{}), spin};
}

cplx WaveModel::evaluate(const Vec3& r, double t) const {
  switch (kind) {
    case ModelKind::landau: return nonrel::landau_state(params, packet, r, t);
    case ModelKind::packet: return nonrel::packet_state(params, packet, r, t);
    case ModelKind::helical: return nonrel::helical_state(params, packet, trajectory(), r, t);
    case ModelKind::kg_helical: return rel::kg_helical(kg_params(), params, r, t);
    case ModelKind::dirac_helical: {
      const auto b = evaluate_bispinor(r, t);
      return spin == rel::Spin::up ? b.c[0] : b.c[1];
    }
  }
  return 0.0;
}

rel::Bispinor WaveModel::evaluate_bispinor(const Vec3& r, double t) const {
  if (kind != ModelKind::dirac_helical) throw DomainError("WaveModel: not a bispinor model");
  return rel::dirac_helical(kg_params(), params, r, t);
}

double WaveModel::density(const Vec3& r, double t) const {
  switch (kind) {
    case ModelKind::helical: return nonrel::density_helical(params, packet, trajectory(), r, t);
    case ModelKind::dirac_helical:
      if (spin == rel::Spin::up) return rel::dirac_density(kg_params(), params, r, t);
      return evaluate_bispinor(r, t).density();
    default: return std::norm(evaluate(r, t));
  }
}

}  // namespace helix
