#include "helix/cli/scenarios.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>

#include "helix/cli/checks.hpp"
#include "helix/cli/export.hpp"
#include "helix/cli/report.hpp"
#include "helix/errors.hpp"
#include "helix/numerics/parallel.hpp"
#include "helix/numerics/propagate.hpp"

namespace helix::cli {

namespace fs = std::filesystem;
using nlohmann::json;

json model_json(const WaveModel& m) {
  json j = {{"kind", to_string(m.kind)},
            {"params", {{"m", m.params.m}, {"c", m.params.c}, {"hbar", m.params.hbar}, {"B", m.params.B}}},
            {"n", m.packet.qn.n},
            {"l", m.packet.qn.l},
            {"d", m.packet.d},
            {"pz", m.packet.pz},
            {"M", m.M},
            {"spin", m.spin == rel::Spin::up ? "up" : "down"}};
  if (m.traj) {
    const auto& q = *m.traj;
    j["trajectory"] = {{"x", q.x}, {"y", q.y}, {"z", q.z}, {"px", q.px}, {"py", q.py}, {"pz", q.pz}};
  }
  return j;
}

namespace {

std::string path_in(const RunConfig& c, const std::string& name) {
  return (fs::path(c.output) / name).string();
}

std::ofstream open_text(const std::string& path) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  return out;
}

void write_report(const RunConfig& c, const VerificationReport& rep, std::ostream& out) {
  auto f = open_text(path_in(c, "report.json"));
  json j = rep.to_json();
  j["scenario"] = to_string(c.scenario);
  f << j.dump(2) << "\n";
  rep.print_table(out);
  for (const auto& r : rep.checks)
    if (!r.passed) out << "failed: " << r.name << " measured " << r.measured << " " << r.comparison << " "
                       << r.tolerance << (r.detail.empty() ? "" : " (" + r.detail + ")") << "\n";
}

FieldMeta meta_for(const RunConfig& c, const std::string& description) {
  FieldMeta m;
  m.units = c.units.si ? "si" : "natural";
  m.model = model_json(c.model);
  m.description = description;
  return m;
}

int run_trajectory(const RunConfig& c, std::ostream& out) {
  const auto tp = c.model.trajectory();
  const auto times = c.times.expand();
  const auto path = path_in(c, "trajectory.csv");
  auto f = open_text(path);
  classical::write_trajectory_csv(f, tp, times);
  out << "wrote " << path << " (" << times.size() << " samples, period " << tp.period() << ")\n";
  return exit_ok;
}

// Transverse slice of the helical state (2D injection of a Landau profile).
numerics::ComplexField transverse_slice(const WaveModel& m, const numerics::Grid3& g, double t) {
  const auto& P = m.params;
  const auto qn = m.packet.qn;
  const double e = (2 * qn.n + 1) * P.hbar * P.B / (2 * P.m);
  if (m.kind != ModelKind::helical) {
    return numerics::sample(g, [&](const Vec3& r) {
      return nonrel::landau_profile(qn, P.B, r[0], r[1]).value * std::polar(1.0, -e * t);
    });
  }
  const auto fl = ict::magnetic_flow(m.trajectory(), t, 2);
  return numerics::sample(g, [&](const Vec3& r) {
    return ict::injection_phase(fl, r, P.hbar) *
           nonrel::landau_profile(qn, P.B, r[0] - fl.x[0], r[1] - fl.x[1]).value * std::polar(1.0, -e * t);
  });
}

int run_field(const RunConfig& c, std::ostream& out) {
  const auto times = c.times.expand();
  const auto& g = *c.grid;
  for (std::size_t i = 0; i < times.size(); ++i) {
    const double t = times[i];
    char name[64];
    const std::string desc = "t = " + std::to_string(t);
    if (c.model.is_bispinor()) {
      std::array<numerics::ComplexField, 4> comp;
      for (auto& f : comp) f = numerics::ComplexField(g);
      numerics::parallel_for(std::size_t(g.n[0]), [&](std::size_t a) {
        for (int b = 0; b < g.n[1]; ++b)
          for (int k = 0; k < g.n[2]; ++k) {
            const auto v = c.model.evaluate_bispinor(g.point(int(a), b, k), t);
            for (int q = 0; q < 4; ++q) comp[q].at(int(a), b, k) = v.c[q];
          }
      });
      std::snprintf(name, sizeof name, "bispinor_%04zu.bin", i);
      export_field(comp, path_in(c, name), meta_for(c, desc));
    } else {
      const auto f = numerics::sample(g, [&](const Vec3& r) { return c.model.evaluate(r, t); });
      std::snprintf(name, sizeof name, "field_%04zu.bin", i);
      export_field(f, path_in(c, name), meta_for(c, desc));
    }
    const auto rho = numerics::sample_real(g, [&](const Vec3& r) { return c.model.density(r, t); });
    std::snprintf(name, sizeof name, "density_%04zu.bin", i);
    export_field(rho, path_in(c, name), meta_for(c, desc));
    out << "wrote slice " << i << " (t = " << t << ")\n";
  }
  return exit_ok;
}

int run_propagate(const RunConfig& c, std::ostream& out) {
  const auto& g = *c.grid;
  const double t_final = c.propagate.t_final > 0 ? c.propagate.t_final : c.model.trajectory().period();
  const auto t0 = std::chrono::steady_clock::now();
  const auto init = transverse_slice(c.model, g, 0.0);
  const auto evolved = numerics::splitstep_propagate(init, c.model.params.m, c.model.params, t_final,
                                                     c.propagate.steps);
  const auto exact = transverse_slice(c.model, g, t_final);
  export_field(evolved, path_in(c, "propagated.bin"), meta_for(c, "split-step result"));
  export_field(exact, path_in(c, "analytic.bin"), meta_for(c, "closed-form slice"));
  CheckRecord rec{"propagate_l2", "split-step vs closed-form transverse slice",
                  numerics::l2_relative_error(evolved, exact), 1e-6 * c.tolerance_scale};
  rec.detail = std::to_string(c.propagate.steps) + " steps to t = " + std::to_string(t_final);
  rec.runtime_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  VerificationReport rep;
  rep.add(judge(rec));
  write_report(c, rep, out);
  return rep.passed() ? exit_ok : exit_check_failed;
}

int run_corrections(const RunConfig& c, std::ostream& out) {
  const auto kp = c.model.kg_params();
  const auto& P = c.model.params;
  const auto times = c.times.expand();
  auto csv = open_text(path_in(c, "corrections.csv"));
  csv << "t_minus,x_closed,y_closed,x_alt,y_alt,x_quadrature,y_quadrature\n";
  VerificationReport rep;
  const double scale = P.magnetic_length();
  for (std::size_t i = 0; i < times.size(); ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    const double tm = times[i];
    const auto a = rel::dirac_corrections(kp, P, tm);
    const auto b = rel::dirac_corrections(kp, P, tm, rel::DenominatorForm::one_mass);
    const auto q = c.quad ? *c.quad : rel::default_corrections_quadrature(kp, P, tm);
    const auto o = rel::corrections_oracle(kp, P, tm, q, 1e-9 * scale);
    char row[512];
    std::snprintf(row, sizeof row, "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n", tm, a.x, a.y, b.x, b.y,
                  o.x, o.y);
    csv << row;
    const double size = std::max(std::hypot(o.x, o.y), 1e-4 * scale);
    CheckRecord rec{"corrections[" + std::to_string(i) + "]",
                    "closed form vs quadrature at t_minus = " + std::to_string(tm),
                    std::hypot(a.x - o.x, a.y - o.y) / size, 1e-6 * c.tolerance_scale};
    char detail[256];
    std::snprintf(detail, sizeof detail, "closed (%.6g, %.6g), quadrature (%.6g, %.6g)", a.x, a.y, o.x, o.y);
    rec.detail = detail;
    rec.runtime_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    rep.add(judge(rec));
  }
  write_report(c, rep, out);
  return rep.passed() ? exit_ok : exit_check_failed;
}

int run_spectrum(const RunConfig& c, std::ostream& out) {
  const auto kp = c.model.kg_params();
  const auto& P = c.model.params;
  const double T = 2 * M_PI / P.cyclotron_frequency(kp.M);
  const double span = c.spectrum.t_span > 0 ? c.spectrum.t_span : 16 * T;
  const auto t0 = std::chrono::steady_clock::now();
  const auto res = rel::positivity_spectrum(kp, P, c.spectrum.probe, span, c.spectrum.samples);
  auto csv = open_text(path_in(c, "spectrum.csv"));
  csv << "omega,power\n";
  char row[128];
  for (std::size_t i = 0; i < res.spectrum.omega.size(); ++i) {
    std::snprintf(row, sizeof row, "%.17g,%.17g\n", res.spectrum.omega[i], res.spectrum.power[i]);
    csv << row;
  }
  CheckRecord rec{"positivity", "fraction of spectral power at non-positive frequency",
                  res.wrong_side_fraction, 1e-8 * c.tolerance_scale};
  rec.runtime_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  VerificationReport rep;
  rep.add(judge(rec));
  write_report(c, rep, out);
  return rep.passed() ? exit_ok : exit_check_failed;
}

// Fixed artifacts written by every verify run; byte-identical across runs.
void write_verify_artifacts(const RunConfig& c) {
  const auto P = natural_units(1.0);
  classical::PhaseSpacePoint p0;
  p0.x = 1.0;
  p0.pz = 0.5;
  const auto tp = classical::TrajectoryParams::nonrelativistic(p0, P);
  std::vector<double> times(257);
  for (std::size_t i = 0; i < times.size(); ++i) times[i] = tp.period() * double(i) / 256.0;
  auto f = open_text(path_in(c, "trajectory.csv"));
  classical::write_trajectory_csv(f, tp, times);

  WaveModel m;
  m.kind = ModelKind::helical;
  m.params = P;
  m.packet = {{1, 1}, 1.0, 0.0};
  m.traj = p0;
  const auto g = numerics::Grid3::centered(3, 32, 8.0);
  FieldMeta meta;
  meta.model = model_json(m);
  meta.description = "helical state at t = 1";
  export_field(numerics::sample(g, [&](const Vec3& r) { return m.evaluate(r, 1.0); }),
               path_in(c, "helical_field.bin"), meta);
  meta.description = "helical density at t = 1";
  export_field(numerics::sample_real(g, [&](const Vec3& r) { return m.density(r, 1.0); }),
               path_in(c, "helical_density.bin"), meta);
}

int run_verify(const RunConfig& c, std::ostream& out) {
  write_verify_artifacts(c);
  const auto rep = run_checks(c.verify.checks, c.tolerance_scale);
  write_report(c, rep, out);
  return rep.passed() ? exit_ok : exit_check_failed;
}

}  // namespace

int run(const RunConfig& config, std::ostream& out) {
  config.validate();
  numerics::set_thread_count(config.threads);
  std::error_code ec;
  fs::create_directories(config.output, ec);
  if (ec) throw ConfigError("cannot create output directory '" + config.output + "': " + ec.message());
  {
    auto f = open_text(path_in(config, "config.json"));
    f << serialize_config(config);
  }
  switch (config.scenario) {
    case Scenario::trajectory: return run_trajectory(config, out);
    case Scenario::field: return run_field(config, out);
    case Scenario::verify: return run_verify(config, out);
    case Scenario::propagate: return run_propagate(config, out);
    case Scenario::corrections: return run_corrections(config, out);
    case Scenario::spectrum: return run_spectrum(config, out);
  }
  return exit_usage;
}

}  // namespace helix::cli
