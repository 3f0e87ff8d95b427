#include "helix/cli/config.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <json.hpp>

#include "helix/errors.hpp"

namespace helix::cli {

using nlohmann::json;

std::string to_string(Scenario s) {
  switch (s) {
    case Scenario::trajectory: return "trajectory";
    case Scenario::field: return "field";
    case Scenario::verify: return "verify";
    case Scenario::propagate: return "propagate";
    case Scenario::corrections: return "corrections";
    case Scenario::spectrum: return "spectrum";
  }
  return "?";
}

Scenario scenario_from_string(const std::string& s) {
  for (auto v : {Scenario::trajectory, Scenario::field, Scenario::verify, Scenario::propagate,
                 Scenario::corrections, Scenario::spectrum})
    if (to_string(v) == s) return v;
  throw ConfigError("unknown scenario '" + s + "'");
}

std::vector<double> TimeSamples::expand() const {
  if (!range) return values;
  std::vector<double> out(range->count);
  for (int i = 0; i < range->count; ++i)
    out[i] = range->count == 1 ? range->start
                               : range->start + (range->stop - range->start) * i / (range->count - 1);
  return out;
}

void RunConfig::validate() const {
  try {
    model.validate();
  } catch (const DomainError& e) {
    throw ConfigError(std::string("model: ") + e.what());
  }
  if (threads < 1) throw ConfigError("threads must be >= 1");
  if (!(tolerance_scale > 0)) throw ConfigError("tolerance_scale must be positive");
  if (output.empty()) throw ConfigError("output must be a non-empty path");
  const bool helical = model.kind == ModelKind::helical || model.kind == ModelKind::kg_helical ||
                       model.kind == ModelKind::dirac_helical;
  switch (scenario) {
    case Scenario::trajectory:
      if (!helical) throw ConfigError("trajectory scenario needs a model with a trajectory");
      if (times.empty()) throw ConfigError("trajectory scenario needs 'times'");
      break;
    case Scenario::field:
      if (!grid) throw ConfigError("field scenario needs 'grid'");
      if (times.empty()) throw ConfigError("field scenario needs 'times'");
      break;
    case Scenario::propagate:
      if (!grid) throw ConfigError("propagate scenario needs 'grid'");
      if (grid->used_axes() != 2 || grid->n[2] != 1)
        throw ConfigError("propagate scenario needs a 2D grid in x and y");
      if (model.kind != ModelKind::helical && model.kind != ModelKind::packet &&
          model.kind != ModelKind::landau)
        throw ConfigError("propagate scenario supports landau, packet and helical models");
      break;
    case Scenario::corrections:
      if (model.kind != ModelKind::dirac_helical)
        throw ConfigError("corrections scenario needs a dirac_helical model");
      if (times.empty()) throw ConfigError("corrections scenario needs 'times' (t_minus values)");
      break;
    case Scenario::spectrum:
      if (model.kind != ModelKind::kg_helical && model.kind != ModelKind::dirac_helical)
        throw ConfigError("spectrum scenario needs a kg_helical or dirac_helical model");
      break;
    case Scenario::verify: break;
  }
  if (grid) {
    try {
      grid->validate();
    } catch (const DomainError& e) {
      throw ConfigError(std::string("grid: ") + e.what());
    }
  }
  if (quad) {
    try {
      quad->validate();
    } catch (const DomainError& e) {
      throw ConfigError(std::string("quadrature: ") + e.what());
    }
  }
}

namespace {

// Records the 1-based line/column where every value starts, keyed by JSON
// pointer. Only called on text nlohmann has already accepted.
class Locator {
 public:
  explicit Locator(const std::string& text) : s_(text) {
    skip_ws();
    value("");
  }
  std::pair<int, int> at(const std::string& ptr) const {
    auto it = pos_.find(ptr);
    return it == pos_.end() ? std::pair<int, int>{0, 0} : it->second;
  }
  /// Position of the member name rather than its value.
  std::pair<int, int> key_at(const std::string& ptr) const {
    auto it = keys_.find(ptr);
    return it == keys_.end() ? at(ptr) : it->second;
  }

 private:
  const std::string& s_;
  std::size_t i_ = 0;
  int line_ = 1, col_ = 1;
  std::map<std::string, std::pair<int, int>> pos_;
  std::map<std::string, std::pair<int, int>> keys_;

  void advance() {
    if (s_[i_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++i_;
  }
  void skip_ws() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) advance();
  }
  std::string string_token() {
    std::string out;
    advance();  // opening quote
    while (i_ < s_.size() && s_[i_] != '"') {
      if (s_[i_] == '\\') {
        advance();
        out += s_[i_] == '/' ? '/' : s_[i_];
      } else {
        out += s_[i_];
      }
      advance();
    }
    advance();
    return out;
  }
  static std::string escape(const std::string& key) {
    std::string out;
    for (char ch : key) {
      if (ch == '~') out += "~0";
      else if (ch == '/') out += "~1";
      else out += ch;
    }
    return out;
  }
  void value(const std::string& ptr) {
    pos_[ptr] = {line_, col_};
    if (i_ >= s_.size()) return;
    const char ch = s_[i_];
    if (ch == '{') {
      advance();
      skip_ws();
      while (i_ < s_.size() && s_[i_] != '}') {
        const std::pair<int, int> where{line_, col_};
        const std::string key = string_token();
        keys_[ptr + "/" + escape(key)] = where;
        skip_ws();
        advance();  // ':'
        skip_ws();
        value(ptr + "/" + escape(key));
        skip_ws();
        if (s_[i_] == ',') {
          advance();
          skip_ws();
        }
      }
      advance();
    } else if (ch == '[') {
      advance();
      skip_ws();
      int idx = 0;
      while (i_ < s_.size() && s_[i_] != ']') {
        value(ptr + "/" + std::to_string(idx++));
        skip_ws();
        if (s_[i_] == ',') {
          advance();
          skip_ws();
        }
      }
      advance();
    } else if (ch == '"') {
      string_token();
    } else {
      while (i_ < s_.size() && !std::isspace(static_cast<unsigned char>(s_[i_])) && s_[i_] != ',' &&
             s_[i_] != '}' && s_[i_] != ']')
        advance();
    }
  }
};

class Reader {
 public:
  Reader(const json& root, const Locator& loc) : root_(root), loc_(loc) {}

  [[noreturn]] void fail(const std::string& ptr, const std::string& msg) const {
    const auto [line, col] = loc_.at(ptr);
    throw ConfigError((ptr.empty() ? std::string("/") : ptr) + ": " + msg, line, col);
  }

  const json& node(const std::string& ptr) const {
    if (!has(ptr)) {
      const auto cut = ptr.rfind('/');
      fail(ptr.substr(0, cut), "missing required key '" + ptr.substr(cut + 1) + "'");
    }
    return root_.at(json::json_pointer(ptr));
  }
  bool has(const std::string& ptr) const { return root_.contains(json::json_pointer(ptr)); }

  const json& object(const std::string& ptr, std::initializer_list<const char*> allowed) const {
    const json& j = node(ptr);
    if (!j.is_object()) fail(ptr, "expected an object");
    std::set<std::string> ok(allowed.begin(), allowed.end());
    for (auto it = j.begin(); it != j.end(); ++it)
      if (!ok.count(it.key())) {
        const auto [line, col] = loc_.key_at(ptr + "/" + it.key());
        throw ConfigError(ptr + ": unknown key '" + it.key() + "'", line, col);
      }
    return j;
  }

  double number(const std::string& ptr) const {
    const json& j = node(ptr);
    if (!j.is_number()) fail(ptr, "expected a number");
    const double v = j.get<double>();
    if (!std::isfinite(v)) fail(ptr, "expected a finite number");
    return v;
  }
  double number_or(const std::string& ptr, double def) const { return has(ptr) ? number(ptr) : def; }

  int integer(const std::string& ptr) const {
    const json& j = node(ptr);
    if (!j.is_number_integer()) fail(ptr, "expected an integer");
    return j.get<int>();
  }
  int integer_or(const std::string& ptr, int def) const { return has(ptr) ? integer(ptr) : def; }

  std::string string(const std::string& ptr) const {
    const json& j = node(ptr);
    if (!j.is_string()) fail(ptr, "expected a string");
    return j.get<std::string>();
  }

  Vec3 vec3(const std::string& ptr) const {
    const json& j = node(ptr);
    if (!j.is_array() || j.size() != 3) fail(ptr, "expected an array of 3 numbers");
    return {number(ptr + "/0"), number(ptr + "/1"), number(ptr + "/2")};
  }
  std::array<int, 3> ivec3(const std::string& ptr) const {
    const json& j = node(ptr);
    if (!j.is_array() || j.size() != 3) fail(ptr, "expected an array of 3 integers");
    return {integer(ptr + "/0"), integer(ptr + "/1"), integer(ptr + "/2")};
  }
  Mat3 mat3(const std::string& ptr, int dim) const {
    const json& j = node(ptr);
    if (!j.is_array() || int(j.size()) != dim * dim)
      fail(ptr, "expected a row-major array of " + std::to_string(dim * dim) + " numbers");
    Mat3 m{};
    for (int a = 0; a < dim; ++a)
      for (int b = 0; b < dim; ++b) m[a][b] = number(ptr + "/" + std::to_string(a * dim + b));
    return m;
  }

 private:
  const json& root_;
  const Locator& loc_;
};

void read_params(const Reader& rd, RunConfig& c) {
  const std::string p = "/params";
  if (!rd.has(p)) {
    c.model.params = natural_units(1.0);
    return;
  }
  const json& j = rd.object(p, {"units", "m", "c", "hbar", "B", "mass_kg", "B_tesla"});
  const std::string units = j.contains("units") ? rd.string(p + "/units") : "natural";
  try {
    if (units == "si") {
      for (const char* k : {"m", "c", "hbar", "B"})
        if (j.contains(k)) rd.fail(p + "/" + k, "not allowed with units 'si'");
      c.units = {true, rd.number(p + "/mass_kg"), rd.number_or(p + "/B_tesla", 0.0)};
      c.model.params = from_si(c.units.mass_kg, c.units.B_tesla);
    } else if (units == "natural") {
      for (const char* k : {"mass_kg", "B_tesla"})
        if (j.contains(k)) rd.fail(p + "/" + k, "only allowed with units 'si'");
      c.units = {};
      PhysParams pp;
      pp.m = rd.number_or(p + "/m", 1.0);
      pp.c = rd.number_or(p + "/c", 1.0);
      pp.hbar = rd.number_or(p + "/hbar", 1.0);
      pp.B = rd.number_or(p + "/B", 1.0);
      validate(pp);
      c.model.params = pp;
    } else {
      rd.fail(p + "/units", "expected 'natural' or 'si'");
    }
  } catch (const DomainError& e) {
    rd.fail(p, e.what());
  }
}

void read_model(const Reader& rd, RunConfig& c) {
  const std::string p = "/model";
  const json& j = rd.object(p, {"kind", "n", "l", "d", "pz", "M", "spin", "trajectory"});
  try {
    c.model.kind = model_kind_from_string(rd.string(p + "/kind"));
  } catch (const DomainError& e) {
    rd.fail(p + "/kind", e.what());
  }
  c.model.packet.qn = {rd.integer_or(p + "/n", 0), rd.integer_or(p + "/l", 0)};
  c.model.packet.d = rd.number_or(p + "/d", 1.0);
  c.model.packet.pz = rd.number_or(p + "/pz", 0.0);
  c.model.M = rd.number_or(p + "/M", c.model.params.m);
  if (j.contains("spin")) {
    const auto s = rd.string(p + "/spin");
    if (s == "up") c.model.spin = rel::Spin::up;
    else if (s == "down") c.model.spin = rel::Spin::down;
    else rd.fail(p + "/spin", "expected 'up' or 'down'");
  }
  if (j.contains("trajectory")) {
    const std::string t = p + "/trajectory";
    rd.object(t, {"x", "y", "z", "px", "py", "pz"});
    classical::PhaseSpacePoint q;
    q.x = rd.number_or(t + "/x", 0);
    q.y = rd.number_or(t + "/y", 0);
    q.z = rd.number_or(t + "/z", 0);
    q.px = rd.number_or(t + "/px", 0);
    q.py = rd.number_or(t + "/py", 0);
    q.pz = rd.number_or(t + "/pz", 0);
    c.model.traj = q;
  }
  try {
    c.model.validate();
  } catch (const DomainError& e) {
    rd.fail(p, e.what());
  }
}

void read_times(const Reader& rd, RunConfig& c) {
  const std::string p = "/times";
  if (!rd.has(p)) return;
  const json& j = rd.node(p);
  if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i)
      c.times.values.push_back(rd.number(p + "/" + std::to_string(i)));
  } else if (j.is_object()) {
    rd.object(p, {"start", "stop", "count"});
    TimeSamples::Range r{rd.number_or(p + "/start", 0.0), rd.number(p + "/stop"),
                         rd.integer(p + "/count")};
    if (r.count < 1) rd.fail(p + "/count", "must be >= 1");
    c.times.range = r;
  } else {
    rd.fail(p, "expected an array of times or {start, stop, count}");
  }
}

void read_grid(const Reader& rd, RunConfig& c) {
  const std::string p = "/grid";
  if (!rd.has(p)) return;
  rd.object(p, {"n", "origin", "spacing"});
  numerics::Grid3 g;
  g.n = rd.ivec3(p + "/n");
  g.origin = rd.vec3(p + "/origin");
  g.spacing = rd.vec3(p + "/spacing");
  try {
    g.validate();
  } catch (const DomainError& e) {
    rd.fail(p, e.what());
  }
  c.grid = g;
}

void read_quad(const Reader& rd, RunConfig& c) {
  const std::string p = "/quadrature";
  if (!rd.has(p)) return;
  const json& j = rd.object(p, {"rule", "dim", "points", "center", "scale", "half_width",
                                "decay_tolerance"});
  numerics::QuadratureSpec q;
  if (j.contains("rule")) {
    const auto r = rd.string(p + "/rule");
    if (r == "trapezoid") q.rule = numerics::QuadRule::trapezoid;
    else if (r == "gauss_hermite") q.rule = numerics::QuadRule::gauss_hermite;
    else rd.fail(p + "/rule", "expected 'trapezoid' or 'gauss_hermite'");
  }
  q.dim = rd.integer_or(p + "/dim", 3);
  if (j.contains("points")) q.points = rd.ivec3(p + "/points");
  if (j.contains("center")) q.center = rd.vec3(p + "/center");
  if (j.contains("scale")) q.scale = rd.vec3(p + "/scale");
  if (j.contains("half_width")) q.half_width = rd.vec3(p + "/half_width");
  q.decay_tolerance = rd.number_or(p + "/decay_tolerance", q.decay_tolerance);
  try {
    q.validate();
  } catch (const DomainError& e) {
    rd.fail(p, e.what());
  }
  c.quad = q;
}

void read_hamiltonian(const Reader& rd, RunConfig& c) {
  const std::string p = "/hamiltonian";
  if (!rd.has(p)) return;
  rd.object(p, {"dim", "A", "Bq", "C"});
  const int dim = rd.integer(p + "/dim");
  if (dim < 1 || dim > 3) rd.fail(p + "/dim", "must be 1, 2 or 3");
  try {
    c.hamiltonian = QuadraticHamiltonian::make(dim, rd.mat3(p + "/A", dim), rd.mat3(p + "/Bq", dim),
                                               rd.mat3(p + "/C", dim));
  } catch (const DomainError& e) {
    rd.fail(p, e.what());
  }
}

}  // namespace

RunConfig parse_config(const std::string& text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    // byte offset -> line/column
    int line = 1, col = 1;
    const std::size_t end = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
    for (std::size_t i = 0; i < end; ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw ConfigError(std::string("malformed JSON: ") + e.what(), line, col);
  }
  const Locator loc(text);
  const Reader rd(root, loc);
  rd.object("", {"scenario", "params", "model", "grid", "quadrature", "times", "output", "propagate",
                 "spectrum", "verify", "hamiltonian", "threads", "tolerance_scale"});

  RunConfig c;
  try {
    c.scenario = scenario_from_string(rd.string("/scenario"));
  } catch (const ConfigError& e) {
    rd.fail("/scenario", e.what());
  }
  read_params(rd, c);
  read_model(rd, c);
  read_times(rd, c);
  read_grid(rd, c);
  read_quad(rd, c);
  read_hamiltonian(rd, c);
  if (rd.has("/output")) c.output = rd.string("/output");
  c.threads = rd.integer_or("/threads", 1);
  c.tolerance_scale = rd.number_or("/tolerance_scale", 1.0);
  if (rd.has("/propagate")) {
    rd.object("/propagate", {"t_final", "steps"});
    c.propagate.t_final = rd.number_or("/propagate/t_final", 0.0);
    c.propagate.steps = rd.integer_or("/propagate/steps", c.propagate.steps);
  }
  if (rd.has("/spectrum")) {
    const json& j = rd.object("/spectrum", {"probe", "t_span", "samples"});
    if (j.contains("probe")) c.spectrum.probe = rd.vec3("/spectrum/probe");
    c.spectrum.t_span = rd.number_or("/spectrum/t_span", 0.0);
    c.spectrum.samples = rd.integer_or("/spectrum/samples", c.spectrum.samples);
  }
  if (rd.has("/verify")) {
    const json& j = rd.object("/verify", {"checks"});
    if (j.contains("checks")) {
      const json& a = rd.node("/verify/checks");
      if (!a.is_array()) rd.fail("/verify/checks", "expected an array of check names");
      for (std::size_t i = 0; i < a.size(); ++i)
        c.verify.checks.push_back(rd.string("/verify/checks/" + std::to_string(i)));
    }
  }
  try {
    c.validate();
  } catch (const ConfigError& e) {
    const auto [line, col] = loc.at("");
    throw ConfigError(e.what(), line, col);
  }
  return c;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  try {
    return parse_config(ss.str());
  } catch (const ConfigError& e) {
    throw ConfigError(path + ": " + e.what(), e.line(), e.column());
  }
}

namespace {

json vec_json(const Vec3& v) { return json::array({v[0], v[1], v[2]}); }
json ivec_json(const std::array<int, 3>& v) { return json::array({v[0], v[1], v[2]}); }
json mat_json(const Mat3& m, int dim) {
  json a = json::array();
  for (int i = 0; i < dim; ++i)
    for (int k = 0; k < dim; ++k) a.push_back(m[i][k]);
  return a;
}

}  // namespace

std::string serialize_config(const RunConfig& c) {
  json j;
  j["scenario"] = to_string(c.scenario);
  if (c.units.si) {
    j["params"] = {{"units", "si"}, {"mass_kg", c.units.mass_kg}, {"B_tesla", c.units.B_tesla}};
  } else {
    const auto& p = c.model.params;
    j["params"] = {{"units", "natural"}, {"m", p.m}, {"c", p.c}, {"hbar", p.hbar}, {"B", p.B}};
  }
  const auto& m = c.model;
  json jm = {{"kind", to_string(m.kind)},
             {"n", m.packet.qn.n},
             {"l", m.packet.qn.l},
             {"d", m.packet.d},
             {"pz", m.packet.pz},
             {"M", m.M},
             {"spin", m.spin == rel::Spin::up ? "up" : "down"}};
  if (m.traj) {
    const auto& q = *m.traj;
    jm["trajectory"] = {{"x", q.x}, {"y", q.y}, {"z", q.z}, {"px", q.px}, {"py", q.py}, {"pz", q.pz}};
  }
  j["model"] = jm;
  if (c.times.range) {
    j["times"] = {{"start", c.times.range->start}, {"stop", c.times.range->stop},
                  {"count", c.times.range->count}};
  } else if (!c.times.values.empty()) {
    j["times"] = c.times.values;
  }
  if (c.grid)
    j["grid"] = {{"n", ivec_json(c.grid->n)},
                 {"origin", vec_json(c.grid->origin)},
                 {"spacing", vec_json(c.grid->spacing)}};
  if (c.quad) {
    const auto& q = *c.quad;
    j["quadrature"] = {{"rule", q.rule == numerics::QuadRule::trapezoid ? "trapezoid" : "gauss_hermite"},
                       {"dim", q.dim},
                       {"points", ivec_json(q.points)},
                       {"center", vec_json(q.center)},
                       {"scale", vec_json(q.scale)},
                       {"half_width", vec_json(q.half_width)},
                       {"decay_tolerance", q.decay_tolerance}};
  }
  if (c.hamiltonian) {
    const auto& h = *c.hamiltonian;
    j["hamiltonian"] = {{"dim", h.dim},
                        {"A", mat_json(h.A, h.dim)},
                        {"Bq", mat_json(h.Bq, h.dim)},
                        {"C", mat_json(h.C, h.dim)}};
  }
  j["output"] = c.output;
  j["propagate"] = {{"t_final", c.propagate.t_final}, {"steps", c.propagate.steps}};
  j["spectrum"] = {{"probe", vec_json(c.spectrum.probe)},
                   {"t_span", c.spectrum.t_span},
                   {"samples", c.spectrum.samples}};
  j["verify"] = {{"checks", c.verify.checks}};
  j["threads"] = c.threads;
  j["tolerance_scale"] = c.tolerance_scale;
  return j.dump(2) + "\n";
}

}  // namespace helix::cli
