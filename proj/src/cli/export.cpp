#include "helix/cli/export.hpp"

#include <bit>
#include <chrono>
#include <cstring>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>

#include <openssl/evp.h>

namespace helix::cli {

using nlohmann::json;

std::string sha256_hex(const void* data, std::size_t size) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data, size, digest, &len, EVP_sha256(), nullptr) != 1)
    throw std::runtime_error("sha256: digest failed");
  std::ostringstream os;
  for (unsigned int i = 0; i < len; ++i) os << std::hex << std::setw(2) << std::setfill('0') << int(digest[i]);
  return os.str();
}

std::vector<std::uint8_t> encode_le(const std::vector<double>& values) {
  std::vector<std::uint8_t> out(values.size() * 8);
  for (std::size_t i = 0; i < values.size(); ++i) {
    std::uint64_t bits = std::bit_cast<std::uint64_t>(values[i]);
    for (int b = 0; b < 8; ++b) out[8 * i + b] = std::uint8_t(bits >> (8 * b));
  }
  return out;
}

namespace {

std::vector<double> decode_le(const std::vector<std::uint8_t>& bytes) {
  std::vector<double> out(bytes.size() / 8);
  for (std::size_t i = 0; i < out.size(); ++i) {
    std::uint64_t bits = 0;
    for (int b = 0; b < 8; ++b) bits |= std::uint64_t(bytes[8 * i + b]) << (8 * b);
    out[i] = std::bit_cast<double>(bits);
  }
  return out;
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

const char* kind_name(ValueKind k) {
  switch (k) {
    case ValueKind::real: return "real";
    case ValueKind::complex: return "complex";
    case ValueKind::bispinor: return "bispinor";
  }
  return "?";
}

int values_per_point(ValueKind k) { return k == ValueKind::real ? 1 : k == ValueKind::complex ? 2 : 8; }

void write_payload(const numerics::Grid3& grid, ValueKind kind, const std::vector<double>& values,
                   const std::string& path, const FieldMeta& meta) {
  const auto bytes = encode_le(values);
  {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("export_field: cannot open '" + path + "' for writing");
    out.write(reinterpret_cast<const char*>(bytes.data()), std::streamsize(bytes.size()));
    if (!out) throw std::runtime_error("export_field: write failed for '" + path + "'");
  }
  json side;
  side["format"] = "helix-field";
  side["version"] = 1;
  side["dtype"] = "float64";
  side["byte_order"] = "little";
  side["layout"] = "row-major";
  side["value"] = kind_name(kind);
  side["values_per_point"] = values_per_point(kind);
  side["grid"] = {{"axes", {"x", "y", "z"}},
                  {"n", {grid.n[0], grid.n[1], grid.n[2]}},
                  {"origin", {grid.origin[0], grid.origin[1], grid.origin[2]}},
                  {"spacing", {grid.spacing[0], grid.spacing[1], grid.spacing[2]}}};
  side["units"] = meta.units;
  side["model"] = meta.model;
  if (!meta.description.empty()) side["description"] = meta.description;
  side["created"] = utc_timestamp();
  side["bytes"] = bytes.size();
  side["sha256"] = sha256_hex(bytes.data(), bytes.size());
  const std::string side_path = path + ".meta.json";
  std::ofstream out(side_path, std::ios::trunc);
  if (!out) throw std::runtime_error("export_field: cannot open '" + side_path + "' for writing");
  out << side.dump(2) << "\n";
  if (!out) throw std::runtime_error("export_field: write failed for '" + side_path + "'");
}

}  // namespace

void export_field(const numerics::RealField& f, const std::string& path, const FieldMeta& meta) {
  write_payload(f.grid, ValueKind::real, f.data, path, meta);
}

void export_field(const numerics::ComplexField& f, const std::string& path, const FieldMeta& meta) {
  std::vector<double> v;
  v.reserve(2 * f.data.size());
  for (const auto& z : f.data) {
    v.push_back(z.real());
    v.push_back(z.imag());
  }
  write_payload(f.grid, ValueKind::complex, v, path, meta);
}

void export_field(const std::array<numerics::ComplexField, 4>& f, const std::string& path,
                  const FieldMeta& meta) {
  for (int k = 1; k < 4; ++k)
    if (!(f[k].grid == f[0].grid)) throw std::invalid_argument("export_field: component grids differ");
  std::vector<double> v;
  v.reserve(8 * f[0].data.size());
  for (std::size_t i = 0; i < f[0].data.size(); ++i)
    for (int k = 0; k < 4; ++k) {
      v.push_back(f[k].data[i].real());
      v.push_back(f[k].data[i].imag());
    }
  write_payload(f[0].grid, ValueKind::bispinor, v, path, meta);
}

std::string sha256_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::vector<char> buf((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return sha256_hex(buf.data(), buf.size());
}

LoadedField load_field(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("load_field: cannot open '" + path + "'");
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  std::ifstream side(path + ".meta.json");
  if (!side) throw std::runtime_error("load_field: missing sidecar '" + path + ".meta.json'");
  LoadedField out;
  try {
    out.meta = json::parse(side);
  } catch (const json::exception& e) {
    throw std::runtime_error("load_field: bad sidecar for '" + path + "': " + e.what());
  }
  if (out.meta.value("sha256", "") != sha256_hex(bytes.data(), bytes.size()))
    throw std::runtime_error("load_field: checksum mismatch for '" + path + "'");
  const std::string v = out.meta.at("value");
  out.kind = v == "real" ? ValueKind::real : v == "complex" ? ValueKind::complex : ValueKind::bispinor;
  const auto& g = out.meta.at("grid");
  for (int a = 0; a < 3; ++a) {
    out.grid.n[a] = g.at("n").at(a);
    out.grid.origin[a] = g.at("origin").at(a);
    out.grid.spacing[a] = g.at("spacing").at(a);
  }
  if (bytes.size() != out.grid.size() * 8 * values_per_point(out.kind))
    throw std::runtime_error("load_field: payload size does not match grid for '" + path + "'");
  out.values = decode_le(bytes);
  return out;
}

numerics::RealField LoadedField::as_real() const {
  if (kind != ValueKind::real) throw std::invalid_argument("load_field: payload is not real");
  numerics::RealField f(grid);
  f.data = values;
  return f;
}

numerics::ComplexField LoadedField::as_complex() const {
  if (kind != ValueKind::complex) throw std::invalid_argument("load_field: payload is not complex");
  numerics::ComplexField f(grid);
  for (std::size_t i = 0; i < f.data.size(); ++i) f.data[i] = {values[2 * i], values[2 * i + 1]};
  return f;
}

}  // namespace helix::cli
