#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "helix/numerics/grid.hpp"

namespace helix::cli {

enum class ValueKind { real, complex, bispinor };

/// Sidecar content besides grid and checksum.
struct FieldMeta {
  std::string units = "natural";
  nlohmann::json model = nlohmann::json::object();
  std::string description;
};

/// Raw payload: little-endian float64, row-major (x slowest, z fastest);
/// complex values as (re, im) pairs, bispinors as 4 such pairs per point.
/// Writes `<path>.meta.json` next to it. Throws std::runtime_error with the
/// path on I/O failure.
void export_field(const numerics::RealField& f, const std::string& path, const FieldMeta& meta);
void export_field(const numerics::ComplexField& f, const std::string& path, const FieldMeta& meta);
void export_field(const std::array<numerics::ComplexField, 4>& f, const std::string& path,
                  const FieldMeta& meta);

struct LoadedField {
  numerics::Grid3 grid;
  ValueKind kind = ValueKind::real;
  std::vector<double> values;
  nlohmann::json meta;

  numerics::RealField as_real() const;
  numerics::ComplexField as_complex() const;
};

/// Reads payload and sidecar; throws if the checksum or size disagree.
LoadedField load_field(const std::string& path);

std::string sha256_hex(const void* data, std::size_t size);
std::string sha256_file(const std::string& path);

/// Bytes of a float64 vector in little-endian order.
std::vector<std::uint8_t> encode_le(const std::vector<double>& values);

}  // namespace helix::cli
