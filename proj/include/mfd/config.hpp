#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "mfd/types.hpp"

namespace mfd {

struct PointedConfig {
  std::vector<std::int64_t> invariant_factors;
  RationalMatrix qform_matrix;
  Element h0;
};

struct LatticeConfig {
  IntMatrix gram;
  RationalVector xi;
};

struct BuiltinConfig {
  std::string name;
};

/// Parsed configuration file (JSON syntax, rationals as "p/q" strings):
///
///   {"category": {"pointed": {"invariant_factors": [8],
///                             "qform_matrix": [["1/16"]],
///                             "h0": [1]}},
///    "tolerance": 1e-9,
///    "enumeration_cap": 1000}
///
/// The category object holds exactly one of "pointed", "lattice"
/// ({"gram": [[...]], "xi": ["p/q", ...]}) or "builtin" ("fibonacci" or
/// "ising"). Only shapes and syntax are checked here; the mathematical
/// validation belongs to the owning modules.
struct Config {
  std::variant<PointedConfig, LatticeConfig, BuiltinConfig> category;
  double tolerance = 1e-9;
  std::size_t enumeration_cap = 1000;
};

/// Errors: cli.ConfigError with a JSON-pointer style field path in the
/// message, or rational.Malformed for bad "p/q" strings.
Config parse_config_text(std::string_view text);
Config parse_config(const std::filesystem::path& path);

}  // namespace mfd
