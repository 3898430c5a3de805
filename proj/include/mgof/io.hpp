#pragma once

// File ingestion, digests, locale-independent number formatting, and the
// run manifest attached to every report.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "mgof/statistics.hpp"

namespace mgof {

inline constexpr std::string_view kToolVersion = "0.1.0";

/// Counts from CSV (one row or one column of integers) or a JSON array.
/// Throws InvalidArgument on malformed content.
std::vector<std::int64_t> parse_counts(std::string_view text);
CellCounts read_counts(const std::filesystem::path& path);

std::string read_file(const std::filesystem::path& path);

/// Lowercase hex SHA-256.
std::string sha256_hex(std::string_view bytes);

/// Shortest round-trip decimal form, '.' separator.
std::string format_double(double value);
/// Fixed notation with the given number of decimals.
std::string format_fixed(double value, int decimals);

struct RunManifest {
  std::string subcommand;
  nlohmann::json config = nlohmann::json::object();
  std::optional<std::uint64_t> seed;
  std::string version{kToolVersion};
  std::string timestamp;
  std::vector<std::pair<std::string, std::string>> inputs;  // (path, sha256)

  static RunManifest start(std::string subcommand);
  void add_input(const std::filesystem::path& path);
  nlohmann::json to_json() const;
};

/// UTC, ISO 8601 with seconds.
std::string utc_timestamp();

}  // namespace mgof
