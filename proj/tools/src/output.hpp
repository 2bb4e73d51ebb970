#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace hcdeval::cli {

using Json = nlohmann::ordered_json;

/// Hex SHA-256 of a file's bytes.
std::string sha256_file(const std::filesystem::path& path);
std::string sha256_bytes(std::string_view bytes);

/// Writes to a sibling temporary file, then renames over `path`.
void write_atomic(const std::filesystem::path& path, std::string_view content);

/// UTC ISO-8601; SOURCE_DATE_EPOCH wins over the clock when set.
std::string timestamp_utc();

struct Manifest {
  std::string subcommand;
  Json flags = Json::object();
  Json decisions = Json::object();
  std::vector<std::filesystem::path> inputs;
  Json extra = Json::object();

  /// Manifest for one output file, with the output's own digest.
  std::string render(const std::filesystem::path& output, std::string_view output_bytes) const;
};

}  // namespace hcdeval::cli
