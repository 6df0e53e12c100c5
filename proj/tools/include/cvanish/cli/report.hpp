#pragma once

// Machine-readable report emitted by every subcommand with --json.

#include "cvanish/vanishing.hpp"

#include <json.hpp>

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace cvanish::cli {

inline constexpr int kSchemaVersion = 1;

struct Report {
  int schema_version = kSchemaVersion;
  std::string command;
  nlohmann::json query = nlohmann::json::object();  ///< echo of the parsed arguments
  std::vector<VanishingCertificate> certificates;
  nlohmann::json payload = nlohmann::json::object();  ///< spectra, pinching, catalog rows, oracle results
  std::optional<double> timing_seconds;                ///< only with --timing
};

nlohmann::json certificate_to_json(const VanishingCertificate& certificate);
/// Throws DataError on a missing or mistyped field.
VanishingCertificate certificate_from_json(const nlohmann::json& j);

nlohmann::json to_json(const Report& report);
Report report_from_json(const nlohmann::json& j);

/// Pretty-printed JSON followed by a newline.
std::string emit(const Report& report);
/// Throws DataError on malformed input or a schema_version this build does not know.
Report parse_report(std::string_view text);

}  // namespace cvanish::cli
