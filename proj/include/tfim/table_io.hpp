#pragma once

#include "tfim/sweep.hpp"

#include <json.hpp>

#include <filesystem>
#include <string>

namespace tfim {

inline constexpr const char* kToolVersion = "0.1.0";

/// Provenance written next to (CSV) or inside (JSON) every output file.
struct RunManifest {
    std::string command;
    nlohmann::json config = nlohmann::json::object();
    std::uint64_t seed = 0;
    std::string tool_version = kToolVersion;
    double wall_time_s = 0.0;

    nlohmann::json to_json() const;
};

/// Column order of the CSV and JSON row records.
const std::vector<std::string>& table_columns();

std::string to_csv(const SweepTable& table);
SweepTable from_csv(const std::string& text);

nlohmann::json to_json(const SweepTable& table);
SweepTable from_json(const nlohmann::json& doc);

/// Writes through a temporary file in the same directory, then renames.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);

/// CSV plus a `<path>.manifest.json` sidecar.
void write_csv(const SweepTable& table, const std::filesystem::path& path, const RunManifest& manifest);
/// JSON document with an embedded "manifest" object.
void write_json(const SweepTable& table, const std::filesystem::path& path, const RunManifest& manifest);

SweepTable read_csv(const std::filesystem::path& path);
SweepTable read_json(const std::filesystem::path& path);

/// Shortest decimal form that parses back to the same double; "nan" / "inf" for non-finite values.
std::string format_double(double v);
double parse_double(const std::string& text);

} // namespace tfim
