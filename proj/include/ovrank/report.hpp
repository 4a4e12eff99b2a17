// Run configuration and line-structured reports.
//
// json-lines layout, one object per line:
//   {"type":"header", "schema_version", "command", "inputs", "config", "environment"}
//   {"type":"record", ...}                                  zero or more
//   {"type":"footer", "status", "summary", "timings"}

#pragma once

#include "ovrank/hp.hpp"

#include <json.hpp>

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace ovrank {

using json = nlohmann::ordered_json;

inline constexpr int kReportSchemaVersion = 1;

struct RunConfig {
    int precision_bits = kDefaultPrecision;
    int n_max = 3000;
    std::optional<std::filesystem::path> cache_path;  // directory of table-c<c>.txt files
    double margin_policy = 1e-12;
    int jobs = 0;  // 0 keeps the OpenMP default

    // Throws std::invalid_argument.
    void validate() const;
    json to_json() const;
    static RunConfig from_json(const json& j);
};

enum class Status { pass, fail };

struct Report {
    int schema_version = kReportSchemaVersion;
    std::string command;
    json inputs = json::object();
    json config = json::object();
    json environment = json::object();
    std::vector<json> records;
    Status status = Status::pass;
    json summary = json::object();
    json timings = json::object();

    std::string to_json_lines() const;
    // Throws std::runtime_error on malformed input.
    static Report from_json_lines(const std::string& text);
    std::string to_text() const;

    friend bool operator==(const Report& a, const Report& b);
};

json environment_fingerprint();

// Decimal rendering used in reports.
std::string decimal(const HPReal& x, int digits = 30);

}  // namespace ovrank
