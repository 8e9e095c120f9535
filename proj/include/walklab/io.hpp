// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "walklab/experiments.hpp"
#include "walklab/report.hpp"
#include "walklab/stopping.hpp"

namespace walklab::io {

inline constexpr std::string_view kToolVersion = "0.1.0";

/// Filesystem failure; the CLI maps it to exit code 3.
struct io_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Doubles in CSV cells carry 17 significant digits so files round-trip.
std::string format_g17(double value);

std::uint64_t fnv1a64(std::string_view bytes);
std::string digest_hex(std::string_view bytes);

void write_file(const std::filesystem::path& path, std::string_view content);
std::string read_file(const std::filesystem::path& path);

/// Resolved configuration echoed into reports and manifests. `jobs` is
/// deliberately absent: it may change wall time, never output bytes.
nlohmann::json config_echo(const ExperimentConfig& cfg);

nlohmann::json estimate_report_json(const std::string& experiment, const EstimateReport& report,
                                    const nlohmann::json& config);

/// Event-trace document: the {m, k, T, L} records plus one {m, G_m} or
/// {m, censored} entry per opened level.
nlohmann::json event_trace_json(const StoppingLog& log);

struct OutputFile {
    std::string path;  // relative to the output directory
    std::string digest;
};

nlohmann::json manifest_json(const std::string& subcommand, std::uint64_t seed,
                             const nlohmann::json& config, const std::vector<OutputFile>& outputs);

/// Serialize a JSON document with a trailing newline (all emitted JSON
/// files go through this, so runs are byte-comparable).
std::string dump_json(const nlohmann::json& doc);

/// Write `content` at dir/name and append its digest entry.
void emit(const std::filesystem::path& dir, const std::string& name, std::string_view content,
          std::vector<OutputFile>& outputs);

}  // namespace walklab::io
