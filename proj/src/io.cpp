// SPDX-License-Identifier: Apache-2.0
#include "walklab/io.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>

namespace walklab::io {

std::string format_g17(double value) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", value);
    return buf;
}

std::uint64_t fnv1a64(std::string_view bytes) {
    std::uint64_t hash = 0xcbf29ce484222325ull;
    for (unsigned char c : bytes) {
        hash ^= c;
        hash *= 0x100000001b3ull;
    }
    return hash;
}

std::string digest_hex(std::string_view bytes) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "fnv1a64:%016llx",
                  static_cast<unsigned long long>(fnv1a64(bytes)));
    return buf;
}

void write_file(const std::filesystem::path& path, std::string_view content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw io_error("cannot open for writing: " + path.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw io_error("write failed: " + path.string());
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw io_error("cannot open for reading: " + path.string());
    std::string content((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    if (in.bad()) throw io_error("read failed: " + path.string());
    return content;
}

nlohmann::json config_echo(const ExperimentConfig& cfg) {
    nlohmann::json j;
    j["p"] = cfg.params.p;
    j["start"] = cfg.params.start;
    j["replicas"] = cfg.replicas;
    j["seed"] = cfg.seed;
    j["horizon"] = cfg.horizon;
    j["m"] = cfg.m;
    j["k"] = cfg.k;
    j["z"] = cfg.z;
    j["epsilon"] = cfg.epsilon;
    j["tail_factor"] = cfg.tail_factor;
    j["tolerance"] = cfg.tolerance;
    j["n_grid"] = cfg.n_grid;
    j["m_max"] = cfg.m_max;
    return j;
}

nlohmann::json estimate_report_json(const std::string& experiment, const EstimateReport& report,
                                    const nlohmann::json& config) {
    nlohmann::json j;
    j["experiment"] = experiment;
    j["estimate"] = report.estimate;
    j["stderr"] = report.stderr_value;
    j["ci95"] = {report.ci95.lo, report.ci95.hi};
    j["replicas"] = report.replicas;
    j["resolved"] = report.resolved;
    j["censored"] = report.censored;
    j["successes"] = report.successes;
    j["estimate_pessimistic"] = report.estimate_pessimistic;
    j["estimate_optimistic"] = report.estimate_optimistic;
    j["valid"] = report.valid;
    j["seed"] = report.seed;
    j["config"] = config;
    return j;
}

nlohmann::json event_trace_json(const StoppingLog& log) {
    struct Row {
        std::uint32_t m, k;
        StopRecord rec;
    };
    std::vector<Row> rows;
    log.for_each_record([&](std::uint32_t m, std::uint32_t k, const StopRecord& rec) {
        rows.push_back(Row{m, k, rec});
    });
    std::sort(rows.begin(), rows.end(),
              [](const Row& a, const Row& b) { return a.rec.time < b.rec.time; });
    nlohmann::json records = nlohmann::json::array();
    for (const Row& row : rows) {
        records.push_back({{"m", row.m}, {"k", row.k}, {"T", row.rec.time}, {"L", row.rec.site}});
    }
    nlohmann::json gaps = nlohmann::json::array();
    for (std::uint32_t m = 1; m <= log.max_level(); ++m) {
        if (auto g = log.gap(m)) {
            gaps.push_back({{"m", m}, {"G", *g}, {"censored", false}});
        } else {
            gaps.push_back({{"m", m}, {"censored", true}});
        }
    }
    return nlohmann::json{{"records", records}, {"gaps", gaps}};
}

nlohmann::json manifest_json(const std::string& subcommand, std::uint64_t seed,
                             const nlohmann::json& config,
                             const std::vector<OutputFile>& outputs) {
    nlohmann::json outs = nlohmann::json::array();
    for (const OutputFile& f : outputs) outs.push_back({{"path", f.path}, {"digest", f.digest}});
    return nlohmann::json{{"subcommand", subcommand},
                          {"version", std::string(kToolVersion)},
                          {"seed", seed},
                          {"config", config},
                          {"outputs", outs}};
}

std::string dump_json(const nlohmann::json& doc) { return doc.dump(2) + "\n"; }

void emit(const std::filesystem::path& dir, const std::string& name, std::string_view content,
          std::vector<OutputFile>& outputs) {
    write_file(dir / name, content);
    outputs.push_back(OutputFile{name, digest_hex(content)});
}

}  // namespace walklab::io
