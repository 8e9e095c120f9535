// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include <json.hpp>

#include "walklab/io.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string binary() {
    const char* bin = std::getenv("WALKLAB_BIN");
    REQUIRE_MESSAGE(bin != nullptr, "WALKLAB_BIN must point at the CLI");
    return bin;
}

struct RunResult {
    int exit_code = -1;
    std::string out;
};

RunResult run(const std::string& args) {
    const std::string cmd = binary() + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    RunResult result;
    char buf[4096];
    while (std::size_t got = std::fread(buf, 1, sizeof buf, pipe)) result.out.append(buf, got);
    const int status = pclose(pipe);
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return result;
}

fs::path fresh_dir(const std::string& tag) {
    const fs::path dir = fs::temp_directory_path() / ("walklab_test_" + tag);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    REQUIRE(in.good());
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace

TEST_CASE("oracle queries") {
    SUBCASE("pmf-position") {
        const RunResult r = run("oracle pmf-position --p 0.75 --n 1 --z 1");
        CHECK(r.exit_code == 0);
        const json j = json::parse(r.out);
        CHECK(j["value"] == 0.75);
        CHECK(j["method"] == "closed-form");
        CHECK(j["arithmetic"] == "binary-float");
    }
    SUBCASE("no-return via the dynamic program") {
        const RunResult r = run("oracle no-return --p 0.75 --n 3");
        CHECK(r.exit_code == 0);
        CHECK(json::parse(r.out)["value"] == 0.625);
    }
    SUBCASE("total local time at the origin") {
        const RunResult r = run("oracle total-local-time --p 0.75 --z 0 --k 1");
        CHECK(r.exit_code == 0);
        CHECK(json::parse(r.out)["value"] == 0.25);
    }
    SUBCASE("never-visit") {
        const RunResult r = run("oracle never-visit --p 0.75 --z 0");
        CHECK(json::parse(r.out)["value"] == 0.5);
    }
    SUBCASE("bounds") {
        const RunResult tail = run("oracle bounds --p 0.75 --m 4");
        CHECK(tail.exit_code == 0);
        CHECK(json::parse(tail.out)["kind"] == "return-tail");
        const RunResult rate = run("oracle bounds --p 0.75 --A 1 --n 100");
        CHECK(json::parse(rate.out)["kind"] == "joint-tail-rate");
    }
    SUBCASE("rational mode exposes the fraction") {
        const RunResult r = run("oracle pmf-position --p 0.75 --n 4 --z 2 --rational");
        const json j = json::parse(r.out);
        CHECK(j["arithmetic"] == "exact-rational");
        CHECK(j["exact"]["numerator"] == "27");
        CHECK(j["exact"]["denominator"] == "64");
    }
    SUBCASE("invalid query exits 2") {
        CHECK(run("oracle nonsense --p 0.75").exit_code == 2);
        CHECK(run("oracle pmf-position --p 0.4 --n 1 --z 1").exit_code == 2);
        CHECK(run("oracle bounds --p 0.75").exit_code == 2);
    }
}

TEST_CASE("simulate determinism and schema") {
    const fs::path dir = fresh_dir("sim");
    const std::string args =
        "simulate --p 0.75 --steps 1000 --seed 7 --out-dir " + dir.string();
    CHECK(run(args).exit_code == 0);
    const std::string traj1 = slurp(dir / "trajectory.csv");
    const std::string events1 = slurp(dir / "events.json");
    const std::string manifest1 = slurp(dir / "manifest.json");
    CHECK(run(args).exit_code == 0);
    CHECK(slurp(dir / "trajectory.csv") == traj1);
    CHECK(slurp(dir / "events.json") == events1);
    CHECK(slurp(dir / "manifest.json") == manifest1);

    // header + steps/stride + 1 rows
    const std::size_t rows = static_cast<std::size_t>(
        std::count(traj1.begin(), traj1.end(), '\n'));
    CHECK(rows == 1 + 1000 + 1);

    // manifest digests match the emitted bytes
    const json manifest = json::parse(manifest1);
    for (const auto& entry : manifest["outputs"]) {
        const std::string content = slurp(dir / entry["path"].get<std::string>());
        CHECK(entry["digest"] == walklab::io::digest_hex(content));
    }
}

TEST_CASE("simulate strides subsample the trajectory") {
    const fs::path dir = fresh_dir("stride");
    CHECK(run("simulate --p 0.75 --steps 1000 --stride 100 --seed 3 --out-dir " + dir.string())
              .exit_code == 0);
    const std::string traj = slurp(dir / "trajectory.csv");
    CHECK(static_cast<std::size_t>(std::count(traj.begin(), traj.end(), '\n')) == 1 + 10 + 1);
}

TEST_CASE("replayed simulate reproduces the hand-traced event log") {
    const fs::path dir = fresh_dir("replay");
    const fs::path replay = dir / "steps.txt";
    {
        std::ofstream out(replay);
        out << "+1 -1 +1 +1\n";
    }
    CHECK(run("simulate --p 0.75 --replay " + replay.string() + " --steps 10 --out-dir " +
              dir.string())
              .exit_code == 2);  // more steps than the replay holds
    CHECK(run("simulate --p 0.75 --replay " + replay.string() + " --out-dir " + dir.string())
              .exit_code == 0);
    const json events = json::parse(slurp(dir / "events.json"));
    const json expect_records = json::parse(R"([
        {"m":1,"k":1,"T":1,"L":1},
        {"m":1,"k":2,"T":2,"L":0},
        {"m":2,"k":1,"T":3,"L":1},
        {"m":1,"k":3,"T":4,"L":2}
    ])");
    CHECK(events["records"] == expect_records);
    REQUIRE(events["gaps"].size() == 2);
    CHECK(events["gaps"][0] == json({{"m", 1}, {"G", 2}, {"censored", false}}));
    CHECK(events["gaps"][1] == json({{"m", 2}, {"censored", true}}));
}

TEST_CASE("unwritable output path exits 3") {
    const fs::path dir = fresh_dir("unwritable");
    const fs::path blocker = dir / "file";
    {
        std::ofstream out(blocker);
        out << "x";
    }
    const RunResult r =
        run("simulate --p 0.75 --steps 10 --seed 1 --out-dir " + (blocker / "sub").string());
    CHECK(r.exit_code == 3);
}

TEST_CASE("experiment c-prob writes a valid report") {
    const fs::path dir = fresh_dir("exp");
    const RunResult r = run(
        "experiment c-prob --p 0.75 --m 1 --k 2 --replicas 1000 --seed 1 --horizon 1000 "
        "--out-dir " +
        dir.string());
    CHECK(r.exit_code == 0);
    const json report = json::parse(slurp(dir / "report.json"));
    CHECK(report["estimate"] == 1.0);
    CHECK(report["censored"] == 0);
    CHECK(report["valid"] == true);
    const json manifest = json::parse(slurp(dir / "manifest.json"));
    for (const auto& entry : manifest["outputs"]) {
        const std::string content = slurp(dir / entry["path"].get<std::string>());
        CHECK(entry["digest"] == walklab::io::digest_hex(content));
    }
}

TEST_CASE("experiment outputs do not depend on --jobs") {
    const fs::path dir = fresh_dir("jobs");
    const std::string base =
        "experiment c-prob --p 0.75 --m 3 --k 2 --replicas 4000 --seed 5 --horizon 20000 "
        "--out-dir " +
        dir.string();
    CHECK(run(base + " --jobs 1").exit_code == 0);
    const std::string report1 = slurp(dir / "report.json");
    const std::string manifest1 = slurp(dir / "manifest.json");
    CHECK(run(base + " --jobs 4").exit_code == 0);
    CHECK(slurp(dir / "report.json") == report1);
    CHECK(slurp(dir / "manifest.json") == manifest1);
}

TEST_CASE("experiment enumerate-check passes on a small horizon") {
    const fs::path dir = fresh_dir("enum");
    const RunResult r =
        run("experiment enumerate-check --p 0.75 --horizon 8 --out-dir " + dir.string());
    CHECK(r.exit_code == 0);
    const json report = json::parse(slurp(dir / "report.json"));
    CHECK(report["rational_consistent"] == true);
    CHECK(report["max_abs_diff"].get<double>() <= 1e-12);
}

TEST_CASE("unknown experiment exits 2") {
    CHECK(run("experiment nonsense --p 0.75").exit_code == 2);
}

TEST_CASE("censoring-invalidated reports keep exit code 0") {
    const fs::path dir = fresh_dir("censored");
    // horizon far too short for m = 6: most replicas stay unresolved
    const RunResult r = run(
        "experiment c-prob --p 0.75 --m 6 --k 2 --replicas 300 --horizon 40 --seed 3 --out-dir " +
        dir.string());
    CHECK(r.exit_code == 0);
    const json report = json::parse(slurp(dir / "report.json"));
    CHECK(report["valid"] == false);
    CHECK(report["censored"].get<std::uint64_t>() > 60);
}

TEST_CASE("help exits cleanly") {
    CHECK(run("--help").exit_code == 0);
    CHECK(run("simulate --help").exit_code == 0);
}

TEST_CASE("start offset shifts the trace") {
    const fs::path dir = fresh_dir("start");
    const fs::path replay = dir / "steps.txt";
    {
        std::ofstream out(replay);
        out << "+1 +1";
    }
    CHECK(run("simulate --p 0.75 --start 5 --replay " + replay.string() + " --out-dir " +
              dir.string())
              .exit_code == 0);
    const std::string traj = slurp(dir / "trajectory.csv");
    CHECK(traj.find("\n0,5,") != std::string::npos);
    const json events = json::parse(slurp(dir / "events.json"));
    CHECK(events["records"][0]["L"] == 6);
}

TEST_CASE("config file feeds the experiment; flags override it") {
    const fs::path dir = fresh_dir("cfgfile");
    const fs::path cfg = dir / "run.cfg";
    {
        std::ofstream out(cfg);
        out << "# defaults for a tiny smoke run\n"
            << "p = 0.75\n"
            << "replicas = 500\n"
            << "m = 1\n"
            << "k = 2\n"
            << "horizon = 1000\n"
            << "seed = 11\n";
    }
    const RunResult r = run("experiment c-prob --config " + cfg.string() + " --seed 13 --out-dir " +
                            dir.string());
    CHECK(r.exit_code == 0);
    const json report = json::parse(slurp(dir / "report.json"));
    CHECK(report["config"]["replicas"] == 500);
    CHECK(report["config"]["seed"] == 13);  // the flag wins over the file
    CHECK(report["estimate"] == 1.0);

    {
        std::ofstream out(cfg);
        out << "bogus-key = 1\n";
    }
    CHECK(run("experiment c-prob --config " + cfg.string()).exit_code == 2);
}

TEST_CASE("json table format keeps rows in the report only") {
    const fs::path dir = fresh_dir("format");
    const std::string base = "experiment gap-growth --p 0.75 --replicas 50 --horizon 20000 "
                             "--m-max 3 --seed 2 --out-dir " +
                             dir.string();
    CHECK(run(base + " --format json").exit_code == 0);
    CHECK(!fs::exists(dir / "table.csv"));
    const json report = json::parse(slurp(dir / "report.json"));
    CHECK(report["rows"].size() == 3);
    CHECK(run(base + " --format csv").exit_code == 0);
    CHECK(fs::exists(dir / "table.csv"));
}
