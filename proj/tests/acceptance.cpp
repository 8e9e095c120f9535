// SPDX-License-Identifier: Apache-2.0
//
// Acceptance suite: end-to-end statistical and exactness checks for the
// whole library, one line per criterion. Every tolerance is fixed here;
// nothing is tuned at runtime. Exits nonzero if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "walklab/experiments.hpp"
#include "walklab/io.hpp"
#include "walklab/local_time.hpp"
#include "walklab/oracles.hpp"
#include "walklab/stopping.hpp"
#include "walklab/thick_points.hpp"
#include "walklab/walk.hpp"

namespace fs = std::filesystem;
using namespace walklab;

namespace {

struct Checker {
    std::vector<std::string> failures;
    std::ostringstream notes;

    void require(bool ok, const std::string& what) {
        if (!ok) failures.push_back(what);
    }
    template <class T>
    void note(const std::string& label, T value) {
        notes << "      " << label << " = " << value << "\n";
    }
};

int g_jobs = 0;

ExperimentConfig config(const char* p, std::uint64_t replicas, std::uint64_t horizon,
                        std::uint64_t seed) {
    ExperimentConfig cfg;
    cfg.params = make_params(p);
    cfg.replicas = replicas;
    cfg.horizon = horizon;
    cfg.seed = seed;
    cfg.jobs = g_jobs;
    return cfg;
}

// 1. Enumeration vs closed forms, three step biases, both arithmetics.
void criterion_oracle_equivalence(Checker& check) {
    for (const char* p : {"0.6", "0.75", "0.9"}) {
        const EnumerateCheckReport r = run_enumerate_check(make_params(p), 16);
        check.note(std::string("max |diff| at p=") + p, r.max_abs_diff);
        check.require(r.max_abs_diff <= 1e-12,
                      std::string("float enumeration drifted at p=") + p);
        check.require(r.rational_consistent,
                      std::string("rational enumeration mismatch at p=") + p);
    }
}

// 2. No-return probabilities: DP chain, Monte Carlo, and the rate table.
void criterion_no_return_suite(Checker& check) {
    const WalkParams params = make_params("0.75");
    double prev = 2.0;
    bool monotone = true, above_gamma = true;
    for (std::uint64_t n = 1; n <= 60; ++n) {
        const double g = no_return_probability(params, n).value;
        monotone = monotone && g <= prev + 1e-15;
        above_gamma = above_gamma && g >= 0.5 - 1e-15;
        prev = g;
    }
    check.require(no_return_probability(params, 1).value == 1.0, "gamma(1) must be 1");
    check.require(monotone, "gamma(n) must be non-increasing");
    check.require(above_gamma, "gamma(n) must stay above gamma");

    ExperimentConfig cfg = config("0.75", 1'000'000, 100000, 21);
    const EstimateReport mc = run_no_return(cfg);
    const double sigma = std::sqrt(0.25 / static_cast<double>(cfg.replicas));
    check.note("MC no-return estimate", mc.estimate);
    check.require(mc.censored == 0, "no-return sampling censored");
    check.require(std::abs(mc.estimate - 0.5) <= 4.0 * sigma,
                  "MC no-return estimate outside 4 sigma of gamma");

    const auto rows = gamma_rate_check(params, 10, 60);
    std::vector<double> ratios;
    for (const auto& row : rows) {
        check.require(row.ratio > 0.0, "rate ratio must be positive");
        ratios.push_back(row.ratio);
    }
    std::sort(ratios.begin(), ratios.end());
    const double median = ratios[ratios.size() / 2];
    check.note("rate ratio max/median", ratios.back() / median);
    check.require(ratios.back() <= 10.0 * median, "rate ratios spread beyond 10x median");
}

// 3. Sampled total-local-time pmf against the geometric-type law.
void criterion_total_local_time(Checker& check) {
    const WalkParams params = make_params("0.75");
    const std::uint64_t n = 1'000'000;
    for (std::int64_t z = -2; z <= 2; ++z) {
        ExperimentConfig cfg = config("0.75", n, 100000, 3000 + static_cast<std::uint64_t>(z + 2));
        cfg.z = z;
        const TotalLocalTimePmfReport r = run_total_local_time_pmf(cfg, 10);
        const double atom = atom_never_visit(params, z).value;
        const double freq0 = static_cast<double>(r.bin_counts[0]) / static_cast<double>(n);
        const double tol0 = 4.0 * std::sqrt(std::max(atom * (1.0 - atom), 1e-12) /
                                            static_cast<double>(n)) +
                            4.0 * r.bias_bound;
        check.require(std::abs(freq0 - atom) <= tol0,
                      "never-visit atom off at z=" + std::to_string(z));
        for (std::uint32_t k = 1; k <= 10; ++k) {
            const double expect = pmf_total_local_time(params, z, k).value;
            const double freq =
                static_cast<double>(r.bin_counts[k]) / static_cast<double>(n);
            const double tol =
                4.0 * std::sqrt(expect * (1.0 - expect) / static_cast<double>(n)) +
                4.0 * r.bias_bound;
            check.require(std::abs(freq - expect) <= tol,
                          "pmf bin off at z=" + std::to_string(z) + " k=" + std::to_string(k));
        }
    }
}

// 4. The two C-event routes agree at every resolution on every path.
void criterion_event_identity(Checker& check) {
    ExperimentConfig cfg = config("0.75", 10000, 100000, 4);
    try {
        const IdentityReport r = run_event_identity(cfg);
        check.note("resolved true", r.resolved_true);
        check.note("resolved false", r.resolved_false);
        check.require(r.mismatches == 0, "route mismatch reported");
        check.require(r.resolved_true > 0 && r.resolved_false > 0,
                      "identity run resolved nothing");
    } catch (const detector_mismatch_error& e) {
        check.require(false, std::string("detector mismatch: ") + e.what());
    }
}

// 5. P(C_m^k) >= (1-2q)^k within Monte Carlo resolution.
void criterion_c_lower_bound(Checker& check) {
    const std::pair<std::uint32_t, std::uint32_t> cases[] = {{3, 2}, {5, 2}, {5, 3}, {8, 3}};
    for (const auto& [m, k] : cases) {
        ExperimentConfig cfg = config("0.75", 100000, 100000, 50 + m * 10 + k);
        cfg.m = m;
        cfg.k = k;
        const EstimateReport r = run_c_probability(cfg);
        const double bound = std::pow(0.5, static_cast<double>(k));
        check.note("P(C_" + std::to_string(m) + "^" + std::to_string(k) + ")", r.estimate);
        check.require(static_cast<double>(r.censored) <
                          0.05 * static_cast<double>(cfg.replicas),
                      "censoring at 5% or above for m=" + std::to_string(m));
        check.require(r.estimate >= bound - 3.0 * r.stderr_value,
                      "lower bound violated at (m,k)=(" + std::to_string(m) + "," +
                          std::to_string(k) + ")");
    }
}

// 6. Maximal local time growth: median of xi(n)/ln n in a loose band.
void criterion_local_time_growth(Checker& check) {
    ExperimentConfig cfg = config("0.75", 100, 1'000'000, 6);
    cfg.n_grid = {1'000'000};
    const auto rows = run_local_time_growth(cfg);
    const double lambda = derive_constants(cfg.params).lambda;
    check.note("median xi(1e6)/ln 1e6", rows[0].median);
    check.require(rows[0].median >= 0.75 * lambda, "median ratio below 0.75 lambda");
    check.require(rows[0].median <= 1.5 * lambda, "median ratio above 1.5 lambda");
}

// 7. Favorite-site counts: occupation tallies, gap growth, thick pairs.
void criterion_favorite_sites(Checker& check) {
    const double theta = derive_constants(make_params("0.75")).theta;
    const double lo = 0.3 * theta, hi = 5.0 * theta;

    // (a) g(1), g(2) positive in every replica by horizon 1e4
    ExperimentConfig small = config("0.75", 1000, 10000, 71);
    const FavoriteGrowthReport early = run_favorite_count_growth(small);
    check.require(early.g_positive[1] == small.replicas, "g(1) = 0 in some replica");
    check.require(early.g_positive[2] == small.replicas, "g(2) = 0 in some replica");

    // (b) g(3) positive in at least 90% of replicas by horizon 1e6,
    // (c-ii) pooled running max of #K(n)/ln ln n inside the band
    ExperimentConfig big = config("0.75", 1000, 1'000'000, 72);
    const FavoriteGrowthReport late = run_favorite_count_growth(big);
    const double g3_frac =
        static_cast<double>(late.g_positive[3]) / static_cast<double>(big.replicas);
    check.note("fraction with g(3) > 0", g3_frac);
    check.note("max #K ratio", late.max_ratio);
    check.require(g3_frac >= 0.90, "g(3) frequency below 90%");
    check.require(late.max_ratio >= lo && late.max_ratio <= hi,
                  "#K(n)/ln ln n running max outside [0.3 theta, 5 theta]");

    // (c-i) pooled max G_m / ln m at m = 15 inside the band
    ExperimentConfig gaps = config("0.75", 1000, 1'000'000, 73);
    gaps.m_max = 15;
    const auto rows = run_gap_growth(gaps);
    const GapRow& m15 = rows.back();
    const double gap_ratio = static_cast<double>(m15.max_gap) / std::log(15.0);
    check.note("max G_15 / ln 15", gap_ratio);
    check.require(m15.censored_fraction < 0.05, "G_15 censoring at 5% or above");
    check.require(gap_ratio >= lo && gap_ratio <= hi,
                  "G_m/ln m pooled max outside [0.3 theta, 5 theta]");
}

// 7d. Thick-pair failure frequency non-increasing across the n grid, at an
// epsilon inside the admissible regime (1+d)(1-e)^2 > 1+d/2. Outside it (say
// e = 0.3 at this p) E_n fails at almost every desk-scale n and the
// frequency is not monotone; see the thick-point admissibility flag.
void criterion_thick_pair_decay(Checker& check) {
    ExperimentConfig decay = config("0.75", 1000, 100000, 74);
    decay.epsilon = 0.02;
    decay.n_grid = {1000, 10000, 100000};
    ThickPointParams tp;
    tp.epsilon = decay.epsilon;
    const DerivedConstants consts = derive_constants(decay.params);
    tp.lambda = consts.lambda;
    check.require(tp.epsilon_admissible(consts.delta), "epsilon must be admissible here");
    const auto decay_rows = run_thick_pair_decay(decay);
    for (std::size_t i = 0; i < decay_rows.size(); ++i) {
        check.note("(D and E)^c at n=" + std::to_string(decay_rows[i].n),
                   decay_rows[i].frequency);
    }
    for (std::size_t i = 1; i < decay_rows.size(); ++i) {
        const double allowance =
            2.0 * std::sqrt(decay_rows[i].stderr_value * decay_rows[i].stderr_value +
                            decay_rows[i - 1].stderr_value * decay_rows[i - 1].stderr_value);
        check.require(decay_rows[i].frequency <= decay_rows[i - 1].frequency + allowance,
                      "failure frequency increased beyond 2 sigma at n=" +
                          std::to_string(decay_rows[i].n));
    }
}

// 8. Joint total-local-time tail decays at least as fast as the rate bound.
void criterion_joint_tail_rate(Checker& check) {
    ExperimentConfig cfg = config("0.75", 4'000'000, 100000, 8);
    cfg.z = 1;
    cfg.tolerance = 1e-8;
    cfg.n_grid = {100, 1000, 10000};
    const JointTailReport r = run_joint_tail(cfg);
    const double delta = derive_constants(cfg.params).delta;
    check.note("slope", r.slope);
    check.note("required at most", -(1.0 + delta) + 0.15);
    check.require(r.slope_defined, "tail estimates hit zero; slope undefined");
    check.require(r.slope <= -(1.0 + delta) + 0.15, "tail slope too shallow");
}

fs::path g_self;

// 9. Byte-identical outputs across reruns and across --jobs.
void criterion_reproducibility(Checker& check) {
    std::string bin_path;
    if (const char* env = std::getenv("WALKLAB_BIN")) {
        bin_path = env;
    } else {
        const fs::path guess = g_self.parent_path().parent_path() / "tools" / "walklab";
        if (fs::exists(guess)) bin_path = guess.string();
    }
    if (bin_path.empty()) {
        check.require(false, "WALKLAB_BIN not set and the CLI was not found next to the tests");
        return;
    }
    const char* bin = bin_path.c_str();
    const fs::path dir = fs::temp_directory_path() / "walklab_acceptance";
    fs::remove_all(dir);
    fs::create_directories(dir);
    auto shell = [&](const std::string& cmd) {
        const int rc = std::system((cmd + " >/dev/null 2>/dev/null").c_str());
        return rc == 0;
    };
    auto slurp = [&](const fs::path& p) {
        std::ifstream in(p, std::ios::binary);
        return std::string((std::istreambuf_iterator<char>(in)),
                           std::istreambuf_iterator<char>());
    };
    const std::string q = std::string("\"") + bin + "\"";

    const std::string sim =
        q + " simulate --p 0.75 --steps 2000 --seed 7 --out-dir " + (dir / "sim").string();
    check.require(shell(sim), "simulate run failed");
    const std::string traj = slurp(dir / "sim" / "trajectory.csv");
    const std::string events = slurp(dir / "sim" / "events.json");
    const std::string manifest = slurp(dir / "sim" / "manifest.json");
    check.require(shell(sim), "simulate rerun failed");
    check.require(slurp(dir / "sim" / "trajectory.csv") == traj, "trajectory bytes changed");
    check.require(slurp(dir / "sim" / "events.json") == events, "event trace bytes changed");
    check.require(slurp(dir / "sim" / "manifest.json") == manifest, "manifest bytes changed");

    const std::string exp = q +
                            " experiment c-prob --p 0.75 --m 4 --k 2 --replicas 20000 --seed 9 "
                            "--horizon 50000 --out-dir " +
                            (dir / "exp").string();
    check.require(shell(exp + " --jobs 1"), "experiment run failed");
    const std::string report = slurp(dir / "exp" / "report.json");
    const std::string exp_manifest = slurp(dir / "exp" / "manifest.json");
    check.require(shell(exp + " --jobs 4"), "experiment rerun failed");
    check.require(slurp(dir / "exp" / "report.json") == report,
                  "report bytes depend on --jobs");
    check.require(slurp(dir / "exp" / "manifest.json") == exp_manifest,
                  "manifest bytes depend on --jobs");

    const std::string oracle = q + " oracle no-return --p 0.75 --n 24 --rational";
    check.require(
        std::system((oracle + " > " + (dir / "o1.json").string() + " 2>/dev/null").c_str()) == 0,
        "oracle run failed");
    check.require(
        std::system((oracle + " > " + (dir / "o2.json").string() + " 2>/dev/null").c_str()) == 0,
        "oracle rerun failed");
    check.require(slurp(dir / "o1.json") == slurp(dir / "o2.json"), "oracle bytes changed");
}

}  // namespace

int main(int argc, char** argv) {
    g_self = fs::absolute(argv[0]);
    if (argc > 1) g_jobs = std::atoi(argv[1]);
    struct Criterion {
        const char* name;
        std::function<void(Checker&)> run;
    };
    const Criterion criteria[] = {
        {"oracle-equivalence", criterion_oracle_equivalence},
        {"no-return-suite", criterion_no_return_suite},
        {"total-local-time-law", criterion_total_local_time},
        {"event-identity", criterion_event_identity},
        {"c-event-lower-bound", criterion_c_lower_bound},
        {"local-time-growth", criterion_local_time_growth},
        {"favorite-site-counts", criterion_favorite_sites},
        {"thick-pair-decay", criterion_thick_pair_decay},
        {"joint-tail-rate", criterion_joint_tail_rate},
        {"reproducibility", criterion_reproducibility},
    };

    int failures = 0;
    int index = 0;
    for (const Criterion& criterion : criteria) {
        ++index;
        Checker check;
        const auto t0 = std::chrono::steady_clock::now();
        try {
            criterion.run(check);
        } catch (const std::exception& e) {
            check.require(false, std::string("exception: ") + e.what());
        }
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        const bool ok = check.failures.empty();
        failures += !ok;
        std::printf("[%d] %-22s %s (%.1f s)\n", index, criterion.name, ok ? "PASS" : "FAIL",
                    secs);
        std::fputs(check.notes.str().c_str(), stdout);
        for (const std::string& why : check.failures) {
            std::printf("      FAILED: %s\n", why.c_str());
        }
        std::fflush(stdout);
    }
    if (failures == 0) {
        std::printf("all %d acceptance criteria passed\n", index);
    } else {
        std::printf("%d of %d acceptance criteria FAILED\n", failures, index);
    }
    return failures == 0 ? 0 : 1;
}
