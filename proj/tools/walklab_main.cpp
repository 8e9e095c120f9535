// SPDX-License-Identifier: Apache-2.0
//
// walklab command-line front end: exact oracles, single-walk simulation
// traces, and seeded Monte Carlo experiment suites.
//
// Exit codes: 0 success, 2 argument error, 3 I/O error, 4 internal
// detector-identity failure (must never happen on a correct build).

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "walklab/experiments.hpp"
#include "walklab/io.hpp"
#include "walklab/local_time.hpp"
#include "walklab/oracles.hpp"
#include "walklab/stopping.hpp"
#include "walklab/thick_points.hpp"
#include "walklab/walk.hpp"

namespace {

using nlohmann::json;
using namespace walklab;

std::vector<int> load_replay(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw io::io_error("cannot open replay file: " + path);
    std::vector<int> steps;
    std::string token;
    while (in >> token) {
        if (token == "+1" || token == "+" || token == "1") {
            steps.push_back(1);
        } else if (token == "-1" || token == "-") {
            steps.push_back(-1);
        } else {
            throw std::invalid_argument("replay token must be +1 or -1, got: " + token);
        }
    }
    if (steps.empty()) throw std::invalid_argument("replay file holds no steps: " + path);
    return steps;
}

std::vector<std::uint64_t> parse_grid(const std::string& text) {
    std::vector<std::uint64_t> grid;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        grid.push_back(std::stoull(item));
    }
    return grid;
}

json frac_json(const Frac& f) {
    return json{{"numerator", u128_to_string(f.num)}, {"denominator", u128_to_string(f.den)}};
}

json probability_json(const std::string& query, const ExactProbability& p, const json& args) {
    json j;
    j["query"] = query;
    j["value"] = p.value;
    j["method"] = to_string(p.method);
    j["arithmetic"] = to_string(p.arithmetic);
    if (p.lower != p.upper) {
        j["lower"] = p.lower;
        j["upper"] = p.upper;
    }
    if (p.exact) j["exact"] = frac_json(*p.exact);
    j["args"] = args;
    return j;
}

// ---------------------------------------------------------------------------
// oracle

struct OracleArgs {
    std::string query;
    std::string p = "0.75";
    std::uint64_t n = 1;
    std::int64_t z = 0;
    std::uint32_t k = 1;
    std::uint64_t m = 1;
    double tail_factor = 1.0;
    bool rational = false;
    bool has_n = false, has_m = false, has_tail = false;
};

int run_oracle(const OracleArgs& a) {
    const WalkParams params = make_params(a.p);
    const Arithmetic arith = a.rational ? Arithmetic::exact_rational : Arithmetic::binary_float;
    json out;
    if (a.query == "pmf-position") {
        out = probability_json(a.query, pmf_position(params, a.n, a.z, arith),
                               json{{"p", a.p}, {"n", a.n}, {"z", a.z}});
    } else if (a.query == "total-local-time") {
        out = probability_json(a.query, pmf_total_local_time(params, a.z, a.k),
                               json{{"p", a.p}, {"z", a.z}, {"k", a.k}});
    } else if (a.query == "never-visit") {
        out = probability_json(a.query, atom_never_visit(params, a.z),
                               json{{"p", a.p}, {"z", a.z}});
    } else if (a.query == "no-return") {
        out = probability_json(a.query, no_return_probability(params, a.n, arith),
                               json{{"p", a.p}, {"n", a.n}});
    } else if (a.query == "bounds") {
        if (a.has_m == a.has_tail) {
            throw std::invalid_argument("bounds: give exactly one of --m (return tail) or --A with --n (joint tail rate)");
        }
        json j;
        j["query"] = a.query;
        j["arithmetic"] = "binary-float";
        j["method"] = "closed-form";
        if (a.has_m) {
            j["kind"] = "return-tail";
            j["value"] = bound_return_tail(params, a.m);
            j["args"] = json{{"p", a.p}, {"m", a.m}};
        } else {
            if (!a.has_n) throw std::invalid_argument("bounds: --A needs --n");
            j["kind"] = "joint-tail-rate";
            j["value"] = bound_joint_tail_rate(params, a.tail_factor, a.n);
            j["args"] = json{{"p", a.p}, {"A", a.tail_factor}, {"n", a.n}};
        }
        out = j;
    } else {
        throw std::invalid_argument("unknown oracle query: " + a.query);
    }
    std::cout << io::dump_json(out);
    return 0;
}

// ---------------------------------------------------------------------------
// simulate

struct SimulateArgs {
    std::string p = "0.75";
    std::uint64_t steps = 1000;
    std::uint64_t seed = 1;
    std::uint64_t stream = 0;
    std::int64_t start = 0;
    std::uint64_t stride = 1;
    std::string replay;
    std::string out_dir = ".";
    bool steps_given = false;
};

template <class Stream>
void simulate_with(Stream& stream, const WalkParams& params, std::uint64_t steps,
                   std::uint64_t stride, std::string& csv, PathAnalyzer<MapSiteCounts>& analyzer) {
    csv += "n,S_n,xi_n,fav_count,fav_min_site,fav_max_site\n";
    csv += "0," + std::to_string(params.start) + ",0,0,,\n";
    for (std::uint64_t n = 1; n <= steps; ++n) {
        stream.advance(params);
        analyzer.step(stream.position(), n);
        if (n % stride == 0) {
            const auto& ledger = analyzer.ledger();
            csv += std::to_string(n);
            csv += ',';
            csv += std::to_string(stream.position());
            csv += ',';
            csv += std::to_string(ledger.max_count());
            csv += ',';
            csv += std::to_string(ledger.favorite_count());
            csv += ',';
            csv += std::to_string(ledger.favorite_min());
            csv += ',';
            csv += std::to_string(ledger.favorite_max());
            csv += '\n';
        }
    }
}

int run_simulate(const SimulateArgs& a) {
    const WalkParams params = make_params(a.p, a.start);
    if (a.stride < 1) throw std::invalid_argument("stride must be >= 1");
    const std::filesystem::path dir(a.out_dir);
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw io::io_error("cannot create output directory: " + dir.string());

    std::string csv;
    PathAnalyzer<MapSiteCounts> analyzer(
        AnalyzerOptions{StoppingLog::Mode::full, false, true});
    std::uint64_t steps = a.steps;
    if (!a.replay.empty()) {
        const std::vector<int> replay_steps = load_replay(a.replay);
        if (!a.steps_given) steps = replay_steps.size();
        if (steps > replay_steps.size()) {
            throw std::invalid_argument("replay file has fewer steps than --steps");
        }
        ReplayStream stream(replay_steps, params.start);
        simulate_with(stream, params, steps, a.stride, csv, analyzer);
    } else {
        StepStream stream(params, a.seed, a.stream);
        simulate_with(stream, params, steps, a.stride, csv, analyzer);
    }

    std::vector<io::OutputFile> outputs;
    io::emit(dir, "trajectory.csv", csv, outputs);
    io::emit(dir, "events.json", io::dump_json(io::event_trace_json(analyzer.log())), outputs);

    json config{{"p", a.p},       {"steps", steps},   {"seed", a.seed},
                {"stream", a.stream}, {"start", a.start}, {"stride", a.stride},
                {"replay", a.replay}, {"out_dir", a.out_dir}};
    const json manifest = io::manifest_json("simulate", a.seed, config, outputs);
    io::write_file(dir / "manifest.json", io::dump_json(manifest));
    std::cout << "simulate: wrote " << (dir / "manifest.json").string() << "\n";
    return 0;
}

// ---------------------------------------------------------------------------
// experiment

struct ExperimentArgs {
    std::string name;
    std::string p = "0.75";
    ExperimentConfig cfg;
    std::string n_grid_text;
    std::string out_dir = ".";
    std::string format = "csv";
    std::string config_path;
};

// Line-oriented key=value configuration; explicit flags win. '#' comments.
std::map<std::string, std::string> load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw io::io_error("cannot open config file: " + path);
    std::map<std::string, std::string> kv;
    std::string line;
    while (std::getline(in, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const auto eq = line.find('=');
        if (eq == std::string::npos) continue;
        auto trim = [](std::string s) {
            const auto a = s.find_first_not_of(" \t\r");
            const auto b = s.find_last_not_of(" \t\r");
            return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
        };
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (!key.empty()) kv[key] = value;
    }
    return kv;
}

void apply_config_file(ExperimentArgs& a, const std::map<std::string, CLI::Option*>& opts) {
    const auto kv = load_config_file(a.config_path);
    auto fresh = [&](const std::string& key) { return opts.at(key)->count() == 0; };
    for (const auto& [key, value] : kv) {
        if (opts.find(key) == opts.end()) {
            throw std::invalid_argument("unknown config key: " + key);
        }
        if (!fresh(key)) continue;  // explicit flags win
        if (key == "p") {
            a.p = value;
        } else if (key == "replicas") {
            a.cfg.replicas = std::stoull(value);
        } else if (key == "seed") {
            a.cfg.seed = std::stoull(value);
        } else if (key == "horizon") {
            a.cfg.horizon = std::stoull(value);
        } else if (key == "m") {
            a.cfg.m = static_cast<std::uint32_t>(std::stoul(value));
        } else if (key == "k") {
            a.cfg.k = static_cast<std::uint32_t>(std::stoul(value));
        } else if (key == "z") {
            a.cfg.z = std::stoll(value);
        } else if (key == "epsilon") {
            a.cfg.epsilon = std::stod(value);
        } else if (key == "A") {
            a.cfg.tail_factor = std::stod(value);
        } else if (key == "tolerance") {
            a.cfg.tolerance = std::stod(value);
        } else if (key == "n-grid") {
            a.n_grid_text = value;
        } else if (key == "m-max") {
            a.cfg.m_max = static_cast<std::uint32_t>(std::stoul(value));
        } else if (key == "jobs") {
            a.cfg.jobs = std::stoi(value);
        } else if (key == "out-dir") {
            a.out_dir = value;
        } else if (key == "format") {
            if (value != "csv" && value != "json") {
                throw std::invalid_argument("format must be csv or json");
            }
            a.format = value;
        }
    }
}

std::string table_csv_header(const std::string& name) {
    if (name == "local-time-growth") return "n,median_ratio,q1,q3\n";
    if (name == "gap-growth") return "m,max_G,mean_G,resolved,censored_fraction,valid\n";
    if (name == "thick-pair-decay") return "n,failures,replicas,frequency,stderr\n";
    if (name == "joint-tail") return "n,threshold,hits,estimate,stderr\n";
    if (name == "total-local-time-pmf") return "k,count,frequency\n";
    return "";
}

int run_experiment(ExperimentArgs& a) {
    a.cfg.params = make_params(a.p, a.cfg.params.start);
    if (!a.n_grid_text.empty()) a.cfg.n_grid = parse_grid(a.n_grid_text);
    const std::filesystem::path dir(a.out_dir);
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw io::io_error("cannot create output directory: " + dir.string());

    const auto t0 = std::chrono::steady_clock::now();
    std::vector<io::OutputFile> outputs;
    json report;
    std::string table = table_csv_header(a.name);
    bool failed_check = false;
    json cfg_echo = io::config_echo(a.cfg);
    cfg_echo["format"] = a.format;

    if (a.name == "c-prob" || a.name == "c-record-prob" || a.name == "no-return" ||
        a.name == "de-complement") {
        EstimateReport est;
        if (a.name == "c-prob") {
            est = run_c_probability(a.cfg);
        } else if (a.name == "c-record-prob") {
            est = run_c_record_probability(a.cfg);
        } else if (a.name == "no-return") {
            est = run_no_return(a.cfg);
        } else {
            est = run_de_complement(a.cfg);
        }
        report = io::estimate_report_json(a.name, est, cfg_echo);
        if (!est.valid) {
            std::cerr << "warning: censored fraction exceeds 20%; report flagged invalid\n";
        }
        std::cout << a.name << ": estimate " << io::format_g17(est.estimate) << " +- "
                  << io::format_g17(est.stderr_value) << " (censored " << est.censored << "/"
                  << est.replicas << ")\n";
    } else if (a.name == "total-local-time-pmf") {
        const TotalLocalTimePmfReport r = run_total_local_time_pmf(a.cfg);
        report["experiment"] = a.name;
        report["config"] = cfg_echo;
        report["z"] = r.z;
        report["replicas"] = r.replicas;
        report["bias_bound"] = r.bias_bound;
        report["bin_counts"] = r.bin_counts;
        report["overflow"] = r.overflow;
        for (std::size_t k = 0; k < r.bin_counts.size(); ++k) {
            table += std::to_string(k) + "," + std::to_string(r.bin_counts[k]) + "," +
                     io::format_g17(static_cast<double>(r.bin_counts[k]) /
                                    static_cast<double>(r.replicas)) +
                     "\n";
        }
        std::cout << a.name << ": " << r.replicas << " draws at z=" << r.z << "\n";
    } else if (a.name == "local-time-growth") {
        const auto rows = run_local_time_growth(a.cfg);
        report["experiment"] = a.name;
        report["config"] = cfg_echo;
        json jr = json::array();
        for (const GrowthRow& row : rows) {
            jr.push_back({{"n", row.n}, {"median", row.median}, {"q1", row.q1}, {"q3", row.q3}});
            table += std::to_string(row.n) + "," + io::format_g17(row.median) + "," +
                     io::format_g17(row.q1) + "," + io::format_g17(row.q3) + "\n";
        }
        report["rows"] = jr;
        std::cout << a.name << ": " << rows.size() << " grid points\n";
    } else if (a.name == "favorite-count-growth") {
        const FavoriteGrowthReport r = run_favorite_count_growth(a.cfg);
        report["experiment"] = a.name;
        report["config"] = cfg_echo;
        report["replicas"] = r.replicas;
        report["horizon"] = r.horizon;
        report["ratio_floor"] = r.ratio_floor;
        report["max_favorites"] = r.max_favorites;
        report["max_ratio"] = r.max_ratio;
        for (std::size_t j = 1; j <= 5; ++j) {
            report["g_positive"][std::to_string(j)] = r.g_positive[j];
            report["g_total"][std::to_string(j)] = r.g_total[j];
        }
        std::cout << a.name << ": max #K " << r.max_favorites << ", max ratio "
                  << io::format_g17(r.max_ratio) << "\n";
    } else if (a.name == "gap-growth") {
        const auto rows = run_gap_growth(a.cfg);
        report["experiment"] = a.name;
        report["config"] = cfg_echo;
        json jr = json::array();
        bool any_invalid = false;
        for (const GapRow& row : rows) {
            jr.push_back({{"m", row.m},
                          {"max_G", row.max_gap},
                          {"mean_G", row.mean_gap},
                          {"resolved", row.resolved},
                          {"censored_fraction", row.censored_fraction},
                          {"valid", row.valid}});
            table += std::to_string(row.m) + "," + std::to_string(row.max_gap) + "," +
                     io::format_g17(row.mean_gap) + "," + std::to_string(row.resolved) + "," +
                     io::format_g17(row.censored_fraction) + "," + (row.valid ? "1" : "0") + "\n";
            any_invalid = any_invalid || !row.valid;
        }
        report["rows"] = jr;
        if (any_invalid) std::cerr << "warning: some gap rows exceed the censoring budget\n";
        std::cout << a.name << ": " << rows.size() << " levels\n";
    } else if (a.name == "thick-pair-decay") {
        const auto rows = run_thick_pair_decay(a.cfg);
        report["experiment"] = a.name;
        report["config"] = cfg_echo;
        ThickPointParams tp;
        tp.epsilon = a.cfg.epsilon;
        const DerivedConstants consts = derive_constants(a.cfg.params);
        tp.lambda = consts.lambda;
        report["epsilon_admissible"] = tp.epsilon_admissible(consts.delta);
        json jr = json::array();
        for (const DecayRow& row : rows) {
            jr.push_back({{"n", row.n},
                          {"failures", row.failures},
                          {"replicas", row.replicas},
                          {"frequency", row.frequency},
                          {"stderr", row.stderr_value}});
            table += std::to_string(row.n) + "," + std::to_string(row.failures) + "," +
                     std::to_string(row.replicas) + "," + io::format_g17(row.frequency) + "," +
                     io::format_g17(row.stderr_value) + "\n";
        }
        report["rows"] = jr;
        std::cout << a.name << ": " << rows.size() << " grid points\n";
    } else if (a.name == "joint-tail") {
        if (a.cfg.z == 0) a.cfg.z = 1;
        const JointTailReport r = run_joint_tail(a.cfg);
        report["experiment"] = a.name;
        report["config"] = cfg_echo;
        report["slope"] = r.slope;
        report["slope_defined"] = r.slope_defined;
        json jr = json::array();
        for (const JointTailRow& row : r.rows) {
            jr.push_back({{"n", row.n},
                          {"threshold", row.threshold},
                          {"hits", row.hits},
                          {"estimate", row.estimate},
                          {"stderr", row.stderr_value}});
            table += std::to_string(row.n) + "," + std::to_string(row.threshold) + "," +
                     std::to_string(row.hits) + "," + io::format_g17(row.estimate) + "," +
                     io::format_g17(row.stderr_value) + "\n";
        }
        report["rows"] = jr;
        std::cout << a.name << ": slope " << io::format_g17(r.slope) << "\n";
    } else if (a.name == "event-identity") {
        const IdentityReport r = run_event_identity(a.cfg);
        report["experiment"] = a.name;
        report["config"] = cfg_echo;
        report["paths"] = r.paths;
        report["resolved_true"] = r.resolved_true;
        report["resolved_false"] = r.resolved_false;
        report["gaps_checked"] = r.gaps_checked;
        report["mismatches"] = r.mismatches;
        std::cout << a.name << ": " << r.resolved_true + r.resolved_false
                  << " resolved events, 0 mismatches\n";
    } else if (a.name == "enumerate-check") {
        const std::uint32_t n_max =
            a.cfg.horizon <= kEnumerationCap ? static_cast<std::uint32_t>(a.cfg.horizon) : 12u;
        const EnumerateCheckReport r = run_enumerate_check(a.cfg.params, n_max);
        report["experiment"] = a.name;
        report["config"] = cfg_echo;
        report["n_max"] = n_max;
        report["comparisons"] = r.comparisons;
        report["max_abs_diff"] = r.max_abs_diff;
        report["rational_consistent"] = r.rational_consistent;
        failed_check = !r.passed();
        std::cout << a.name << ": max diff " << io::format_g17(r.max_abs_diff) << ", rational "
                  << (r.rational_consistent ? "exact" : "MISMATCH") << "\n";
    } else {
        throw std::invalid_argument("unknown experiment: " + a.name);
    }

    std::vector<io::OutputFile> emitted;
    io::emit(dir, "report.json", io::dump_json(report), emitted);
    if (!table.empty() && a.format == "csv") io::emit(dir, "table.csv", table, emitted);
    const json manifest = io::manifest_json("experiment", a.cfg.seed, report["config"], emitted);
    io::write_file(dir / "manifest.json", io::dump_json(manifest));

    const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::cerr << a.name << ": wall " << wall << " s\n";
    return failed_check ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"asymmetric simple random walk laboratory"};
    app.require_subcommand(1);
    app.set_config("--config");

    OracleArgs oracle_args;
    CLI::App* oracle = app.add_subcommand("oracle", "exact sampling-free probabilities");
    oracle->add_option("query", oracle_args.query,
                       "pmf-position | total-local-time | never-visit | no-return | bounds")
        ->required();
    oracle->add_option("--p", oracle_args.p, "step-up probability, decimal string");
    auto* on = oracle->add_option("--n", oracle_args.n, "time horizon");
    oracle->add_option("--z", oracle_args.z, "site");
    oracle->add_option("--k", oracle_args.k, "visit count");
    auto* om = oracle->add_option("--m", oracle_args.m, "tail index");
    auto* oa = oracle->add_option("--A", oracle_args.tail_factor, "joint tail factor");
    oracle->add_flag("--rational", oracle_args.rational, "exact rational arithmetic");

    SimulateArgs sim_args;
    CLI::App* simulate = app.add_subcommand("simulate", "one walk: trajectory + event trace");
    auto* ss = simulate->add_option("--steps", sim_args.steps, "number of steps");
    simulate->add_option("--p", sim_args.p, "step-up probability");
    simulate->add_option("--seed", sim_args.seed, "seed");
    simulate->add_option("--stream", sim_args.stream, "stream id");
    simulate->add_option("--start", sim_args.start, "start site");
    simulate->add_option("--stride", sim_args.stride, "trajectory subsampling stride");
    simulate->add_option("--replay", sim_args.replay, "file of +1/-1 steps replacing the RNG");
    simulate->add_option("--out-dir", sim_args.out_dir, "output directory");

    ExperimentArgs exp_args;
    CLI::App* experiment = app.add_subcommand("experiment", "seeded Monte Carlo suites");
    experiment->add_option("name", exp_args.name, "experiment name")->required();
    std::map<std::string, CLI::Option*> exp_opts;
    exp_opts["p"] = experiment->add_option("--p", exp_args.p, "step-up probability");
    exp_opts["replicas"] =
        experiment->add_option("--replicas", exp_args.cfg.replicas, "replica count");
    exp_opts["seed"] = experiment->add_option("--seed", exp_args.cfg.seed, "seed");
    exp_opts["horizon"] =
        experiment->add_option("--horizon", exp_args.cfg.horizon, "steps per replica");
    exp_opts["m"] = experiment->add_option("--m", exp_args.cfg.m, "level m");
    exp_opts["k"] = experiment->add_option("--k", exp_args.cfg.k, "site count k");
    exp_opts["z"] = experiment->add_option("--z", exp_args.cfg.z, "site z");
    exp_opts["epsilon"] =
        experiment->add_option("--epsilon", exp_args.cfg.epsilon, "thick-point epsilon");
    exp_opts["A"] = experiment->add_option("--A", exp_args.cfg.tail_factor, "joint tail factor");
    exp_opts["tolerance"] =
        experiment->add_option("--tolerance", exp_args.cfg.tolerance, "stopping bias budget");
    exp_opts["n-grid"] =
        experiment->add_option("--n-grid", exp_args.n_grid_text, "comma-separated n grid");
    exp_opts["m-max"] = experiment->add_option("--m-max", exp_args.cfg.m_max, "largest gap level");
    exp_opts["jobs"] =
        experiment->add_option("--jobs", exp_args.cfg.jobs, "worker threads (wall time only)");
    exp_opts["out-dir"] = experiment->add_option("--out-dir", exp_args.out_dir, "output directory");
    exp_opts["format"] = experiment->add_option("--format", exp_args.format, "table format")
                             ->check(CLI::IsMember({"csv", "json"}));
    experiment->add_option("--config", exp_args.config_path,
                           "key=value file; explicit flags override it");

    try {
        app.parse(argc, argv);
        if (oracle->parsed()) {
            OracleArgs a = oracle_args;
            a.has_n = on->count() > 0;
            a.has_m = om->count() > 0;
            a.has_tail = oa->count() > 0;
            return run_oracle(a);
        }
        if (simulate->parsed()) {
            sim_args.steps_given = ss->count() > 0;
            return run_simulate(sim_args);
        }
        if (experiment->parsed()) {
            if (!exp_args.config_path.empty()) {
                apply_config_file(exp_args, exp_opts);
            }
            return run_experiment(exp_args);
        }
        return 2;
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const walklab::detector_mismatch_error& e) {
        std::cerr << "detector identity failure: " << e.what() << "\n";
        return 4;
    } catch (const walklab::io::io_error& e) {
        std::cerr << "i/o error: " << e.what() << "\n";
        return 3;
    } catch (const std::filesystem::filesystem_error& e) {
        std::cerr << "i/o error: " << e.what() << "\n";
        return 3;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid arguments: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
