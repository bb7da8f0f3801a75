// Command-line front end: seeded simulation runs, parameter sweeps and the
// brute-force/decomposed oracle consistency check.

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "edgebandit/config.hpp"
#include "edgebandit/engine.hpp"
#include "edgebandit/trace_io.hpp"

namespace {

namespace fs = std::filesystem;
using namespace edgebandit;

struct CommonOptions {
    std::optional<std::string> preset;
    std::optional<fs::path> config_file;
    std::vector<std::string> sets;
    std::optional<std::uint64_t> seed;
};

void add_common_options(CLI::App& cmd, CommonOptions& opts) {
    cmd.add_option_function<std::string>(
           "--preset", [&opts](const std::string& v) { opts.preset = v; },
           "Scenario preset: stable, unstable, tidal or custom");
    cmd.add_option_function<std::string>(
           "--config", [&opts](const std::string& v) { opts.config_file = v; },
           "JSON config file merged over the preset");
    cmd.add_option("--set", opts.sets, "Override one config key, e.g. policy.epsilon=0.1")
        ->take_all();
    cmd.add_option_function<std::uint64_t>(
        "--seed", [&opts](std::uint64_t v) { opts.seed = v; }, "Run seed");
}

ParsedExperiment load(const CommonOptions& opts) {
    ParsedExperiment parsed =
        assemble_config(opts.preset, opts.config_file, opts.sets);
    if (opts.seed) {
        parsed.config.seed = *opts.seed;
        parsed.sources["seed"] = "user";
    }
    return parsed;
}

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> parts;
    std::stringstream stream(text);
    std::string part;
    while (std::getline(stream, part, sep)) {
        parts.push_back(part);
    }
    return parts;
}

int run_simulate(const CommonOptions& opts, const fs::path& out_dir,
                 const std::optional<fs::path>& workload_trace) {
    const ParsedExperiment parsed = load(opts);
    const RunResult result = run(parsed.config);

    fs::create_directories(out_dir);
    write_trace(result.records, out_dir / "trace.csv");

    SweepEntry entry;
    entry.seed = parsed.config.seed;
    entry.summary = result.summary;
    entry.config = parsed.config;
    const std::vector<SweepEntry> entries{entry};
    write_summary(entries, out_dir / "summary.json");

    std::ofstream echo(out_dir / "config.json", std::ios::binary);
    echo << echo_config(parsed).dump(2) << '\n';

    if (workload_trace) {
        write_workload_trace(parsed.config.pattern, parsed.config.seed,
                             parsed.config.horizon, *workload_trace);
    }

    std::cout << "policy " << to_string(parsed.config.policy.kind) << ", seed "
              << parsed.config.seed << ", " << result.summary.slots << " slots\n"
              << "final average cost:  " << result.summary.final_avg_cost << '\n'
              << "total cost:          " << result.summary.total_cost << '\n'
              << "discounted cost:     " << result.summary.discounted_cost << '\n';
    if (result.summary.oracle) {
        std::cout << "mean oracle gap:     " << result.summary.oracle->mean_gap << '\n';
    }
    std::cout << "outputs in " << out_dir.string() << '\n';
    return 0;
}

int run_sweep_cmd(const CommonOptions& opts, const std::vector<std::string>& vary,
                  const std::string& seeds_text, const fs::path& out_dir) {
    const ParsedExperiment parsed = load(opts);

    std::vector<std::uint64_t> seeds;
    for (const std::string& s : split(seeds_text, ',')) {
        seeds.push_back(std::stoull(s));
    }

    // Each --vary k=v1,v2 contributes one axis; overrides are the Cartesian
    // product across axes.
    std::vector<std::pair<std::string, std::vector<std::string>>> axes;
    for (const std::string& v : vary) {
        const auto eq = v.find('=');
        if (eq == std::string::npos || eq == 0) {
            throw std::invalid_argument("--vary expects key=v1,v2,..., got \"" + v +
                                        "\"");
        }
        axes.emplace_back(v.substr(0, eq), split(v.substr(eq + 1), ','));
    }
    std::vector<std::map<std::string, std::string>> combos{{}};
    for (const auto& [key, values] : axes) {
        std::vector<std::map<std::string, std::string>> next;
        for (const auto& combo : combos) {
            for (const std::string& value : values) {
                auto extended = combo;
                extended[key] = value;
                next.push_back(std::move(extended));
            }
        }
        combos = std::move(next);
    }

    std::vector<SweepOverride> overrides;
    for (const auto& combo : combos) {
        SweepOverride override;
        override.deltas = combo;
        override.apply = [combo](ExperimentConfig& config) {
            nlohmann::json j = config_to_json(config);
            for (const auto& [key, value] : combo) {
                apply_set(j, key + "=" + value);
            }
            config = config_from_json(j);
        };
        overrides.push_back(std::move(override));
    }

    const std::vector<SweepEntry> entries = run_sweep(parsed.config, overrides, seeds);

    fs::create_directories(out_dir);
    write_summary(entries, out_dir / "summary.json");
    std::cout << entries.size() << " runs -> " << (out_dir / "summary.json").string()
              << '\n';
    return 0;
}

int run_oracle_check(const CommonOptions& opts, std::size_t slots) {
    const ParsedExperiment parsed = load(opts);
    const ExperimentConfig& config = parsed.config;
    const ArmSpace space(config.profile.num_users(), config.profile.num_servers(),
                         config.arm_cap);
    SeededSource source(config.seed, 0);

    double max_diff = 0.0;
    for (std::size_t t = 1; t <= slots; ++t) {
        const SlotWorkload workload = draw_slot(config.pattern, source, t);
        const ArmIndex brute = oracle_choose(config.profile, workload, space);
        const double brute_cost = system_cost(config.profile, workload, space.arm(brute));
        const DecomposedOptimum decomposed = decomposed_optimum(config.profile, workload);
        const double diff = std::fabs(brute_cost - decomposed.cost);
        max_diff = std::max(max_diff, diff);
        if (diff != 0.0) {
            std::cerr << "oracle-check: slot " << t << ": brute-force cost "
                      << format_double(brute_cost) << " != decomposed cost "
                      << format_double(decomposed.cost) << '\n';
            return 1;
        }
    }
    std::cout << "oracle-check: " << slots << " slots over " << space.size()
              << " arms, max |brute - decomposed| = " << format_double(max_diff)
              << '\n';
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Seeded bandit simulator for task offloading in a multi-user "
                 "multi-server edge network"};
    app.require_subcommand(1);

    CommonOptions sim_opts;
    fs::path sim_out = "out";
    std::optional<fs::path> workload_trace;
    CLI::App* simulate = app.add_subcommand("simulate", "Run one seeded simulation");
    add_common_options(*simulate, sim_opts);
    simulate->add_option("--out", sim_out, "Output directory");
    simulate->add_option_function<std::string>(
        "--workload-trace",
        [&workload_trace](const std::string& v) { workload_trace = v; },
        "Also dump the raw workload stream to this CSV file");

    CommonOptions sweep_opts;
    std::vector<std::string> vary;
    std::string seeds_text = "1";
    fs::path sweep_out = "out";
    CLI::App* sweep = app.add_subcommand("sweep", "Run a parameter/seed sweep");
    add_common_options(*sweep, sweep_opts);
    sweep->add_option("--vary", vary, "Sweep axis, e.g. policy.epsilon=0.01,0.1,0.3")
        ->take_all();
    sweep->add_option("--seeds", seeds_text, "Comma-separated seed list");
    sweep->add_option("--out", sweep_out, "Output directory");

    CommonOptions oracle_opts;
    std::size_t oracle_slots = 500;
    CLI::App* oracle = app.add_subcommand(
        "oracle-check", "Verify brute-force vs decomposed optimum equivalence");
    add_common_options(*oracle, oracle_opts);
    oracle->add_option("--slots", oracle_slots, "Number of slots to check");

    CLI11_PARSE(app, argc, argv);

    try {
        if (simulate->parsed()) {
            return run_simulate(sim_opts, sim_out, workload_trace);
        }
        if (sweep->parsed()) {
            return run_sweep_cmd(sweep_opts, vary, seeds_text, sweep_out);
        }
        if (oracle->parsed()) {
            return run_oracle_check(oracle_opts, oracle_slots);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
