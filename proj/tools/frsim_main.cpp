// Command-line front end: run experiment plans, re-aggregate raw results,
// and validate configuration files.

#include <cstdint>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "frsim/config.hpp"
#include "frsim/experiment.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfigError = 1;
constexpr int kExitRuntimeError = 2;

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"frsim: uplink femtocell relaying simulator"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir;
    std::string raw_path;
    std::int64_t seed = -1;
    int drops = -1;
    int workers = -1;

    auto* run = app.add_subcommand("run", "Run an experiment plan");
    run->add_option("config", config_path, "Plan file (JSON)")->required();
    run->add_option("--out", out_dir, "Output directory (overrides the plan)");
    run->add_option("--seed", seed, "Base seed (overrides the plan)");
    run->add_option("--drops", drops, "Monte-Carlo drops per sweep point (overrides the plan)");
    run->add_option("--workers", workers, "Worker threads, 0 = all cores (overrides the plan)");

    auto* summarize = app.add_subcommand("summarize", "Re-aggregate a raw results CSV");
    summarize->add_option("raw", raw_path, "raw.csv produced by 'run'")->required();
    summarize->add_option("--out", out_dir, "Output directory (default: directory of raw.csv)");

    auto* validate = app.add_subcommand("validate", "Validate a plan file and print the normalized plan");
    validate->add_option("config", config_path, "Plan file (JSON)")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return e.get_exit_code() == 0 ? kExitOk : kExitConfigError;
    }

    try {
        if (run->parsed()) {
            frsim::ExperimentPlan plan = frsim::parse_plan_file(config_path);
            if (!out_dir.empty()) plan.output_dir = out_dir;
            if (seed >= 0) plan.seed = static_cast<std::uint64_t>(seed);
            if (drops >= 0) plan.drops = drops;
            if (workers >= 0) plan.workers = workers;
            plan.validate();
            frsim::run_experiment(plan);
            std::cout << "wrote results under " << plan.output_dir << "\n";
        } else if (summarize->parsed()) {
            std::string dir = out_dir;
            if (dir.empty()) {
                const auto slash = raw_path.find_last_of('/');
                dir = slash == std::string::npos ? "." : raw_path.substr(0, slash);
            }
            frsim::summarize_raw_csv(raw_path, dir);
            std::cout << "wrote summaries under " << dir << "\n";
        } else if (validate->parsed()) {
            const frsim::ExperimentPlan plan = frsim::parse_plan_file(config_path);
            std::cout << frsim::plan_to_json_text(plan);
        }
    } catch (const frsim::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfigError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitRuntimeError;
    }
    return kExitOk;
}
