#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "frsim/config.hpp"
#include "frsim/metrics.hpp"
#include "frsim/rates.hpp"

namespace frsim {

enum class SweepAxis { Fbs, Mues, BackhaulGrid };

struct SweepPoint {
    std::string label;
    ScenarioConfig cfg;
};

/// A full experiment: base scenario, one sweep axis, schemes to compare, and
/// the Monte-Carlo budget. Drop d uses seeds derived from (seed, d) only, so
/// every scheme and every sweep point sees the same topology and shadowing
/// for the same drop index (paired comparisons).
struct ExperimentPlan {
    ScenarioConfig base;
    SweepAxis axis = SweepAxis::Fbs;
    std::vector<int> fbs_values;        // axis == Fbs
    std::vector<int> mue_values;        // axis == Mues
    std::vector<double> capacity_values;  // axis == BackhaulGrid (bits/s)
    std::vector<int> channel_values;      // axis == BackhaulGrid
    std::vector<Scheme> schemes = {Scheme::CLA, Scheme::WRD, Scheme::OTA};
    int drops = 1;
    std::uint64_t seed = 1;
    std::string output_dir = "out";
    int workers = 1;  // 0 = hardware concurrency

    std::vector<SweepPoint> points() const;
    void validate() const;
};

/// Parses a JSON plan file. Unknown keys, type mismatches, and out-of-range
/// values raise ConfigError naming the offending key; missing fields take the
/// documented defaults, so an empty file is a valid plan.
ExperimentPlan parse_plan_file(const std::string& path);
ExperimentPlan parse_plan_text(const std::string& text);

/// Normalized JSON dump; parse_plan_text(plan_to_json_text(p)) round-trips.
std::string plan_to_json_text(const ExperimentPlan& plan);

/// Runs every (sweep point, scheme, drop) task, in parallel up to
/// plan.workers, and returns results in canonical order (point, scheme,
/// drop). Purely deterministic in the plan.
std::vector<DropResult> run_plan(const ExperimentPlan& plan);

/// run_plan + persistence: writes raw.csv, per-point summary and CDF files,
/// and pooled CDF files under plan.output_dir.
void run_experiment(const ExperimentPlan& plan);

/// Re-aggregates a raw.csv produced by run_experiment and writes the same
/// summary and CDF files under out_dir.
void summarize_raw_csv(const std::string& raw_csv_path, const std::string& out_dir);

/// Raw rows parsed back from disk, grouped per (sweep point, scheme, drop).
std::vector<DropResult> read_raw_csv(const std::string& raw_csv_path);

/// Shortest round-trip formatting used for every number we persist.
std::string format_double(double v);

const char* raw_csv_header();

}  // namespace frsim
