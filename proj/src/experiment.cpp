#include "frsim/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "frsim/game.hpp"
#include "frsim/rng.hpp"
#include "frsim/units.hpp"

namespace frsim {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

const char* raw_csv_header() {
    return "sweep_point,scheme,drop,mue_id,relay_fbs,theta,power_dbm,rate_coarse,rate_fine,"
           "rate_total,delay_coarse,delay_fine,delay_total,utility,converged,iterations";
}

// ---------------------------------------------------------------------------
// Plan construction

namespace {

std::string capacity_label(double bps) {
    return std::to_string(static_cast<long long>(std::llround(bps)));
}

}  // namespace

std::vector<SweepPoint> ExperimentPlan::points() const {
    std::vector<SweepPoint> pts;
    switch (axis) {
        case SweepAxis::Fbs:
            for (int v : fbs_values) {
                ScenarioConfig cfg = base;
                cfg.num_fbs = v;
                pts.push_back({"F" + std::to_string(v), cfg});
            }
            break;
        case SweepAxis::Mues:
            for (int v : mue_values) {
                ScenarioConfig cfg = base;
                cfg.num_mues = v;
                pts.push_back({"M" + std::to_string(v), cfg});
            }
            break;
        case SweepAxis::BackhaulGrid:
            for (double c : capacity_values) {
                for (int ch : channel_values) {
                    ScenarioConfig cfg = base;
                    cfg.wired_total_capacity_bps = c;
                    cfg.num_ota_channels = ch;
                    pts.push_back({"C" + capacity_label(c) + "_ch" + std::to_string(ch), cfg});
                }
            }
            break;
    }
    return pts;
}

void ExperimentPlan::validate() const {
    base.validate();
    const auto pts = points();
    if (pts.empty()) throw ConfigError("sweep must contain at least one point");
    if (schemes.empty()) throw ConfigError("schemes must contain at least one scheme");
    if (drops < 1) throw ConfigError("drops must be >= 1");
    if (workers < 0) throw ConfigError("workers must be >= 0");
    const bool relaying =
        std::any_of(schemes.begin(), schemes.end(), [](Scheme s) { return s != Scheme::CLA; });
    for (const auto& p : pts) {
        p.cfg.validate();
        if (relaying && p.cfg.num_fbs < p.cfg.num_mues)
            throw ConfigError("num_fbs must be >= num_mues when a relaying scheme is enabled (point " +
                              p.label + ")");
    }
}

// ---------------------------------------------------------------------------
// JSON parsing

namespace {

void check_keys(const json& obj, const char* where, std::initializer_list<const char*> allowed) {
    for (const auto& [key, value] : obj.items()) {
        if (std::find_if(allowed.begin(), allowed.end(),
                         [&](const char* k) { return key == k; }) == allowed.end())
            throw ConfigError(std::string("unknown key '") + key + "' in " + where);
    }
}

double jnum(const json& obj, const char* key, double def) {
    if (!obj.contains(key)) return def;
    if (!obj[key].is_number()) throw ConfigError(std::string("key '") + key + "' must be a number");
    return obj[key].get<double>();
}

int jint(const json& obj, const char* key, int def) {
    if (!obj.contains(key)) return def;
    if (!obj[key].is_number_integer()) throw ConfigError(std::string("key '") + key + "' must be an integer");
    return obj[key].get<int>();
}

bool jbool(const json& obj, const char* key, bool def) {
    if (!obj.contains(key)) return def;
    if (!obj[key].is_boolean()) throw ConfigError(std::string("key '") + key + "' must be a boolean");
    return obj[key].get<bool>();
}

std::string jstr(const json& obj, const char* key, const std::string& def) {
    if (!obj.contains(key)) return def;
    if (!obj[key].is_string()) throw ConfigError(std::string("key '") + key + "' must be a string");
    return obj[key].get<std::string>();
}

std::vector<double> jnum_list(const json& obj, const char* key) {
    if (!obj[key].is_array()) throw ConfigError(std::string("key '") + key + "' must be an array of numbers");
    std::vector<double> out;
    for (const auto& v : obj[key]) {
        if (!v.is_number()) throw ConfigError(std::string("key '") + key + "' must be an array of numbers");
        out.push_back(v.get<double>());
    }
    return out;
}

std::vector<int> jint_list(const json& obj, const char* key) {
    if (!obj[key].is_array()) throw ConfigError(std::string("key '") + key + "' must be an array of integers");
    std::vector<int> out;
    for (const auto& v : obj[key]) {
        if (!v.is_number_integer()) throw ConfigError(std::string("key '") + key + "' must be an array of integers");
        out.push_back(v.get<int>());
    }
    return out;
}

ScenarioConfig parse_scenario(const json& obj) {
    check_keys(obj, "scenario",
               {"macro_radius_m", "femto_radius_m", "num_mues", "num_fbs", "num_subchannels",
                "max_tx_power_dbm", "noise_dbm", "shadow_std_db", "wall_loss_db", "fue_power_dbm",
                "fbs_backhaul_power_dbm", "lambda_mue_bps", "lambda_fue_bps", "superframe_frames",
                "delta", "nu", "min_rate_headroom", "wired_total_capacity_bps", "num_ota_channels",
                "subchannel_bandwidth_hz", "theta_grid", "power_grid_dbm", "power_grid_w",
                "exclude_mues_from_femto_disks", "cross_mue_fine_interference",
                "traffic_split", "ota_all_fbs_transmit", "max_game_rounds",
                "pl_outdoor_ref_db", "pl_outdoor_slope_db", "pl_indoor_ref_db",
                "pl_indoor_slope_db"});

    ScenarioConfig cfg;
    cfg.macro_radius_m = jnum(obj, "macro_radius_m", cfg.macro_radius_m);
    cfg.femto_radius_m = jnum(obj, "femto_radius_m", cfg.femto_radius_m);
    cfg.num_mues = jint(obj, "num_mues", cfg.num_mues);
    cfg.num_fbs = jint(obj, "num_fbs", cfg.num_fbs);
    cfg.num_subchannels = jint(obj, "num_subchannels", cfg.num_subchannels);
    cfg.max_tx_power_dbm = jnum(obj, "max_tx_power_dbm", cfg.max_tx_power_dbm);
    cfg.noise_dbm = jnum(obj, "noise_dbm", cfg.noise_dbm);
    cfg.shadow_std_db = jnum(obj, "shadow_std_db", cfg.shadow_std_db);
    cfg.wall_loss_db = jnum(obj, "wall_loss_db", cfg.wall_loss_db);
    cfg.fue_power_dbm = jnum(obj, "fue_power_dbm", cfg.fue_power_dbm);
    cfg.fbs_backhaul_power_dbm = jnum(obj, "fbs_backhaul_power_dbm", cfg.fbs_backhaul_power_dbm);
    cfg.lambda_mue_bps = jnum(obj, "lambda_mue_bps", cfg.lambda_mue_bps);
    cfg.lambda_fue_bps = jnum(obj, "lambda_fue_bps", cfg.lambda_fue_bps);
    cfg.superframe_frames = jint(obj, "superframe_frames", cfg.superframe_frames);
    cfg.delta = jnum(obj, "delta", cfg.delta);
    cfg.nu = jnum(obj, "nu", cfg.nu);
    cfg.min_rate_headroom = jnum(obj, "min_rate_headroom", cfg.min_rate_headroom);
    cfg.wired_total_capacity_bps = jnum(obj, "wired_total_capacity_bps", cfg.wired_total_capacity_bps);
    cfg.num_ota_channels = jint(obj, "num_ota_channels", cfg.num_ota_channels);
    cfg.subchannel_bandwidth_hz = jnum(obj, "subchannel_bandwidth_hz", cfg.subchannel_bandwidth_hz);
    if (obj.contains("theta_grid")) cfg.theta_grid = jnum_list(obj, "theta_grid");
    if (obj.contains("power_grid_dbm")) {
        cfg.power_grid_w.clear();
        for (double dbm : jnum_list(obj, "power_grid_dbm")) cfg.power_grid_w.push_back(dbm_to_watts(dbm));
    }
    if (obj.contains("power_grid_w")) cfg.power_grid_w = jnum_list(obj, "power_grid_w");
    cfg.exclude_mues_from_femto_disks =
        jbool(obj, "exclude_mues_from_femto_disks", cfg.exclude_mues_from_femto_disks);
    cfg.cross_mue_fine_interference =
        jbool(obj, "cross_mue_fine_interference", cfg.cross_mue_fine_interference);
    const std::string split = jstr(obj, "traffic_split", "delay_optimal");
    if (split == "delay_optimal")
        cfg.traffic_split = TrafficSplit::DelayOptimal;
    else if (split == "power")
        cfg.traffic_split = TrafficSplit::Power;
    else if (split == "duplicate")
        cfg.traffic_split = TrafficSplit::Duplicate;
    else
        throw ConfigError("key 'traffic_split' must be one of 'delay_optimal', 'power', 'duplicate'");
    cfg.ota_all_fbs_transmit = jbool(obj, "ota_all_fbs_transmit", cfg.ota_all_fbs_transmit);
    cfg.max_game_rounds = jint(obj, "max_game_rounds", cfg.max_game_rounds);
    cfg.pl_outdoor_ref_db = jnum(obj, "pl_outdoor_ref_db", cfg.pl_outdoor_ref_db);
    cfg.pl_outdoor_slope_db = jnum(obj, "pl_outdoor_slope_db", cfg.pl_outdoor_slope_db);
    cfg.pl_indoor_ref_db = jnum(obj, "pl_indoor_ref_db", cfg.pl_indoor_ref_db);
    cfg.pl_indoor_slope_db = jnum(obj, "pl_indoor_slope_db", cfg.pl_indoor_slope_db);
    return cfg;
}

}  // namespace

ExperimentPlan parse_plan_text(const std::string& text) {
    json root;
    std::string trimmed = text;
    trimmed.erase(0, trimmed.find_first_not_of(" \t\r\n"));
    if (trimmed.empty()) {
        root = json::object();
    } else {
        try {
            root = json::parse(text);
        } catch (const json::parse_error& e) {
            throw ConfigError(std::string("config is not valid JSON: ") + e.what());
        }
    }
    if (!root.is_object()) throw ConfigError("config root must be a JSON object");
    check_keys(root, "config",
               {"scenario", "sweep", "schemes", "drops", "seed", "output_dir", "workers"});

    ExperimentPlan plan;
    if (root.contains("scenario")) {
        if (!root["scenario"].is_object()) throw ConfigError("key 'scenario' must be an object");
        plan.base = parse_scenario(root["scenario"]);
    }

    if (root.contains("sweep")) {
        const json& sweep = root["sweep"];
        if (!sweep.is_object()) throw ConfigError("key 'sweep' must be an object");
        check_keys(sweep, "sweep", {"axis", "num_fbs", "num_mues", "wired_capacity_bps", "ota_channels"});
        const std::string axis = jstr(sweep, "axis", "");
        if (axis == "fbs") {
            if (!sweep.contains("num_fbs")) throw ConfigError("sweep axis 'fbs' requires key 'num_fbs'");
            plan.axis = SweepAxis::Fbs;
            plan.fbs_values = jint_list(sweep, "num_fbs");
        } else if (axis == "mues") {
            if (!sweep.contains("num_mues")) throw ConfigError("sweep axis 'mues' requires key 'num_mues'");
            plan.axis = SweepAxis::Mues;
            plan.mue_values = jint_list(sweep, "num_mues");
        } else if (axis == "backhaul_grid") {
            if (!sweep.contains("wired_capacity_bps") || !sweep.contains("ota_channels"))
                throw ConfigError("sweep axis 'backhaul_grid' requires keys 'wired_capacity_bps' and 'ota_channels'");
            plan.axis = SweepAxis::BackhaulGrid;
            plan.capacity_values = jnum_list(sweep, "wired_capacity_bps");
            plan.channel_values = jint_list(sweep, "ota_channels");
        } else {
            throw ConfigError("key 'axis' must be one of 'fbs', 'mues', 'backhaul_grid'");
        }
    } else {
        plan.axis = SweepAxis::Fbs;
        plan.fbs_values = {plan.base.num_fbs};
    }

    if (root.contains("schemes")) {
        if (!root["schemes"].is_array()) throw ConfigError("key 'schemes' must be an array of scheme names");
        plan.schemes.clear();
        for (const auto& s : root["schemes"]) {
            if (!s.is_string()) throw ConfigError("key 'schemes' must be an array of scheme names");
            plan.schemes.push_back(scheme_from_name(s.get<std::string>()));
        }
        std::sort(plan.schemes.begin(), plan.schemes.end());
        plan.schemes.erase(std::unique(plan.schemes.begin(), plan.schemes.end()), plan.schemes.end());
    }

    plan.drops = jint(root, "drops", plan.drops);
    if (root.contains("seed")) {
        if (!root["seed"].is_number_integer()) throw ConfigError("key 'seed' must be an integer");
        plan.seed = root["seed"].get<std::uint64_t>();
    }
    plan.output_dir = jstr(root, "output_dir", plan.output_dir);
    plan.workers = jint(root, "workers", plan.workers);

    plan.validate();
    return plan;
}

ExperimentPlan parse_plan_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_plan_text(buf.str());
}

std::string plan_to_json_text(const ExperimentPlan& plan) {
    json scenario;
    const ScenarioConfig& c = plan.base;
    scenario["macro_radius_m"] = c.macro_radius_m;
    scenario["femto_radius_m"] = c.femto_radius_m;
    scenario["num_mues"] = c.num_mues;
    scenario["num_fbs"] = c.num_fbs;
    scenario["num_subchannels"] = c.num_subchannels;
    scenario["max_tx_power_dbm"] = c.max_tx_power_dbm;
    scenario["noise_dbm"] = c.noise_dbm;
    scenario["shadow_std_db"] = c.shadow_std_db;
    scenario["wall_loss_db"] = c.wall_loss_db;
    scenario["fue_power_dbm"] = c.fue_power_dbm;
    scenario["fbs_backhaul_power_dbm"] = c.fbs_backhaul_power_dbm;
    scenario["lambda_mue_bps"] = c.lambda_mue_bps;
    scenario["lambda_fue_bps"] = c.lambda_fue_bps;
    scenario["superframe_frames"] = c.superframe_frames;
    scenario["delta"] = c.delta;
    scenario["nu"] = c.nu;
    scenario["min_rate_headroom"] = c.min_rate_headroom;
    scenario["wired_total_capacity_bps"] = c.wired_total_capacity_bps;
    scenario["num_ota_channels"] = c.num_ota_channels;
    scenario["subchannel_bandwidth_hz"] = c.subchannel_bandwidth_hz;
    scenario["theta_grid"] = c.theta_grid;
    scenario["power_grid_w"] = c.power_grid();
    scenario["exclude_mues_from_femto_disks"] = c.exclude_mues_from_femto_disks;
    scenario["cross_mue_fine_interference"] = c.cross_mue_fine_interference;
    scenario["traffic_split"] = c.traffic_split == TrafficSplit::DelayOptimal ? "delay_optimal"
                                : c.traffic_split == TrafficSplit::Power      ? "power"
                                                                              : "duplicate";
    scenario["ota_all_fbs_transmit"] = c.ota_all_fbs_transmit;
    scenario["max_game_rounds"] = c.max_game_rounds;
    scenario["pl_outdoor_ref_db"] = c.pl_outdoor_ref_db;
    scenario["pl_outdoor_slope_db"] = c.pl_outdoor_slope_db;
    scenario["pl_indoor_ref_db"] = c.pl_indoor_ref_db;
    scenario["pl_indoor_slope_db"] = c.pl_indoor_slope_db;

    json sweep;
    switch (plan.axis) {
        case SweepAxis::Fbs:
            sweep["axis"] = "fbs";
            sweep["num_fbs"] = plan.fbs_values;
            break;
        case SweepAxis::Mues:
            sweep["axis"] = "mues";
            sweep["num_mues"] = plan.mue_values;
            break;
        case SweepAxis::BackhaulGrid:
            sweep["axis"] = "backhaul_grid";
            sweep["wired_capacity_bps"] = plan.capacity_values;
            sweep["ota_channels"] = plan.channel_values;
            break;
    }

    json root;
    root["scenario"] = scenario;
    root["sweep"] = sweep;
    json schemes = json::array();
    for (Scheme s : plan.schemes) schemes.push_back(scheme_name(s));
    root["schemes"] = schemes;
    root["drops"] = plan.drops;
    root["seed"] = plan.seed;
    root["output_dir"] = plan.output_dir;
    root["workers"] = plan.workers;
    return root.dump(2) + "\n";
}

// ---------------------------------------------------------------------------
// Execution

namespace {

DropResult run_drop(const SweepPoint& point, Scheme scheme, int drop, std::uint64_t plan_seed) {
    const ScenarioConfig& cfg = point.cfg;
    const std::uint64_t drop_seed = mix_seed(plan_seed, static_cast<std::uint64_t>(drop));

    const Topology topo = generate_topology(cfg, drop_seed);
    std::vector<int> relays;
    if (scheme != Scheme::CLA) relays = discover_femtocells(topo, cfg);
    const GameState state = run_game(topo, cfg, scheme, relays, drop_seed);

    DropResult result;
    result.sweep_label = point.label;
    result.scheme = scheme;
    result.drop_index = drop;
    result.converged = state.converged;
    result.iterations = state.rounds;

    const auto power_grid = cfg.power_grid();
    for (int m = 0; m < topo.num_mues(); ++m) {
        const MueEvaluation eval = evaluate_mue(topo, cfg, m, state.actions, scheme);
        MueRecord rec;
        rec.mue_id = m;
        rec.relay_fbs = state.actions[m].relay_fbs;
        rec.theta = cfg.theta_grid[state.actions[m].theta_index];
        rec.power_dbm = watts_to_dbm(power_grid[state.actions[m].power_index]);
        rec.rate_coarse = eval.rates.coarse_se;
        rec.rate_fine = eval.rates.fine_se;
        rec.rate_total = eval.rates.total_se;
        rec.delay_coarse = eval.delays.coarse_delay;
        rec.delay_fine = eval.delays.fine_delay;
        rec.delay_total = eval.delays.total_delay;
        rec.utility = eval.utility;
        result.mues.push_back(rec);
    }
    return result;
}

void write_file(const fs::path& path, const std::string& contents) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file '" + path.string() + "'");
    out << contents;
    if (!out) throw std::runtime_error("failed writing '" + path.string() + "'");
}

std::string raw_csv_text(const std::vector<DropResult>& results) {
    std::string text = raw_csv_header();
    text += '\n';
    for (const auto& drop : results) {
        for (const auto& mue : drop.mues) {
            text += drop.sweep_label;
            text += ',';
            text += scheme_name(drop.scheme);
            text += ',';
            text += std::to_string(drop.drop_index);
            text += ',';
            text += std::to_string(mue.mue_id);
            text += ',';
            text += std::to_string(mue.relay_fbs);
            text += ',';
            text += format_double(mue.theta);
            text += ',';
            text += format_double(mue.power_dbm);
            text += ',';
            text += format_double(mue.rate_coarse);
            text += ',';
            text += format_double(mue.rate_fine);
            text += ',';
            text += format_double(mue.rate_total);
            text += ',';
            text += format_double(mue.delay_coarse);
            text += ',';
            text += format_double(mue.delay_fine);
            text += ',';
            text += format_double(mue.delay_total);
            text += ',';
            text += format_double(mue.utility);
            text += ',';
            text += drop.converged ? '1' : '0';
            text += ',';
            text += std::to_string(drop.iterations);
            text += '\n';
        }
    }
    return text;
}

std::string summary_csv_text(const ExperimentSummary& summary) {
    std::string text =
        "scheme,drops,converged_drops,unconverged_fraction,samples,stable_samples,"
        "mean_utility,mean_rate,mean_delay,rate_p10,rate_p50,rate_p90,delay_p10,delay_p50,"
        "delay_p90,utility_p50,rate_improvement,delay_reduction,utility_improvement\n";
    const double nan = std::numeric_limits<double>::quiet_NaN();
    for (const auto& [scheme, s] : summary.schemes) {
        const bool has_rates = !s.rate_samples.empty();
        const bool has_delays = !s.delay_samples.empty();
        const EmpiricalCdf rate_tmp(has_rates ? s.rate_samples : std::vector<double>{0.0});
        const EmpiricalCdf delay_tmp(has_delays ? s.delay_samples : std::vector<double>{0.0});
        const EmpiricalCdf util_tmp(has_rates ? s.utility_samples : std::vector<double>{0.0});

        SchemeRatios ratios{nan, nan, nan};
        if (auto it = summary.ratios_vs_classical.find(scheme); it != summary.ratios_vs_classical.end())
            ratios = it->second;
        else if (scheme == Scheme::CLA)
            ratios = {1.0, 1.0, 1.0};

        text += scheme_name(scheme);
        text += ',' + std::to_string(s.drops);
        text += ',' + std::to_string(s.converged_drops);
        text += ',' + format_double(s.drops > 0 ? 1.0 - static_cast<double>(s.converged_drops) /
                                                            static_cast<double>(s.drops)
                                                : nan);
        text += ',' + std::to_string(s.samples);
        text += ',' + std::to_string(s.stable_samples);
        text += ',' + format_double(s.mean_utility);
        text += ',' + format_double(s.mean_rate);
        text += ',' + format_double(s.mean_delay);
        text += ',' + format_double(has_rates ? rate_tmp.quantile(0.1) : nan);
        text += ',' + format_double(has_rates ? rate_tmp.quantile(0.5) : nan);
        text += ',' + format_double(has_rates ? rate_tmp.quantile(0.9) : nan);
        text += ',' + format_double(has_delays ? delay_tmp.quantile(0.1) : nan);
        text += ',' + format_double(has_delays ? delay_tmp.quantile(0.5) : nan);
        text += ',' + format_double(has_delays ? delay_tmp.quantile(0.9) : nan);
        text += ',' + format_double(has_rates ? util_tmp.quantile(0.5) : nan);
        text += ',' + format_double(ratios.rate);
        text += ',' + format_double(ratios.delay);
        text += ',' + format_double(ratios.utility);
        text += '\n';
    }
    return text;
}

std::string cdf_csv_text(const std::vector<double>& sorted_samples) {
    std::string text = "value,cdf\n";
    const double n = static_cast<double>(sorted_samples.size());
    for (std::size_t i = 0; i < sorted_samples.size(); ++i) {
        text += format_double(sorted_samples[i]);
        text += ',';
        text += format_double(static_cast<double>(i + 1) / n);
        text += '\n';
    }
    return text;
}

// Per-point summary/CDF files plus pooled CDFs, identical whether results
// came from run_plan or from re-reading raw.csv.
void write_aggregates(const std::vector<DropResult>& results, const fs::path& dir) {
    std::vector<std::string> point_order;
    std::map<std::string, std::vector<DropResult>> by_point;
    for (const auto& drop : results) {
        if (!by_point.count(drop.sweep_label)) point_order.push_back(drop.sweep_label);
        by_point[drop.sweep_label].push_back(drop);
    }

    std::string best_text = "sweep_point,best_scheme,best_mean_utility\n";
    for (const auto& label : point_order) {
        const auto& drops = by_point[label];
        const ExperimentSummary summary = summarize(drops);
        write_file(dir / ("summary_" + label + ".csv"), summary_csv_text(summary));
        for (const auto& [scheme, s] : summary.schemes) {
            if (!s.rate_samples.empty())
                write_file(dir / ("cdf_" + label + "_" + scheme_name(scheme) + "_rate.csv"),
                           cdf_csv_text(s.rate_samples));
            if (!s.delay_samples.empty())
                write_file(dir / ("cdf_" + label + "_" + scheme_name(scheme) + "_delay.csv"),
                           cdf_csv_text(s.delay_samples));
        }

        Scheme best = Scheme::CLA;
        double best_utility = -1.0;
        for (const auto& [scheme, s] : summary.schemes) {
            if (s.samples > 0 && s.mean_utility > best_utility) {
                best_utility = s.mean_utility;
                best = scheme;
            }
        }
        best_text += label;
        best_text += ',';
        best_text += scheme_name(best);
        best_text += ',';
        best_text += format_double(best_utility);
        best_text += '\n';
    }
    write_file(dir / "best_scheme.csv", best_text);

    // Pooled over every sweep point, per scheme.
    const ExperimentSummary pooled = summarize(results);
    for (const auto& [scheme, s] : pooled.schemes) {
        if (!s.rate_samples.empty())
            write_file(dir / (std::string("cdf_pooled_") + scheme_name(scheme) + "_rate.csv"),
                       cdf_csv_text(s.rate_samples));
        if (!s.delay_samples.empty())
            write_file(dir / (std::string("cdf_pooled_") + scheme_name(scheme) + "_delay.csv"),
                       cdf_csv_text(s.delay_samples));
    }
}

}  // namespace

std::vector<DropResult> run_plan(const ExperimentPlan& plan) {
    plan.validate();
    const auto pts = plan.points();

    struct Task {
        std::size_t point;
        Scheme scheme;
        int drop;
    };
    std::vector<Task> tasks;
    for (std::size_t p = 0; p < pts.size(); ++p)
        for (Scheme s : plan.schemes)
            for (int d = 0; d < plan.drops; ++d) tasks.push_back({p, s, d});

    std::vector<DropResult> results(tasks.size());
    int workers = plan.workers == 0 ? static_cast<int>(std::thread::hardware_concurrency()) : plan.workers;
    workers = std::max(1, std::min<int>(workers, static_cast<int>(tasks.size())));

    if (workers == 1) {
        for (std::size_t i = 0; i < tasks.size(); ++i) {
            const Task& t = tasks[i];
            results[i] = run_drop(pts[t.point], t.scheme, t.drop, plan.seed);
        }
        return results;
    }

    std::atomic<std::size_t> cursor{0};
    std::mutex error_mutex;
    std::exception_ptr first_error;
    auto worker = [&]() {
        for (;;) {
            const std::size_t i = cursor.fetch_add(1);
            if (i >= tasks.size()) return;
            try {
                const Task& t = tasks[i];
                results[i] = run_drop(pts[t.point], t.scheme, t.drop, plan.seed);
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!first_error) first_error = std::current_exception();
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);
    return results;
}

void run_experiment(const ExperimentPlan& plan) {
    const auto results = run_plan(plan);
    const fs::path dir(plan.output_dir);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw std::runtime_error("cannot create output directory '" + dir.string() + "'");

    write_file(dir / "raw.csv", raw_csv_text(results));
    write_aggregates(results, dir);
}

// ---------------------------------------------------------------------------
// Raw CSV ingestion

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::size_t start = 0;
    for (;;) {
        const std::size_t comma = line.find(',', start);
        if (comma == std::string::npos) {
            fields.push_back(line.substr(start));
            return fields;
        }
        fields.push_back(line.substr(start, comma - start));
        start = comma + 1;
    }
}

double parse_double(const std::string& s, const char* what) {
    double v = 0.0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc{} || res.ptr != s.data() + s.size())
        throw std::runtime_error(std::string("raw.csv: bad ") + what + " value '" + s + "'");
    return v;
}

int parse_int(const std::string& s, const char* what) {
    int v = 0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc{} || res.ptr != s.data() + s.size())
        throw std::runtime_error(std::string("raw.csv: bad ") + what + " value '" + s + "'");
    return v;
}

}  // namespace

std::vector<DropResult> read_raw_csv(const std::string& raw_csv_path) {
    std::ifstream in(raw_csv_path);
    if (!in) throw std::runtime_error("cannot open raw CSV '" + raw_csv_path + "'");

    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("raw CSV is empty");
    if (line != raw_csv_header()) throw std::runtime_error("raw CSV header does not match the expected schema");

    std::vector<DropResult> results;
    auto key_of = [](const DropResult& d) {
        return d.sweep_label + '|' + scheme_name(d.scheme) + '|' + std::to_string(d.drop_index);
    };
    std::map<std::string, std::size_t> index;

    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto f = split_csv_line(line);
        if (f.size() != 16) throw std::runtime_error("raw.csv: expected 16 fields, got " + std::to_string(f.size()));

        DropResult probe;
        probe.sweep_label = f[0];
        probe.scheme = scheme_from_name(f[1]);
        probe.drop_index = parse_int(f[2], "drop");
        probe.converged = parse_int(f[14], "converged") != 0;
        probe.iterations = parse_int(f[15], "iterations");

        const std::string key = key_of(probe);
        auto it = index.find(key);
        if (it == index.end()) {
            it = index.emplace(key, results.size()).first;
            results.push_back(std::move(probe));
        }
        DropResult& drop = results[it->second];

        MueRecord rec;
        rec.mue_id = parse_int(f[3], "mue_id");
        rec.relay_fbs = parse_int(f[4], "relay_fbs");
        rec.theta = parse_double(f[5], "theta");
        rec.power_dbm = parse_double(f[6], "power_dbm");
        rec.rate_coarse = parse_double(f[7], "rate_coarse");
        rec.rate_fine = parse_double(f[8], "rate_fine");
        rec.rate_total = parse_double(f[9], "rate_total");
        rec.delay_coarse = parse_double(f[10], "delay_coarse");
        rec.delay_fine = parse_double(f[11], "delay_fine");
        rec.delay_total = parse_double(f[12], "delay_total");
        rec.utility = parse_double(f[13], "utility");
        drop.mues.push_back(rec);
    }
    if (results.empty()) throw std::runtime_error("raw CSV holds no data rows");
    return results;
}

void summarize_raw_csv(const std::string& raw_csv_path, const std::string& out_dir) {
    const auto results = read_raw_csv(raw_csv_path);
    const fs::path dir(out_dir);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw std::runtime_error("cannot create output directory '" + dir.string() + "'");
    write_aggregates(results, dir);
}

}  // namespace frsim
