#include "frsim/config.hpp"

#include <cmath>

#include "frsim/units.hpp"

namespace frsim {

double ScenarioConfig::max_tx_power_w() const { return dbm_to_watts(max_tx_power_dbm); }
double ScenarioConfig::noise_w() const { return dbm_to_watts(noise_dbm); }
double ScenarioConfig::fue_power_w() const { return dbm_to_watts(fue_power_dbm); }
double ScenarioConfig::fbs_backhaul_power_w() const { return dbm_to_watts(fbs_backhaul_power_dbm); }

double ScenarioConfig::wired_share_bps() const {
    return wired_total_capacity_bps / static_cast<double>(num_fbs);
}

std::vector<double> ScenarioConfig::power_grid() const {
    if (!power_grid_w.empty()) return power_grid_w;
    const double pmax = max_tx_power_w();
    return {pmax * 0.25, pmax * 0.5, pmax * 0.75, pmax};
}

namespace {

void require(bool ok, const std::string& what) {
    if (!ok) throw ConfigError(what);
}

}  // namespace

void ScenarioConfig::validate() const {
    require(macro_radius_m > 0.0, "macro_radius_m must be > 0");
    require(femto_radius_m > 0.0, "femto_radius_m must be > 0");
    require(femto_radius_m < macro_radius_m, "femto_radius_m must be smaller than macro_radius_m");
    require(num_mues >= 1, "num_mues must be >= 1");
    require(num_fbs >= 1, "num_fbs must be >= 1");
    require(num_subchannels >= 1, "num_subchannels must be >= 1");
    require(std::isfinite(max_tx_power_dbm), "max_tx_power_dbm must be finite");
    require(std::isfinite(noise_dbm), "noise_dbm must be finite");
    require(shadow_std_db >= 0.0, "shadow_std_db must be >= 0");
    require(wall_loss_db >= 0.0, "wall_loss_db must be >= 0");
    require(std::isfinite(fue_power_dbm) && fue_power_dbm <= max_tx_power_dbm,
            "fue_power_dbm must be finite and <= max_tx_power_dbm");
    require(std::isfinite(fbs_backhaul_power_dbm) && fbs_backhaul_power_dbm <= max_tx_power_dbm,
            "fbs_backhaul_power_dbm must be finite and <= max_tx_power_dbm");
    require(lambda_mue_bps > 0.0, "lambda_mue_bps must be > 0");
    require(lambda_fue_bps > 0.0, "lambda_fue_bps must be > 0");
    require(superframe_frames >= 1, "superframe_frames must be >= 1");
    require(delta > 0.0 && delta < 1.0, "delta must lie in (0,1)");
    require(nu > 0.0 && nu <= 1.0, "nu must lie in (0,1]");
    require(min_rate_headroom >= 0.0 && min_rate_headroom < 1.0,
            "min_rate_headroom must lie in [0,1)");
    require(wired_total_capacity_bps > 0.0, "wired_total_capacity_bps must be > 0");
    require(num_ota_channels >= 1, "num_ota_channels must be >= 1");
    require(subchannel_bandwidth_hz > 0.0, "subchannel_bandwidth_hz must be > 0");
    require(max_game_rounds >= 1, "max_game_rounds must be >= 1");
    require(pl_outdoor_slope_db > 0.0, "pl_outdoor_slope_db must be > 0");
    require(pl_indoor_slope_db > 0.0, "pl_indoor_slope_db must be > 0");

    require(!theta_grid.empty(), "theta_grid must not be empty");
    require(theta_grid.front() == 0.0, "theta_grid must start at 0");
    for (std::size_t i = 0; i < theta_grid.size(); ++i) {
        require(theta_grid[i] >= 0.0 && theta_grid[i] < 1.0, "theta_grid values must lie in [0,1)");
        if (i > 0) require(theta_grid[i] > theta_grid[i - 1], "theta_grid must be strictly increasing");
    }

    const auto grid = power_grid();
    require(!grid.empty(), "power_grid must not be empty");
    const double pmax = max_tx_power_w();
    for (std::size_t i = 0; i < grid.size(); ++i) {
        require(grid[i] > 0.0, "power_grid values must be > 0");
        require(grid[i] <= pmax * (1.0 + 1e-12), "power_grid values must not exceed max_tx_power");
        if (i > 0) require(grid[i] > grid[i - 1], "power_grid must be strictly increasing");
    }
}

}  // namespace frsim
