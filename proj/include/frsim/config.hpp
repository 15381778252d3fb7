#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace frsim {

// Raised for any invalid user-supplied parameter; the message names the
// offending key so the CLI can surface it directly.
class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// How the packet stream divides between the coarse and fine messages once
/// theta > 0.
///   DelayOptimal: the source routes traffic across the two legs to minimize
///                 its total delay, leaving a leg idle when that is best; the
///                 flow is stable exactly when the combined queue capacity
///                 exceeds lambda (default).
///   Power:        lambda_C = (1-theta) lambda, lambda_F = theta lambda,
///                 mirroring the power split.
///   Duplicate:    both streams carry the full lambda.
enum class TrafficSplit { DelayOptimal, Power, Duplicate };

/// Every physical, traffic, and game parameter for one scenario.
/// Defaults reproduce the reference setup: 400 m macrocell, 20 m femtocells,
/// 20 dBm maximum transmit power, -130 dBm noise, 10 dB shadowing, 12 dB wall
/// loss, 150 kbps packet generation per user.
struct ScenarioConfig {
    double macro_radius_m = 400.0;
    double femto_radius_m = 20.0;
    int num_mues = 5;
    int num_fbs = 80;
    int num_subchannels = 10;

    double max_tx_power_dbm = 20.0;
    double noise_dbm = -130.0;
    double shadow_std_db = 10.0;
    double wall_loss_db = 12.0;
    // Non-strategic uplink powers: femtocell users and the FBS wireless
    // backhaul both transmit at a fixed level.
    double fue_power_dbm = 20.0;
    double fbs_backhaul_power_dbm = 10.0;

    double lambda_mue_bps = 150e3;
    double lambda_fue_bps = 150e3;
    int superframe_frames = 10;  // carried through reports; no effect on the delay model

    double delta = 0.5;  // throughput/delay tradeoff exponent, in (0,1)
    double nu = 0.9;     // backhaul fraction reserved for relayed fine traffic, in (0,1]

    // Admission headroom: a queue is usable only when its service rate
    // exceeds (1 + headroom) times its arrival rate. Actions violating it on
    // any loaded leg are worth nothing, so equilibria never sit within a
    // hair of instability (whose delays would be arbitrarily large).
    double min_rate_headroom = 0.02;

    double wired_total_capacity_bps = 37.5e6;
    int num_ota_channels = 32;

    // Bandwidth of one sub-channel; converts spectral efficiencies to bit
    // rates so rates and capacities compare in the same units everywhere.
    double subchannel_bandwidth_hz = 180e3;

    // Strategy grids. theta_grid must start at 0 so the pure-direct action is
    // always available; an empty power grid means "max_tx_power * k/4".
    std::vector<double> theta_grid = {0.0, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};
    std::vector<double> power_grid_w;

    std::uint64_t rng_seed = 1;

    // Model switches
    bool exclude_mues_from_femto_disks = true;
    bool cross_mue_fine_interference = false;  // other MUEs' coarse power at the relay
    TrafficSplit traffic_split = TrafficSplit::DelayOptimal;
    bool ota_all_fbs_transmit = false;  // every FBS (not just active relays) loads the OTA backhaul
    int max_game_rounds = 100;

    // Path-loss constants (overridable; see topology.hpp for the link map)
    double pl_outdoor_ref_db = 128.1;  // at 1 km
    double pl_outdoor_slope_db = 37.6; // per decade of km
    double pl_indoor_ref_db = 38.46;   // at 1 m
    double pl_indoor_slope_db = 20.0;  // per decade of m

    double max_tx_power_w() const;
    double noise_w() const;
    double fue_power_w() const;
    double fbs_backhaul_power_w() const;
    double wired_share_bps() const;  // equal split of the wired budget across FBSs

    /// Power grid in watts, substituting the default when none was given.
    std::vector<double> power_grid() const;

    /// Throws ConfigError naming the first violated field.
    void validate() const;
};

}  // namespace frsim
