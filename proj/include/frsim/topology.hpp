#pragma once

#include <cstdint>
#include <vector>

#include "frsim/config.hpp"

namespace frsim {

struct Point {
    double x = 0.0;
    double y = 0.0;
};

double distance_m(const Point& a, const Point& b);

/// Propagation classes for path_loss_db. Link mapping used by the topology
/// builder:
///   MUE->MBS                 Outdoor
///   MUE->FBS, FUE->MBS,
///   FBS->MBS, FUE->other FBS OutdoorToIndoor (one wall; cross-femtocell
///                            links get a second wall added by the builder)
///   FUE->serving FBS         Indoor
enum class LinkClass { Outdoor, OutdoorToIndoor, Indoor };

/// Path loss in dB. Outdoor: 128.1 + 37.6 log10(d_km). Indoor:
/// 38.46 + 20 log10(d_m). OutdoorToIndoor adds wall_loss_db to the outdoor
/// value exactly once. Distance is clamped below at 1 m.
double path_loss_db(const ScenarioConfig& cfg, LinkClass link, double distance_m);

/// Linear power gain |h|^2 = 10^(-(pl_db + shadow_db)/10).
double channel_gain(double pl_db, double shadow_db);

/// One network drop: fixed node placements, static sub-channel assignments,
/// and the linear power gain of every link the rate model needs. Immutable
/// after generation and safe to share across threads.
struct Topology {
    Point mbs;  // origin
    std::vector<Point> mue_pos;
    std::vector<Point> fbs_pos;
    std::vector<Point> fue_pos;  // fue_pos[f] served by fbs f

    std::vector<int> mue_subchannel;            // m % N
    std::vector<int> fue_subchannel;            // f % N
    std::vector<std::vector<int>> fues_on_subchannel;  // active FUE set per sub-channel (femtocell ids)

    std::vector<double> gain_mue_mbs;               // [m]
    std::vector<double> gain_fbs_mbs;               // [f]
    std::vector<double> gain_fue_mbs;               // [f]
    std::vector<std::vector<double>> gain_mue_fbs;  // [m][f]
    std::vector<std::vector<double>> gain_fue_fbs;  // [j][f], FUE of femtocell j received at FBS f

    int num_mues() const { return static_cast<int>(mue_pos.size()); }
    int num_fbs() const { return static_cast<int>(fbs_pos.size()); }
    int num_subchannels() const { return static_cast<int>(fues_on_subchannel.size()); }
};

/// Places nodes uniformly at random (MUEs and FBSs in the macro disk, one FUE
/// per FBS in its femto disk), assigns sub-channels round-robin, and builds
/// the gain matrices with fresh block shadowing. Deterministic in (cfg, seed).
Topology generate_topology(const ScenarioConfig& cfg, std::uint64_t seed);

/// Pilot RSSI of FBS f as measured by MUE m, in dBm. The pilot is sent at
/// max_tx_power_dbm, so RSSI ordering equals gain ordering.
double rssi_dbm(const Topology& topo, const ScenarioConfig& cfg, int mue, int fbs);

}  // namespace frsim
