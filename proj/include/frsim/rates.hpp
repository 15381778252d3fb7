#pragma once

#include <span>
#include <string>
#include <vector>

#include "frsim/config.hpp"
#include "frsim/topology.hpp"

namespace frsim {

/// CLA: direct uplink with no cross-tier coordination.
/// WRD: rate splitting with the fine message relayed over the wired backhaul.
/// OTA: rate splitting with the fine message relayed over the wireless backhaul.
enum class Scheme { CLA, WRD, OTA };

const char* scheme_name(Scheme s);
Scheme scheme_from_name(const std::string& name);

/// All transmit quantities for one TDMA slot. `active_mue` owns the slot;
/// the other MUEs' entries only matter when cross-MUE fine interference is
/// enabled, and relay entries identify which FBSs load the OTA backhaul.
struct PowerProfile {
    int active_mue = 0;
    std::vector<double> mue_power_w;  // per MUE
    std::vector<double> mue_theta;    // per MUE, fine-message power fraction in [0,1)
    std::vector<int> relay_fbs;       // per MUE, -1 when transmitting direct-only
    std::vector<double> fue_power_w;           // per femtocell
    std::vector<double> fbs_backhaul_power_w;  // per femtocell

    // Split so that fine + coarse reproduces the full power exactly.
    double fine_power_w(int m) const { return mue_theta[m] * mue_power_w[m]; }
    double coarse_power_w(int m) const { return mue_power_w[m] - fine_power_w(m); }
};

/// Uniform profile from the scenario constants: every MUE at `mue_power_w`
/// with the given theta, FUEs and FBS backhauls at their configured powers.
PowerProfile uniform_profile(const ScenarioConfig& cfg, int num_mues, double mue_power_w,
                             double theta);

/// Per-MUE rate decomposition for one scheme, in bits/s/Hz unless noted.
struct RateBreakdown {
    Scheme scheme = Scheme::CLA;
    double coarse_se = 0.0;
    double fine_se = 0.0;
    double total_se = 0.0;
    int relay_fbs = -1;
    double fine_access_se = 0.0;  // R1: MUE->FBS fine-message rate
    double backhaul_se = 0.0;     // R2: nu-scaled backhaul leg
    double backhaul_bps = 0.0;    // R2 in bits/s (native for WRD, scaled for OTA)
    bool fine_leg_degenerate = false;  // theta > 0 but the access leg carries nothing
};

/// Sum over the active FUE set of sub-channel n, received at FBS `at_fbs`
/// (or at the MBS when at_fbs < 0), skipping femtocell ids in `excluded`.
double aggregate_fue_interference_w(const Topology& topo, int subchannel, int at_fbs,
                                    std::span<const int> excluded,
                                    std::span<const double> fue_power_w);

/// Direct-link rate of MUE m at full power, with co-channel FUE interference
/// at the MBS.
double classical_mue_rate_se(const Topology& topo, const ScenarioConfig& cfg, int m,
                             const PowerProfile& powers);

/// Rate of the FUE served by femtocell f: access-link Shannon rate capped by
/// the per-FBS backhaul share c_f_bps. Returns bits/s.
double classical_fue_rate_bps(const Topology& topo, const ScenarioConfig& cfg, int f,
                              const PowerProfile& powers, double c_f_bps);

/// Wireless backhaul rate of FBS f toward the MBS. Interference comes from
/// the other FBSs transmitting on f's backhaul channel: the active relays in
/// `powers.relay_fbs`, or every FBS when cfg.ota_all_fbs_transmit is set.
double ota_backhaul_rate_se(const Topology& topo, const ScenarioConfig& cfg, int f,
                            const PowerProfile& powers);

/// Coarse-message rate of the active MUE at power (1-theta)P; identical to
/// the classical rate when theta = 0, for either proposed scheme.
double coarse_rate_se(const Topology& topo, const ScenarioConfig& cfg, int m,
                      const PowerProfile& powers);

/// Fine-message rate of MUE m at FBS f. The MUE's own coarse message and
/// other femtocells' FUEs are treated as noise; f's own FUE is cancelled
/// (SIC). Zero when theta = 0.
double fine_access_rate_se(const Topology& topo, const ScenarioConfig& cfg, int m, int f,
                           const PowerProfile& powers);

/// Half-duplex decode-and-forward fine rate: 1/2 min(R1, nu*R2) with R2 the
/// wired share (WRD) or the wireless backhaul rate (OTA).
double relayed_fine_rate_se(const Topology& topo, const ScenarioConfig& cfg, int m, int f,
                            const PowerProfile& powers, Scheme scheme);

/// Full decomposition for powers.active_mue under the given scheme.
RateBreakdown scheme_rates(const Topology& topo, const ScenarioConfig& cfg,
                           const PowerProfile& powers, Scheme scheme);

}  // namespace frsim
