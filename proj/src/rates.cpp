#include "frsim/rates.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

namespace frsim {

const char* scheme_name(Scheme s) {
    switch (s) {
        case Scheme::CLA: return "CLA";
        case Scheme::WRD: return "WRD";
        case Scheme::OTA: return "OTA";
    }
    throw std::logic_error("unreachable scheme");
}

Scheme scheme_from_name(const std::string& name) {
    if (name == "CLA") return Scheme::CLA;
    if (name == "WRD") return Scheme::WRD;
    if (name == "OTA") return Scheme::OTA;
    throw ConfigError("unknown scheme '" + name + "' (expected CLA, WRD, or OTA)");
}

PowerProfile uniform_profile(const ScenarioConfig& cfg, int num_mues, double mue_power_w,
                             double theta) {
    PowerProfile p;
    p.mue_power_w.assign(num_mues, mue_power_w);
    p.mue_theta.assign(num_mues, theta);
    p.relay_fbs.assign(num_mues, -1);
    p.fue_power_w.assign(cfg.num_fbs, cfg.fue_power_w());
    p.fbs_backhaul_power_w.assign(cfg.num_fbs, cfg.fbs_backhaul_power_w());
    return p;
}

double aggregate_fue_interference_w(const Topology& topo, int subchannel, int at_fbs,
                                    std::span<const int> excluded,
                                    std::span<const double> fue_power_w) {
    double sum = 0.0;
    for (int j : topo.fues_on_subchannel[subchannel]) {
        if (std::find(excluded.begin(), excluded.end(), j) != excluded.end()) continue;
        const double g = (at_fbs < 0) ? topo.gain_fue_mbs[j] : topo.gain_fue_fbs[j][at_fbs];
        sum += g * fue_power_w[j];
    }
    return sum;
}

namespace {

double shannon_se(double signal_w, double noise_plus_interference_w) {
    return std::log2(1.0 + signal_w / noise_plus_interference_w);
}

// Shared direct-link evaluation so the classical rate and the theta=0 coarse
// rate follow the same floating-point path.
double mue_direct_rate_se(const Topology& topo, const ScenarioConfig& cfg, int m,
                          double tx_power_w, const PowerProfile& powers) {
    const int n = topo.mue_subchannel[m];
    const double interference =
        aggregate_fue_interference_w(topo, n, -1, {}, powers.fue_power_w);
    return shannon_se(topo.gain_mue_mbs[m] * tx_power_w, cfg.noise_w() + interference);
}

int ota_channel(const ScenarioConfig& cfg, int f) { return f % cfg.num_ota_channels; }

}  // namespace

double classical_mue_rate_se(const Topology& topo, const ScenarioConfig& cfg, int m,
                             const PowerProfile& powers) {
    return mue_direct_rate_se(topo, cfg, m, powers.mue_power_w[m], powers);
}

double classical_fue_rate_bps(const Topology& topo, const ScenarioConfig& cfg, int f,
                              const PowerProfile& powers, double c_f_bps) {
    const int n = topo.fue_subchannel[f];
    const int m = powers.active_mue;
    double interference = aggregate_fue_interference_w(topo, n, f, std::array{f}, powers.fue_power_w);
    if (topo.mue_subchannel[m] == n)
        interference += topo.gain_mue_fbs[m][f] * powers.mue_power_w[m];
    const double access_se =
        shannon_se(topo.gain_fue_fbs[f][f] * powers.fue_power_w[f], cfg.noise_w() + interference);
    return std::min(access_se * cfg.subchannel_bandwidth_hz, c_f_bps);
}

double ota_backhaul_rate_se(const Topology& topo, const ScenarioConfig& cfg, int f,
                            const PowerProfile& powers) {
    const int channel = ota_channel(cfg, f);
    double interference = 0.0;
    if (cfg.ota_all_fbs_transmit) {
        for (int l = 0; l < topo.num_fbs(); ++l) {
            if (l == f || ota_channel(cfg, l) != channel) continue;
            interference += topo.gain_fbs_mbs[l] * powers.fbs_backhaul_power_w[l];
        }
    } else {
        // Only FBSs actively relaying MUE traffic load the backhaul channels.
        for (int l : powers.relay_fbs) {
            if (l < 0 || l == f || ota_channel(cfg, l) != channel) continue;
            interference += topo.gain_fbs_mbs[l] * powers.fbs_backhaul_power_w[l];
        }
    }
    return shannon_se(topo.gain_fbs_mbs[f] * powers.fbs_backhaul_power_w[f],
                      cfg.noise_w() + interference);
}

double coarse_rate_se(const Topology& topo, const ScenarioConfig& cfg, int m,
                      const PowerProfile& powers) {
    return mue_direct_rate_se(topo, cfg, m, powers.coarse_power_w(m), powers);
}

double fine_access_rate_se(const Topology& topo, const ScenarioConfig& cfg, int m, int f,
                           const PowerProfile& powers) {
    const int n = topo.mue_subchannel[m];
    const double g = topo.gain_mue_fbs[m][f];
    double interference = g * powers.coarse_power_w(m) +
                          aggregate_fue_interference_w(topo, n, f, std::array{f}, powers.fue_power_w);
    if (cfg.cross_mue_fine_interference) {
        for (int other = 0; other < static_cast<int>(powers.mue_power_w.size()); ++other) {
            if (other == m) continue;
            interference += topo.gain_mue_fbs[other][f] * powers.coarse_power_w(other);
        }
    }
    return shannon_se(g * powers.fine_power_w(m), cfg.noise_w() + interference);
}

double relayed_fine_rate_se(const Topology& topo, const ScenarioConfig& cfg, int m, int f,
                            const PowerProfile& powers, Scheme scheme) {
    const double r1 = fine_access_rate_se(topo, cfg, m, f, powers);
    const double r2_se = (scheme == Scheme::OTA)
                             ? cfg.nu * ota_backhaul_rate_se(topo, cfg, f, powers)
                             : cfg.nu * cfg.wired_share_bps() / cfg.subchannel_bandwidth_hz;
    return 0.5 * std::min(r1, r2_se);
}

RateBreakdown scheme_rates(const Topology& topo, const ScenarioConfig& cfg,
                           const PowerProfile& powers, Scheme scheme) {
    const int m = powers.active_mue;
    RateBreakdown rb;
    rb.scheme = scheme;

    if (scheme == Scheme::CLA) {
        rb.coarse_se = classical_mue_rate_se(topo, cfg, m, powers);
        rb.total_se = rb.coarse_se;
        return rb;
    }

    const int f = powers.relay_fbs[m];
    if (f < 0) throw std::invalid_argument("scheme_rates: relaying scheme without a relay FBS");

    rb.relay_fbs = f;
    rb.coarse_se = coarse_rate_se(topo, cfg, m, powers);
    rb.fine_access_se = fine_access_rate_se(topo, cfg, m, f, powers);
    if (scheme == Scheme::OTA) {
        rb.backhaul_se = cfg.nu * ota_backhaul_rate_se(topo, cfg, f, powers);
        rb.backhaul_bps = rb.backhaul_se * cfg.subchannel_bandwidth_hz;
    } else {
        rb.backhaul_bps = cfg.nu * cfg.wired_share_bps();
        rb.backhaul_se = rb.backhaul_bps / cfg.subchannel_bandwidth_hz;
    }
    rb.fine_se = 0.5 * std::min(rb.fine_access_se, rb.backhaul_se);
    rb.total_se = rb.coarse_se + rb.fine_se;
    rb.fine_leg_degenerate = powers.mue_theta[m] > 0.0 && rb.fine_access_se == 0.0;
    return rb;
}

}  // namespace frsim
