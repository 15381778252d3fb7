#include "frsim/topology.hpp"

#include <cmath>
#include <stdexcept>

#include "frsim/rng.hpp"
#include "frsim/units.hpp"

namespace frsim {

double distance_m(const Point& a, const Point& b) {
    return std::hypot(a.x - b.x, a.y - b.y);
}

double path_loss_db(const ScenarioConfig& cfg, LinkClass link, double distance) {
    const double d_m = std::max(distance, 1.0);
    const double indoor = cfg.pl_indoor_ref_db + cfg.pl_indoor_slope_db * std::log10(d_m);
    switch (link) {
        case LinkClass::Outdoor:
            // Dual slope: the macro model is floored by the short-range model
            // below their ~21 m crossover, where it would understate the loss.
            return std::max(cfg.pl_outdoor_ref_db + cfg.pl_outdoor_slope_db * std::log10(d_m / 1000.0),
                            indoor);
        case LinkClass::OutdoorToIndoor:
            return path_loss_db(cfg, LinkClass::Outdoor, d_m) + cfg.wall_loss_db;
        case LinkClass::Indoor:
            return indoor;
    }
    throw std::logic_error("unreachable link class");
}

double channel_gain(double pl_db, double shadow_db) {
    return std::pow(10.0, -(pl_db + shadow_db) / 10.0);
}

namespace {

Point uniform_in_disk(Rng& rng, const Point& center, double radius) {
    // r = R*sqrt(u) gives a uniform density over the disk
    const double r = radius * std::sqrt(rng.uniform01());
    const double phi = 2.0 * 3.14159265358979323846 * rng.uniform01();
    return {center.x + r * std::cos(phi), center.y + r * std::sin(phi)};
}

bool inside_any_femto(const Point& p, const std::vector<Point>& fbs, double femto_radius) {
    for (const auto& f : fbs) {
        if (distance_m(p, f) < femto_radius) return true;
    }
    return false;
}

}  // namespace

Topology generate_topology(const ScenarioConfig& cfg, std::uint64_t seed) {
    cfg.validate();

    Topology topo;
    const int m_count = cfg.num_mues;
    const int f_count = cfg.num_fbs;
    const int n_count = cfg.num_subchannels;

    // Femtocells first, then their FUEs, from one placement stream.
    Rng fbs_rng(mix_seed(seed, kStreamFbsPlacement));
    topo.fbs_pos.reserve(f_count);
    for (int f = 0; f < f_count; ++f) topo.fbs_pos.push_back(uniform_in_disk(fbs_rng, topo.mbs, cfg.macro_radius_m));
    topo.fue_pos.reserve(f_count);
    for (int f = 0; f < f_count; ++f) topo.fue_pos.push_back(uniform_in_disk(fbs_rng, topo.fbs_pos[f], cfg.femto_radius_m));

    // MUEs are outdoor: rejected from femto disks unless configured otherwise.
    Rng mue_rng(mix_seed(seed, kStreamMuePlacement));
    topo.mue_pos.reserve(m_count);
    for (int m = 0; m < m_count; ++m) {
        Point p{};
        int attempts = 0;
        do {
            p = uniform_in_disk(mue_rng, topo.mbs, cfg.macro_radius_m);
            if (++attempts > 100000) throw std::runtime_error("MUE placement failed: femtocells cover the macro disk");
        } while (cfg.exclude_mues_from_femto_disks && inside_any_femto(p, topo.fbs_pos, cfg.femto_radius_m));
        topo.mue_pos.push_back(p);
    }

    // Static round-robin sub-channel assignment.
    topo.mue_subchannel.resize(m_count);
    for (int m = 0; m < m_count; ++m) topo.mue_subchannel[m] = m % n_count;
    topo.fue_subchannel.resize(f_count);
    topo.fues_on_subchannel.assign(n_count, {});
    for (int f = 0; f < f_count; ++f) {
        topo.fue_subchannel[f] = f % n_count;
        topo.fues_on_subchannel[f % n_count].push_back(f);
    }

    // Gains: one shadowing draw per link per drop, in a fixed link order.
    Rng shadow_rng(mix_seed(seed, kStreamShadowing));
    auto draw_shadow = [&]() { return shadow_rng.normal(0.0, cfg.shadow_std_db); };
    auto gain = [&](LinkClass link, double d, double extra_wall_db) {
        return channel_gain(path_loss_db(cfg, link, d) + extra_wall_db, draw_shadow());
    };

    topo.gain_mue_mbs.resize(m_count);
    for (int m = 0; m < m_count; ++m)
        topo.gain_mue_mbs[m] = gain(LinkClass::Outdoor, distance_m(topo.mue_pos[m], topo.mbs), 0.0);

    topo.gain_fbs_mbs.resize(f_count);
    for (int f = 0; f < f_count; ++f)
        topo.gain_fbs_mbs[f] = gain(LinkClass::OutdoorToIndoor, distance_m(topo.fbs_pos[f], topo.mbs), 0.0);

    topo.gain_fue_mbs.resize(f_count);
    for (int f = 0; f < f_count; ++f)
        topo.gain_fue_mbs[f] = gain(LinkClass::OutdoorToIndoor, distance_m(topo.fue_pos[f], topo.mbs), 0.0);

    topo.gain_mue_fbs.assign(m_count, std::vector<double>(f_count));
    for (int m = 0; m < m_count; ++m)
        for (int f = 0; f < f_count; ++f)
            topo.gain_mue_fbs[m][f] =
                gain(LinkClass::OutdoorToIndoor, distance_m(topo.mue_pos[m], topo.fbs_pos[f]), 0.0);

    // FUE to its serving FBS is an indoor link; FUE into a different
    // femtocell crosses two walls.
    topo.gain_fue_fbs.assign(f_count, std::vector<double>(f_count));
    for (int j = 0; j < f_count; ++j) {
        for (int f = 0; f < f_count; ++f) {
            const double d = distance_m(topo.fue_pos[j], topo.fbs_pos[f]);
            topo.gain_fue_fbs[j][f] = (j == f) ? gain(LinkClass::Indoor, d, 0.0)
                                               : gain(LinkClass::OutdoorToIndoor, d, cfg.wall_loss_db);
        }
    }

    return topo;
}

double rssi_dbm(const Topology& topo, const ScenarioConfig& cfg, int mue, int fbs) {
    return cfg.max_tx_power_dbm + linear_to_db(topo.gain_mue_fbs[mue][fbs]);
}

}  // namespace frsim
