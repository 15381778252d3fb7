#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <set>

#include "frsim/rng.hpp"
#include "frsim/topology.hpp"
#include "frsim/units.hpp"

using namespace frsim;

namespace {

ScenarioConfig small_cfg(int mues, int fbs, int subchannels) {
    ScenarioConfig cfg;
    cfg.num_mues = mues;
    cfg.num_fbs = fbs;
    cfg.num_subchannels = subchannels;
    return cfg;
}

}  // namespace

TEST_CASE("outdoor path loss hits the reference point at 1 km") {
    const ScenarioConfig cfg;
    CHECK(path_loss_db(cfg, LinkClass::Outdoor, 1000.0) == doctest::Approx(128.1).epsilon(1e-12));
}

TEST_CASE("outdoor-to-indoor adds the wall penetration loss exactly once") {
    const ScenarioConfig cfg;
    for (double d : {5.0, 120.0, 1000.0}) {
        CHECK(path_loss_db(cfg, LinkClass::OutdoorToIndoor, d) ==
              doctest::Approx(path_loss_db(cfg, LinkClass::Outdoor, d) + 12.0).epsilon(1e-12));
    }
}

TEST_CASE("path loss is monotone in distance and clamped below 1 m") {
    const ScenarioConfig cfg;
    for (LinkClass link : {LinkClass::Outdoor, LinkClass::OutdoorToIndoor, LinkClass::Indoor}) {
        double prev = path_loss_db(cfg, link, 0.001);  // clamps to 1 m
        CHECK(prev == path_loss_db(cfg, link, 1.0));
        for (double d = 1.0; d < 2000.0; d *= 1.7) {
            const double pl = path_loss_db(cfg, link, d);
            CHECK(pl >= prev);
            prev = pl;
        }
    }
}

TEST_CASE("channel gain inverts the loss in dB") {
    CHECK(channel_gain(0.0, 0.0) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(channel_gain(30.0, 0.0) == doctest::Approx(1e-3).epsilon(1e-12));
    CHECK(channel_gain(20.0, 10.0) == doctest::Approx(1e-3).epsilon(1e-12));
    CHECK(channel_gain(300.0, 50.0) > 0.0);
}

TEST_CASE("mean log-gain over many shadowing draws recovers the path loss") {
    Rng rng(123);
    const double pl_db = 95.0;
    double sum_db = 0.0;
    const int draws = 10000;
    for (int i = 0; i < draws; ++i)
        sum_db += linear_to_db(channel_gain(pl_db, rng.normal(0.0, 10.0)));
    CHECK(sum_db / draws == doctest::Approx(-pl_db).epsilon(0.005));
}

TEST_CASE("minimal instance has four nodes and all five link classes populated") {
    const Topology topo = generate_topology(small_cfg(1, 1, 1), 9);
    CHECK(topo.num_mues() == 1);
    CHECK(topo.num_fbs() == 1);
    CHECK(topo.fue_pos.size() == 1);  // MBS + MUE + FBS + FUE
    CHECK(topo.gain_mue_mbs.size() == 1);
    CHECK(topo.gain_fbs_mbs.size() == 1);
    CHECK(topo.gain_fue_mbs.size() == 1);
    CHECK(topo.gain_mue_fbs[0].size() == 1);
    CHECK(topo.gain_fue_fbs[0].size() == 1);
}

TEST_CASE("identical seed reproduces the topology bit for bit") {
    const ScenarioConfig cfg = small_cfg(3, 10, 4);
    const Topology a = generate_topology(cfg, 77);
    const Topology b = generate_topology(cfg, 77);
    REQUIRE(a.num_mues() == b.num_mues());
    for (int m = 0; m < a.num_mues(); ++m) {
        CHECK(a.mue_pos[m].x == b.mue_pos[m].x);
        CHECK(a.gain_mue_mbs[m] == b.gain_mue_mbs[m]);
        for (int f = 0; f < a.num_fbs(); ++f) CHECK(a.gain_mue_fbs[m][f] == b.gain_mue_fbs[m][f]);
    }
    for (int f = 0; f < a.num_fbs(); ++f) {
        CHECK(a.fbs_pos[f].x == b.fbs_pos[f].x);
        CHECK(a.gain_fbs_mbs[f] == b.gain_fbs_mbs[f]);
        CHECK(a.gain_fue_mbs[f] == b.gain_fue_mbs[f]);
    }
    const Topology c = generate_topology(cfg, 78);
    CHECK(a.mue_pos[0].x != c.mue_pos[0].x);
}

TEST_CASE("placement and gain invariants hold over a seed sweep") {
    const ScenarioConfig cfg = small_cfg(5, 80, 6);
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const Topology topo = generate_topology(cfg, seed);
        for (const auto& p : topo.mue_pos) {
            CHECK(distance_m(p, topo.mbs) <= cfg.macro_radius_m);
            // MUEs stay outdoors
            for (const auto& f : topo.fbs_pos) CHECK(distance_m(p, f) >= cfg.femto_radius_m);
        }
        for (const auto& p : topo.fbs_pos) CHECK(distance_m(p, topo.mbs) <= cfg.macro_radius_m);
        for (int f = 0; f < cfg.num_fbs; ++f)
            CHECK(distance_m(topo.fue_pos[f], topo.fbs_pos[f]) <= cfg.femto_radius_m);

        for (double g : topo.gain_mue_mbs) CHECK((g > 0.0 && std::isfinite(g)));
        for (double g : topo.gain_fbs_mbs) CHECK((g > 0.0 && std::isfinite(g)));
        for (double g : topo.gain_fue_mbs) CHECK((g > 0.0 && std::isfinite(g)));
        for (const auto& row : topo.gain_mue_fbs)
            for (double g : row) CHECK((g > 0.0 && std::isfinite(g)));
        for (const auto& row : topo.gain_fue_fbs)
            for (double g : row) CHECK((g > 0.0 && std::isfinite(g)));
    }
}

TEST_CASE("each femtocell contributes exactly one FUE to one sub-channel set") {
    const Topology topo = generate_topology(small_cfg(2, 17, 5), 5);
    std::set<int> seen;
    for (const auto& fues : topo.fues_on_subchannel) {
        std::set<int> per_channel(fues.begin(), fues.end());
        CHECK(per_channel.size() == fues.size());
        seen.insert(fues.begin(), fues.end());
    }
    CHECK(static_cast<int>(seen.size()) == 17);
}

TEST_CASE("RSSI returns the pilot power scaled by the gain") {
    ScenarioConfig cfg = small_cfg(1, 2, 1);
    Topology topo;
    topo.mue_pos.resize(1);
    topo.fbs_pos.resize(2);
    topo.gain_mue_fbs = {{1.0, 1e-9}};
    CHECK(rssi_dbm(topo, cfg, 0, 0) == doctest::Approx(20.0).epsilon(1e-12));
    CHECK(rssi_dbm(topo, cfg, 0, 1) == doctest::Approx(-70.0).epsilon(1e-12));
    CHECK(rssi_dbm(topo, cfg, 0, 0) > rssi_dbm(topo, cfg, 0, 1));
}

TEST_CASE("invalid scenario parameters are rejected with the field name") {
    ScenarioConfig cfg;
    cfg.num_subchannels = 0;
    CHECK_THROWS_WITH_AS(generate_topology(cfg, 1), "num_subchannels must be >= 1", ConfigError);

    ScenarioConfig bad_delta;
    bad_delta.delta = 1.5;
    CHECK_THROWS_WITH_AS(bad_delta.validate(), "delta must lie in (0,1)", ConfigError);

    ScenarioConfig bad_theta;
    bad_theta.theta_grid = {0.1, 0.2};
    CHECK_THROWS_AS(bad_theta.validate(), ConfigError);
}
