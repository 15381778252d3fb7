#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "frsim/game.hpp"
#include "frsim/rng.hpp"

using namespace frsim;

namespace {

ScenarioConfig game_cfg(int mues, int fbs) {
    ScenarioConfig cfg;
    cfg.num_mues = mues;
    cfg.num_fbs = fbs;
    cfg.num_subchannels = 2;
    return cfg;
}

// Joint exhaustive search over (theta, power) grids with relays fixed: the
// independent oracle for run_game's equilibria.
std::vector<std::vector<Action>> enumerate_nash_profiles(const Topology& topo,
                                                         const ScenarioConfig& cfg, Scheme scheme,
                                                         const std::vector<int>& relays) {
    const int m_count = topo.num_mues();
    const int theta_count = static_cast<int>(cfg.theta_grid.size());
    const int power_count = static_cast<int>(cfg.power_grid().size());
    const int per_mue = theta_count * power_count;

    std::vector<std::vector<Action>> nash;
    std::vector<Action> profile(m_count);
    const long long total = static_cast<long long>(std::pow(per_mue, m_count));
    for (long long code = 0; code < total; ++code) {
        long long rest = code;
        for (int m = 0; m < m_count; ++m) {
            const int idx = static_cast<int>(rest % per_mue);
            rest /= per_mue;
            profile[m] = Action{scheme == Scheme::CLA ? -1 : relays[m], idx / power_count,
                                idx % power_count};
        }
        bool is_equilibrium = true;
        for (int m = 0; m < m_count && is_equilibrium; ++m) {
            const double current = utility(topo, cfg, m, profile, scheme);
            std::vector<Action> trial = profile;
            for (int ti = 0; ti < theta_count && is_equilibrium; ++ti) {
                for (int pi = 0; pi < power_count; ++pi) {
                    trial[m] = Action{profile[m].relay_fbs, ti, pi};
                    if (utility(topo, cfg, m, trial, scheme) > current + 1e-9) {
                        is_equilibrium = false;
                        break;
                    }
                }
            }
        }
        if (is_equilibrium) nash.push_back(profile);
    }
    return nash;
}

}  // namespace

TEST_CASE("utility implements the throughput-delay tradeoff") {
    // Rig a classical evaluation to R_total = 4 and D_total = 0.25:
    // |h|^2 P = 15 N0 gives R = 4 b/s/Hz, bandwidth 1 Hz and lambda = 8/3
    // give D = (8/3)/(2*4*(4-8/3)) = 0.25.
    ScenarioConfig cfg = game_cfg(1, 1);
    cfg.num_subchannels = 1;
    cfg.subchannel_bandwidth_hz = 1.0;
    cfg.lambda_mue_bps = 8.0 / 3.0;
    cfg.fue_power_dbm = -300.0;  // effectively silent FUEs
    Topology topo = generate_topology(cfg, 3);
    topo.gain_mue_mbs[0] = 15.0 * cfg.noise_w() / cfg.power_grid().back();

    const std::vector<Action> actions{Action{-1, 0, 3}};
    const MueEvaluation eval = evaluate_mue(topo, cfg, 0, actions, Scheme::CLA);
    CHECK(eval.rates.total_se == doctest::Approx(4.0).epsilon(1e-12));
    CHECK(eval.delays.total_delay == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(eval.utility == doctest::Approx(4.0).epsilon(1e-10));

    // delta -> 1 degenerates to the rate
    cfg.delta = 1.0 - 1e-12;
    CHECK(utility(topo, cfg, 0, actions, Scheme::CLA) == doctest::Approx(4.0).epsilon(1e-9));

    // an unstable queue is worth nothing
    cfg.delta = 0.5;
    cfg.lambda_mue_bps = 10.0;
    CHECK(utility(topo, cfg, 0, actions, Scheme::CLA) == 0.0);
}

TEST_CASE("actions without admission headroom are worth nothing") {
    ScenarioConfig cfg = game_cfg(1, 1);
    cfg.num_subchannels = 1;
    cfg.subchannel_bandwidth_hz = 1.0;
    cfg.lambda_mue_bps = 1.0;
    cfg.min_rate_headroom = 0.1;
    cfg.fue_power_dbm = -300.0;
    Topology topo = generate_topology(cfg, 3);

    const std::vector<Action> actions{Action{-1, 0, 3}};
    // rate 1.05: stable, but below the 1.1 admission threshold
    topo.gain_mue_mbs[0] = (std::pow(2.0, 1.05) - 1.0) * cfg.noise_w() / cfg.power_grid().back();
    const MueEvaluation starved = evaluate_mue(topo, cfg, 0, actions, Scheme::CLA);
    CHECK(starved.delays.stable());
    CHECK_FALSE(starved.admitted);
    CHECK(starved.utility == 0.0);

    // rate 1.2: admitted
    topo.gain_mue_mbs[0] = (std::pow(2.0, 1.2) - 1.0) * cfg.noise_w() / cfg.power_grid().back();
    const MueEvaluation ok = evaluate_mue(topo, cfg, 0, actions, Scheme::CLA);
    CHECK(ok.admitted);
    CHECK(ok.utility > 0.0);
}

TEST_CASE("discovery claims the strongest unclaimed FBS in id order") {
    ScenarioConfig cfg = game_cfg(1, 2);
    Topology topo = generate_topology(cfg, 11);
    topo.gain_mue_fbs = {{1e-6, 1e-7}};  // RSSI -40 vs -50 dBm
    CHECK(discover_femtocells(topo, cfg) == std::vector<int>{0});

    ScenarioConfig cfg2 = game_cfg(2, 2);
    Topology topo2 = generate_topology(cfg2, 11);
    topo2.gain_mue_fbs = {{1e-6, 1e-7}, {2e-6, 1e-8}};  // both prefer FBS 0
    CHECK(discover_femtocells(topo2, cfg2) == std::vector<int>{0, 1});
}

TEST_CASE("discovery is injective across random drops and rejects F < M") {
    ScenarioConfig cfg = game_cfg(5, 9);
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const Topology topo = generate_topology(cfg, seed);
        const auto relays = discover_femtocells(topo, cfg);
        std::vector<bool> used(cfg.num_fbs, false);
        for (int f : relays) {
            CHECK(f >= 0);
            CHECK_FALSE(used[f]);
            used[f] = true;
        }
    }

    ScenarioConfig tight = game_cfg(3, 2);
    const Topology topo = generate_topology(tight, 1);
    CHECK_THROWS_AS(discover_femtocells(topo, tight), std::invalid_argument);
}

TEST_CASE("best response returns the exhaustive argmax") {
    ScenarioConfig cfg = game_cfg(2, 4);
    const Topology topo = generate_topology(cfg, 21);
    const auto relays = discover_femtocells(topo, cfg);
    std::vector<Action> actions{Action{relays[0], 0, 3}, Action{relays[1], 0, 3}};

    const Action a = best_response(topo, cfg, 0, actions, Scheme::OTA);
    std::vector<Action> trial = actions;
    trial[0] = a;
    const double chosen = utility(topo, cfg, 0, trial, Scheme::OTA);
    for (int ti = 0; ti < static_cast<int>(cfg.theta_grid.size()); ++ti) {
        for (int pi = 0; pi < static_cast<int>(cfg.power_grid().size()); ++pi) {
            trial[0] = Action{relays[0], ti, pi};
            CHECK(chosen >= utility(topo, cfg, 0, trial, Scheme::OTA));
        }
    }

    // singleton grids leave no choice
    ScenarioConfig single = cfg;
    single.theta_grid = {0.0};
    single.power_grid_w = {single.max_tx_power_w()};
    const Action only = best_response(topo, single, 0, actions, Scheme::OTA);
    CHECK(only == Action{relays[0], 0, 0});
}

TEST_CASE("single MUE converges immediately and traces are reproducible") {
    ScenarioConfig cfg = game_cfg(1, 3);
    const Topology topo = generate_topology(cfg, 5);
    const auto relays = discover_femtocells(topo, cfg);

    const GameState a = run_game(topo, cfg, Scheme::WRD, relays, 99);
    CHECK(a.converged);
    CHECK(a.rounds <= 2);  // one improving round plus the confirming round
    CHECK(static_cast<int>(a.utility_trace.size()) == a.rounds);

    const GameState b = run_game(topo, cfg, Scheme::WRD, relays, 99);
    CHECK(a.actions == b.actions);
    CHECK(a.rounds == b.rounds);
    CHECK(a.utility_trace == b.utility_trace);
}

TEST_CASE("best-response updates never lower the updating MUE's utility") {
    ScenarioConfig cfg = game_cfg(3, 8);
    cfg.cross_mue_fine_interference = true;  // couple the players
    const Topology topo = generate_topology(cfg, 31);
    const auto relays = discover_femtocells(topo, cfg);

    std::vector<Action> actions(3);
    for (int m = 0; m < 3; ++m) actions[m] = Action{relays[m], 0, 3};
    for (int round = 0; round < 4; ++round) {
        for (int m = 0; m < 3; ++m) {
            const double before = utility(topo, cfg, m, actions, Scheme::OTA);
            actions[m] = best_response(topo, cfg, m, actions, Scheme::OTA);
            const double after = utility(topo, cfg, m, actions, Scheme::OTA);
            CHECK(after >= before - 1e-15);
        }
    }
}

TEST_CASE("converged profiles are Nash and appear in the exhaustive Nash set") {
    ScenarioConfig cfg = game_cfg(2, 5);
    cfg.theta_grid = {0.0, 0.4, 0.8};
    const double pmax = cfg.max_tx_power_w();
    cfg.power_grid_w = {0.25 * pmax, 0.5 * pmax, pmax};
    cfg.cross_mue_fine_interference = true;

    int checked = 0;
    for (std::uint64_t seed = 0; seed < 25; ++seed) {
        const Topology topo = generate_topology(cfg, seed);
        const auto relays = discover_femtocells(topo, cfg);
        for (Scheme scheme : {Scheme::WRD, Scheme::OTA}) {
            const GameState state = run_game(topo, cfg, scheme, relays, seed);
            if (!state.converged) continue;
            ++checked;

            const NashReport report =
                is_nash(topo, cfg, state.actions, scheme, DeviationScope::ThetaPower);
            CHECK(report.is_nash);
            CHECK(report.max_gain <= 1e-9);

            const auto nash_set = enumerate_nash_profiles(topo, cfg, scheme, relays);
            const bool found =
                std::find(nash_set.begin(), nash_set.end(), state.actions) != nash_set.end();
            CHECK(found);
        }
    }
    CHECK(checked > 0);
}

TEST_CASE("is_nash detects a profitable deviation in a hand-built profile") {
    ScenarioConfig cfg = game_cfg(1, 2);
    cfg.theta_grid = {0.0, 0.5};
    const Topology topo = generate_topology(cfg, 13);
    const auto relays = discover_femtocells(topo, cfg);

    const GameState state = run_game(topo, cfg, Scheme::WRD, relays, 1);
    REQUIRE(state.converged);
    const Action best = state.actions[0];

    // Force a different action; if the equilibrium is unique the forced
    // profile must fail certification with a positive gain.
    Action forced = best;
    forced.power_index = best.power_index == 0 ? 1 : 0;
    const std::vector<Action> profile{forced};
    const double u_forced = utility(topo, cfg, 0, profile, Scheme::WRD);
    const std::vector<Action> best_profile{best};
    const double u_best = utility(topo, cfg, 0, best_profile, Scheme::WRD);
    if (u_best > u_forced + 1e-9) {
        const NashReport report = is_nash(topo, cfg, profile, Scheme::WRD, DeviationScope::ThetaPower);
        CHECK_FALSE(report.is_nash);
        CHECK(report.max_gain > 0.0);
        CHECK(report.worst_mue == 0);
    }

    // A singleton action space is trivially Nash.
    ScenarioConfig single = cfg;
    single.theta_grid = {0.0};
    single.power_grid_w = {single.max_tx_power_w()};
    const std::vector<Action> lone{Action{relays[0], 0, 0}};
    CHECK(is_nash(topo, single, lone, Scheme::WRD, DeviationScope::ThetaPower).is_nash);
}

TEST_CASE("relay deviations are reported separately from the iterative scope") {
    ScenarioConfig cfg = game_cfg(2, 6);
    const Topology topo = generate_topology(cfg, 17);
    const auto relays = discover_femtocells(topo, cfg);
    const GameState state = run_game(topo, cfg, Scheme::OTA, relays, 3);
    REQUIRE(state.converged);

    const NashReport fixed = is_nash(topo, cfg, state.actions, Scheme::OTA, DeviationScope::ThetaPower);
    CHECK(fixed.is_nash);
    const NashReport wide =
        is_nash(topo, cfg, state.actions, Scheme::OTA, DeviationScope::ThetaPowerRelay);
    CHECK(wide.max_gain >= fixed.max_gain);
}

TEST_CASE("the pure-coarse action floors every equilibrium utility") {
    ScenarioConfig cfg = game_cfg(4, 12);
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const Topology topo = generate_topology(cfg, seed);
        const auto relays = discover_femtocells(topo, cfg);
        for (Scheme scheme : {Scheme::WRD, Scheme::OTA}) {
            const GameState state = run_game(topo, cfg, scheme, relays, seed);
            for (int m = 0; m < cfg.num_mues; ++m) {
                const double equilibrium = utility(topo, cfg, m, state.actions, scheme);
                std::vector<Action> coarse_only = state.actions;
                coarse_only[m].theta_index = 0;
                CHECK(equilibrium >= utility(topo, cfg, m, coarse_only, scheme) - 1e-15);
            }
        }
    }
}
