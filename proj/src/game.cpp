#include "frsim/game.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "frsim/rng.hpp"

namespace frsim {

PowerProfile profile_from_actions(const ScenarioConfig& cfg, std::span<const Action> actions,
                                  int active_mue) {
    const auto grid = cfg.power_grid();
    PowerProfile p;
    p.active_mue = active_mue;
    const int m_count = static_cast<int>(actions.size());
    p.mue_power_w.resize(m_count);
    p.mue_theta.resize(m_count);
    p.relay_fbs.resize(m_count);
    for (int m = 0; m < m_count; ++m) {
        p.mue_power_w[m] = grid[actions[m].power_index];
        p.mue_theta[m] = cfg.theta_grid[actions[m].theta_index];
        p.relay_fbs[m] = actions[m].relay_fbs;
    }
    p.fue_power_w.assign(cfg.num_fbs, cfg.fue_power_w());
    p.fbs_backhaul_power_w.assign(cfg.num_fbs, cfg.fbs_backhaul_power_w());
    return p;
}

MueEvaluation evaluate_mue(const Topology& topo, const ScenarioConfig& cfg, int m,
                           std::span<const Action> actions, Scheme scheme) {
    const PowerProfile powers = profile_from_actions(cfg, actions, m);
    const double bw = cfg.subchannel_bandwidth_hz;

    MueEvaluation eval;
    eval.rates = scheme_rates(topo, cfg, powers, scheme);

    // An idle fine flow (theta = 0, or no fine rate at all) leaves the whole
    // stream on the coarse leg, reproducing the classical flow exactly.
    const double theta = powers.mue_theta[m];
    const double lambda = cfg.lambda_mue_bps;
    const double coarse_bps = eval.rates.coarse_se * bw;
    const double r1_bps = eval.rates.fine_access_se * bw;
    const double r2_bps = eval.rates.backhaul_bps;

    double lambda_coarse = lambda;
    double lambda_fine = 0.0;
    if (scheme != Scheme::CLA && theta > 0.0 && eval.rates.fine_se > 0.0) {
        switch (cfg.traffic_split) {
            case TrafficSplit::DelayOptimal: {
                const TrafficDivision div = optimal_traffic_division(lambda, coarse_bps, r1_bps,
                                                                     r2_bps, cfg.min_rate_headroom);
                lambda_coarse = div.lambda_coarse;
                lambda_fine = div.lambda_fine;
                break;
            }
            case TrafficSplit::Power:
                lambda_fine = theta * lambda;
                lambda_coarse = lambda - lambda_fine;
                break;
            case TrafficSplit::Duplicate:
                lambda_fine = lambda;
                lambda_coarse = lambda;
                break;
        }
    }

    auto leg_admitted = [&](double leg_lambda, double rate) {
        return leg_lambda == 0.0 || rate >= (1.0 + cfg.min_rate_headroom) * leg_lambda;
    };
    eval.admitted = leg_admitted(lambda_coarse, coarse_bps) &&
                    leg_admitted(lambda_fine, r1_bps) && leg_admitted(lambda_fine, r2_bps);

    eval.delays = split_delays(lambda_coarse, lambda_fine, coarse_bps, r1_bps, r2_bps);

    eval.utility = eval.delays.stable() && eval.admitted
                       ? std::pow(eval.rates.total_se, cfg.delta) /
                             std::pow(eval.delays.total_delay, 1.0 - cfg.delta)
                       : 0.0;
    return eval;
}

double utility(const Topology& topo, const ScenarioConfig& cfg, int m,
               std::span<const Action> actions, Scheme scheme) {
    return evaluate_mue(topo, cfg, m, actions, scheme).utility;
}

std::vector<int> discover_femtocells(const Topology& topo, const ScenarioConfig& cfg) {
    const int m_count = topo.num_mues();
    const int f_count = topo.num_fbs();
    if (f_count < m_count)
        throw std::invalid_argument("discover_femtocells: need at least as many FBSs as MUEs");

    std::vector<int> assignment(m_count, -1);
    std::vector<bool> claimed(f_count, false);
    for (int m = 0; m < m_count; ++m) {
        int best = -1;
        double best_rssi = 0.0;
        for (int f = 0; f < f_count; ++f) {
            if (claimed[f]) continue;
            const double r = rssi_dbm(topo, cfg, m, f);
            if (best < 0 || r > best_rssi) {
                best = f;
                best_rssi = r;
            }
        }
        assignment[m] = best;
        claimed[best] = true;
    }
    return assignment;
}

Action best_response(const Topology& topo, const ScenarioConfig& cfg, int m,
                     std::span<const Action> actions, Scheme scheme) {
    std::vector<Action> trial(actions.begin(), actions.end());
    const int theta_count = scheme == Scheme::CLA ? 1 : static_cast<int>(cfg.theta_grid.size());
    const int power_count = static_cast<int>(cfg.power_grid().size());

    Action best = actions[m];
    double best_utility = -1.0;
    for (int ti = 0; ti < theta_count; ++ti) {
        for (int pi = 0; pi < power_count; ++pi) {
            trial[m].relay_fbs = actions[m].relay_fbs;
            trial[m].theta_index = ti;
            trial[m].power_index = pi;
            const double u = utility(topo, cfg, m, trial, scheme);
            if (u > best_utility) {
                best_utility = u;
                best = trial[m];
            }
        }
    }
    return best;
}

GameState run_game(const Topology& topo, const ScenarioConfig& cfg, Scheme scheme,
                   std::span<const int> relays, std::uint64_t game_seed) {
    const int m_count = topo.num_mues();
    GameState state;
    state.scheme = scheme;

    // Initial state: direct transmission (theta = 0) at the highest grid power.
    const int top_power = static_cast<int>(cfg.power_grid().size()) - 1;
    state.actions.assign(m_count, Action{-1, 0, top_power});
    if (scheme != Scheme::CLA) {
        if (static_cast<int>(relays.size()) != m_count)
            throw std::invalid_argument("run_game: relay assignment size mismatch");
        for (int m = 0; m < m_count; ++m) state.actions[m].relay_fbs = relays[m];
    }

    std::vector<int> order(m_count);
    std::iota(order.begin(), order.end(), 0);

    for (int round = 1; round <= cfg.max_game_rounds; ++round) {
        Rng round_rng(mix_seed(game_seed, kStreamGameOrder, static_cast<std::uint64_t>(round)));
        shuffle_inplace(order, round_rng);

        bool changed = false;
        for (int m : order) {
            const Action next = best_response(topo, cfg, m, state.actions, scheme);
            if (!(next == state.actions[m])) {
                state.actions[m] = next;
                changed = true;
            }
        }

        std::vector<double> utilities(m_count);
        for (int m = 0; m < m_count; ++m)
            utilities[m] = utility(topo, cfg, m, state.actions, scheme);
        state.utility_trace.push_back(std::move(utilities));
        state.rounds = round;

        if (!changed) {
            state.converged = true;
            break;
        }
    }
    return state;
}

NashReport is_nash(const Topology& topo, const ScenarioConfig& cfg,
                   std::span<const Action> actions, Scheme scheme, DeviationScope scope,
                   double tolerance) {
    NashReport report;
    const int m_count = static_cast<int>(actions.size());
    const int theta_count = scheme == Scheme::CLA ? 1 : static_cast<int>(cfg.theta_grid.size());
    const int power_count = static_cast<int>(cfg.power_grid().size());

    std::vector<bool> claimed(cfg.num_fbs, false);
    for (const auto& a : actions)
        if (a.relay_fbs >= 0) claimed[a.relay_fbs] = true;

    std::vector<Action> trial(actions.begin(), actions.end());
    for (int m = 0; m < m_count; ++m) {
        const double current = utility(topo, cfg, m, actions, scheme);

        std::vector<int> relay_options{actions[m].relay_fbs};
        if (scope == DeviationScope::ThetaPowerRelay && scheme != Scheme::CLA) {
            for (int f = 0; f < cfg.num_fbs; ++f)
                if (!claimed[f]) relay_options.push_back(f);
        }

        for (int f : relay_options) {
            for (int ti = 0; ti < theta_count; ++ti) {
                for (int pi = 0; pi < power_count; ++pi) {
                    trial[m] = Action{f, ti, pi};
                    const double gain = utility(topo, cfg, m, trial, scheme) - current;
                    if (gain > report.max_gain) {
                        report.max_gain = gain;
                        report.worst_mue = m;
                        report.worst_deviation = trial[m];
                    }
                }
            }
        }
        trial[m] = actions[m];
    }

    report.is_nash = report.max_gain <= tolerance;
    return report;
}

}  // namespace frsim
