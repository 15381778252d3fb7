#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "frsim/config.hpp"
#include "frsim/queueing.hpp"
#include "frsim/rates.hpp"
#include "frsim/topology.hpp"

namespace frsim {

/// One MUE's strategic choice: the relaying FBS (fixed during discovery,
/// -1 under CLA) and grid indices for theta and transmit power.
struct Action {
    int relay_fbs = -1;
    int theta_index = 0;
    int power_index = 0;

    bool operator==(const Action&) const = default;
};

/// Outcome of the sequential best-response dynamics for one drop.
struct GameState {
    std::vector<Action> actions;
    Scheme scheme = Scheme::CLA;
    int rounds = 0;
    bool converged = false;
    // Per-round snapshot of every MUE's utility, taken after the round.
    std::vector<std::vector<double>> utility_trace;
};

/// Rates, delays, and utility of one MUE under a complete action profile.
struct MueEvaluation {
    RateBreakdown rates;
    DelayReport delays;
    bool admitted = true;  // every loaded leg keeps the admission headroom
    double utility = 0.0;
};

/// Builds the slot-level power profile implied by an action profile.
PowerProfile profile_from_actions(const ScenarioConfig& cfg, std::span<const Action> actions,
                                  int active_mue);

/// Evaluates MUE m: scheme rates, M/D/1 delays of the coarse/fine flows, and
/// the throughput-delay utility R^delta / D^(1-delta). Unstable queues give
/// utility 0.
MueEvaluation evaluate_mue(const Topology& topo, const ScenarioConfig& cfg, int m,
                           std::span<const Action> actions, Scheme scheme);

double utility(const Topology& topo, const ScenarioConfig& cfg, int m,
               std::span<const Action> actions, Scheme scheme);

/// Discovery phase: in MUE id order, each MUE claims the unclaimed FBS with
/// the strongest pilot RSSI. Requires num_fbs >= num_mues; the returned
/// assignment is injective.
std::vector<int> discover_femtocells(const Topology& topo, const ScenarioConfig& cfg);

/// Exhaustive best response of MUE m over the theta and power grids with its
/// relay fixed. Ties break toward the lowest theta index, then the lowest
/// power index. Under CLA only the power grid is searched.
Action best_response(const Topology& topo, const ScenarioConfig& cfg, int m,
                     std::span<const Action> actions, Scheme scheme);

/// Sequential best-response dynamics: every round updates all MUEs in a
/// seeded random order, until a full round changes nothing or
/// cfg.max_game_rounds is hit. Non-convergence is reported, not thrown.
/// `relays` comes from discover_femtocells (ignored under CLA).
GameState run_game(const Topology& topo, const ScenarioConfig& cfg, Scheme scheme,
                   std::span<const int> relays, std::uint64_t game_seed);

/// Which unilateral deviations is_nash explores. ThetaPower matches the
/// iterative phase (relay fixed); ThetaPowerRelay additionally lets each MUE
/// switch to any FBS not claimed by another MUE.
enum class DeviationScope { ThetaPower, ThetaPowerRelay };

struct NashReport {
    bool is_nash = true;
    double max_gain = 0.0;  // best improvement any unilateral deviation achieves
    int worst_mue = -1;
    Action worst_deviation;
};

/// Certifies a profile: no unilateral deviation in scope may improve any
/// MUE's utility by more than `tolerance` (default 1e-9).
NashReport is_nash(const Topology& topo, const ScenarioConfig& cfg,
                   std::span<const Action> actions, Scheme scheme, DeviationScope scope,
                   double tolerance = 1e-9);

}  // namespace frsim
