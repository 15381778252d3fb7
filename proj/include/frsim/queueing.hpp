#pragma once

#include <cstdint>
#include <optional>

namespace frsim {

/// M/D/1 mean waiting time lambda / (2 R (R - lambda)), with lambda and R in
/// the same rate units. Returns nullopt when the queue is unstable (R <=
/// lambda); lambda == 0 means an idle flow and yields 0.
std::optional<double> md1_delay(double lambda, double rate);

/// Delays of a rate-split flow. The coarse leg is a single queue at the
/// direct-link rate; the fine leg is the MUE->FBS queue plus the FBS->MBS
/// backhaul queue. The transmission completes when both messages arrive, so
/// total_delay is the maximum of the two legs. Unstable legs carry +inf and
/// clear the stable flags.
struct DelayReport {
    double coarse_delay = 0.0;
    double fine_delay = 0.0;
    double total_delay = 0.0;
    bool coarse_stable = true;
    bool fine_stable = true;

    bool stable() const { return coarse_stable && fine_stable; }
};

/// lambda_fine == 0 marks an absent fine flow (theta = 0): the fine leg is
/// idle regardless of r1/r2 and the total reduces to the coarse delay.
DelayReport split_delays(double lambda_coarse, double lambda_fine, double coarse_rate,
                         double r1, double r2);

/// How the source divides its stream between the legs.
struct TrafficDivision {
    double lambda_coarse = 0.0;
    double lambda_fine = 0.0;
    bool feasible = false;  // some division keeps every loaded queue stable
};

/// Delay-optimal division of a `lambda` stream between the coarse queue
/// (service rate coarse_rate) and the fine path (queues at r1 then r2):
/// minimizes max(coarse delay, fine delay) over the division, leaving a leg
/// idle when that is optimal. Each loaded leg must keep the admission
/// headroom (service rate >= (1+headroom) * its arrivals), so a division is
/// feasible exactly when lambda < (coarse_rate + min(r1, r2)) / (1+headroom).
/// r1 <= 0 or r2 <= 0 marks an absent fine path.
TrafficDivision optimal_traffic_division(double lambda, double coarse_rate, double r1, double r2,
                                         double headroom = 0.0);

/// Event-driven M/D/1 validation oracle: Poisson arrivals at `lambda`,
/// deterministic service at rate `service_rate`, Lindley recursion over
/// `num_packets` packets (>= 1e5 enforced). Returns the empirical mean
/// waiting time. Throws std::invalid_argument on unstable parameters.
double md1_sim_mean_wait(double lambda, double service_rate, std::size_t num_packets,
                         std::uint64_t seed);

}  // namespace frsim
