#include "frsim/queueing.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "frsim/rng.hpp"

namespace frsim {

std::optional<double> md1_delay(double lambda, double rate) {
    if (lambda < 0.0) throw std::invalid_argument("md1_delay: lambda must be >= 0");
    if (lambda == 0.0) return 0.0;
    if (rate <= lambda) return std::nullopt;
    return lambda / (2.0 * rate * (rate - lambda));
}

DelayReport split_delays(double lambda_coarse, double lambda_fine, double coarse_rate,
                         double r1, double r2) {
    constexpr double kInf = std::numeric_limits<double>::infinity();
    DelayReport report;

    const auto coarse = md1_delay(lambda_coarse, coarse_rate);
    report.coarse_stable = coarse.has_value();
    report.coarse_delay = coarse.value_or(kInf);

    if (lambda_fine == 0.0) {
        report.fine_delay = 0.0;
        report.fine_stable = true;
    } else {
        const auto access = md1_delay(lambda_fine, r1);
        const auto backhaul = md1_delay(lambda_fine, r2);
        report.fine_stable = access.has_value() && backhaul.has_value();
        report.fine_delay = report.fine_stable ? *access + *backhaul : kInf;
    }

    report.total_delay = std::max(report.coarse_delay, report.fine_delay);
    return report;
}

namespace {

double fine_path_delay(double lambda_fine, double r1, double r2) {
    const auto access = md1_delay(lambda_fine, r1);
    const auto backhaul = md1_delay(lambda_fine, r2);
    if (!access || !backhaul) return std::numeric_limits<double>::infinity();
    return *access + *backhaul;
}

}  // namespace

TrafficDivision optimal_traffic_division(double lambda, double coarse_rate, double r1, double r2,
                                         double headroom) {
    if (headroom < 0.0) throw std::invalid_argument("traffic division: headroom must be >= 0");
    TrafficDivision div;
    const double margin = 1.0 + headroom;
    // Usable share of each leg under the admission headroom.
    const double coarse_cap = coarse_rate / margin;
    const double fine_cap = (r1 > 0.0 && r2 > 0.0) ? std::min(r1, r2) / margin : 0.0;

    if (fine_cap == 0.0) {  // no fine path: everything rides the coarse leg
        div.lambda_coarse = lambda;
        div.feasible = lambda < coarse_cap;
        return div;
    }
    if (lambda >= coarse_cap + fine_cap) {  // no admissible division exists
        div.lambda_coarse = lambda;
        return div;
    }
    div.feasible = true;

    // Admissible coarse share x in [lo, hi]; D_C(x) rises, D_F(lambda - x)
    // falls, so the max is minimized at a boundary or where they cross.
    const double lo = std::max(0.0, lambda - fine_cap);
    const double hi = std::min(lambda, coarse_cap);

    auto coarse_delay = [&](double x) {
        const auto d = md1_delay(x, coarse_rate);
        return d ? *d : std::numeric_limits<double>::infinity();
    };

    double best_x = -1.0;
    double best_delay = std::numeric_limits<double>::infinity();
    if (lo == 0.0) {  // coarse leg idle
        const double d = fine_path_delay(lambda, r1, r2);
        if (d < best_delay) {
            best_delay = d;
            best_x = 0.0;
        }
    }
    if (hi == lambda) {  // fine path idle
        const double d = coarse_delay(lambda);
        if (d < best_delay) {
            best_delay = d;
            best_x = lambda;
        }
    }

    // Interior crossing of D_C(x) = D_F(lambda - x) by bisection.
    double a = lo, b = hi;
    for (int iter = 0; iter < 80; ++iter) {
        const double x = 0.5 * (a + b);
        if (coarse_delay(x) < fine_path_delay(lambda - x, r1, r2))
            a = x;
        else
            b = x;
    }
    const double x = 0.5 * (a + b);
    const double interior = std::max(coarse_delay(x), fine_path_delay(lambda - x, r1, r2));
    // boundary divisions win ties so idle legs stay exactly idle
    if (interior < best_delay * (1.0 - 1e-9)) {
        best_delay = interior;
        best_x = x;
    }

    div.lambda_coarse = best_x;
    div.lambda_fine = lambda - best_x;
    return div;
}

double md1_sim_mean_wait(double lambda, double service_rate, std::size_t num_packets,
                         std::uint64_t seed) {
    if (lambda <= 0.0) throw std::invalid_argument("md1_sim: lambda must be > 0");
    if (service_rate <= lambda) throw std::invalid_argument("md1_sim: unstable (service_rate <= lambda)");
    if (num_packets < 100000) throw std::invalid_argument("md1_sim: need at least 1e5 packets");

    const double service_time = 1.0 / service_rate;
    Rng rng(mix_seed(seed, kStreamQueueOracle));

    // Lindley recursion: W_{n+1} = max(0, W_n + S - A_{n+1})
    double wait = 0.0;
    double total_wait = 0.0;
    for (std::size_t n = 0; n < num_packets; ++n) {
        total_wait += wait;
        double u = rng.uniform01();
        if (u <= 0.0) u = 0x1.0p-53;
        const double interarrival = -std::log(u) / lambda;
        wait = std::max(0.0, wait + service_time - interarrival);
    }
    return total_wait / static_cast<double>(num_packets);
}

}  // namespace frsim
