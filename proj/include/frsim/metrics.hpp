#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "frsim/rates.hpp"

namespace frsim {

/// One raw-results row: a single MUE's equilibrium outcome in one drop.
struct MueRecord {
    int mue_id = 0;
    int relay_fbs = -1;
    double theta = 0.0;
    double power_dbm = 0.0;
    double rate_coarse = 0.0;  // bits/s/Hz
    double rate_fine = 0.0;
    double rate_total = 0.0;
    double delay_coarse = 0.0;  // +inf marks an unstable queue
    double delay_fine = 0.0;
    double delay_total = 0.0;
    double utility = 0.0;
};

/// Equilibrium trace of one (sweep point, scheme, drop) run.
struct DropResult {
    std::string sweep_label;
    Scheme scheme = Scheme::CLA;
    int drop_index = 0;
    bool converged = true;
    int iterations = 0;
    std::vector<MueRecord> mues;
};

/// Standard empirical CDF over a non-empty sample; quantile(q) returns the
/// ceil(q*N)-th order statistic.
class EmpiricalCdf {
public:
    explicit EmpiricalCdf(std::vector<double> samples);

    double quantile(double q) const;
    double mean() const;
    const std::vector<double>& sorted() const { return sorted_; }
    std::size_t size() const { return sorted_.size(); }

private:
    std::vector<double> sorted_;
};

enum class MetricKind { Rate, Delay, Utility };

/// proposed/classical for rates and utilities; classical/proposed for delays,
/// so a reduction factor > 1 is always an improvement. Rejects a zero
/// denominator.
double improvement_ratio(double proposed_mean, double classical_mean, MetricKind kind);

struct SchemeSummary {
    int drops = 0;
    int converged_drops = 0;
    int samples = 0;         // MUE rows pooled from converged drops
    int stable_samples = 0;  // rows with a finite total delay
    double mean_utility = 0.0;
    double mean_rate = 0.0;
    double mean_delay = 0.0;  // over stable rows only; NaN when none
    std::vector<double> rate_samples;     // sorted
    std::vector<double> delay_samples;    // sorted, stable rows only
    std::vector<double> utility_samples;  // sorted
};

struct SchemeRatios {
    double rate = 0.0;     // proposed / classical
    double delay = 0.0;    // classical / proposed
    double utility = 0.0;  // proposed / classical
};

/// Pooled statistics for one sweep point across schemes.
struct ExperimentSummary {
    int drop_count = 0;  // per scheme
    double unconverged_fraction = 0.0;
    std::map<Scheme, SchemeSummary> schemes;
    std::map<Scheme, SchemeRatios> ratios_vs_classical;  // proposed schemes only
};

/// Pools per-MUE samples across converged drops and computes every summary
/// field. Rejects an empty or all-unconverged input.
ExperimentSummary summarize(std::span<const DropResult> drops);

}  // namespace frsim
