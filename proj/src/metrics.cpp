#include "frsim/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace frsim {

EmpiricalCdf::EmpiricalCdf(std::vector<double> samples) : sorted_(std::move(samples)) {
    if (sorted_.empty()) throw std::invalid_argument("EmpiricalCdf: empty sample");
    std::sort(sorted_.begin(), sorted_.end());
}

double EmpiricalCdf::quantile(double q) const {
    if (q < 0.0 || q > 1.0) throw std::invalid_argument("EmpiricalCdf: quantile outside [0,1]");
    const auto n = static_cast<double>(sorted_.size());
    auto k = static_cast<std::size_t>(std::ceil(q * n));
    if (k == 0) k = 1;
    return sorted_[k - 1];
}

double EmpiricalCdf::mean() const {
    double sum = 0.0;
    for (double v : sorted_) sum += v;
    return sum / static_cast<double>(sorted_.size());
}

double improvement_ratio(double proposed_mean, double classical_mean, MetricKind kind) {
    if (kind == MetricKind::Delay) {
        if (proposed_mean <= 0.0) throw std::invalid_argument("improvement_ratio: proposed delay must be > 0");
        return classical_mean / proposed_mean;
    }
    if (classical_mean <= 0.0) throw std::invalid_argument("improvement_ratio: classical mean must be > 0");
    return proposed_mean / classical_mean;
}

namespace {

double mean_of(const std::vector<double>& v) {
    double sum = 0.0;
    for (double x : v) sum += x;
    return v.empty() ? std::numeric_limits<double>::quiet_NaN() : sum / static_cast<double>(v.size());
}

}  // namespace

ExperimentSummary summarize(std::span<const DropResult> drops) {
    if (drops.empty()) throw std::invalid_argument("summarize: no drops");

    ExperimentSummary summary;
    int runs = 0;
    int unconverged = 0;

    for (const auto& drop : drops) {
        auto& s = summary.schemes[drop.scheme];
        ++s.drops;
        ++runs;
        if (!drop.converged) {
            ++unconverged;
            continue;
        }
        ++s.converged_drops;
        for (const auto& mue : drop.mues) {
            ++s.samples;
            s.rate_samples.push_back(mue.rate_total);
            s.utility_samples.push_back(mue.utility);
            if (std::isfinite(mue.delay_total)) {
                ++s.stable_samples;
                s.delay_samples.push_back(mue.delay_total);
            }
        }
    }

    summary.unconverged_fraction = static_cast<double>(unconverged) / static_cast<double>(runs);

    int max_drops = 0;
    bool any_samples = false;
    for (auto& [scheme, s] : summary.schemes) {
        std::sort(s.rate_samples.begin(), s.rate_samples.end());
        std::sort(s.delay_samples.begin(), s.delay_samples.end());
        std::sort(s.utility_samples.begin(), s.utility_samples.end());
        s.mean_rate = mean_of(s.rate_samples);
        s.mean_delay = mean_of(s.delay_samples);
        s.mean_utility = mean_of(s.utility_samples);
        max_drops = std::max(max_drops, s.drops);
        any_samples = any_samples || s.samples > 0;
    }
    summary.drop_count = max_drops;
    if (!any_samples) throw std::invalid_argument("summarize: every drop is unconverged");

    const auto cla = summary.schemes.find(Scheme::CLA);
    if (cla != summary.schemes.end() && cla->second.samples > 0) {
        const double nan = std::numeric_limits<double>::quiet_NaN();
        for (const auto& [scheme, s] : summary.schemes) {
            if (scheme == Scheme::CLA || s.samples == 0) continue;
            SchemeRatios r;
            r.rate = cla->second.mean_rate > 0.0
                         ? improvement_ratio(s.mean_rate, cla->second.mean_rate, MetricKind::Rate)
                         : nan;
            r.utility = cla->second.mean_utility > 0.0
                            ? improvement_ratio(s.mean_utility, cla->second.mean_utility, MetricKind::Utility)
                            : nan;
            r.delay = (s.stable_samples > 0 && cla->second.stable_samples > 0)
                          ? improvement_ratio(s.mean_delay, cla->second.mean_delay, MetricKind::Delay)
                          : nan;
            summary.ratios_vs_classical[scheme] = r;
        }
    }
    return summary;
}

}  // namespace frsim
