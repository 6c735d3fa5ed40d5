#include "pulsemax/event_series.hpp"

#include <boost/math/special_functions/gamma.hpp>
#include <cmath>
#include <string>

#include "pulsemax/errors.hpp"

namespace pulsemax {

std::vector<double> EventSeries::times() const {
    std::vector<double> out;
    out.reserve(records.size());
    for (const auto& rec : records) out.push_back(rec.time);
    return out;
}

std::vector<double> EventSeries::magnitudes() const {
    std::vector<double> out;
    out.reserve(records.size());
    for (const auto& rec : records) out.push_back(rec.magnitude);
    return out;
}

EventSeries make_series(std::vector<EventRecord> records, double observation_span,
                        double trigger_level) {
    for (std::size_t i = 0; i < records.size(); ++i) {
        const auto& rec = records[i];
        if (!(rec.time >= 0.0) || !std::isfinite(rec.time))
            throw DataError("event " + std::to_string(i) + ": negative or non-finite time");
        if (!std::isfinite(rec.magnitude))
            throw DataError("event " + std::to_string(i) + ": non-finite magnitude");
        if (rec.magnitude < trigger_level)
            throw DataError("event " + std::to_string(i) + ": magnitude " +
                            std::to_string(rec.magnitude) + " below trigger " +
                            std::to_string(trigger_level));
        if (i > 0 && !(records[i - 1].time < rec.time))
            throw DataError("event " + std::to_string(i) + ": time not strictly increasing");
    }
    if (!records.empty() && observation_span < records.back().time)
        throw DataError("observation span shorter than the last event time");
    return EventSeries{std::move(records), observation_span, trigger_level};
}

EventSeries filter_above(const EventSeries& series, double u) {
    if (u < series.trigger_level)
        throw DataError("filter threshold below the trigger level: data below " +
                        std::to_string(series.trigger_level) + " was never observed");
    EventSeries out;
    out.observation_span = series.observation_span;
    out.trigger_level = u;
    for (const auto& rec : series.records)
        if (rec.magnitude > u) out.records.push_back(rec);
    return out;
}

std::vector<double> interarrival_times(const EventSeries& series) {
    if (series.size() < 2) throw DataError("interarrival times need at least 2 events");
    std::vector<double> out;
    out.reserve(series.size() - 1);
    for (std::size_t i = 1; i < series.size(); ++i)
        out.push_back(series.records[i].time - series.records[i - 1].time);
    return out;
}

ChiSquaredResult chi_squared_exponential_test(const std::vector<double>& durations,
                                              int n_bins) {
    if (n_bins < 3) throw std::invalid_argument("chi-squared test needs at least 3 bins");
    const std::size_t n = durations.size();
    if (n == 0) throw DataError("chi-squared test on an empty sample");
    double mean = 0.0;
    for (double d : durations) {
        if (!(d >= 0.0)) throw DataError("negative duration");
        mean += d;
    }
    mean /= static_cast<double>(n);
    if (!(mean > 0.0)) throw DataError("degenerate durations: sample mean is zero");

    // equal-probability bins under the fitted law; upper edges at
    // -mean*ln(1 - i/B), last bin open
    const int bins0 = n_bins;
    std::vector<double> observed(bins0, 0.0);
    for (double d : durations) {
        const double cdf = 1.0 - std::exp(-d / mean);
        int idx = static_cast<int>(cdf * bins0);
        if (idx >= bins0) idx = bins0 - 1;
        observed[idx] += 1.0;
    }
    std::vector<double> expected(bins0, static_cast<double>(n) / bins0);

    // merge from the right while the tail expectation is too small
    while (expected.size() > 3 && expected.back() < 5.0) {
        expected[expected.size() - 2] += expected.back();
        observed[observed.size() - 2] += observed.back();
        expected.pop_back();
        observed.pop_back();
    }

    const int bins = static_cast<int>(expected.size());
    double stat = 0.0;
    for (int i = 0; i < bins; ++i) {
        const double d = observed[i] - expected[i];
        stat += d * d / expected[i];
    }
    const int dof = bins - 2;  // one estimated parameter
    const double significance =
        boost::math::gamma_q(0.5 * dof, 0.5 * stat);  // upper chi-squared tail
    return ChiSquaredResult{stat, dof, significance};
}

BlockMaxima block_maxima(const EventSeries& series, double block_length) {
    if (!(block_length > 0.0))
        throw std::invalid_argument("block length must be positive");
    BlockMaxima out;
    out.block_length = block_length;
    const std::size_t count =
        static_cast<std::size_t>(std::floor(series.observation_span / block_length)) + 1;
    out.values.assign(count, std::nullopt);
    for (const auto& rec : series.records) {
        // block i covers ((i-1)*dt, i*dt]; t = 0 counts into block 1
        std::size_t idx = static_cast<std::size_t>(std::ceil(rec.time / block_length));
        if (idx == 0) idx = 1;
        if (idx > count) idx = count;  // guards binary roundoff at the span edge
        auto& slot = out.values[idx - 1];
        if (!slot || rec.magnitude > *slot) slot = rec.magnitude;
    }
    return out;
}

double empirical_cdf(const std::vector<double>& magnitudes, double level) {
    if (magnitudes.empty()) throw DataError("empirical CDF of an empty sample");
    std::size_t below = 0;
    for (double m : magnitudes)
        if (m <= level) ++below;
    return static_cast<double>(below) / (static_cast<double>(magnitudes.size()) + 1.0);
}

}  // namespace pulsemax
