#pragma once

#include <cstddef>
#include <optional>
#include <vector>

namespace pulsemax {

struct EventRecord {
    double time;       // hours since observation start, >= 0
    double magnitude;  // load-effect units, finite
};

// Time-ordered marked point process sample. Records are sorted by strictly
// increasing time (the process is ordinary: at most one event per instant);
// every magnitude lies at or above trigger_level; observation_span covers
// the last record.
struct EventSeries {
    std::vector<EventRecord> records;
    double observation_span = 0.0;  // hours
    double trigger_level = 0.0;

    std::size_t size() const { return records.size(); }
    bool empty() const { return records.empty(); }
    std::vector<double> times() const;
    std::vector<double> magnitudes() const;
};

// Validates the EventSeries invariants; throws DataError on violation.
EventSeries make_series(std::vector<EventRecord> records, double observation_span,
                        double trigger_level);

// Block maxima over successive disjoint windows of fixed length. A block
// with no events holds an empty optional; count() = floor(span/length) + 1.
struct BlockMaxima {
    double block_length = 0.0;  // hours
    std::vector<std::optional<double>> values;

    std::size_t count() const { return values.size(); }
};

struct ChiSquaredResult {
    double statistic = 0.0;
    int degrees_of_freedom = 0;
    double significance = 0.0;  // upper-tail probability at the statistic
};

// Keeps records with magnitude strictly above u; times preserved, trigger
// raised to u. Requires u >= current trigger (data below it was never
// observed).
EventSeries filter_above(const EventSeries& series, double u);

// Successive time differences; length n-1, all strictly positive.
std::vector<double> interarrival_times(const EventSeries& series);

// Goodness of fit of the durations against an exponential law with rate
// 1/sample-mean. Equal-probability bins under the fitted law; tail bins
// merged from the right while the last expected count is below 5 (floor of
// 3 bins). degrees_of_freedom = bins - 2 for the one estimated parameter.
ChiSquaredResult chi_squared_exponential_test(const std::vector<double>& durations,
                                              int n_bins);

// Block i covers ((i-1)*dt, i*dt]; an event at t = 0 counts into block 1.
BlockMaxima block_maxima(const EventSeries& series, double block_length);

// p_hat(l) = (1/(n+1)) * #{magnitudes <= l}; bounded by n/(n+1).
double empirical_cdf(const std::vector<double>& magnitudes, double level);

}  // namespace pulsemax
