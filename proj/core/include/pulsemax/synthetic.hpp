#pragma once

#include <cstddef>
#include <vector>

#include "pulsemax/cox_process.hpp"
#include "pulsemax/event_series.hpp"
#include "pulsemax/random.hpp"

namespace pulsemax {

// Named marginal for i.i.d. draws.
struct Marginal {
    enum class Kind { gaussian, exponential, unit_frechet, uniform };

    Kind kind = Kind::unit_frechet;
    double a = 0.0;  // gaussian mean / exponential mean / uniform lo
    double b = 1.0;  // gaussian sd / uniform hi

    double draw(RandomStream& rng) const;

    static Marginal gaussian(double mean, double sd) {
        return {Kind::gaussian, mean, sd};
    }
    static Marginal exponential(double mean) { return {Kind::exponential, mean, 0.0}; }
    static Marginal unit_frechet() { return {Kind::unit_frechet, 0.0, 0.0}; }
    static Marginal uniform(double lo, double hi) { return {Kind::uniform, lo, hi}; }
};

// Generator family with analytically known extremal index.
struct SyntheticSpec {
    enum class Kind { iid, max_ar, moving_maxima };

    Kind kind = Kind::iid;
    Marginal marginal = Marginal::unit_frechet();  // iid
    double a = 0.5;                                // max_ar coupling, in (0,1)
    std::vector<double> weights;                   // moving_maxima, all > 0
    std::size_t n = 0;

    // 1 for iid; 1-a for max_ar; max(w)/sum(w) for moving maxima.
    double theta_true() const;
};

std::vector<double> gen_iid(const Marginal& marginal, std::size_t n, RandomStream& rng);

// X_i = max(a*X_{i-1}, (1-a)*Z_i), Z unit Frechet. The stationary marginal
// is unit Frechet, so the chain starts in its stationary law.
std::vector<double> gen_max_ar(double a, std::size_t n, RandomStream& rng);

// X_i = max_j w_j * Z_{i-j} over j = 0..m, Z unit Frechet.
std::vector<double> gen_moving_maxima(const std::vector<double>& weights, std::size_t n,
                                      RandomStream& rng);

std::vector<double> generate(const SyntheticSpec& spec, RandomStream& rng);

// Marks attached to simulated Cox arrival times.
struct MarkSpec {
    enum class Kind { iid, max_ar };

    Kind kind = Kind::iid;
    Marginal marginal = Marginal::unit_frechet();
    double a = 0.5;
};

// Cox arrivals with marks in time order; observation_span = horizon,
// trigger at the smallest mark. dt <= 0 selects tau0/50.
EventSeries gen_cox_stream(const CoxModel& model, double horizon_hours,
                           const MarkSpec& marks, RandomStream& rng, double dt = -1.0);

}  // namespace pulsemax
