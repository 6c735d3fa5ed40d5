#include "pulsemax/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "pulsemax/errors.hpp"

namespace pulsemax {

double Marginal::draw(RandomStream& rng) const {
    switch (kind) {
        case Kind::gaussian:
            return rng.normal(a, b);
        case Kind::exponential:
            return rng.exponential(a);
        case Kind::unit_frechet:
            return rng.unit_frechet();
        case Kind::uniform:
            return rng.uniform(a, b);
    }
    throw std::invalid_argument("Marginal: unknown kind");
}

double SyntheticSpec::theta_true() const {
    switch (kind) {
        case Kind::iid:
            return 1.0;
        case Kind::max_ar:
            return 1.0 - a;
        case Kind::moving_maxima: {
            double mx = 0.0, sum = 0.0;
            for (double w : weights) {
                mx = std::max(mx, w);
                sum += w;
            }
            return mx / sum;
        }
    }
    throw std::invalid_argument("SyntheticSpec: unknown kind");
}

std::vector<double> gen_iid(const Marginal& marginal, std::size_t n, RandomStream& rng) {
    if (n < 1) throw std::invalid_argument("gen_iid: n must be >= 1");
    std::vector<double> out(n);
    for (auto& v : out) v = marginal.draw(rng);
    return out;
}

std::vector<double> gen_max_ar(double a, std::size_t n, RandomStream& rng) {
    if (!(a > 0.0) || !(a < 1.0))
        throw std::invalid_argument("gen_max_ar: coupling must lie in (0,1)");
    if (n < 1) throw std::invalid_argument("gen_max_ar: n must be >= 1");
    std::vector<double> out(n);
    double x = rng.unit_frechet();  // stationary start
    out[0] = x;
    for (std::size_t i = 1; i < n; ++i) {
        x = std::max(a * x, (1.0 - a) * rng.unit_frechet());
        out[i] = x;
    }
    return out;
}

std::vector<double> gen_moving_maxima(const std::vector<double>& weights, std::size_t n,
                                      RandomStream& rng) {
    if (weights.empty()) throw std::invalid_argument("gen_moving_maxima: no weights");
    for (double w : weights)
        if (!(w > 0.0))
            throw std::invalid_argument("gen_moving_maxima: weights must be positive");
    if (n < 1) throw std::invalid_argument("gen_moving_maxima: n must be >= 1");

    const std::size_t m = weights.size() - 1;
    std::vector<double> z(n + m);
    for (auto& v : z) v = rng.unit_frechet();
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        double mx = 0.0;
        for (std::size_t j = 0; j <= m; ++j)
            mx = std::max(mx, weights[j] * z[i + m - j]);
        out[i] = mx;
    }
    return out;
}

std::vector<double> generate(const SyntheticSpec& spec, RandomStream& rng) {
    switch (spec.kind) {
        case SyntheticSpec::Kind::iid:
            return gen_iid(spec.marginal, spec.n, rng);
        case SyntheticSpec::Kind::max_ar:
            return gen_max_ar(spec.a, spec.n, rng);
        case SyntheticSpec::Kind::moving_maxima:
            return gen_moving_maxima(spec.weights, spec.n, rng);
    }
    throw std::invalid_argument("SyntheticSpec: unknown kind");
}

EventSeries gen_cox_stream(const CoxModel& model, double horizon_hours,
                           const MarkSpec& marks, RandomStream& rng, double dt) {
    if (dt <= 0.0) dt = model.tau0 / 50.0;
    std::vector<double> times = simulate_events(model, horizon_hours, dt, rng);
    // ordinariness: nudge any equal inverted times apart
    for (std::size_t i = 1; i < times.size(); ++i)
        if (times[i] <= times[i - 1])
            times[i] = std::nextafter(times[i - 1], horizon_hours + 1.0);

    std::vector<double> mags;
    if (!times.empty()) {
        switch (marks.kind) {
            case MarkSpec::Kind::iid:
                mags = gen_iid(marks.marginal, times.size(), rng);
                break;
            case MarkSpec::Kind::max_ar:
                mags = gen_max_ar(marks.a, times.size(), rng);
                break;
        }
    }

    std::vector<EventRecord> records;
    records.reserve(times.size());
    double trigger = 0.0;
    for (std::size_t i = 0; i < times.size(); ++i) {
        records.push_back(EventRecord{times[i], mags[i]});
        trigger = i == 0 ? mags[i] : std::min(trigger, mags[i]);
    }
    return make_series(std::move(records), horizon_hours, trigger);
}

}  // namespace pulsemax
