#include "pulsemax/cox_process.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "pulsemax/errors.hpp"

namespace pulsemax {

double CoxModel::mean_intensity() const { return std::exp(mu + 0.5 * sigma * sigma); }

double CoxModel::var_intensity() const {
    const double m = mean_intensity();
    return m * m * std::expm1(sigma * sigma);
}

CoxModel CoxModel::from_stationary(double mean_intensity, double var_intensity,
                                   double tau0) {
    if (!(mean_intensity > 0.0))
        throw std::invalid_argument("CoxModel: mean intensity must be positive");
    if (!(var_intensity >= 0.0))
        throw std::invalid_argument("CoxModel: variance must be non-negative");
    if (!(tau0 > 0.0)) throw std::invalid_argument("CoxModel: tau0 must be positive");
    const double s2 = std::log1p(var_intensity / (mean_intensity * mean_intensity));
    return CoxModel{std::log(mean_intensity) - 0.5 * s2, std::sqrt(s2), tau0};
}

MeanMeasureMoments mean_measure_moments(const CoxModel& model, double t) {
    if (!(t > 0.0)) throw std::invalid_argument("mean_measure_moments: t must be positive");
    const double mean = t * model.mean_intensity();
    // double integral of the exponential ACF over the square [0,t]^2
    const double kernel = t * model.tau0 + model.tau0 * model.tau0 * std::expm1(-t / model.tau0);
    const double variance = 2.0 * model.var_intensity() * kernel;
    return MeanMeasureMoments{t, mean, variance};
}

std::vector<MomentPoint> empirical_mean_measure(const EventSeries& series,
                                                const std::vector<double>& window_lengths,
                                                double stride) {
    if (!(stride > 0.0))
        throw std::invalid_argument("empirical_mean_measure: stride must be positive");
    const std::vector<double> times = series.times();
    std::vector<MomentPoint> out;
    out.reserve(window_lengths.size());
    for (double t : window_lengths) {
        if (!(t > 0.0) || t > series.observation_span)
            throw std::invalid_argument("empirical_mean_measure: window length " +
                                        std::to_string(t) + " outside the observation span");
        double sum = 0.0, sumsq = 0.0;
        std::size_t windows = 0;
        for (double s = 0.0; s + t <= series.observation_span + 1e-9; s += stride) {
            const auto lo = std::lower_bound(times.begin(), times.end(), s);
            const auto hi = std::lower_bound(times.begin(), times.end(), s + t);
            const double c = static_cast<double>(hi - lo);
            sum += c;
            sumsq += c * c;
            ++windows;
        }
        if (windows < 2)
            throw DataError("empirical_mean_measure: fewer than 2 windows of length " +
                            std::to_string(t));
        const double w = static_cast<double>(windows);
        const double mean = sum / w;
        const double variance = (sumsq - w * mean * mean) / (w - 1.0);
        out.push_back(MomentPoint{t, mean, variance});
    }
    return out;
}

namespace {

// variance kernel per unit var_intensity
double variance_shape(double t, double tau0) {
    return 2.0 * (t * tau0 + tau0 * tau0 * std::expm1(-t / tau0));
}

struct VarStageFit {
    double v = 0.0;  // var_intensity amplitude
    double sse = 0.0;
};

VarStageFit var_stage_at(const std::vector<MomentPoint>& curve, double tau0) {
    double sgv = 0.0, sgg = 0.0;
    for (const auto& pt : curve) {
        const double g = variance_shape(pt.t, tau0);
        sgv += g * pt.variance;
        sgg += g * g;
    }
    VarStageFit fit;
    fit.v = sgg > 0.0 ? sgv / sgg : 0.0;
    fit.sse = 0.0;
    for (const auto& pt : curve) {
        const double resid = pt.variance - fit.v * variance_shape(pt.t, tau0);
        fit.sse += resid * resid;
    }
    return fit;
}

}  // namespace

CoxModel fit_cox(const std::vector<MomentPoint>& curve) {
    if (curve.size() < 3)
        throw std::invalid_argument("fit_cox: need at least 3 moment points");

    // stage 1: mean intensity, least squares through the origin
    double stm = 0.0, stt = 0.0;
    for (const auto& pt : curve) {
        stm += pt.t * pt.mean;
        stt += pt.t * pt.t;
    }
    const double mean_intensity = stm / stt;
    if (!(mean_intensity > 0.0))
        throw NumericalError("fit_cox: non-positive mean intensity estimate");

    // stage 2: correlation length on a log grid, closed-form amplitude at
    // each rung, then golden-section refinement
    double tmin = curve.front().t, tmax = curve.front().t;
    for (const auto& pt : curve) {
        tmin = std::min(tmin, pt.t);
        tmax = std::max(tmax, pt.t);
    }
    const double lo0 = 0.02 * tmin, hi0 = 100.0 * tmax;
    constexpr int kGrid = 256;
    double best_tau = lo0;
    double best_sse = -1.0;
    int best_idx = 0;
    for (int i = 0; i < kGrid; ++i) {
        const double tau = lo0 * std::pow(hi0 / lo0, static_cast<double>(i) / (kGrid - 1));
        const VarStageFit fit = var_stage_at(curve, tau);
        if (best_sse < 0.0 || fit.sse < best_sse) {
            best_sse = fit.sse;
            best_tau = tau;
            best_idx = i;
        }
    }
    const auto grid_at = [&](int i) {
        i = std::clamp(i, 0, kGrid - 1);
        return lo0 * std::pow(hi0 / lo0, static_cast<double>(i) / (kGrid - 1));
    };
    double lo = std::log(grid_at(best_idx - 1));
    double hi = std::log(grid_at(best_idx + 1));
    constexpr double kGolden = 0.3819660112501051;
    double x1 = lo + kGolden * (hi - lo);
    double x2 = hi - kGolden * (hi - lo);
    double f1 = var_stage_at(curve, std::exp(x1)).sse;
    double f2 = var_stage_at(curve, std::exp(x2)).sse;
    for (int iter = 0; iter < 80 && hi - lo > 1e-13; ++iter) {
        if (f1 < f2) {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = lo + kGolden * (hi - lo);
            f1 = var_stage_at(curve, std::exp(x1)).sse;
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = hi - kGolden * (hi - lo);
            f2 = var_stage_at(curve, std::exp(x2)).sse;
        }
    }
    const double refined = std::exp(0.5 * (lo + hi));
    if (var_stage_at(curve, refined).sse <= best_sse) best_tau = refined;

    const VarStageFit stage2 = var_stage_at(curve, best_tau);
    if (!(stage2.v > 0.0))
        throw NumericalError("fit_cox: non-positive intensity variance estimate");

    // stage 3: lognormal moment map
    return CoxModel::from_stationary(mean_intensity, stage2.v, best_tau);
}

IntensityPath simulate_intensity(const CoxModel& model, double horizon, double dt,
                                 RandomStream& rng) {
    if (!(dt > 0.0)) throw std::invalid_argument("simulate_intensity: dt must be positive");
    if (!(horizon >= dt))
        throw std::invalid_argument("simulate_intensity: horizon must be at least dt");
    if (!(model.tau0 > 0.0))
        throw std::invalid_argument("simulate_intensity: tau0 must be positive");

    // full dt steps plus one final partial step: the grid covers exactly
    // [0, horizon], never past it
    const std::size_t full = static_cast<std::size_t>(std::floor(horizon / dt + 1e-9));
    const double rem = horizon - static_cast<double>(full) * dt;
    const bool partial = rem > 1e-9 * dt;
    const std::size_t steps = full + (partial ? 1 : 0);

    IntensityPath path;
    path.dt = dt;
    path.times.resize(steps + 1);
    path.values.resize(steps + 1);
    path.cumulative.resize(steps + 1);

    const double a = std::exp(-dt / model.tau0);
    const double s = std::sqrt(1.0 - a * a);
    double z = rng.normal();
    path.times[0] = 0.0;
    path.values[0] = std::exp(model.mu + model.sigma * z);
    path.cumulative[0] = 0.0;
    for (std::size_t j = 1; j <= steps; ++j) {
        const bool last_partial = partial && j == steps;
        const double h = last_partial ? rem : dt;
        if (last_partial) {
            const double ap = std::exp(-h / model.tau0);
            z = ap * z + std::sqrt(1.0 - ap * ap) * rng.normal();
        } else {
            z = a * z + s * rng.normal();
        }
        path.times[j] = last_partial ? horizon : static_cast<double>(j) * dt;
        path.values[j] = std::exp(model.mu + model.sigma * z);
        path.cumulative[j] =
            path.cumulative[j - 1] + 0.5 * h * (path.values[j - 1] + path.values[j]);
    }
    return path;
}

double sample_mean_measure(const CoxModel& model, double t, double dt, RandomStream& rng) {
    return simulate_intensity(model, t, dt, rng).cumulative.back();
}

std::vector<double> simulate_events(const CoxModel& model, double t, double dt,
                                    RandomStream& rng) {
    const IntensityPath path = simulate_intensity(model, t, dt, rng);
    const double total = path.cumulative.back();
    const std::uint64_t count = rng.poisson(total);
    std::vector<double> times;
    times.reserve(count);
    for (std::uint64_t k = 0; k < count; ++k) {
        const double target = rng.uniform01() * total;
        // invert the piecewise-linear cumulative measure
        const auto it =
            std::upper_bound(path.cumulative.begin(), path.cumulative.end(), target);
        std::size_t idx = static_cast<std::size_t>(it - path.cumulative.begin());
        if (idx == 0) idx = 1;
        if (idx >= path.cumulative.size()) idx = path.cumulative.size() - 1;
        const double c0 = path.cumulative[idx - 1];
        const double c1 = path.cumulative[idx];
        const double frac = c1 > c0 ? (target - c0) / (c1 - c0) : 1.0;
        times.push_back(path.times[idx - 1] + frac * (path.times[idx] - path.times[idx - 1]));
    }
    std::sort(times.begin(), times.end());
    return times;
}

double gaussian_acf_from_intensity_acf(double rho_intensity, double delta_sq) {
    if (!(delta_sq > 0.0))
        throw std::invalid_argument("gaussian_acf_from_intensity_acf: delta_sq must be > 0");
    return std::log1p(rho_intensity * delta_sq) / std::log1p(delta_sq);
}

}  // namespace pulsemax
