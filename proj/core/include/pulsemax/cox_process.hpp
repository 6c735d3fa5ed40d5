#pragma once

#include <vector>

#include "pulsemax/event_series.hpp"
#include "pulsemax/random.hpp"

namespace pulsemax {

// Lognormal-intensity Cox process: Lambda(t) = exp(mu + sigma*z(t)) with
// z a zero-mean unit-variance stationary Gaussian process whose ACF decays
// as exp(-|s|/tau0).
struct CoxModel {
    double mu = 0.0;     // log-intensity location
    double sigma = 0.0;  // log-intensity scale, >= 0
    double tau0 = 1.0;   // correlation length, hours, > 0

    double mean_intensity() const;  // exp(mu + sigma^2/2), events/hour
    double var_intensity() const;   // mean^2 * (exp(sigma^2) - 1)

    // Inverse lognormal moment map: sigma^2 = ln(1 + var/mean^2),
    // mu = ln(mean) - sigma^2/2.
    static CoxModel from_stationary(double mean_intensity, double var_intensity,
                                    double tau0);
};

struct MeanMeasureMoments {
    double t = 0.0;  // hours
    double mean = 0.0;
    double variance = 0.0;
};

// Sampled intensity path on [0, horizon]: full steps of dt plus one final
// partial step so the grid lands exactly on the horizon. cumulative is the
// trapezoid running integral (the sampled mean measure).
struct IntensityPath {
    double dt = 0.0;
    std::vector<double> times;
    std::vector<double> values;      // strictly positive
    std::vector<double> cumulative;  // non-decreasing, cumulative[0] = 0
};

// One (window length, sample mean count, sample variance of counts) point.
struct MomentPoint {
    double t = 0.0;
    double mean = 0.0;
    double variance = 0.0;
};

// Moments of the mean measure M_t = integral of Lambda over [0,t]:
// mean = t * mean_intensity,
// variance = 2 * var_intensity * (t*tau0 + tau0^2*(exp(-t/tau0) - 1)).
// The variance kernel is the double integral of the exponential intensity
// ACF; it is >= 0 for all t and carries units time^2.
MeanMeasureMoments mean_measure_moments(const CoxModel& model, double t);

// Event counts over sliding windows [s, s+t) at the given stride; sample
// mean and unbiased sample variance per window length. Requires at least 2
// windows per length.
std::vector<MomentPoint> empirical_mean_measure(const EventSeries& series,
                                                const std::vector<double>& window_lengths,
                                                double stride);

// Three-stage least squares: mean_intensity through the origin against the
// mean curve; (var_intensity, tau0) by a tau0 grid with the closed-form
// amplitude at each rung plus golden-section refinement against the
// variance curve; then the lognormal moment map. Requires >= 3 points.
CoxModel fit_cox(const std::vector<MomentPoint>& curve);

// Exact autoregressive discretization: over a step of length h,
// z' = a*z + sqrt(1-a^2)*eps with a = exp(-h/tau0); z0 standard normal.
// dt <= tau0/10 recommended for the trapezoid integral.
IntensityPath simulate_intensity(const CoxModel& model, double horizon, double dt,
                                 RandomStream& rng);

// Cumulative mean measure at t of a fresh intensity path.
double sample_mean_measure(const CoxModel& model, double t, double dt, RandomStream& rng);

// Doubly stochastic sample: draw a path, N ~ Poisson(M_t), then place N
// points by inverting the normalized cumulative intensity. Sorted times;
// possibly empty.
std::vector<double> simulate_events(const CoxModel& model, double t, double dt,
                                    RandomStream& rng);

// Maps an intensity-process autocorrelation to the log-Gaussian one:
// rho_z = ln(1 + rho_intensity*delta_sq) / ln(1 + delta_sq), with delta_sq
// the squared coefficient of variation of the intensity. The difference
// from identity is small for delta_sq well below 1.
double gaussian_acf_from_intensity_acf(double rho_intensity, double delta_sq);

}  // namespace pulsemax
