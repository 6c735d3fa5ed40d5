#pragma once

#include <cstddef>
#include <functional>
#include <utility>
#include <vector>

#include "pulsemax/bayes_cdf.hpp"
#include "pulsemax/cox_process.hpp"
#include "pulsemax/random.hpp"

namespace pulsemax {

// Maximum-load distribution over a horizon: CDF(x) = exp(-exp(-a(x-u))).
// theta records the extremal-index adjustment already applied.
struct GumbelModel {
    double alpha_scale = 1.0;  // 1/magnitude, > 0
    double mode_u = 0.0;
    double horizon_days = 1.0;
    double theta = 1.0;

    double cdf(double x) const;
};

// CDF(x) = exp(-(x/scale)^-shape) on x > 0.
struct FrechetModel {
    double shape = 1.0;
    double scale = 1.0;

    double cdf(double x) const;
};

struct MaxCdfPoint {
    double level = 0.0;
    double cdf = 0.0;
    double mc_std_error = 0.0;
};

struct GumbelFit {
    GumbelModel model;
    double sse = 0.0;  // residual in reduced-variate space
};

struct FrechetFit {
    FrechetModel model;
    double sse = 0.0;
};

struct SummaryStats {
    double mean = 0.0;
    double cov = 0.0;
};

// P(max over the window <= level | expected count m_t, CDF value p at the
// level) = exp(-m_t*(1-p)).
double conditional_max_cdf(double p, double m_t);

// Monte Carlo average of exp(-m_t*(1-p)) over independent draws
// m_t ~ sample_mean_measure and p ~ draw_p (sampling uncertainty assumed
// independent of the rate process). n_sims >= 1000; dt <= 0 selects
// tau0/50. Sequential reduction, so a fixed seed fixes the output.
MaxCdfPoint mc_max_cdf(const CoxModel& cox,
                       const std::function<double(RandomStream&)>& draw_p, double t_hours,
                       std::size_t n_sims, RandomStream& rng, double level = 0.0,
                       double dt = -1.0);

MaxCdfPoint mc_max_cdf(const CoxModel& cox, const BetaPosterior& post, double t_hours,
                       std::size_t n_sims, RandomStream& rng, double level = 0.0,
                       double dt = -1.0);

// Ordinary least squares on reduced variates y = -ln(-ln cdf) against the
// level; alpha_scale = slope, mode_u = -intercept/slope. Requires >= 2
// points with cdf strictly inside (0,1) and a positive slope.
GumbelFit gumbel_fit(const std::vector<std::pair<double, double>>& points,
                     double horizon_days = 1.0);

// Same reduced variates regressed on ln(level); shape = slope,
// scale = exp(-intercept/slope). Levels must be positive. The sse is
// comparable with the Gumbel one (same response variable).
FrechetFit frechet_fit(const std::vector<std::pair<double, double>>& points);

// Dependence adjustment CDF -> CDF^theta: mode shifts left by
// ln(1/theta)/alpha, scale (hence variance) unchanged. Requires a
// theta = 1 model and theta in (0,1].
GumbelModel apply_extremal_index(const GumbelModel& model, double theta);

// Max-stability scaling CDF -> CDF^r over r days: mode shifts right by
// ln(r)/alpha, scale unchanged. Requires a 1-day model and r >= 1.
GumbelModel horizon_scale(const GumbelModel& model, double r_days);

// mean = u + gamma_e/alpha, std = pi/(alpha*sqrt(6)), cov = std/mean.
SummaryStats gumbel_summary(const GumbelModel& model);

}  // namespace pulsemax
