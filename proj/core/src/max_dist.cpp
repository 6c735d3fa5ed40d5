#include "pulsemax/max_dist.hpp"

#include <cmath>
#include <stdexcept>

#include "pulsemax/errors.hpp"

namespace pulsemax {

namespace {

constexpr double kEulerGamma = 0.5772156649;

double reduced_variate(double cdf) { return -std::log(-std::log(cdf)); }

}  // namespace

double GumbelModel::cdf(double x) const {
    return std::exp(-std::exp(-alpha_scale * (x - mode_u)));
}

double FrechetModel::cdf(double x) const {
    if (!(x > 0.0)) return 0.0;
    return std::exp(-std::pow(x / scale, -shape));
}

double conditional_max_cdf(double p, double m_t) {
    if (!(p >= 0.0) || p > 1.0)
        throw std::invalid_argument("conditional_max_cdf: p outside [0,1]");
    if (!(m_t >= 0.0))
        throw std::invalid_argument("conditional_max_cdf: expected count must be >= 0");
    return std::exp(-m_t * (1.0 - p));
}

MaxCdfPoint mc_max_cdf(const CoxModel& cox,
                       const std::function<double(RandomStream&)>& draw_p, double t_hours,
                       std::size_t n_sims, RandomStream& rng, double level, double dt) {
    if (n_sims < 1000) throw std::invalid_argument("mc_max_cdf: need at least 1000 sims");
    if (dt <= 0.0) dt = cox.tau0 / 50.0;
    double sum = 0.0, sumsq = 0.0;
    for (std::size_t s = 0; s < n_sims; ++s) {
        const double m = sample_mean_measure(cox, t_hours, dt, rng);
        const double p = draw_p(rng);
        const double v = std::exp(-m * (1.0 - p));
        sum += v;
        sumsq += v * v;
    }
    const double n = static_cast<double>(n_sims);
    const double mean = sum / n;
    const double var = std::max(0.0, (sumsq - n * mean * mean) / (n - 1.0));
    return MaxCdfPoint{level, mean, std::sqrt(var / n)};
}

MaxCdfPoint mc_max_cdf(const CoxModel& cox, const BetaPosterior& post, double t_hours,
                       std::size_t n_sims, RandomStream& rng, double level, double dt) {
    return mc_max_cdf(
        cox, [&post](RandomStream& r) { return sample_posterior(post, r); }, t_hours,
        n_sims, rng, level, dt);
}

namespace {

struct Line {
    double slope = 0.0;
    double intercept = 0.0;
    double sse = 0.0;
};

Line least_squares(const std::vector<double>& x, const std::vector<double>& y) {
    const double n = static_cast<double>(x.size());
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    const double det = n * sxx - sx * sx;
    if (!(std::fabs(det) > 0.0)) throw NumericalError("degenerate probability-plot fit");
    Line line;
    line.slope = (n * sxy - sx * sy) / det;
    line.intercept = (sy - line.slope * sx) / n;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double resid = y[i] - line.slope * x[i] - line.intercept;
        line.sse += resid * resid;
    }
    return line;
}

}  // namespace

GumbelFit gumbel_fit(const std::vector<std::pair<double, double>>& points,
                     double horizon_days) {
    if (points.size() < 2) throw std::invalid_argument("gumbel_fit: need at least 2 points");
    std::vector<double> x, y;
    x.reserve(points.size());
    y.reserve(points.size());
    for (const auto& [level, cdf] : points) {
        if (!(cdf > 0.0) || !(cdf < 1.0))
            throw std::invalid_argument("gumbel_fit: cdf values must lie strictly in (0,1)");
        x.push_back(level);
        y.push_back(reduced_variate(cdf));
    }
    const Line line = least_squares(x, y);
    if (!(line.slope > 0.0))
        throw NumericalError("gumbel_fit: non-positive slope, not a maximum-domain fit");
    GumbelFit fit;
    fit.model = GumbelModel{line.slope, -line.intercept / line.slope, horizon_days, 1.0};
    fit.sse = line.sse;
    return fit;
}

FrechetFit frechet_fit(const std::vector<std::pair<double, double>>& points) {
    if (points.size() < 2) throw std::invalid_argument("frechet_fit: need at least 2 points");
    std::vector<double> x, y;
    x.reserve(points.size());
    y.reserve(points.size());
    for (const auto& [level, cdf] : points) {
        if (!(level > 0.0)) throw std::invalid_argument("frechet_fit: levels must be positive");
        if (!(cdf > 0.0) || !(cdf < 1.0))
            throw std::invalid_argument("frechet_fit: cdf values must lie strictly in (0,1)");
        x.push_back(std::log(level));
        y.push_back(reduced_variate(cdf));
    }
    const Line line = least_squares(x, y);
    if (!(line.slope > 0.0))
        throw NumericalError("frechet_fit: non-positive slope, not a maximum-domain fit");
    FrechetFit fit;
    fit.model = FrechetModel{line.slope, std::exp(-line.intercept / line.slope)};
    fit.sse = line.sse;
    return fit;
}

GumbelModel apply_extremal_index(const GumbelModel& model, double theta) {
    if (!(theta > 0.0) || theta > 1.0)
        throw std::invalid_argument("apply_extremal_index: theta must lie in (0,1]");
    if (model.theta != 1.0)
        throw std::invalid_argument("apply_extremal_index: model already theta-adjusted");
    GumbelModel out = model;
    // CDF -> CDF^theta: mode shifts left by ln(1/theta)/alpha, scale kept
    out.mode_u = model.mode_u + std::log(theta) / model.alpha_scale;
    out.theta = theta;
    return out;
}

GumbelModel horizon_scale(const GumbelModel& model, double r_days) {
    if (!(r_days >= 1.0)) throw std::invalid_argument("horizon_scale: r must be >= 1");
    if (model.horizon_days != 1.0)
        throw std::invalid_argument("horizon_scale: model must be a 1-day base");
    GumbelModel out = model;
    // CDF -> CDF^r: mode shifts right by ln(r)/alpha, scale kept
    out.mode_u = model.mode_u + std::log(r_days) / model.alpha_scale;
    out.horizon_days = r_days;
    return out;
}

SummaryStats gumbel_summary(const GumbelModel& model) {
    const double mean = model.mode_u + kEulerGamma / model.alpha_scale;
    const double sd = M_PI / (model.alpha_scale * std::sqrt(6.0));
    if (!(mean > 0.0))
        throw NumericalError("gumbel_summary: non-positive mean, cov undefined");
    return SummaryStats{mean, sd / mean};
}

}  // namespace pulsemax
