#include "pulsemax/bayes_cdf.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "pulsemax/errors.hpp"

namespace pulsemax {

BetaPosterior posterior_params(int n, double p_hat, double theta, ThetaScaling scaling) {
    if (n < 1) throw std::invalid_argument("posterior_params: n must be >= 1");
    if (!(theta > 0.0) || theta > 1.0)
        throw std::invalid_argument("posterior_params: theta must lie in (0,1]");
    const double bound = static_cast<double>(n) / (n + 1.0);
    if (!(p_hat >= 0.0) || p_hat > bound + 1e-12)
        throw std::invalid_argument("posterior_params: p_hat outside [0, n/(n+1)]");

    const int k = static_cast<int>(std::llround((n + 1.0) * p_hat));
    if (k > n) throw DataError("posterior_params: inconsistent p_hat, k exceeds n");

    BetaPosterior post;
    post.n = n;
    post.k = k;
    post.theta = theta;
    post.alpha1 =
        scaling == ThetaScaling::both_sides ? (k + 1.0) * theta + 1.0 : k + 1.0;
    post.alpha2 = (n - k) * theta + 1.0;
    return post;
}

Moments posterior_moments(const BetaPosterior& post) {
    const double a = post.alpha1, b = post.alpha2;
    const double mean = a / (a + b);
    const double variance = a * b / ((a + b) * (a + b) * (a + b + 1.0));
    return Moments{mean, std::sqrt(variance) / mean};
}

double order_statistic_cdf(int i, int n, double theta, double p) {
    if (i < 1 || i > n) throw std::invalid_argument("order_statistic_cdf: rank outside [1,n]");
    if (!(p > 0.0) || !(p < 1.0))
        throw std::invalid_argument("order_statistic_cdf: p must lie in (0,1)");
    if (!(theta > 0.0) || theta > 1.0)
        throw std::invalid_argument("order_statistic_cdf: theta must lie in (0,1]");

    const double tau = theta * (n - i + 1.0) * (1.0 - p);
    if (tau <= 0.0) return 1.0;
    // Poisson partial sum exp(-tau) * sum_{s<i} tau^s/s!, accumulated in log
    // space so large tau and rank cannot overflow
    const double ltau = std::log(tau);
    double lse = 0.0;  // s = 0 term
    for (int s = 1; s < i; ++s) {
        const double lt = s * ltau - std::lgamma(s + 1.0);
        const double m = std::max(lse, lt);
        lse = m + std::log(std::exp(lse - m) + std::exp(lt - m));
    }
    return std::clamp(std::exp(lse - tau), 0.0, 1.0);
}

double sample_posterior(const BetaPosterior& post, RandomStream& rng) {
    return rng.beta(post.alpha1, post.alpha2);
}

}  // namespace pulsemax
