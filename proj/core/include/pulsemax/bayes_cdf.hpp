#pragma once

#include "pulsemax/random.hpp"

namespace pulsemax {

// How the extremal index discounts the effective observation counts in the
// posterior. exceedances_only scales only the above-level count, giving
// alpha1 = k+1, alpha2 = (n-k)*theta + 1. both_sides also scales the
// below-level count: alpha1 = (k+1)*theta + 1.
enum class ThetaScaling { exceedances_only, both_sides };

// Beta posterior for the unknown CDF value P at a fixed level, from a
// uniform prior and k of n dependent observations at or below the level.
struct BetaPosterior {
    double alpha1 = 1.0;
    double alpha2 = 1.0;
    int n = 0;
    int k = 0;
    double theta = 1.0;
};

struct Moments {
    double mean = 0.0;
    double cov = 0.0;  // coefficient of variation
};

// k is recovered as round((n+1)*p_hat), exact when p_hat came from
// empirical_cdf. Requires 0 <= p_hat <= n/(n+1) and theta in (0,1].
BetaPosterior posterior_params(int n, double p_hat, double theta,
                               ThetaScaling scaling = ThetaScaling::exceedances_only);

Moments posterior_moments(const BetaPosterior& post);

// CDF of the i-th order statistic (i = 1 is the maximum) of n dependent
// observations at CDF level p: exp(-tau) * sum_{s<i} tau^s/s! with
// tau = theta*(n-i+1)*(1-p). Evaluated in log space; output in [0,1].
double order_statistic_cdf(int i, int n, double theta, double p);

// Beta draw from the posterior; deterministic under a fixed stream state.
double sample_posterior(const BetaPosterior& post, RandomStream& rng);

}  // namespace pulsemax
