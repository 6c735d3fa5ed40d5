#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

namespace pulsemax {

// Runs estimate at one threshold: cluster starts over exceedances.
struct RunsEstimate {
    double threshold = 0.0;
    int r = 2;
    double theta_hat = 0.0;  // n_cluster_starts / n_exceedances, in (0,1]
    std::size_t n_exceedances = 0;
    std::size_t n_cluster_starts = 0;
};

// Log-linear bias-model fit y(q) = theta + beta1 * q^beta2 extrapolated to
// q -> 0; theta clamped to (0,1], beta2 > 0 by the optimizer's domain.
struct ThetaFit {
    double theta = 0.0;
    double beta1 = 0.0;
    double beta2 = 0.0;
    double sse = 0.0;
    std::vector<std::pair<double, double>> points;  // (q, theta_hat) fitted
};

// Counts exceedances (x_i > threshold) and cluster terminators (exceedance
// followed by r-1 observations all <= threshold; the window truncates at
// the end of the sequence, so a terminal exceedance closes its own
// cluster). Requires r >= 2 and at least one exceedance.
RunsEstimate runs_estimator(const std::vector<double>& x, double threshold, int r);

// Runs estimates across an ascending threshold ladder, keyed by exceedance
// probability q(u) = 1 - empirical_cdf(x, u); pairs ordered by descending
// q. Rungs with zero exceedances are dropped with a warning.
std::vector<std::pair<double, double>> runs_curve(const std::vector<double>& x,
                                                  const std::vector<double>& thresholds,
                                                  int r,
                                                  std::vector<std::string>* warnings = nullptr);

// Least-squares fit of the bias model over a (q, theta_hat) curve: beta2 on
// a log grid with the closed-form linear solve for (theta, beta1) at each
// rung, then golden-section refinement. Requires >= 4 points and >= 2
// distinct q values.
ThetaFit fit_theta(const std::vector<std::pair<double, double>>& curve);

}  // namespace pulsemax
