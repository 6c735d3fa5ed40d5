#pragma once

#include <utility>
#include <vector>

namespace pulsemax {

// Sample autocorrelation: values[k] = rho(k), k = 0..max_lag; rho(0) = 1.
struct Acf {
    std::vector<double> values;
    int max_lag = 0;
};

// tau_c estimates T*gamma(T) per window; converged_value is taken at the
// largest window, where the curve has flattened for mixing sequences.
struct ScaleOfFluctuation {
    std::vector<std::pair<int, double>> tau_c_by_window;
    double converged_value = 0.0;
};

// Biased (full-sample) normalization: rho(k) = sum_i dx_i dx_{i+k} / sum dx^2.
// Requires length > max_lag >= 1 and nonzero variance.
Acf autocorrelation(const std::vector<double>& x, int max_lag);

// Variance-ratio of the window-T local average under the given ACF:
// gamma(T) = (1/T) [1 + 2 sum_{k=1}^{T-1} (1 - k/T) rho(k)].
double variance_function(const Acf& acf, int T);

// Per window, T*gamma(T); for an AR(1)-type ACF rho(k) = phi^k this
// converges to (1+phi)/(1-phi) as T grows.
ScaleOfFluctuation scale_of_fluctuation(const Acf& acf, const std::vector<int>& windows);

// Declustering run length: nearest integer to tau_c, floored at 2.
int run_length(double tau_c);

}  // namespace pulsemax
