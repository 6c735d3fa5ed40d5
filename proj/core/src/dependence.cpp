#include "pulsemax/dependence.hpp"

#include <cmath>
#include <stdexcept>

#include "pulsemax/errors.hpp"

namespace pulsemax {

Acf autocorrelation(const std::vector<double>& x, int max_lag) {
    const std::size_t n = x.size();
    if (max_lag < 1) throw std::invalid_argument("autocorrelation: max_lag must be >= 1");
    if (n <= static_cast<std::size_t>(max_lag))
        throw std::invalid_argument("autocorrelation: need more samples than lags");

    double mean = 0.0;
    for (double v : x) mean += v;
    mean /= static_cast<double>(n);

    std::vector<double> dx(n);
    double denom = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        dx[i] = x[i] - mean;
        denom += dx[i] * dx[i];
    }
    if (!(denom > 0.0)) throw NumericalError("autocorrelation of a constant sequence");

    Acf acf;
    acf.max_lag = max_lag;
    acf.values.resize(max_lag + 1);
    acf.values[0] = 1.0;
    for (int k = 1; k <= max_lag; ++k) {
        double s = 0.0;
        for (std::size_t i = 0; i + k < n; ++i) s += dx[i] * dx[i + k];
        acf.values[k] = s / denom;
    }
    return acf;
}

double variance_function(const Acf& acf, int T) {
    if (T < 1 || T > acf.max_lag + 1)
        throw std::invalid_argument("variance_function: window outside [1, max_lag+1]");
    double s = 1.0;
    for (int k = 1; k < T; ++k)
        s += 2.0 * (1.0 - static_cast<double>(k) / T) * acf.values[k];
    return s / T;
}

ScaleOfFluctuation scale_of_fluctuation(const Acf& acf, const std::vector<int>& windows) {
    if (windows.empty())
        throw std::invalid_argument("scale_of_fluctuation: no windows given");
    ScaleOfFluctuation out;
    out.tau_c_by_window.reserve(windows.size());
    int largest = 0;
    for (int T : windows) {
        const double est = static_cast<double>(T) * variance_function(acf, T);
        out.tau_c_by_window.emplace_back(T, est);
        if (T >= largest) {
            largest = T;
            out.converged_value = est;
        }
    }
    return out;
}

int run_length(double tau_c) {
    if (!(tau_c > 0.0)) throw std::invalid_argument("run_length: tau_c must be positive");
    const int rounded = static_cast<int>(std::llround(tau_c));
    return rounded < 2 ? 2 : rounded;
}

}  // namespace pulsemax
