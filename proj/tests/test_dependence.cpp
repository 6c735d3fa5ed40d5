#include <doctest.h>

#include <cmath>
#include <vector>

#include "pulsemax/dependence.hpp"
#include "pulsemax/errors.hpp"
#include "pulsemax/random.hpp"

using namespace pulsemax;

namespace {

Acf geometric_acf(double phi, int max_lag) {
    Acf acf;
    acf.max_lag = max_lag;
    acf.values.resize(max_lag + 1);
    for (int k = 0; k <= max_lag; ++k) acf.values[k] = std::pow(phi, k);
    return acf;
}

std::vector<double> ar1_path(double phi, int n, std::uint64_t seed) {
    RandomStream rng(seed);
    std::vector<double> x(n);
    const double stat_sd = 1.0 / std::sqrt(1.0 - phi * phi);
    x[0] = stat_sd * rng.normal();
    for (int i = 1; i < n; ++i) x[i] = phi * x[i - 1] + rng.normal();
    return x;
}

}  // namespace

TEST_CASE("autocorrelation fixes lag zero and needs variation") {
    RandomStream rng(3);
    std::vector<double> x;
    for (int i = 0; i < 1000; ++i) x.push_back(rng.normal());
    const Acf acf = autocorrelation(x, 10);
    CHECK(acf.values[0] == doctest::Approx(1.0));
    CHECK(acf.max_lag == 10);

    CHECK_THROWS_AS(autocorrelation(std::vector<double>(50, 3.0), 5),
                    NumericalError);
    CHECK_THROWS_AS(autocorrelation({1.0, 2.0}, 5), std::invalid_argument);
}

TEST_CASE("white noise autocorrelation stays inside the sampling band") {
    RandomStream rng(41);
    std::vector<double> x;
    const int n = 100000;
    for (int i = 0; i < n; ++i) x.push_back(rng.normal());
    const Acf acf = autocorrelation(x, 20);
    const double band = 3.0 / std::sqrt(static_cast<double>(n));
    int inside = 0;
    for (int k = 1; k <= 20; ++k)
        if (std::fabs(acf.values[k]) < band) ++inside;
    CHECK(inside >= 18);
}

TEST_CASE("AR(1) autocorrelation recovers the geometric decay") {
    const double phi = 0.5;
    const Acf acf = autocorrelation(ar1_path(phi, 200000, 43), 8);
    for (int k = 1; k <= 5; ++k)
        CHECK(std::fabs(acf.values[k] - std::pow(phi, k)) < 0.02);
}

TEST_CASE("variance function hand values") {
    const Acf acf = geometric_acf(0.5, 10);
    CHECK(variance_function(acf, 1) == doctest::Approx(1.0));
    // T = 4: (1/4)[1 + 2(3/4*1/2 + 2/4*1/4 + 1/4*1/8)] = 0.515625
    CHECK(variance_function(acf, 4) == doctest::Approx(0.515625).epsilon(1e-12));

    Acf white;
    white.max_lag = 10;
    white.values.assign(11, 0.0);
    white.values[0] = 1.0;
    for (int T = 1; T <= 10; ++T)
        CHECK(variance_function(white, T) == doctest::Approx(1.0 / T));
}

TEST_CASE("variance function stays in (0, 1] for positively correlated input") {
    const Acf acf = geometric_acf(0.8, 100);
    double prev = 1.0;
    for (int T = 1; T <= 100; ++T) {
        const double g = variance_function(acf, T);
        CHECK(g > 0.0);
        CHECK(g <= 1.0 + 1e-12);
        CHECK(g <= prev + 1e-12);  // local averaging never adds variance
        prev = g;
    }
}

TEST_CASE("scale of fluctuation reaches the AR(1) limit on analytic input") {
    for (double phi : {0.3, 0.5, 0.8}) {
        const Acf acf = geometric_acf(phi, 499);
        std::vector<int> windows;
        for (int T = 2; T <= 500; T += 2) windows.push_back(T);
        const ScaleOfFluctuation sof = scale_of_fluctuation(acf, windows);
        const double limit = (1.0 + phi) / (1.0 - phi);
        CHECK(sof.converged_value == doctest::Approx(limit).epsilon(0.05));
        CHECK(sof.tau_c_by_window.size() == windows.size());
    }
}

TEST_CASE("scale of fluctuation grows along the window for persistent input") {
    const Acf acf = geometric_acf(0.6, 199);
    std::vector<int> windows = {2, 5, 10, 50, 100, 200};
    const ScaleOfFluctuation sof = scale_of_fluctuation(acf, windows);
    for (std::size_t i = 1; i < sof.tau_c_by_window.size(); ++i)
        CHECK(sof.tau_c_by_window[i].second >=
              sof.tau_c_by_window[i - 1].second - 1e-12);
}

TEST_CASE("independent data give a scale of fluctuation near one") {
    RandomStream rng(47);
    std::vector<double> x;
    for (int i = 0; i < 100000; ++i) x.push_back(rng.normal());
    const Acf acf = autocorrelation(x, 250);
    const ScaleOfFluctuation sof = scale_of_fluctuation(acf, {200});
    CHECK(std::fabs(sof.converged_value - 1.0) < 0.1);
}

TEST_CASE("run length rounds the scale of fluctuation with a floor of two") {
    CHECK(run_length(0.7) == 2);
    CHECK(run_length(1.4) == 2);
    CHECK(run_length(2.5) == 3);
    CHECK(run_length(3.4) == 3);
    CHECK(run_length(10.6) == 11);
}
