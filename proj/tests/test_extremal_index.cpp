#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "pulsemax/errors.hpp"
#include "pulsemax/extremal_index.hpp"
#include "pulsemax/random.hpp"
#include "pulsemax/synthetic.hpp"
#include "support/cluster_oracle.hpp"

using namespace pulsemax;

TEST_CASE("runs estimator hand cases") {
    // isolated exceedances: every one terminates its own cluster
    const std::vector<double> a = {5, 1, 5, 1, 5, 1};
    RunsEstimate ra = runs_estimator(a, 4.0, 2);
    CHECK(ra.n_exceedances == 3);
    CHECK(ra.n_cluster_starts == 3);
    CHECK(ra.theta_hat == doctest::Approx(1.0));

    // 5,6 adjacent forms one cluster; the late 7 is its own
    const std::vector<double> b = {1, 5, 6, 1, 1, 7, 1};
    RunsEstimate rb = runs_estimator(b, 4.0, 2);
    CHECK(rb.n_exceedances == 3);
    CHECK(rb.n_cluster_starts == 2);
    CHECK(rb.theta_hat == doctest::Approx(2.0 / 3.0));

    // one unbroken run of exceedances
    const std::vector<double> c = {5, 5, 5, 1};
    RunsEstimate rc = runs_estimator(c, 4.0, 2);
    CHECK(rc.theta_hat == doctest::Approx(1.0 / 3.0));

    // window truncation: a terminal exceedance still closes its cluster
    const std::vector<double> d = {1, 1, 5};
    RunsEstimate rd = runs_estimator(d, 4.0, 3);
    CHECK(rd.n_exceedances == 1);
    CHECK(rd.n_cluster_starts == 1);
}

TEST_CASE("runs estimator input contract") {
    const std::vector<double> x = {1, 2, 3};
    CHECK_THROWS_AS(runs_estimator(x, 10.0, 2), DataError);
    CHECK_THROWS_AS(runs_estimator(x, 1.0, 1), std::invalid_argument);
    CHECK_THROWS_AS(runs_estimator({}, 1.0, 2), std::invalid_argument);
    CHECK_THROWS_AS(runs_estimator(x, 1.0, 4), std::invalid_argument);
}

TEST_CASE("runs estimator is invariant under increasing affine maps") {
    RandomStream rng(51);
    std::vector<double> x;
    for (int i = 0; i < 5000; ++i) x.push_back(rng.unit_frechet());
    std::vector<double> y;
    for (double v : x) y.push_back(2.0 * v + 3.0);
    const double u = 8.0;
    const RunsEstimate rx = runs_estimator(x, u, 3);
    const RunsEstimate ry = runs_estimator(y, 2.0 * u + 3.0, 3);
    CHECK(rx.theta_hat == ry.theta_hat);
    CHECK(rx.n_exceedances == ry.n_exceedances);
}

TEST_CASE("longer runs can only merge clusters") {
    SyntheticSpec spec;
    spec.kind = SyntheticSpec::Kind::max_ar;
    spec.a = 0.5;
    spec.n = 20000;
    RandomStream rng(53);
    const std::vector<double> x = generate(spec, rng);
    std::vector<double> sorted = x;
    std::sort(sorted.begin(), sorted.end());
    const double u = sorted[static_cast<std::size_t>(0.98 * sorted.size())];
    double prev = 1.0;
    for (int r = 2; r <= 6; ++r) {
        const double th = runs_estimator(x, u, r).theta_hat;
        CHECK(th <= prev + 1e-12);
        prev = th;
    }
}

TEST_CASE("no adjacent exceedances means no clustering at r = 2") {
    std::vector<double> x;
    for (int i = 0; i < 1000; ++i) x.push_back(i % 2 == 0 ? 10.0 : 0.0);
    CHECK(runs_estimator(x, 5.0, 2).theta_hat == doctest::Approx(1.0));
}

TEST_CASE("runs estimator agrees with the cluster-partition oracle") {
    SyntheticSpec spec;
    spec.kind = SyntheticSpec::Kind::max_ar;
    spec.a = 0.5;
    spec.n = 50000;
    RandomStream rng(57);
    const std::vector<double> x = generate(spec, rng);
    std::vector<double> sorted = x;
    std::sort(sorted.begin(), sorted.end());
    for (double p : {0.95, 0.99}) {
        const double u = sorted[static_cast<std::size_t>(p * sorted.size())];
        for (int r = 2; r <= 4; ++r) {
            const RunsEstimate est = runs_estimator(x, u, r);
            const double oracle_theta =
                1.0 / oracle::mean_cluster_size(x, u, r);
            CHECK(est.theta_hat == doctest::Approx(oracle_theta).epsilon(1e-12));
        }
    }
}

TEST_CASE("runs curve orders by exceedance probability and drops dead rungs") {
    RandomStream rng(59);
    std::vector<double> x;
    for (int i = 0; i < 10000; ++i) x.push_back(rng.unit_frechet());
    const double top = *std::max_element(x.begin(), x.end());
    std::vector<std::string> warnings;
    const auto curve =
        runs_curve(x, {2.0, 5.0, 20.0, top + 1.0}, 2, &warnings);
    CHECK(curve.size() == 3);
    CHECK(warnings.size() == 1);
    for (std::size_t i = 1; i < curve.size(); ++i)
        CHECK(curve[i].first < curve[i - 1].first);
    CHECK_THROWS_AS(runs_curve(x, {5.0, 2.0}, 2, nullptr), std::invalid_argument);
}

TEST_CASE("bias fit recovers exact model curves") {
    std::vector<std::pair<double, double>> curve;
    for (int i = 0; i < 16; ++i) {
        const double q = 0.10 - 0.006 * i;
        curve.push_back({q, 0.8 + 0.5 * q});  // beta2 = 1
    }
    const ThetaFit fit = fit_theta(curve);
    CHECK(fit.theta == doctest::Approx(0.8).epsilon(1e-6));
    CHECK(fit.beta1 == doctest::Approx(0.5).epsilon(1e-4));
    CHECK(fit.beta2 == doctest::Approx(1.0).epsilon(1e-4));
    CHECK(fit.sse < 1e-12);
}

TEST_CASE("bias fit recovers a curved exponent") {
    std::vector<std::pair<double, double>> curve;
    for (int i = 0; i < 20; ++i) {
        const double q = 0.12 - 0.005 * i;
        curve.push_back({q, 0.6 + 0.9 * std::pow(q, 1.7)});
    }
    const ThetaFit fit = fit_theta(curve);
    CHECK(fit.theta == doctest::Approx(0.6).epsilon(1e-4));
    CHECK(fit.beta2 == doctest::Approx(1.7).epsilon(1e-2));
    CHECK(fit.sse < 1e-10);
}

TEST_CASE("bias fit never loses to the constant model") {
    RandomStream rng(61);
    for (int rep = 0; rep < 5; ++rep) {
        std::vector<std::pair<double, double>> curve;
        double mean = 0.0;
        for (int i = 0; i < 12; ++i) {
            const double q = 0.10 - 0.007 * i;
            const double y = 0.5 + 0.4 * q + 0.02 * rng.normal();
            curve.push_back({q, std::min(1.0, std::max(0.01, y))});
            mean += curve.back().second;
        }
        mean /= static_cast<double>(curve.size());
        double const_sse = 0.0;
        for (const auto& [q, y] : curve) const_sse += (y - mean) * (y - mean);
        const ThetaFit fit = fit_theta(curve);
        CHECK(fit.sse <= const_sse + 1e-12);
    }
}

TEST_CASE("bias fit keeps the intercept inside (0, 1]") {
    // constant curve above 1: the unconstrained intercept lands at 1.02 and
    // must be pinned to the boundary
    std::vector<std::pair<double, double>> flat;
    for (int i = 0; i < 8; ++i) flat.push_back({0.10 - 0.01 * i, 1.02});
    const ThetaFit pinned = fit_theta(flat);
    CHECK(pinned.theta == doctest::Approx(1.0));

    std::vector<std::pair<double, double>> curve;
    for (int i = 0; i < 10; ++i) {
        const double q = 0.10 - 0.008 * i;
        curve.push_back({q, 1.05 + 0.5 * q});  // extrapolates above 1
    }
    const ThetaFit fit = fit_theta(curve);
    CHECK(fit.theta <= 1.0);
    CHECK(fit.theta > 0.0);
}

TEST_CASE("bias fit input contract") {
    std::vector<std::pair<double, double>> three = {
        {0.1, 0.5}, {0.05, 0.6}, {0.01, 0.7}};
    CHECK_THROWS_AS(fit_theta(three), std::invalid_argument);
    std::vector<std::pair<double, double>> same_q(5, {0.05, 0.5});
    CHECK_THROWS_AS(fit_theta(same_q), NumericalError);
    std::vector<std::pair<double, double>> bad_q = {
        {1.0, 0.5}, {0.05, 0.6}, {0.01, 0.7}, {0.005, 0.7}};
    CHECK_THROWS_AS(fit_theta(bad_q), std::invalid_argument);
}

TEST_CASE("independent data extrapolate to no clustering") {
    SyntheticSpec spec;
    spec.kind = SyntheticSpec::Kind::iid;
    spec.n = 100000;
    RandomStream rng(63);
    const std::vector<double> x = generate(spec, rng);
    std::vector<double> sorted = x;
    std::sort(sorted.begin(), sorted.end());
    std::vector<double> ladder;
    for (int i = 0; i < 20; ++i)
        ladder.push_back(sorted[static_cast<std::size_t>(
            (0.90 + 0.005 * i) * sorted.size())]);
    const ThetaFit fit = fit_theta(runs_curve(x, ladder, 2, nullptr));
    CHECK(fit.theta >= 0.9);
}

TEST_CASE("clustered data extrapolate to the generator index") {
    SyntheticSpec spec;
    spec.kind = SyntheticSpec::Kind::max_ar;
    spec.a = 0.5;
    spec.n = 100000;
    RandomStream rng(67);
    const std::vector<double> x = generate(spec, rng);
    std::vector<double> sorted = x;
    std::sort(sorted.begin(), sorted.end());
    std::vector<double> ladder;
    for (int i = 0; i < 20; ++i)
        ladder.push_back(sorted[static_cast<std::size_t>(
            (0.90 + 0.005 * i) * sorted.size())]);
    const ThetaFit fit = fit_theta(runs_curve(x, ladder, 2, nullptr));
    CHECK(fit.theta > 0.4);
    CHECK(fit.theta < 0.6);
}
