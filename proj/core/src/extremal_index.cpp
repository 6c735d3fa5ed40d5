#include "pulsemax/extremal_index.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "pulsemax/errors.hpp"
#include "pulsemax/event_series.hpp"

namespace pulsemax {

RunsEstimate runs_estimator(const std::vector<double>& x, double threshold, int r) {
    if (r < 2) throw std::invalid_argument("runs_estimator: r must be >= 2");
    const std::size_t n = x.size();
    if (n < static_cast<std::size_t>(r))
        throw std::invalid_argument("runs_estimator: sequence shorter than the run length");

    std::size_t exceedances = 0;
    std::size_t starts = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (!(x[i] > threshold)) continue;
        ++exceedances;
        // cluster terminator: the next r-1 observations all at or below the
        // threshold; the window truncates at the sequence end
        bool closes = true;
        const std::size_t end = std::min(n, i + static_cast<std::size_t>(r));
        for (std::size_t j = i + 1; j < end; ++j) {
            if (x[j] > threshold) {
                closes = false;
                break;
            }
        }
        if (closes) ++starts;
    }
    if (exceedances == 0)
        throw DataError("runs_estimator: threshold too high, no exceedances");
    return RunsEstimate{threshold, r,
                        static_cast<double>(starts) / static_cast<double>(exceedances),
                        exceedances, starts};
}

std::vector<std::pair<double, double>> runs_curve(const std::vector<double>& x,
                                                  const std::vector<double>& thresholds,
                                                  int r,
                                                  std::vector<std::string>* warnings) {
    if (!std::is_sorted(thresholds.begin(), thresholds.end()))
        throw std::invalid_argument("runs_curve: thresholds must ascend");
    std::vector<std::pair<double, double>> out;
    out.reserve(thresholds.size());
    for (double u : thresholds) {
        const double q = 1.0 - empirical_cdf(x, u);
        try {
            const RunsEstimate est = runs_estimator(x, u, r);
            out.emplace_back(q, est.theta_hat);
        } catch (const DataError&) {
            if (warnings)
                warnings->push_back("threshold " + std::to_string(u) +
                                    ": no exceedances, rung dropped");
        }
    }
    return out;
}

namespace {

struct InnerFit {
    double alpha = 0.0;
    double beta1 = 0.0;
    double sse = 0.0;
};

// Least squares for y = alpha + beta1 * q^beta2 at fixed beta2, with alpha
// constrained to (0,1]. The problem is linear in (alpha, beta1); when the
// unconstrained alpha leaves the box it is pinned to the boundary and beta1
// re-solved, which is the exact constrained minimum.
InnerFit solve_at(const std::vector<std::pair<double, double>>& curve, double beta2) {
    const double n = static_cast<double>(curve.size());
    double sg = 0.0, sgg = 0.0, sy = 0.0, sgy = 0.0;
    for (const auto& [q, y] : curve) {
        const double g = std::pow(q, beta2);
        sg += g;
        sgg += g * g;
        sy += y;
        sgy += g * y;
    }
    InnerFit fit;
    const double det = n * sgg - sg * sg;
    if (std::fabs(det) > 1e-14 * n * sgg) {
        fit.beta1 = (n * sgy - sg * sy) / det;
        fit.alpha = (sy - fit.beta1 * sg) / n;
    } else {
        fit.beta1 = 0.0;
        fit.alpha = sy / n;
    }
    constexpr double kFloor = 1e-12;
    if (fit.alpha > 1.0 || fit.alpha <= 0.0) {
        fit.alpha = fit.alpha > 1.0 ? 1.0 : kFloor;
        fit.beta1 = sgg > 0.0 ? (sgy - fit.alpha * sg) / sgg : 0.0;
    }
    fit.sse = 0.0;
    for (const auto& [q, y] : curve) {
        const double resid = y - fit.alpha - fit.beta1 * std::pow(q, beta2);
        fit.sse += resid * resid;
    }
    return fit;
}

}  // namespace

ThetaFit fit_theta(const std::vector<std::pair<double, double>>& curve) {
    if (curve.size() < 4)
        throw std::invalid_argument("fit_theta: need at least 4 points for 3 parameters");
    double qmin = curve.front().first, qmax = curve.front().first;
    for (const auto& [q, y] : curve) {
        if (!(q > 0.0) || !(q < 1.0))
            throw std::invalid_argument("fit_theta: exceedance probabilities must be in (0,1)");
        qmin = std::min(qmin, q);
        qmax = std::max(qmax, q);
    }
    if (!(qmax > qmin))
        throw NumericalError("fit_theta: degenerate curve, a single distinct q");

    // log grid over the shape exponent, then golden-section refinement
    constexpr double kLo = 0.05, kHi = 5.0;
    constexpr int kGrid = 200;
    double best_b2 = kLo;
    double best_sse = -1.0;
    int best_idx = 0;
    for (int i = 0; i < kGrid; ++i) {
        const double b2 =
            kLo * std::pow(kHi / kLo, static_cast<double>(i) / (kGrid - 1));
        const InnerFit fit = solve_at(curve, b2);
        if (best_sse < 0.0 || fit.sse < best_sse) {
            best_sse = fit.sse;
            best_b2 = b2;
            best_idx = i;
        }
    }
    const auto grid_at = [&](int i) {
        i = std::clamp(i, 0, kGrid - 1);
        return kLo * std::pow(kHi / kLo, static_cast<double>(i) / (kGrid - 1));
    };
    double lo = std::log(grid_at(best_idx - 1));
    double hi = std::log(grid_at(best_idx + 1));
    constexpr double kGolden = 0.3819660112501051;
    double x1 = lo + kGolden * (hi - lo);
    double x2 = hi - kGolden * (hi - lo);
    double f1 = solve_at(curve, std::exp(x1)).sse;
    double f2 = solve_at(curve, std::exp(x2)).sse;
    for (int iter = 0; iter < 80 && hi - lo > 1e-13; ++iter) {
        if (f1 < f2) {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = lo + kGolden * (hi - lo);
            f1 = solve_at(curve, std::exp(x1)).sse;
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = hi - kGolden * (hi - lo);
            f2 = solve_at(curve, std::exp(x2)).sse;
        }
    }
    const double refined = std::exp(0.5 * (lo + hi));
    if (solve_at(curve, refined).sse < best_sse) best_b2 = refined;

    const InnerFit fit = solve_at(curve, best_b2);
    ThetaFit out;
    out.theta = fit.alpha;
    out.beta1 = fit.beta1;
    out.beta2 = best_b2;
    out.sse = fit.sse;
    out.points = curve;
    return out;
}

}  // namespace pulsemax
