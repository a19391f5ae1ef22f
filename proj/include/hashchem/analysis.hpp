#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "hashchem/metrics.hpp"

namespace hashchem {

/// Pointwise mean across runs. Runs missing a value at a tick contribute
/// nothing there; a tick missing in every run stays empty. All series must
/// share first tick and length.
Series average_series(std::span<const Series> runs);

enum class GrowthModel {
    bounded,   // n(t) = -a / ln t + b
    unbounded, // n(t) =  a ln t + b
};

std::string_view to_string(GrowthModel model);

enum class TickSampling {
    /// Every integer tick in [t_lo, t_hi], equally weighted.
    every_tick,
    /// Ticks rounded from a geometric grid over [t_lo, t_hi], duplicates
    /// dropped.
    log_spaced,
};

std::string_view to_string(TickSampling sampling);

struct FitOptions {
    std::int64_t t_lo = 100;
    std::int64_t t_hi = 2000;
    TickSampling sampling = TickSampling::every_tick;
    std::size_t log_points = 100;
};

struct FitDiagnostics {
    GrowthModel model = GrowthModel::unbounded;
    double a = 0.0;
    double b = 0.0;
    double r_squared = 0.0;
    double rss = 0.0;
    double aic = 0.0;
    double bic = 0.0;
    std::int64_t n_points = 0;
};

/// Number of estimated quantities in the information criteria: a, b and
/// the Gaussian noise variance.
inline constexpr int kFitParameters = 3;

/// Regressor of the model at tick t: -1/ln t or ln t.
double growth_regressor(GrowthModel model, double t);
double growth_predict(const FitDiagnostics& fit, double t);

/// Ticks used by a fit with `options`.
std::vector<std::int64_t> fit_ticks(const FitOptions& options);

/// Ordinary least squares of the series on the model regressor plus an
/// intercept. Ticks without a value are skipped. Throws PreconditionError on
/// a degenerate range, fewer than 3 points, or a series that does not cover
/// [t_lo, t_hi].
FitDiagnostics fit_growth(const Series& series, GrowthModel model, const FitOptions& options = {});

/// Same fit on explicit (t, y) points.
FitDiagnostics fit_growth_points(std::span<const double> t, std::span<const double> y, GrowthModel model);

/// Least-squares slope of y on ln t over the ticks in [t_lo, t_hi]; the `a`
/// of the unbounded model.
double log_slope(const Series& series, std::int64_t t_lo, std::int64_t t_hi);

} // namespace hashchem
