#include "hashchem/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "hashchem/error.hpp"

namespace hashchem {

Series average_series(std::span<const Series> runs) {
    if (runs.empty()) {
        throw PreconditionError("average_series: no runs");
    }
    const auto& first = runs.front();
    for (const auto& s : runs) {
        if (s.first_tick != first.first_tick || s.values.size() != first.values.size()) {
            throw PreconditionError("average_series: runs cover different ticks");
        }
    }
    Series mean;
    mean.first_tick = first.first_tick;
    mean.values.resize(first.values.size());
    for (std::size_t i = 0; i < mean.values.size(); ++i) {
        double sum = 0.0;
        std::size_t count = 0;
        for (const auto& s : runs) {
            if (s.values[i]) {
                sum += *s.values[i];
                ++count;
            }
        }
        if (count > 0) {
            mean.values[i] = sum / static_cast<double>(count);
        }
    }
    return mean;
}

std::string_view to_string(GrowthModel model) {
    return model == GrowthModel::bounded ? "bounded" : "unbounded";
}

std::string_view to_string(TickSampling sampling) {
    return sampling == TickSampling::every_tick ? "every_tick" : "log_spaced";
}

double growth_regressor(GrowthModel model, double t) {
    const double lt = std::log(t);
    return model == GrowthModel::bounded ? -1.0 / lt : lt;
}

double growth_predict(const FitDiagnostics& fit, double t) {
    return fit.a * growth_regressor(fit.model, t) + fit.b;
}

std::vector<std::int64_t> fit_ticks(const FitOptions& options) {
    if (options.t_lo >= options.t_hi) {
        throw PreconditionError("fit_growth: degenerate regressor range (t_lo >= t_hi)");
    }
    if (options.t_lo < 2) {
        throw PreconditionError("fit_growth: t_lo must be >= 2 so that ln t > 0");
    }
    std::vector<std::int64_t> ticks;
    if (options.sampling == TickSampling::every_tick) {
        for (std::int64_t t = options.t_lo; t <= options.t_hi; ++t) {
            ticks.push_back(t);
        }
        return ticks;
    }
    const std::size_t n = std::max<std::size_t>(options.log_points, 2);
    const double l0 = std::log(static_cast<double>(options.t_lo));
    const double l1 = std::log(static_cast<double>(options.t_hi));
    for (std::size_t j = 0; j < n; ++j) {
        const double l = l0 + (l1 - l0) * static_cast<double>(j) / static_cast<double>(n - 1);
        auto t = static_cast<std::int64_t>(std::llround(std::exp(l)));
        t = std::clamp(t, options.t_lo, options.t_hi);
        if (ticks.empty() || ticks.back() != t) {
            ticks.push_back(t);
        }
    }
    return ticks;
}

FitDiagnostics fit_growth(const Series& series, GrowthModel model, const FitOptions& options) {
    const auto ticks = fit_ticks(options);
    if (series.values.empty() || series.first_tick > options.t_lo || series.last_tick() < options.t_hi) {
        throw PreconditionError("fit_growth: series does not cover the fit range");
    }
    std::vector<double> t;
    std::vector<double> y;
    for (const auto tick : ticks) {
        if (const auto v = series.at(tick)) {
            t.push_back(static_cast<double>(tick));
            y.push_back(*v);
        }
    }
    return fit_growth_points(t, y, model);
}

FitDiagnostics fit_growth_points(std::span<const double> t, std::span<const double> y, GrowthModel model) {
    if (t.size() != y.size()) {
        throw PreconditionError("fit_growth: t and y differ in length");
    }
    const std::size_t n = t.size();
    if (n < 3) {
        throw PreconditionError("fit_growth: need at least 3 points");
    }
    std::vector<double> x(n);
    double mean_x = 0.0;
    double mean_y = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        if (!(t[i] > 1.0)) {
            throw PreconditionError("fit_growth: ticks must exceed 1");
        }
        x[i] = growth_regressor(model, t[i]);
        mean_x += x[i];
        mean_y += y[i];
    }
    mean_x /= static_cast<double>(n);
    mean_y /= static_cast<double>(n);

    double sxx = 0.0;
    double sxy = 0.0;
    double tss = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double dx = x[i] - mean_x;
        const double dy = y[i] - mean_y;
        sxx += dx * dx;
        sxy += dx * dy;
        tss += dy * dy;
    }
    if (!(sxx > 0.0)) {
        throw PreconditionError("fit_growth: degenerate regressor (all points share one tick)");
    }

    FitDiagnostics fit;
    fit.model = model;
    fit.a = sxy / sxx;
    fit.b = mean_y - fit.a * mean_x;
    fit.n_points = static_cast<std::int64_t>(n);

    double rss = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double r = y[i] - (fit.a * x[i] + fit.b);
        rss += r * r;
    }
    fit.rss = rss;
    fit.r_squared = tss > 0.0 ? 1.0 - rss / tss : 1.0;

    const auto nd = static_cast<double>(n);
    const double log_lik_term = rss > 0.0 ? nd * std::log(rss / nd) : -std::numeric_limits<double>::infinity();
    fit.aic = log_lik_term + 2.0 * kFitParameters;
    fit.bic = log_lik_term + kFitParameters * std::log(nd);
    return fit;
}

double log_slope(const Series& series, std::int64_t t_lo, std::int64_t t_hi) {
    FitOptions options;
    options.t_lo = t_lo;
    options.t_hi = t_hi;
    return fit_growth(series, GrowthModel::unbounded, options).a;
}

} // namespace hashchem
