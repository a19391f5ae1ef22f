#include "hashchem/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#include "hashchem/analysis.hpp"
#include "hashchem/engine.hpp"
#include "hashchem/error.hpp"
#include "hashchem/fitness.hpp"
#include "hashchem/spatial.hpp"

namespace hashchem {

std::vector<ParticleId> brute_force_neighbors(const World& world, Vec2 center, double radius) {
    std::vector<ParticleId> ids;
    for (const auto& p : world.particles) {
        const double dx = p.pos.x - center.x;
        const double dy = p.pos.y - center.y;
        if (dx * dx + dy * dy <= radius * radius) {
            ids.push_back(p.id);
        }
    }
    return ids;
}

LineFit normal_equations_fit(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size() || x.size() < 2) {
        throw PreconditionError("normal_equations_fit: need >= 2 paired points");
    }
    long double n = 0, sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        n += 1;
        sx += x[i];
        sy += y[i];
        sxx += static_cast<long double>(x[i]) * x[i];
        sxy += static_cast<long double>(x[i]) * y[i];
    }
    // [sxx sx; sx n] [slope; intercept] = [sxy; sy]
    const long double det = sxx * n - sx * sx;
    if (det == 0) {
        throw PreconditionError("normal_equations_fit: singular system");
    }
    LineFit fit;
    fit.slope = static_cast<double>((sxy * n - sx * sy) / det);
    fit.intercept = static_cast<double>((sxx * sy - sx * sxy) / det);
    return fit;
}

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

} // namespace

OracleReport verify_neighbor_oracle(const VerifyOptions& options) {
    const auto start = Clock::now();
    OracleReport report{"neighbor grid vs brute force", true, {}, 0.0};
    RngStream rng(options.seed);
    Params params;
    std::int64_t queries = 0;
    for (int w = 0; w < options.neighbor_worlds && report.passed; ++w) {
        params.init_pop = rng.uniform_int(1, options.max_particles);
        World world = init_world(params, derive_run_stream(options.seed, static_cast<std::uint64_t>(w)));
        // Some worlds get clustered particles so dense cells are exercised.
        if (w % 3 == 0) {
            for (auto& p : world.particles) {
                p.pos.x = 0.4 + 0.1 * p.pos.x;
                p.pos.y = 0.4 + 0.1 * p.pos.y;
            }
        }
        GridIndex index = build_index(world);
        if (options.inject_grid_fault) {
            index.set_fault(GridIndex::Fault::skip_corner_cells);
        }
        for (int q = 0; q < 10; ++q) {
            Vec2 center{rng.uniform01(), rng.uniform01()};
            if (q % 2 == 0 && !world.particles.empty()) {
                center = world.particles[rng.below(world.particles.size())].pos;
            }
            auto fast = neighbors_within(index, world, center, params.radius);
            auto slow = brute_force_neighbors(world, center, params.radius);
            std::sort(fast.begin(), fast.end());
            std::sort(slow.begin(), slow.end());
            ++queries;
            if (fast != slow || index.last_buckets_inspected() > 9) {
                report.passed = false;
                report.detail = "mismatch in world " + std::to_string(w) + ": grid " + std::to_string(fast.size()) +
                                " vs brute force " + std::to_string(slow.size());
                break;
            }
        }
    }
    report.seconds = seconds_since(start);
    if (report.passed) {
        report.detail = std::to_string(options.neighbor_worlds) + " worlds, " + std::to_string(queries) + " queries";
    }
    return report;
}

OracleReport verify_ols_oracle(const VerifyOptions& options) {
    const auto start = Clock::now();
    OracleReport report{"growth fit vs normal equations", true, {}, 0.0};
    RngStream rng(options.seed ^ 0x01);
    double worst_exact = 0.0;
    double worst_oracle = 0.0;
    for (const GrowthModel model : {GrowthModel::bounded, GrowthModel::unbounded}) {
        std::vector<double> t;
        std::vector<double> exact;
        std::vector<double> noisy;
        double walk = 0.0;
        const double a = model == GrowthModel::bounded ? 5.0 : 2.0;
        const double b = model == GrowthModel::bounded ? 3.0 : 1.0;
        for (int tick = 100; tick <= 2000; ++tick) {
            t.push_back(tick);
            const double lt = std::log(static_cast<double>(tick));
            const double x = model == GrowthModel::bounded ? -1.0 / lt : lt;
            exact.push_back(a * x + b);
            walk += rng.standard_normal() * 0.01;
            noisy.push_back(a * x + b + walk);
        }
        const auto fit = fit_growth_points(t, exact, model);
        worst_exact = std::max({worst_exact, std::fabs(fit.a - a), std::fabs(fit.b - b)});

        std::vector<double> x(t.size());
        for (std::size_t i = 0; i < t.size(); ++i) {
            const double lt = std::log(t[i]);
            x[i] = model == GrowthModel::bounded ? -1.0 / lt : lt;
        }
        const auto fast = fit_growth_points(t, noisy, model);
        const auto ref = normal_equations_fit(x, noisy);
        worst_oracle = std::max({worst_oracle, std::fabs(fast.a - ref.slope), std::fabs(fast.b - ref.intercept)});
    }
    report.passed = worst_exact < 1e-9 && worst_oracle < 1e-8;
    report.detail = "exact-recovery error " + std::to_string(worst_exact) + ", oracle deviation " +
                    std::to_string(worst_oracle);
    report.seconds = seconds_since(start);
    return report;
}

OracleReport verify_hash_oracle(const VerifyOptions& options) {
    const auto start = Clock::now();
    OracleReport report{"hash determinism and permutation invariance", true, {}, 0.0};
    RngStream rng(options.seed ^ 0x02);
    const auto evaluator = Evaluator::hash(100000);
    RngStream unused(0);
    std::vector<TypeId> types;
    for (int i = 0; i < options.hash_keys; ++i) {
        types.resize(static_cast<std::size_t>(rng.uniform_int(1, 12)));
        for (auto& t : types) {
            t = static_cast<TypeId>(rng.uniform_int(1, 1000));
        }
        const auto key = MultisetKey::from_types(types);
        for (std::size_t j = types.size(); j > 1; --j) {
            std::swap(types[j - 1], types[rng.below(j)]);
        }
        const auto shuffled = MultisetKey::from_types(types);
        const double f1 = fitness_of(evaluator, key, unused);
        const double f2 = fitness_of(evaluator, shuffled, unused);
        if (hash_multiset(key) != hash_multiset(shuffled) || f1 != f2 || !(f1 >= 0.0 && f1 < 1.0)) {
            report.passed = false;
            report.detail = "key " + std::to_string(i) + " hashed inconsistently";
            break;
        }
    }
    if (report.passed && unused != RngStream(0)) {
        report.passed = false;
        report.detail = "hash evaluator consumed random state";
    }
    if (report.passed) {
        report.detail = std::to_string(options.hash_keys) + " keys";
    }
    report.seconds = seconds_since(start);
    return report;
}

OracleReport verify_conservation(const VerifyOptions& options) {
    const auto start = Clock::now();
    OracleReport report{"population conservation identity", true, {}, 0.0};
    Params params;
    params.steps = options.conservation_steps;
    std::int64_t checked = 0;
    for (int r = 0; r < options.conservation_runs && report.passed; ++r) {
        World world = init_world(params, derive_run_stream(options.seed ^ 0x03, static_cast<std::uint64_t>(r)));
        run_world(world, [&](const StepOutcome& o, const World& w) {
            if (!report.passed) return;
            ++checked;
            const auto expected = static_cast<std::int64_t>(o.population_before) +
                                  static_cast<std::int64_t>(o.replicated_individuals()) -
                                  static_cast<std::int64_t>(o.deaths);
            bool in_square = true;
            for (const auto& p : w.particles) {
                in_square = in_square && p.pos.x >= 0.0 && p.pos.x <= 1.0 && p.pos.y >= 0.0 && p.pos.y <= 1.0;
            }
            if (expected != static_cast<std::int64_t>(o.population) ||
                o.population != w.particles.size() || !in_square) {
                report.passed = false;
                report.detail = "run " + std::to_string(r) + " tick " + std::to_string(o.tick) + " violates identity";
            }
        });
    }
    if (report.passed) {
        report.detail = std::to_string(checked) + " steps checked";
    }
    report.seconds = seconds_since(start);
    return report;
}

bool run_verification(const VerifyOptions& options, const ReportSink& sink) {
    bool all = true;
    for (auto check : {verify_neighbor_oracle, verify_ols_oracle, verify_hash_oracle, verify_conservation}) {
        const OracleReport report = check(options);
        all = all && report.passed;
        if (sink) {
            sink(report);
        }
    }
    return all;
}

} // namespace hashchem
