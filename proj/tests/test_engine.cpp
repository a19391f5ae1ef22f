#include <doctest.h>

#include <array>
#include <map>
#include <set>

#include "hashchem/engine.hpp"
#include "hashchem/error.hpp"

using namespace hashchem;

namespace {

Params lone_particle() {
    Params p;
    p.init_pop = 1;
    p.mu = 0.0;
    return p;
}

} // namespace

TEST_CASE("a lone particle with f = 1 replicates with probability 1 - 1/dmax") {
    const Params params = lone_particle();
    const Evaluator one = Evaluator::constant(1.0);
    constexpr int n = 20000;
    int replications = 0;
    for (int s = 0; s < n; ++s) {
        World w = init_world(params, static_cast<std::uint64_t>(s));
        const auto out = step(w, one);
        CHECK(out.deaths == 0);
        replications += static_cast<int>(out.replication_events.size());
    }
    // Binomial(20000, 0.99) has sd ~ 0.0007.
    CHECK(static_cast<double>(replications) / n == doctest::Approx(0.99).epsilon(0.004));
}

TEST_CASE("lone particle outcome frequencies pass a chi-square test") {
    // k = 1, the gate always opens: death 1-f, replication 0.99 f, idle 0.01 f.
    const Params params = lone_particle();
    for (const double f : {0.3, 0.7}) {
        const Evaluator eval = Evaluator::constant(f);
        constexpr int n = 50000;
        std::array<double, 3> observed{};
        for (int s = 0; s < n; ++s) {
            World w = init_world(params, 1000003ULL * static_cast<std::uint64_t>(s) + 17);
            const auto out = step(w, eval);
            if (out.deaths) {
                ++observed[0];
            } else if (!out.replication_events.empty()) {
                ++observed[1];
            } else {
                ++observed[2];
            }
        }
        const std::array<double, 3> p{1 - f, 0.99 * f, 0.01 * f};
        double chi2 = 0;
        for (std::size_t i = 0; i < 3; ++i) {
            const double e = p[i] * n;
            chi2 += (observed[i] - e) * (observed[i] - e) / e;
        }
        // Critical value of chi-square with 2 degrees of freedom at p = 0.01.
        CHECK(chi2 < 9.2103);
    }
}

TEST_CASE("f = 0 drives any population extinct") {
    Params params;
    params.init_pop = 50;
    params.steps = 500;
    World w = init_world(params, 4);
    const auto summary = run_world(w, Evaluator::constant(0.0));
    CHECK(summary.extinct);
    CHECK(w.particles.empty());
    REQUIRE(summary.extinction_tick);
    CHECK(*summary.extinction_tick == w.tick);
}

TEST_CASE("no growth once every neighbourhood holds dmax particles") {
    Params params;
    params.d_max = 1;
    params.init_pop = 30;
    params.steps = 200;
    World w = init_world(params, 5);
    std::size_t last = w.particles.size();
    run_world(w, Evaluator::constant(1.0), [&](const StepOutcome& out, const World&) {
        CHECK(out.replication_events.empty());
        CHECK(out.population <= last);
        last = out.population;
    });
}

TEST_CASE("conservation, bounds and id uniqueness under the hash evaluator") {
    Params params;
    params.steps = 300;
    for (std::uint64_t seed : {1, 2, 3}) {
        World w = init_world(params, seed);
        run_world(w, [&](const StepOutcome& out, const World& world) {
            CHECK(out.population ==
                  out.population_before + out.replicated_individuals() - out.deaths);
            CHECK(out.population == world.particles.size());
            std::set<ParticleId> ids;
            for (const auto& p : world.particles) {
                REQUIRE(p.pos.x >= 0.0);
                REQUIRE(p.pos.x <= 1.0);
                REQUIRE(p.pos.y >= 0.0);
                REQUIRE(p.pos.y <= 1.0);
                REQUIRE(p.type >= 1);
                REQUIRE(p.type <= 1000);
                ids.insert(p.id);
            }
            CHECK(ids.size() == world.particles.size());
        });
    }
}

TEST_CASE("copies sit on their parents") {
    Params params;
    params.init_pop = 40;
    params.mu = 0.0;
    params.d_max = 1000;
    World w = init_world(params, 6);
    const ParticleId first_new = w.next_id;
    const auto out = step(w, Evaluator::constant(1.0));
    REQUIRE_FALSE(out.replication_events.empty());

    std::map<std::pair<double, double>, std::multiset<TypeId>> parents;
    std::size_t copies = 0;
    for (const auto& p : w.particles) {
        if (p.id < first_new) parents[{p.pos.x, p.pos.y}].insert(p.type);
    }
    for (const auto& p : w.particles) {
        if (p.id >= first_new) {
            ++copies;
            const auto it = parents.find({p.pos.x, p.pos.y});
            REQUIRE(it != parents.end());
            CHECK(it->second.count(p.type) > 0);
        }
    }
    CHECK(copies == out.replicated_individuals());
}

TEST_CASE("runs are reproducible") {
    Params params;
    params.steps = 200;
    World a = init_world(params, 77);
    World b = init_world(params, 77);
    run_world(a);
    run_world(b);
    CHECK(a == b);
}

TEST_CASE("stepping an extinct world is a no-op") {
    Params params;
    params.init_pop = 0;
    World w = init_world(params, 1);
    const World before = w;
    const auto out = step(w, Evaluator::hash(100000));
    CHECK(out.population == 0);
    CHECK(out.replication_events.empty());
    CHECK(w == before);

    const auto summary = run_world(w);
    CHECK(summary.extinct);
    CHECK(summary.extinction_tick == 0);
}

TEST_CASE("stepping past the configured horizon is rejected") {
    Params params;
    params.steps = 1;
    World w = init_world(params, 1);
    Stepper stepper(params);
    stepper.step(w, Evaluator::constant(1.0));
    CHECK_THROWS_AS(stepper.step(w, Evaluator::constant(1.0)), PreconditionError);
}

TEST_CASE("the uniform-random evaluator collapses quickly") {
    Params params;
    params.evaluator = EvaluatorKind::uniform_random;
    params.steps = 2000;
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        World w = init_world(params, seed);
        const auto summary = run_world(w);
        CHECK(summary.extinct);
        CHECK(summary.extinction_tick.value_or(2001) < 500);
    }
}
