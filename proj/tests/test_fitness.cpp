#include <doctest.h>

#include <array>
#include <cmath>
#include <unordered_set>

#include "hashchem/error.hpp"
#include "hashchem/fitness.hpp"

using namespace hashchem;

namespace {

std::uint64_t h(std::vector<TypeId> types) { return hash_multiset(MultisetKey::from_types(std::move(types))); }

} // namespace

// Frozen from a standalone Python FNV-1a-64, itself checked against the
// published vector fnv1a64("a") = 0xaf63dc4c8601ec8c.
TEST_CASE("golden hash values") {
    CHECK(h({1}) == 0xAD2ACA7747985764ULL);
    CHECK(h({3, 7, 7}) == 0xCEAAAD76F03ED976ULL);
    CHECK(h({1, 1, 8}) == 0x7DF454857EDF5A8DULL);
    CHECK(h({1, 2}) == 0xC9C28939C99668C6ULL);
    CHECK(h({1, 2, 2}) == 0x5D24633B2BB54704ULL);
    CHECK(h({1000}) == 0x2FA9EAF82259D71CULL);

    CHECK(h({1}) % 100000 == 65636);
    CHECK(h({3, 7, 7}) % 100000 == 63254);
    CHECK(h({1, 1, 8}) % 100000 == 42541);
    CHECK(h({1, 2}) % 100000 == 1222);
    CHECK(h({1, 2, 2}) % 100000 == 2436);
    CHECK(h({1000}) % 100000 == 15964);
}

TEST_CASE("hash evaluator") {
    const Evaluator eval = Evaluator::hash(100000);
    RngStream rng(1);
    const RngStream before = rng;
    const auto key = MultisetKey::from_types({7, 3, 7});
    CHECK(fitness_of(eval, key, rng) == 0.63254);
    CHECK(fitness_of(eval, MultisetKey::from_types({1}), rng) == 0.65636);
    // Pure function: the stream is untouched.
    CHECK(rng == before);
    CHECK(fitness_of(eval, key, rng) == fitness_of(eval, MultisetKey::from_types({7, 7, 3}), rng));
    CHECK(hash_to_fitness(100000 * 7 + 42, 100000) == 0.00042);
    CHECK(hash_to_fitness(99999, 100000) < 1.0);
}

TEST_CASE("hash_multiset rejects an empty key") {
    CHECK_THROWS_AS(hash_multiset(std::span<const TypeId>{}), PreconditionError);
}

TEST_CASE("no collisions among 1e5 distinct multisets") {
    RngStream rng(8);
    std::unordered_set<std::vector<TypeId>, decltype([](const std::vector<TypeId>& v) {
                           std::size_t s = v.size();
                           for (auto t : v) s = s * 1000003 + t;
                           return s;
                       })>
        keys;
    std::unordered_set<std::uint64_t> hashes;
    while (keys.size() < 100000) {
        std::vector<TypeId> types(static_cast<std::size_t>(rng.uniform_int(1, 8)));
        for (auto& t : types) t = static_cast<TypeId>(rng.uniform_int(1, 1000));
        std::sort(types.begin(), types.end());
        if (keys.insert(types).second) {
            hashes.insert(hash_multiset(types));
        }
    }
    CHECK(hashes.size() == keys.size());
}

TEST_CASE("hash fitness deciles are uniform within 1%") {
    RngStream rng(9);
    std::array<int, 10> deciles{};
    constexpr int n = 100000;
    for (int i = 0; i < n; ++i) {
        std::vector<TypeId> types(static_cast<std::size_t>(rng.uniform_int(1, 6)));
        for (auto& t : types) t = static_cast<TypeId>(rng.uniform_int(1, 1000));
        std::sort(types.begin(), types.end());
        const double f = hash_to_fitness(hash_multiset(types), 100000);
        ++deciles[static_cast<std::size_t>(f * 10)];
    }
    for (int c : deciles) {
        CHECK(std::fabs(static_cast<double>(c) / n - 0.1) < 0.01);
    }
}

TEST_CASE("random evaluators") {
    RngStream rng(10);
    const std::vector<TypeId> key{1, 2};
    constexpr int n = 200000;
    SUBCASE("uniform") {
        const Evaluator eval = Evaluator::uniform_random();
        double sum = 0;
        for (int i = 0; i < n; ++i) {
            const double f = eval(key, rng);
            REQUIRE(f >= 0.0);
            REQUIRE(f < 1.0);
            sum += f;
        }
        CHECK(sum / n == doctest::Approx(0.5).epsilon(0.01));
    }
    SUBCASE("biased on [0.2, 1)") {
        const Evaluator eval = Evaluator::biased_random();
        double sum = 0;
        for (int i = 0; i < n; ++i) {
            const double f = eval(key, rng);
            REQUIRE(f >= 0.2);
            REQUIRE(f < 1.0);
            sum += f;
        }
        CHECK(sum / n == doctest::Approx(0.6).epsilon(0.01));
    }
    SUBCASE("random kinds consume the stream") {
        const RngStream before = rng;
        (void)Evaluator::uniform_random()(key, rng);
        CHECK_FALSE(rng == before);
    }
    SUBCASE("constant") {
        CHECK(Evaluator::constant(1.0)(key, rng) == 1.0);
        CHECK(Evaluator::constant(0.0)(key, rng) == 0.0);
        CHECK_THROWS_AS(Evaluator::constant(1.5), PreconditionError);
    }
    SUBCASE("bad arguments") {
        CHECK_THROWS_AS(Evaluator::hash(1), ConfigError);
        CHECK_THROWS_AS(Evaluator::biased_random(0.9, 0.2), ConfigError);
    }
}

TEST_CASE("from_params picks the configured kind") {
    Params p;
    CHECK(Evaluator::from_params(p).kind() == EvaluatorKind::hash);
    CHECK(Evaluator::from_params(p).modulus() == 100000);
    p.evaluator = EvaluatorKind::biased_random;
    p.biased_lo = 0.3;
    const auto e = Evaluator::from_params(p);
    CHECK(e.kind() == EvaluatorKind::biased_random);
    CHECK(e.lo() == 0.3);
    CHECK(e.hi() == 1.0);
}
