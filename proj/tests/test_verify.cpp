#include <doctest.h>

#include "hashchem/verify.hpp"

using namespace hashchem;

TEST_CASE("built-in oracles pass at reduced size") {
    VerifyOptions opt;
    opt.neighbor_worlds = 60;
    opt.hash_keys = 5000;
    opt.conservation_runs = 1;
    opt.conservation_steps = 100;
    CHECK(verify_neighbor_oracle(opt).passed);
    CHECK(verify_ols_oracle(opt).passed);
    CHECK(verify_hash_oracle(opt).passed);
    CHECK(verify_conservation(opt).passed);
}

TEST_CASE("the injected grid fault is caught") {
    VerifyOptions opt;
    opt.neighbor_worlds = 60;
    opt.inject_grid_fault = true;
    const OracleReport r = verify_neighbor_oracle(opt);
    CHECK_FALSE(r.passed);
    CHECK_FALSE(r.detail.empty());
}

TEST_CASE("normal equations oracle") {
    const std::vector<double> x{1, 2, 3, 4};
    const std::vector<double> y{3, 5, 7, 9};
    const LineFit fit = normal_equations_fit(x, y);
    CHECK(fit.slope == doctest::Approx(2.0));
    CHECK(fit.intercept == doctest::Approx(1.0));
}
