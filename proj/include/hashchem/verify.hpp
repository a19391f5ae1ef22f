#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "hashchem/core.hpp"

namespace hashchem {

// Reference implementations used to cross-check the fast paths. They share
// no code with the routines they check.

/// O(n) scan: ids of particles with squared distance <= radius^2.
std::vector<ParticleId> brute_force_neighbors(const World& world, Vec2 center, double radius);

struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
};

/// Least squares line through (x, y) by solving the 2x2 normal equations
/// from raw sums with Cramer's rule.
LineFit normal_equations_fit(std::span<const double> x, std::span<const double> y);

struct VerifyOptions {
    std::uint64_t seed = 0x5EED;
    int neighbor_worlds = 1000;
    int max_particles = 500;
    int hash_keys = 100000;
    int conservation_runs = 3;
    std::int64_t conservation_steps = 300;
    /// Negative control: break the grid query and expect the oracle to fail.
    bool inject_grid_fault = false;
};

struct OracleReport {
    std::string name;
    bool passed = false;
    std::string detail;
    double seconds = 0.0;
};

using ReportSink = std::function<void(const OracleReport&)>;

/// Runs every oracle; reports each as it finishes. Returns true iff all pass.
bool run_verification(const VerifyOptions& options, const ReportSink& sink = {});

OracleReport verify_neighbor_oracle(const VerifyOptions& options);
OracleReport verify_ols_oracle(const VerifyOptions& options);
OracleReport verify_hash_oracle(const VerifyOptions& options);
OracleReport verify_conservation(const VerifyOptions& options);

} // namespace hashchem
