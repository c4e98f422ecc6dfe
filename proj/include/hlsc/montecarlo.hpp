#pragma once

#include <cstdint>
#include <vector>

#include "hlsc/lyapunov.hpp"
#include "hlsc/model.hpp"

namespace hlsc {

/// SplitMix64 finalizer.  Trajectory i of an estimation run draws from the
/// engine seeded with splitmix64(seed + i), which keeps streams decorrelated
/// and bit-reproducible across platforms.
std::uint64_t splitmix64(std::uint64_t z);

/// One simulated run under a stationary policy: states x_0..x_H, actions
/// a_0..a_{H-1}, and the realized discounted cost sum alpha^k C(x_k, a_k).
struct Trajectory {
    std::vector<int> states;
    std::vector<int> actions;
    double discounted_cost = 0.0;
    std::uint64_t seed = 0;
};

/// Simulates `horizon` steps from x0 under f.  Successors are drawn by
/// inverse CDF over the sparse kernel row in target-id order; uniforms come
/// from a mt19937_64 engine seeded with splitmix64(seed), so identical
/// inputs give bit-identical trajectories.
Trajectory simulate_trajectory(const ModelSpec& m, const Policy& f, int x0, int horizon,
                               std::uint64_t seed);

struct Estimate {
    double mean = 0.0;
    double halfwidth95 = 0.0;
    /// Deterministic truncation error: |V_f(x0) - E[estimate]| is at most
    /// M * gamma^horizon * W(x0) / (1 - gamma).
    double truncation_bound = 0.0;
    long n_traj = 0;
    int horizon = 0;
    std::uint64_t seed = 0;
};

/// Monte Carlo estimate of V_f(x0) from n_traj independent trajectories
/// (trajectory i uses stream seed + i).  halfwidth95 is the normal-
/// approximation 95% confidence halfwidth of the mean.  Requires a passing
/// growth certificate (for the truncation bound).
Estimate estimate_value(const ModelSpec& m, const Policy& f, int x0, long n_traj, int horizon,
                        std::uint64_t seed);

}  // namespace hlsc
