#include "hlsc/montecarlo.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace hlsc {

std::uint64_t splitmix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

namespace {

// 53-bit uniform in [0, 1); avoids std::uniform_real_distribution, whose
// output is not pinned down by the standard.
double next_uniform(std::mt19937_64& eng) {
    return static_cast<double>(eng() >> 11) * 0x1.0p-53;
}

int sample_row(const std::vector<std::pair<int, double>>& row, double u) {
    double cum = 0.0;
    for (const auto& [y, p] : row) {
        cum += p;
        if (u < cum) return y;
    }
    return row.back().first;
}

}  // namespace

Trajectory simulate_trajectory(const ModelSpec& m, const Policy& f, int x0, int horizon,
                               std::uint64_t seed) {
    if (horizon < 1) throw std::invalid_argument("simulate_trajectory: horizon must be >= 1");
    if (!is_admissible(m, f))
        throw std::invalid_argument("simulate_trajectory: inadmissible policy");
    if (x0 < 0 || x0 >= m.num_nodes())
        throw std::invalid_argument("simulate_trajectory: x0 out of range");

    std::mt19937_64 eng(splitmix64(seed));
    Trajectory t;
    t.seed = seed;
    t.states.reserve(horizon + 1);
    t.actions.reserve(horizon);

    int x = x0;
    double discount = 1.0;
    t.states.push_back(x);
    for (int k = 0; k < horizon; ++k) {
        const ActionEntry& a = m.actions[x][action_index(m, x, f[x])];
        t.actions.push_back(a.id);
        t.discounted_cost += discount * a.cost;
        discount *= m.alpha;
        x = sample_row(a.transitions, next_uniform(eng));
        t.states.push_back(x);
    }
    return t;
}

Estimate estimate_value(const ModelSpec& m, const Policy& f, int x0, long n_traj, int horizon,
                        std::uint64_t seed) {
    if (n_traj < 2) throw std::invalid_argument("estimate_value: n_traj must be >= 2");
    GrowthCertificate cert = certify_growth(m);
    if (!cert.pass)
        throw std::domain_error("estimate_value: growth certificate failed (gamma = " +
                                std::to_string(cert.gamma) + ")");

    double sum = 0.0;
    double sum_sq = 0.0;
    for (long i = 0; i < n_traj; ++i) {
        double c = simulate_trajectory(m, f, x0, horizon, seed + static_cast<std::uint64_t>(i))
                       .discounted_cost;
        sum += c;
        sum_sq += c * c;
    }
    Estimate e;
    e.n_traj = n_traj;
    e.horizon = horizon;
    e.seed = seed;
    e.mean = sum / static_cast<double>(n_traj);
    double var = (sum_sq - sum * e.mean) / static_cast<double>(n_traj - 1);
    if (var < 0.0) var = 0.0;
    e.halfwidth95 = 1.96 * std::sqrt(var / static_cast<double>(n_traj));
    e.truncation_bound = cert.M * std::pow(cert.gamma, horizon) * m.weight[x0] /
                         (1.0 - cert.gamma);
    return e;
}

}  // namespace hlsc
