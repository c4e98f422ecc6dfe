#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "hlsc/model.hpp"
#include "hlsc/montecarlo.hpp"

namespace hlsc::testing {

/// Absolute-tolerance comparison for frozen expected values.
inline bool close(double a, double b, double tol) { return std::abs(a - b) <= tol; }

/// One interior node, one action: self-loop with cost 1, alpha = 0.5.
inline ModelSpec single_node_model() {
    ModelSpec m;
    m.alpha = 0.5;
    m.grid.nodes.push_back({0, {0.0}, NodeKind::interior, {}});
    m.weight = {1.0};
    m.actions = {{{0, 1.0, {{0, 1.0}}}}};
    return m;
}

/// Two states: s0 offers a0 (cost 0, go to s1) and a1 (cost 1, stay);
/// s1 has a single action (cost 1, stay).  alpha = 0.5.  By hand,
/// V*(s1) = 2 and V*(s0) = min(0 + 0.5*2, 1 + 0.5*V*(s0)) = 1.
inline ModelSpec two_state_model() {
    ModelSpec m;
    m.alpha = 0.5;
    m.grid.nodes.push_back({0, {0.0}, NodeKind::interior, {}});
    m.grid.nodes.push_back({1, {1.0}, NodeKind::interior, {}});
    m.weight = {1.0, 1.0};
    m.actions.resize(2);
    m.actions[0] = {{0, 0.0, {{1, 1.0}}}, {1, 1.0, {{0, 1.0}}}};
    m.actions[1] = {{0, 1.0, {{1, 1.0}}}};
    return m;
}

/// Two interior nodes (ids 0, 1) and one boundary node (id 2) whose
/// envelope neighborhood is both interiors.  Self-loop dynamics.
inline ModelSpec envelope_triple_model() {
    ModelSpec m;
    m.alpha = 0.5;
    m.grid.nodes.push_back({0, {0.0}, NodeKind::interior, {}});
    m.grid.nodes.push_back({1, {1.0}, NodeKind::interior, {}});
    m.grid.nodes.push_back({2, {0.5}, NodeKind::boundary, {0, 1}});
    m.weight = {1.0, 1.0, 1.0};
    for (int i = 0; i < 3; ++i) m.actions.push_back({{0, 0.0, {{i, 1.0}}}});
    return m;
}

struct Rng {
    std::mt19937_64 eng;
    explicit Rng(std::uint64_t seed) : eng(splitmix64(seed)) {}
    double uniform() { return static_cast<double>(eng() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    int below(int n) { return static_cast<int>(eng() % static_cast<std::uint64_t>(n)); }
};

/// Random two-layer grid wrapped in a trivially valid model: n_interior
/// interior nodes, n_boundary boundary nodes each with 1..3 interior
/// neighbors, self-loop actions, W == 1.
inline ModelSpec random_two_layer_model(int n_interior, int n_boundary, Rng& rng) {
    ModelSpec m;
    m.alpha = 0.5;
    int id = 0;
    for (int i = 0; i < n_interior; ++i, ++id) {
        m.grid.nodes.push_back({id, {}, NodeKind::interior, {}});
    }
    for (int b = 0; b < n_boundary; ++b, ++id) {
        int deg = 1 + rng.below(3);
        std::vector<int> nb;
        for (int k = 0; k < deg; ++k) {
            int y = rng.below(n_interior);
            bool dup = false;
            for (int z : nb) dup = dup || z == y;
            if (!dup) nb.push_back(y);
        }
        m.grid.nodes.push_back({id, {}, NodeKind::boundary, nb});
    }
    for (int i = 0; i < id; ++i) {
        m.weight.push_back(1.0);
        m.actions.push_back({{0, 0.0, {{i, 1.0}}}});
    }
    return m;
}

inline GridFunction random_function(const ModelSpec& m, Rng& rng, double scale = 10.0) {
    GridFunction u(m.num_nodes());
    for (auto& v : u) v = rng.uniform(-scale, scale);
    return u;
}

/// Random function with |u(x)| <= scale * W(x).
inline GridFunction random_w_scaled(const ModelSpec& m, Rng& rng, double scale = 5.0) {
    GridFunction u(m.num_nodes());
    for (int x = 0; x < m.num_nodes(); ++x) u[x] = m.weight[x] * rng.uniform(-scale, scale);
    return u;
}

inline Policy random_policy(const ModelSpec& m, Rng& rng) {
    Policy f(m.num_nodes());
    for (int x = 0; x < m.num_nodes(); ++x) {
        const auto& acts = m.actions[x];
        f[x] = acts[rng.below(static_cast<int>(acts.size()))].id;
    }
    return f;
}

}  // namespace hlsc::testing
