#include "hlsc/bench.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <stdexcept>

#include "hlsc/montecarlo.hpp"

namespace hlsc {

namespace {

void check_alpha(double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0))
        throw std::invalid_argument("alpha must lie in (0, 1), got " + std::to_string(alpha));
}

Node interior_node(int id, std::vector<double> coordinate) {
    return Node{id, std::move(coordinate), NodeKind::interior, {}};
}

std::vector<std::pair<int, double>> aggregate_row(const std::map<int, double>& mass) {
    std::vector<std::pair<int, double>> row(mass.begin(), mass.end());
    return row;
}

}  // namespace

ModelSpec make_threshold_model(int n_cells, double jump, double alpha) {
    if (n_cells < 3 || n_cells % 2 == 0)
        throw std::invalid_argument("make_threshold_model: n_cells must be odd and >= 3");
    if (!(jump > 0.0)) throw std::invalid_argument("make_threshold_model: jump must be positive");
    check_alpha(alpha);

    const int n = n_cells;
    const int left = (n - 1) / 2;   // last interior node below the threshold
    const int right = left + 1;     // first interior node above it

    ModelSpec m;
    m.alpha = alpha;
    for (int i = 0; i < n; ++i) {
        double x = static_cast<double>(i) / n;
        m.grid.nodes.push_back(interior_node(i, {x}));
        m.weight.push_back(1.0);

        double cost = x < 0.5 ? jump * (2.0 + (0.5 - x)) : jump;
        ActionEntry stay{0, cost, {{i, 1.0}}};
        ActionEntry move{1, cost, {}};
        if (i < n - 1)
            move.transitions = {{i, 0.1}, {i + 1, 0.9}};
        else
            move.transitions = {{i, 1.0}};
        m.actions.push_back({stay, move});
    }

    Node boundary{n, {0.5}, NodeKind::boundary, {left, right}};
    m.grid.nodes.push_back(boundary);
    m.weight.push_back(1.0);
    ActionEntry stay{0, 1.5 * jump, {{n, 1.0}}};
    ActionEntry move{1, jump, {{right, 0.9}, {n, 0.1}}};
    m.actions.push_back({stay, move});
    return m;
}

ModelSpec make_inventory_model(int capacity, const std::vector<double>& demand_probs,
                               double order_cost, double holding_cost, double alpha) {
    if (capacity < 1) throw std::invalid_argument("make_inventory_model: capacity must be >= 1");
    if (order_cost < 0.0 || holding_cost < 0.0)
        throw std::invalid_argument("make_inventory_model: costs must be nonnegative");
    check_alpha(alpha);
    if (demand_probs.empty())
        throw std::invalid_argument("make_inventory_model: demand_probs must be nonempty");
    double total = 0.0;
    for (double p : demand_probs) {
        if (!(p >= 0.0)) throw std::invalid_argument("make_inventory_model: negative demand prob");
        total += p;
    }
    if (std::abs(total - 1.0) > kRowSumTol)
        throw std::invalid_argument("make_inventory_model: demand_probs must sum to 1");

    ModelSpec m;
    m.alpha = alpha;
    for (int x = 0; x <= capacity; ++x) {
        m.grid.nodes.push_back(interior_node(x, {static_cast<double>(x)}));
        m.weight.push_back(1.0 + x);
        std::vector<ActionEntry> acts;
        const int max_order = std::min(1, capacity - x);
        for (int a = 0; a <= max_order; ++a) {
            std::map<int, double> mass;
            for (int k = 0; k < static_cast<int>(demand_probs.size()); ++k)
                mass[std::max(x + a - k, 0)] += demand_probs[k];
            acts.push_back(
                {a, order_cost * a + holding_cost * x, aggregate_row(mass)});
        }
        m.actions.push_back(std::move(acts));
    }
    return m;
}

std::vector<double> default_demand_probs() {
    // 5% chance of an idle period, geometric tail above it.
    std::vector<double> p = {0.05, 0.475, 0.2375, 0.11875, 0.059375, 0.0296875, 0.01484375};
    double rest = 1.0;
    for (double v : p) rest -= v;
    p.push_back(rest);
    return p;
}

ModelSpec make_queueing_model(int buffer, double arrival_p, double service_p, double reject_cost,
                              double hold_cost, double alpha) {
    if (buffer < 1) throw std::invalid_argument("make_queueing_model: buffer must be >= 1");
    if (!(arrival_p > 0.0 && arrival_p < 1.0) || !(service_p > 0.0 && service_p < 1.0))
        throw std::invalid_argument("make_queueing_model: probabilities must lie in (0, 1)");
    if (reject_cost < 0.0 || hold_cost < 0.0)
        throw std::invalid_argument("make_queueing_model: costs must be nonnegative");
    check_alpha(alpha);

    auto clamp = [buffer](int q) { return std::clamp(q, 0, buffer); };

    ModelSpec m;
    m.alpha = alpha;
    for (int x = 0; x <= buffer; ++x) {
        m.grid.nodes.push_back(interior_node(x, {static_cast<double>(x)}));
        m.weight.push_back(1.0 + x);

        std::map<int, double> admit_mass;
        admit_mass[clamp(x + 1 - 1)] += arrival_p * service_p;
        admit_mass[clamp(x + 1)] += arrival_p * (1.0 - service_p);
        admit_mass[clamp(x - 1)] += (1.0 - arrival_p) * service_p;
        admit_mass[clamp(x)] += (1.0 - arrival_p) * (1.0 - service_p);

        std::map<int, double> reject_mass;
        reject_mass[clamp(x - 1)] += service_p;
        reject_mass[clamp(x)] += 1.0 - service_p;

        ActionEntry admit{0, hold_cost * x, aggregate_row(admit_mass)};
        ActionEntry reject{1, hold_cost * x + reject_cost * arrival_p,
                           aggregate_row(reject_mass)};
        m.actions.push_back({admit, reject});
    }
    return m;
}

ModelSpec make_random_finite_mdp(int n_states, int n_actions, int sparsity, std::uint64_t seed,
                                 double alpha) {
    if (n_states < 1) throw std::invalid_argument("make_random_finite_mdp: n_states must be >= 1");
    if (n_actions < 1)
        throw std::invalid_argument("make_random_finite_mdp: n_actions must be >= 1");
    if (sparsity < 1 || sparsity > n_states)
        throw std::invalid_argument("make_random_finite_mdp: sparsity must lie in [1, n_states]");
    check_alpha(alpha);

    std::mt19937_64 eng(splitmix64(seed));
    auto uniform = [&eng] { return static_cast<double>(eng() >> 11) * 0x1.0p-53; };

    ModelSpec m;
    m.alpha = alpha;
    for (int x = 0; x < n_states; ++x) {
        m.grid.nodes.push_back(interior_node(x, {static_cast<double>(x)}));
        m.weight.push_back(1.0);
        std::vector<ActionEntry> acts;
        for (int a = 0; a < n_actions; ++a) {
            // Targets: partial Fisher-Yates over the state ids.
            std::vector<int> ids(n_states);
            for (int i = 0; i < n_states; ++i) ids[i] = i;
            for (int i = 0; i < sparsity; ++i) {
                int j = i + static_cast<int>(eng() % static_cast<std::uint64_t>(n_states - i));
                std::swap(ids[i], ids[j]);
            }
            std::vector<int> targets(ids.begin(), ids.begin() + sparsity);
            std::sort(targets.begin(), targets.end());

            std::vector<std::pair<int, double>> row;
            double total = 0.0;
            for (int t : targets) {
                double w = 0.5 + uniform();  // bounded away from zero
                row.emplace_back(t, w);
                total += w;
            }
            for (auto& [t, p] : row) p /= total;
            acts.push_back({a, 2.0 * uniform() - 1.0, std::move(row)});
        }
        m.actions.push_back(std::move(acts));
    }
    return m;
}

}  // namespace hlsc
