#include "hlsc/model.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>
#include <stdexcept>

namespace hlsc {

const char* violation_kind_name(ViolationKind k) {
    switch (k) {
    case ViolationKind::empty_grid: return "empty_grid";
    case ViolationKind::node_id_sequence: return "node_id_sequence";
    case ViolationKind::shape_mismatch: return "shape_mismatch";
    case ViolationKind::interior_has_neighbors: return "interior_has_neighbors";
    case ViolationKind::self_neighbor: return "self_neighbor";
    case ViolationKind::neighbor_out_of_range: return "neighbor_out_of_range";
    case ViolationKind::boundary_neighbor_not_interior: return "boundary_neighbor_not_interior";
    case ViolationKind::empty_action_set: return "empty_action_set";
    case ViolationKind::duplicate_action_id: return "duplicate_action_id";
    case ViolationKind::nonfinite_cost: return "nonfinite_cost";
    case ViolationKind::negative_probability: return "negative_probability";
    case ViolationKind::row_sum: return "row_sum";
    case ViolationKind::transition_target_out_of_range: return "transition_target_out_of_range";
    case ViolationKind::duplicate_transition: return "duplicate_transition";
    case ViolationKind::empty_transition_row: return "empty_transition_row";
    case ViolationKind::weight_below_one: return "weight_below_one";
    case ViolationKind::nonfinite_weight: return "nonfinite_weight";
    case ViolationKind::alpha_out_of_range: return "alpha_out_of_range";
    }
    return "unknown";
}

std::string Violation::message() const {
    std::ostringstream os;
    os << violation_kind_name(kind);
    if (node >= 0) os << " at node " << node;
    if (action >= 0) os << ", action " << action;
    if (!detail.empty()) os << ": " << detail;
    return os.str();
}

std::vector<Violation> validate_model(const ModelSpec& m) {
    std::vector<Violation> out;
    const int n = m.grid.size();

    if (n == 0) {
        out.push_back({ViolationKind::empty_grid, -1, -1, "model has no nodes"});
        return out;
    }
    for (int i = 0; i < n; ++i) {
        if (m.grid.nodes[i].id != i) {
            out.push_back({ViolationKind::node_id_sequence, i, -1,
                           "expected id " + std::to_string(i) + ", found " +
                               std::to_string(m.grid.nodes[i].id)});
        }
    }
    if (static_cast<int>(m.actions.size()) != n)
        out.push_back({ViolationKind::shape_mismatch, -1, -1,
                       "actions table has " + std::to_string(m.actions.size()) +
                           " rows for " + std::to_string(n) + " nodes"});
    if (static_cast<int>(m.weight.size()) != n)
        out.push_back({ViolationKind::shape_mismatch, -1, -1,
                       "weight vector has " + std::to_string(m.weight.size()) +
                           " entries for " + std::to_string(n) + " nodes"});

    if (!(m.alpha > 0.0 && m.alpha < 1.0))
        out.push_back({ViolationKind::alpha_out_of_range, -1, -1,
                       "alpha = " + std::to_string(m.alpha)});

    for (int i = 0; i < n; ++i) {
        const Node& node = m.grid.nodes[i];
        if (node.kind == NodeKind::interior && !node.envelope_neighbors.empty()) {
            out.push_back({ViolationKind::interior_has_neighbors, i, -1, ""});
        }
        for (int y : node.envelope_neighbors) {
            if (y == i) {
                out.push_back({ViolationKind::self_neighbor, i, -1, ""});
            } else if (y < 0 || y >= n) {
                out.push_back({ViolationKind::neighbor_out_of_range, i, -1,
                               "neighbor id " + std::to_string(y)});
            } else if (m.grid.nodes[y].kind != NodeKind::interior) {
                // Two-layer property: neighborhoods reach only one level deep,
                // which is what makes the envelope operator idempotent.
                out.push_back({ViolationKind::boundary_neighbor_not_interior, i, -1,
                               "neighbor id " + std::to_string(y)});
            }
        }
    }

    for (int i = 0; i < n && i < static_cast<int>(m.weight.size()); ++i) {
        if (!std::isfinite(m.weight[i]))
            out.push_back({ViolationKind::nonfinite_weight, i, -1, ""});
        else if (m.weight[i] < 1.0)
            out.push_back({ViolationKind::weight_below_one, i, -1,
                           "W = " + std::to_string(m.weight[i])});
    }

    for (int i = 0; i < n && i < static_cast<int>(m.actions.size()); ++i) {
        const auto& acts = m.actions[i];
        if (acts.empty()) {
            out.push_back({ViolationKind::empty_action_set, i, -1, ""});
            continue;
        }
        std::set<int> seen_ids;
        for (const ActionEntry& a : acts) {
            if (!seen_ids.insert(a.id).second)
                out.push_back({ViolationKind::duplicate_action_id, i, a.id, ""});
            if (!std::isfinite(a.cost))
                out.push_back({ViolationKind::nonfinite_cost, i, a.id, ""});
            if (a.transitions.empty()) {
                out.push_back({ViolationKind::empty_transition_row, i, a.id, ""});
                continue;
            }
            double sum = 0.0;
            std::set<int> seen_targets;
            for (const auto& [target, p] : a.transitions) {
                if (target < 0 || target >= n)
                    out.push_back({ViolationKind::transition_target_out_of_range, i, a.id,
                                   "target " + std::to_string(target)});
                if (!seen_targets.insert(target).second)
                    out.push_back({ViolationKind::duplicate_transition, i, a.id,
                                   "target " + std::to_string(target)});
                if (!(p >= 0.0) || !std::isfinite(p))
                    out.push_back({ViolationKind::negative_probability, i, a.id,
                                   "p = " + std::to_string(p)});
                sum += p;
            }
            if (!(std::abs(sum - 1.0) <= kRowSumTol)) {
                std::ostringstream os;
                os.precision(17);
                os << "row sums to " << sum;
                out.push_back({ViolationKind::row_sum, i, a.id, os.str()});
            }
        }
    }
    return out;
}

bool is_valid(const ModelSpec& m) { return validate_model(m).empty(); }

ModelSpec restrict_actions(const ModelSpec& m, const ArgminSets& sets) {
    const int n = m.num_nodes();
    if (static_cast<int>(sets.sets.size()) != n)
        throw std::invalid_argument("restrict_actions: sets cover " +
                                    std::to_string(sets.sets.size()) + " nodes, model has " +
                                    std::to_string(n));
    ModelSpec out = m;
    for (int i = 0; i < n; ++i) {
        if (sets.sets[i].empty())
            throw std::invalid_argument("restrict_actions: empty action set at node " +
                                        std::to_string(i));
        std::vector<ActionEntry> kept;
        kept.reserve(sets.sets[i].size());
        for (int a : sets.sets[i]) {
            int idx = action_index(m, i, a);
            if (idx < 0)
                throw std::invalid_argument("restrict_actions: action " + std::to_string(a) +
                                            " is not admissible at node " + std::to_string(i));
            kept.push_back(m.actions[i][idx]);
        }
        std::sort(kept.begin(), kept.end(),
                  [](const ActionEntry& a, const ActionEntry& b) { return a.id < b.id; });
        out.actions[i] = std::move(kept);
    }
    return out;
}

bool is_admissible(const ModelSpec& m, const Policy& f) {
    if (static_cast<int>(f.size()) != m.num_nodes()) return false;
    for (int i = 0; i < m.num_nodes(); ++i)
        if (action_index(m, i, f[i]) < 0) return false;
    return true;
}

int action_index(const ModelSpec& m, int node, int action) {
    if (node < 0 || node >= static_cast<int>(m.actions.size())) return -1;
    const auto& acts = m.actions[node];
    for (int k = 0; k < static_cast<int>(acts.size()); ++k)
        if (acts[k].id == action) return k;
    return -1;
}

}  // namespace hlsc
