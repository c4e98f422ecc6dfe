#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

namespace hlsc {

/// Real-valued function on the state nodes (one entry per node id).
using GridFunction = std::vector<double>;

/// Stationary policy: action id chosen at each node.
using Policy = std::vector<int>;

enum class NodeKind { interior, boundary };

/// A state node.  `coordinate` is dimensionless and used for diagnostics
/// only; the solver never derives anything from it.  `envelope_neighbors`
/// is the discrete neighborhood used by the lower semicontinuous envelope:
/// it is empty for interior nodes, and for a boundary node it lists the
/// interior nodes whose values approximate the node from nearby.
struct Node {
    int id = 0;
    std::vector<double> coordinate;
    NodeKind kind = NodeKind::interior;
    std::vector<int> envelope_neighbors;

    bool operator==(const Node&) const = default;
};

struct StructuredGrid {
    std::vector<Node> nodes;

    int size() const { return static_cast<int>(nodes.size()); }

    bool operator==(const StructuredGrid&) const = default;
};

/// One admissible action at a node: its id, one-step cost, and a sparse
/// probability row over successor nodes (sorted by node id).
struct ActionEntry {
    int id = 0;
    double cost = 0.0;
    std::vector<std::pair<int, double>> transitions;

    bool operator==(const ActionEntry&) const = default;
};

/// A complete MDP instance on a structured grid: admissible action lists
/// per node (sorted by action id), discount factor and per-node weight.
/// Instances are treated as immutable after construction; all solver
/// entry points take them by const reference and may share them across
/// threads.
struct ModelSpec {
    StructuredGrid grid;
    std::vector<std::vector<ActionEntry>> actions;
    double alpha = 0.0;
    std::vector<double> weight;

    int num_nodes() const { return grid.size(); }

    bool operator==(const ModelSpec&) const = default;
};

// Probability rows must sum to 1 within this tolerance; violations are
// reported, never silently renormalized.
inline constexpr double kRowSumTol = 1e-12;

enum class ViolationKind {
    empty_grid,
    node_id_sequence,
    shape_mismatch,
    interior_has_neighbors,
    self_neighbor,
    neighbor_out_of_range,
    boundary_neighbor_not_interior,
    empty_action_set,
    duplicate_action_id,
    nonfinite_cost,
    negative_probability,
    row_sum,
    transition_target_out_of_range,
    duplicate_transition,
    empty_transition_row,
    weight_below_one,
    nonfinite_weight,
    alpha_out_of_range,
};

const char* violation_kind_name(ViolationKind k);

/// One broken model invariant.  `node`/`action` are -1 when not applicable.
struct Violation {
    ViolationKind kind;
    int node = -1;
    int action = -1;
    std::string detail;

    std::string message() const;
};

/// Checks every ModelSpec and StructuredGrid invariant and returns the
/// full list of violations (empty iff the model is valid).  Total: never
/// throws on structurally well-typed input.
std::vector<Violation> validate_model(const ModelSpec& m);

bool is_valid(const ModelSpec& m);

/// Per-node action-id subsets, as produced by near-argmin extraction.
/// `epsilon` records the tolerance the sets were extracted with.
struct ArgminSets {
    std::vector<std::vector<int>> sets;
    double epsilon = 0.0;
};

/// Returns a copy of `m` with each A(x) replaced by the given nonempty
/// subset; costs and kernel rows of surviving pairs are untouched.
/// Throws std::invalid_argument if a subset is empty, not contained in
/// A(x), or the shape does not match.
ModelSpec restrict_actions(const ModelSpec& m, const ArgminSets& sets);

/// True iff f(x) is an admissible action id at every node.
bool is_admissible(const ModelSpec& m, const Policy& f);

/// Index of the entry with action id `action` in m.actions[node].
/// Returns -1 if the id is not admissible there.
int action_index(const ModelSpec& m, int node, int action);

}  // namespace hlsc
