#pragma once

#include <cstdint>
#include <vector>

#include "hlsc/model.hpp"

namespace hlsc {

/// 1-D threshold model on [0, 1]: n_cells interior nodes at i/n_cells plus
/// one boundary node at 0.5 whose envelope neighborhood is the straddling
/// pair of interior nodes.  Two actions everywhere: stay (self-loop) and
/// move-right (next node with probability 0.9, stay with 0.1; the last node
/// saturates).  Costs carry an additive +jump for coordinates >= 0.5,
/// including the boundary node; left of the threshold the cost level is
/// higher still (it decreases toward the threshold), so the optimal flow is
/// rightward.  The boundary node's stay action carries an extra jump/2
/// surcharge: that makes the stay-everywhere policy value drop strictly
/// under the envelope at the boundary node, while the move action keeps the
/// node on the right-side cost level, so optimal values stay grid-lsc and
/// the policy-iteration descent chain is undisturbed.  W == 1.
/// Requires n_cells >= 3 odd, jump > 0, 0 < alpha < 1.
ModelSpec make_threshold_model(int n_cells, double jump, double alpha);

/// Single-unit replenishment inventory: states are stock levels
/// 0..capacity, actions order 0 or 1 unit (never beyond capacity), demand
/// is drawn from demand_probs with stock saturating at 0, and the one-step
/// cost is order_cost * a + holding_cost * x.  W(x) = 1 + x, so the drift
/// constant is beta = 1 + P(demand = 0) and the certificate passes whenever
/// alpha * beta < 1.  Pure finite MDP (no envelope neighborhoods).
ModelSpec make_inventory_model(int capacity, const std::vector<double>& demand_probs,
                               double order_cost, double holding_cost, double alpha);

/// Default demand distribution for the inventory benchmark: a small atom at
/// zero demand plus a truncated geometric tail (mean about 1.9).
std::vector<double> default_demand_probs();

/// Admission-control queue: states are queue lengths 0..buffer; action 0
/// admits an arriving job, action 1 rejects it.  Arrivals and service
/// completions are independent Bernoulli(arrival_p), Bernoulli(service_p)
/// per slot; the queue length saturates at both ends.  One-step cost is
/// hold_cost * x plus reject_cost * arrival_p when rejecting (the rejection
/// charge in expectation).  W(x) = 1 + x.
ModelSpec make_queueing_model(int buffer, double arrival_p, double service_p, double reject_cost,
                              double hold_cost, double alpha);

/// Seeded random finite MDP: costs uniform in [-1, 1], `sparsity` random
/// successors per pair with a normalized random row, W == 1, no envelope
/// neighborhoods.  Deterministic given (parameters, seed).
ModelSpec make_random_finite_mdp(int n_states, int n_actions, int sparsity, std::uint64_t seed,
                                 double alpha = 0.9);

}  // namespace hlsc
