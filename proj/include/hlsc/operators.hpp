#pragma once

#include <utility>
#include <vector>

#include "hlsc/lyapunov.hpp"
#include "hlsc/model.hpp"

namespace hlsc {

/// State-action values aligned with ModelSpec::actions: values[x][k] holds
/// the value of the k-th admissible action at node x.
using QFunction = std::vector<std::vector<double>>;

// Default absolute tolerance for W-norm comparisons.
inline constexpr double kWNormTol = 1e-9;

// Models up to this size are evaluated with a direct sparse factorization;
// larger ones fall back to fixed-point iteration.
inline constexpr int kDirectSolveLimit = 2000;

inline constexpr long kEvalIterationCap = 1'000'000;

/// One-step lookahead on every admissible pair:
///   result[x][k] = C(x, a_k) + alpha * sum_y u(y) Q(y | x, a_k).
QFunction action_values(const ModelSpec& m, const GridFunction& u);

struct BellmanResult {
    GridFunction values;
    Policy policy;
};

/// Bellman backup: minimizes action_values over A(x) at every node and
/// returns a greedy selector attaining the minimum.  Ties break to the
/// lowest action id, so the output is deterministic.
BellmanResult bellman_min(const ModelSpec& m, const GridFunction& u);

/// Backup under a fixed policy: result(x) = C(x, f(x)) + alpha * Q_f u(x).
GridFunction policy_backup(const ModelSpec& m, const Policy& f, const GridFunction& u);

enum class EvalMethod { automatic, direct, iterative };

/// Exact discounted value of a stationary policy, the unique fixed point of
/// the policy backup.  `direct` factorizes (I - alpha Q_f) v = C_f;
/// `iterative` runs fixed-point iteration from zero and stops once the
/// a-posteriori contraction bound gamma/(1-gamma) * ||v_k - v_{k-1}||_W
/// drops to tol, so the result is within tol of V_f in W-norm.
/// `automatic` picks direct for models up to kDirectSolveLimit nodes.
/// Requires a passing growth certificate.
GridFunction evaluate_policy(const ModelSpec& m, const Policy& f,
                             EvalMethod method = EvalMethod::automatic,
                             double tol = kWNormTol, long max_iter = kEvalIterationCap);

/// Same, reusing an already computed certificate.
GridFunction evaluate_policy(const ModelSpec& m, const Policy& f, const GrowthCertificate& cert,
                             EvalMethod method = EvalMethod::automatic,
                             double tol = kWNormTol, long max_iter = kEvalIterationCap);

}  // namespace hlsc
