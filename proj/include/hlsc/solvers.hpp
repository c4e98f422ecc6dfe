#pragma once

#include <optional>
#include <vector>

#include "hlsc/envelope.hpp"
#include "hlsc/operators.hpp"

namespace hlsc {

inline constexpr long kViIterationCap = 1'000'000;
inline constexpr long kPiIterationCap = 10'000;

// Tolerance used for the in-run chain flags and the lsc diagnostic.
inline constexpr double kChainTol = 1e-10;

// Relative scale for near-argmin extraction.
inline constexpr double kArgminEpsilon = 1e-9;

enum class Termination { fixed_point, max_iter, tolerance };

const char* termination_name(Termination t);

struct ViResult {
    GridFunction values;
    Policy policy;
    long iterations = 0;
    /// A-posteriori error bound gamma/(1-gamma) * ||u_k - u_{k-1}||_W per
    /// sweep; the last entry is the guarantee on `values`.
    std::vector<double> error_bounds;
};

/// Repeated Bellman backups from zero until the contraction bound
/// certifies ||u - V*||_W <= tol.  Also returns the greedy policy of the
/// final iterate.  Throws on a failed certificate or when the iteration
/// cap is hit.
ViResult value_iteration(const ModelSpec& m, double tol,
                         long max_iter = kViIterationCap);

/// One policy-iteration record.  `values` is the exact value of
/// `policy`; `envelope` its lower semicontinuous envelope; `backup` the
/// Bellman backup of the envelope (whose greedy selector becomes the next
/// policy).  `gap_to_opt` and `rate_ratio` stay NaN until an optimal-value
/// oracle is supplied; rate_ratio at record n compares record n+1's gap
/// against record n's.  `chain_ok` flags the in-record inequalities
/// values >= envelope >= backup and the cross-record monotonicity
/// v_{n-1} >= v_n, all within kChainTol.  `lsc_check` records whether the
/// backup is still grid-lsc, which the theory needs but the model data
/// cannot guarantee.
struct PiIterate {
    long n = 0;
    GridFunction values;
    GridFunction envelope;
    GridFunction backup;
    Policy policy;
    double gap_to_opt = std::numeric_limits<double>::quiet_NaN();
    double rate_ratio = std::numeric_limits<double>::quiet_NaN();
    bool chain_ok = true;
    bool lsc_check = true;
};

struct PiTrace {
    std::vector<PiIterate> iterations;
    Termination terminated_by = Termination::max_iter;
};

struct PiResult {
    PiTrace trace;
    Policy policy;
};

enum class EnvelopeMode { lsc, identity };

/// Smoothed policy iteration: evaluate the current policy, replace the
/// value by its lsc envelope, improve greedily against the envelope,
/// repeat.  Stops with Termination::fixed_point once
/// ||v_n^e - v_{n+1}||_W <= tol (the returned policy is then optimal up to
/// tol), or with max_iter.  EnvelopeMode::identity skips the smoothing
/// step, which is exactly standard policy iteration.
PiResult smoothed_policy_iteration(const ModelSpec& m, const Policy& f0,
                                   EvalMethod eval_method = EvalMethod::automatic,
                                   double tol = kWNormTol, long max_iter = kPiIterationCap,
                                   EnvelopeMode mode = EnvelopeMode::lsc);

/// Near-minimizers of the one-step lookahead under u: at each node the
/// actions whose lookahead is within epsilon * max(1, |Tu(x)|) of the
/// minimum.  epsilon = +infinity selects every admissible action.  Never
/// empty.
ArgminSets extract_argmin_sets(const ModelSpec& m, const GridFunction& u,
                               double epsilon = kArgminEpsilon);

/// One best-improvement record: the restricted-model optimal value and
/// policy.  `continuity_check` reports the discrete continuity proxy
/// (both w and -w grid-lsc); diagnostic only.
struct BiIterate {
    long n = 0;
    GridFunction values;
    Policy policy;
    bool continuity_check = true;
};

struct BiTrace {
    std::vector<BiIterate> iterations;
    Termination terminated_by = Termination::max_iter;
};

struct BiResult {
    BiTrace trace;
    Policy policy;
};

/// Best-improvement policy iteration: start from the envelope of V_{f0},
/// extract the near-argmin action sets, and solve the restricted model by
/// value iteration, so each step lands on the componentwise-least value
/// among all improvement policies.  Stops once consecutive iterates agree
/// within tol in W-norm.
BiResult best_improvement_pi(const ModelSpec& m, const Policy& f0,
                             double epsilon = kArgminEpsilon, double tol = kWNormTol,
                             long max_iter = kPiIterationCap);

/// One broken inequality in a trace.  `inequality` indexes the checks
///   1: v_n >= v_n^e        (within record n)
///   2: v_n^e >= T v_n^e    (within record n)
///   3: T v_n^e >= v_{n+1}  (records n, n+1)
///   4: v_n >= v_{n+1}      (records n, n+1)
/// The trailing v_{n+1} >= v_{n+1}^e link of the five-term chain is check 1
/// of record n+1.
struct ChainViolation {
    long n = 0;
    int node = 0;
    int inequality = 0;
    double magnitude = 0.0;
};

/// Verifies the descent chain on a recorded trace, componentwise within
/// tol.  Empty result means every inequality held at every iteration.
std::vector<ChainViolation> check_descent_chain(const PiTrace& trace, double tol);

/// Fills gap_to_opt and rate_ratio in a recorded trace against an optimal
/// value oracle.  Ratios with denominator below 1e-13 stay NaN.
void fill_optimality_gaps(PiTrace& trace, const GridFunction& v_star, const ModelSpec& m);

/// Convergence-rate report against an optimal-value oracle computed to
/// `oracle_tol`: W-norm errors per iteration, consecutive ratios, the
/// modulus bound check (ratios <= gamma + slack with
/// slack = 1e-8 + oracle_tol), the constant L = ||v_0 - V*||_W, and plain
/// sup-norm errors restricted to the sublevel sets {x : W(x) <= lambda}
/// for each requested lambda (NaN where the set is empty).
struct RateReport {
    std::vector<double> errors;
    std::vector<double> ratios;
    double gamma = 0.0;
    double slack = 0.0;
    bool ratios_within_bound = true;
    double L = 0.0;
    std::vector<double> lambdas;
    std::vector<std::vector<double>> sublevel_sup_errors;
};

RateReport rate_report(const PiTrace& trace, const GridFunction& v_star, const ModelSpec& m,
                       const std::vector<double>& lambdas = {}, double oracle_tol = 1e-10);

}  // namespace hlsc
