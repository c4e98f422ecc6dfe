#include "hlsc/solvers.hpp"

#include <cmath>
#include <stdexcept>

namespace hlsc {

namespace {

constexpr double kRatioDenominatorFloor = 1e-13;

bool leq_componentwise(const GridFunction& lo, const GridFunction& hi, double tol) {
    for (size_t i = 0; i < lo.size(); ++i)
        if (lo[i] > hi[i] + tol) return false;
    return true;
}

}  // namespace

const char* termination_name(Termination t) {
    switch (t) {
    case Termination::fixed_point: return "fixed_point";
    case Termination::max_iter: return "max_iter";
    case Termination::tolerance: return "tolerance";
    }
    return "unknown";
}

ViResult value_iteration(const ModelSpec& m, double tol, long max_iter) {
    if (!(tol > 0.0)) throw std::invalid_argument("value_iteration: tol must be positive");
    GrowthCertificate cert = certify_growth(m);
    if (!cert.pass)
        throw std::domain_error("value_iteration: growth certificate failed (gamma = " +
                                std::to_string(cert.gamma) + ")");
    const double factor = cert.gamma / (1.0 - cert.gamma);

    ViResult r;
    GridFunction u(m.num_nodes(), 0.0);
    for (long k = 1; k <= max_iter; ++k) {
        BellmanResult step = bellman_min(m, u);
        double bound = factor * w_norm_diff(step.values, u, m);
        u = std::move(step.values);
        r.error_bounds.push_back(bound);
        if (bound <= tol) {
            r.values = std::move(u);
            r.policy = std::move(step.policy);
            r.iterations = k;
            return r;
        }
    }
    throw std::runtime_error("value_iteration: no convergence within " +
                             std::to_string(max_iter) + " iterations");
}

PiResult smoothed_policy_iteration(const ModelSpec& m, const Policy& f0, EvalMethod eval_method,
                                   double tol, long max_iter, EnvelopeMode mode) {
    if (!is_admissible(m, f0))
        throw std::invalid_argument("smoothed_policy_iteration: inadmissible initial policy");
    GrowthCertificate cert = certify_growth(m);
    if (!cert.pass)
        throw std::domain_error("smoothed_policy_iteration: growth certificate failed (gamma = " +
                                std::to_string(cert.gamma) + ")");
    // Evaluate tighter than the termination test so the fixed-point
    // decision is not washed out by evaluation noise.
    const double eval_tol = tol / 10.0;

    PiResult result;
    result.trace.terminated_by = Termination::max_iter;
    Policy f = f0;
    for (long n = 0; n < max_iter; ++n) {
        PiIterate it;
        it.n = n;
        it.policy = f;
        it.values = evaluate_policy(m, f, cert, eval_method, eval_tol);
        it.envelope = mode == EnvelopeMode::lsc ? lsc_envelope(m, it.values) : it.values;
        BellmanResult improved = bellman_min(m, it.envelope);
        it.backup = std::move(improved.values);
        it.lsc_check = is_grid_lsc(m, it.backup, kChainTol);
        it.chain_ok = leq_componentwise(it.envelope, it.values, kChainTol) &&
                      leq_componentwise(it.backup, it.envelope, kChainTol);
        if (n > 0)
            it.chain_ok = it.chain_ok &&
                          leq_componentwise(it.values, result.trace.iterations.back().values,
                                            kChainTol);
        result.trace.iterations.push_back(std::move(it));

        if (n > 0) {
            const PiIterate& prev = result.trace.iterations[n - 1];
            const PiIterate& cur = result.trace.iterations[n];
            if (w_norm_diff(prev.envelope, cur.values, m) <= tol) {
                result.trace.terminated_by = Termination::fixed_point;
                result.policy = f;
                return result;
            }
        }
        f = std::move(improved.policy);
    }
    result.policy = f;
    return result;
}

ArgminSets extract_argmin_sets(const ModelSpec& m, const GridFunction& u, double epsilon) {
    if (!(epsilon >= 0.0))
        throw std::invalid_argument("extract_argmin_sets: epsilon must be nonnegative");
    QFunction q = action_values(m, u);
    ArgminSets out;
    out.epsilon = epsilon;
    out.sets.resize(m.num_nodes());
    for (int x = 0; x < m.num_nodes(); ++x) {
        double best = std::numeric_limits<double>::infinity();
        for (double v : q[x]) best = std::min(best, v);
        const double cut = std::isinf(epsilon)
                               ? std::numeric_limits<double>::infinity()
                               : best + epsilon * std::max(1.0, std::abs(best));
        for (size_t k = 0; k < q[x].size(); ++k)
            if (q[x][k] <= cut) out.sets[x].push_back(m.actions[x][k].id);
    }
    return out;
}

BiResult best_improvement_pi(const ModelSpec& m, const Policy& f0, double epsilon, double tol,
                             long max_iter) {
    if (!is_admissible(m, f0))
        throw std::invalid_argument("best_improvement_pi: inadmissible initial policy");
    GrowthCertificate cert = certify_growth(m);
    if (!cert.pass)
        throw std::domain_error("best_improvement_pi: growth certificate failed (gamma = " +
                                std::to_string(cert.gamma) + ")");

    auto continuity = [&](const GridFunction& w) {
        GridFunction neg(w.size());
        for (size_t i = 0; i < w.size(); ++i) neg[i] = -w[i];
        return is_grid_lsc(m, w, kChainTol) && is_grid_lsc(m, neg, kChainTol);
    };

    BiResult result;
    result.trace.terminated_by = Termination::max_iter;
    result.policy = f0;

    GridFunction w = lsc_envelope(m, evaluate_policy(m, f0, cert, EvalMethod::automatic, tol / 10.0));
    result.trace.iterations.push_back({0, w, f0, continuity(w)});

    for (long n = 1; n <= max_iter; ++n) {
        ArgminSets sets = extract_argmin_sets(m, w, epsilon);
        ModelSpec restricted = restrict_actions(m, sets);
        ViResult vi = value_iteration(restricted, tol);
        result.trace.iterations.push_back({n, vi.values, vi.policy, continuity(vi.values)});
        double gap = w_norm_diff(w, vi.values, m);
        w = std::move(vi.values);
        result.policy = std::move(vi.policy);
        if (gap <= tol) {
            result.trace.terminated_by = Termination::fixed_point;
            return result;
        }
    }
    return result;
}

std::vector<ChainViolation> check_descent_chain(const PiTrace& trace, double tol) {
    std::vector<ChainViolation> out;
    const auto& its = trace.iterations;
    for (size_t n = 0; n < its.size(); ++n) {
        const PiIterate& cur = its[n];
        for (int x = 0; x < static_cast<int>(cur.values.size()); ++x) {
            if (cur.envelope[x] > cur.values[x] + tol)
                out.push_back({cur.n, x, 1, cur.envelope[x] - cur.values[x]});
            if (cur.backup[x] > cur.envelope[x] + tol)
                out.push_back({cur.n, x, 2, cur.backup[x] - cur.envelope[x]});
        }
        if (n + 1 < its.size()) {
            const PiIterate& next = its[n + 1];
            for (int x = 0; x < static_cast<int>(cur.values.size()); ++x) {
                if (next.values[x] > cur.backup[x] + tol)
                    out.push_back({cur.n, x, 3, next.values[x] - cur.backup[x]});
                if (next.values[x] > cur.values[x] + tol)
                    out.push_back({cur.n, x, 4, next.values[x] - cur.values[x]});
            }
        }
    }
    return out;
}

void fill_optimality_gaps(PiTrace& trace, const GridFunction& v_star, const ModelSpec& m) {
    auto& its = trace.iterations;
    for (auto& it : its) it.gap_to_opt = w_norm_diff(it.values, v_star, m);
    for (size_t n = 0; n < its.size(); ++n) {
        if (n + 1 < its.size() && its[n].gap_to_opt > kRatioDenominatorFloor)
            its[n].rate_ratio = its[n + 1].gap_to_opt / its[n].gap_to_opt;
        else
            its[n].rate_ratio = std::numeric_limits<double>::quiet_NaN();
    }
}

RateReport rate_report(const PiTrace& trace, const GridFunction& v_star, const ModelSpec& m,
                       const std::vector<double>& lambdas, double oracle_tol) {
    RateReport r;
    r.gamma = certify_growth(m).gamma;
    r.slack = 1e-8 + oracle_tol;
    r.lambdas = lambdas;

    for (const PiIterate& it : trace.iterations)
        r.errors.push_back(w_norm_diff(it.values, v_star, m));
    r.L = r.errors.empty() ? 0.0 : r.errors.front();

    for (size_t n = 0; n + 1 < r.errors.size(); ++n) {
        if (r.errors[n] > kRatioDenominatorFloor) {
            double ratio = r.errors[n + 1] / r.errors[n];
            r.ratios.push_back(ratio);
            if (ratio > r.gamma + r.slack) r.ratios_within_bound = false;
        } else {
            r.ratios.push_back(std::numeric_limits<double>::quiet_NaN());
        }
    }

    for (double lambda : lambdas) {
        std::vector<double> errs;
        for (const PiIterate& it : trace.iterations) {
            double sup = std::numeric_limits<double>::quiet_NaN();
            for (int x = 0; x < m.num_nodes(); ++x) {
                if (m.weight[x] > lambda) continue;
                double e = std::abs(it.values[x] - v_star[x]);
                if (std::isnan(sup) || e > sup) sup = e;
            }
            errs.push_back(sup);
        }
        r.sublevel_sup_errors.push_back(std::move(errs));
    }
    return r;
}

}  // namespace hlsc
