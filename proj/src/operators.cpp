#include "hlsc/operators.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include <Eigen/SparseCore>
#include <Eigen/SparseLU>

#include "hlsc/parallel.hpp"

namespace hlsc {

namespace {

double lookahead(const ModelSpec& m, const ActionEntry& a, const GridFunction& u) {
    double q = 0.0;
    for (const auto& [y, p] : a.transitions) q += p * u[y];
    return a.cost + m.alpha * q;
}

void require_pass(const GrowthCertificate& cert) {
    if (!cert.pass)
        throw std::domain_error("growth certificate failed: gamma = " +
                                std::to_string(cert.gamma));
}

GridFunction evaluate_direct(const ModelSpec& m, const Policy& f) {
    const int n = m.num_nodes();
    std::vector<Eigen::Triplet<double>> triplets;
    Eigen::VectorXd rhs(n);
    for (int x = 0; x < n; ++x) {
        const ActionEntry& a = m.actions[x][action_index(m, x, f[x])];
        rhs[x] = a.cost;
        triplets.emplace_back(x, x, 1.0);
        for (const auto& [y, p] : a.transitions) triplets.emplace_back(x, y, -m.alpha * p);
    }
    Eigen::SparseMatrix<double> system(n, n);
    system.setFromTriplets(triplets.begin(), triplets.end());
    Eigen::SparseLU<Eigen::SparseMatrix<double>> solver;
    solver.compute(system);
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("policy evaluation: singular system; the model is corrupted");
    Eigen::VectorXd v = solver.solve(rhs);
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("policy evaluation: linear solve failed");
    // Iterative refinement keeps the fixed-point residual near machine
    // precision even when gamma is close to 1.
    for (int pass = 0; pass < 2; ++pass) {
        Eigen::VectorXd residual = rhs - system * v;
        v += solver.solve(residual);
    }
    return GridFunction(v.data(), v.data() + n);
}

GridFunction evaluate_iterative(const ModelSpec& m, const Policy& f,
                                const GrowthCertificate& cert, double tol, long max_iter) {
    const double gamma = cert.gamma;
    const double factor = gamma / (1.0 - gamma);
    GridFunction v(m.num_nodes(), 0.0);
    for (long k = 0; k < max_iter; ++k) {
        GridFunction next = policy_backup(m, f, v);
        double step = w_norm_diff(next, v, m);
        v = std::move(next);
        if (factor * step <= tol) return v;
    }
    throw std::runtime_error("policy evaluation: no convergence within iteration cap");
}

}  // namespace

QFunction action_values(const ModelSpec& m, const GridFunction& u) {
    const int n = m.num_nodes();
    QFunction out(n);
    detail::parallel_for(n, [&](int begin, int end) {
        for (int x = begin; x < end; ++x) {
            out[x].reserve(m.actions[x].size());
            for (const ActionEntry& a : m.actions[x]) out[x].push_back(lookahead(m, a, u));
        }
    });
    return out;
}

BellmanResult bellman_min(const ModelSpec& m, const GridFunction& u) {
    const int n = m.num_nodes();
    BellmanResult r;
    r.values.resize(n);
    r.policy.resize(n);
    detail::parallel_for(n, [&](int begin, int end) {
        for (int x = begin; x < end; ++x) {
            double best = std::numeric_limits<double>::infinity();
            int best_id = -1;
            for (const ActionEntry& a : m.actions[x]) {
                double q = lookahead(m, a, u);
                if (q < best) {
                    best = q;
                    best_id = a.id;
                }
            }
            r.values[x] = best;
            r.policy[x] = best_id;
        }
    });
    return r;
}

GridFunction policy_backup(const ModelSpec& m, const Policy& f, const GridFunction& u) {
    const int n = m.num_nodes();
    // Resolve action indexes up front so worker threads never throw.
    std::vector<int> idx(n);
    for (int x = 0; x < n; ++x) {
        idx[x] = action_index(m, x, f[x]);
        if (idx[x] < 0)
            throw std::invalid_argument("policy_backup: inadmissible action " +
                                        std::to_string(f[x]) + " at node " + std::to_string(x));
    }
    GridFunction out(n);
    detail::parallel_for(n, [&](int begin, int end) {
        for (int x = begin; x < end; ++x) out[x] = lookahead(m, m.actions[x][idx[x]], u);
    });
    return out;
}

GridFunction evaluate_policy(const ModelSpec& m, const Policy& f, EvalMethod method, double tol,
                             long max_iter) {
    return evaluate_policy(m, f, certify_growth(m), method, tol, max_iter);
}

GridFunction evaluate_policy(const ModelSpec& m, const Policy& f, const GrowthCertificate& cert,
                             EvalMethod method, double tol, long max_iter) {
    if (!is_admissible(m, f)) throw std::invalid_argument("evaluate_policy: inadmissible policy");
    require_pass(cert);
    if (method == EvalMethod::automatic)
        method = m.num_nodes() <= kDirectSolveLimit ? EvalMethod::direct : EvalMethod::iterative;
    if (method == EvalMethod::direct) return evaluate_direct(m, f);
    if (!(tol > 0.0)) throw std::invalid_argument("evaluate_policy: tol must be positive");
    return evaluate_iterative(m, f, cert, tol, max_iter);
}

}  // namespace hlsc
