// Command-line front end: model validation, growth certification, benchmark
// generation, solving, policy evaluation, and Monte Carlo estimation.
//
// Exit codes: 0 success, 1 domain failure (invalid model, failed
// certificate, non-convergence, comparison failure, inadmissible policy),
// 2 environment failure (I/O, parse, bad usage).

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "hlsc/bench.hpp"
#include "hlsc/envelope.hpp"
#include "hlsc/lyapunov.hpp"
#include "hlsc/model_io.hpp"
#include "hlsc/montecarlo.hpp"
#include "hlsc/operators.hpp"
#include "hlsc/solvers.hpp"
#include "hlsc/trace_io.hpp"

namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitDomain = 1;
constexpr int kExitEnvironment = 2;

hlsc::ModelSpec load_checked(const std::string& path) {
    std::vector<std::string> warnings;
    hlsc::ModelSpec m = hlsc::load_model_file(path, &warnings);
    for (const auto& w : warnings) std::cerr << "warning: " << w << "\n";
    return m;
}

void write_text(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out) throw hlsc::IoError("cannot write file: " + path);
    out << text;
}

// True iff W is flat across every envelope neighborhood, the discrete
// reading of "W continuous".
bool weight_continuous(const hlsc::ModelSpec& m) {
    hlsc::GridFunction neg(m.weight.size());
    for (size_t i = 0; i < m.weight.size(); ++i) neg[i] = -m.weight[i];
    return hlsc::is_grid_lsc(m, m.weight, 0.0) && hlsc::is_grid_lsc(m, neg, 0.0);
}

int cmd_validate(const std::string& model_path, bool strict_cc, bool as_json) {
    std::vector<std::string> warnings;
    hlsc::ModelSpec m;
    std::vector<hlsc::Violation> violations;
    try {
        m = hlsc::load_model_file(model_path, &warnings);
    } catch (const hlsc::ValidationError& e) {
        violations = e.violations;
    }
    for (const auto& w : warnings) std::cerr << "warning: " << w << "\n";

    bool structural_ok = violations.empty();
    hlsc::GrowthCertificate cert;
    bool cc_ok = true;
    if (structural_ok) {
        cert = hlsc::certify_growth(m);
        cc_ok = weight_continuous(m);
    }

    bool pass = structural_ok && cert.pass && (cc_ok || !strict_cc);
    if (as_json) {
        json doc;
        doc["valid"] = structural_ok;
        json v = json::array();
        for (const auto& viol : violations) v.push_back(viol.message());
        doc["violations"] = std::move(v);
        if (structural_ok) {
            doc["certificate"] = json::parse(hlsc::certificate_to_json(cert));
            doc["weight_continuous"] = cc_ok;
        }
        doc["pass"] = pass;
        std::cout << doc.dump(2) << "\n";
    } else {
        if (!structural_ok) {
            std::cout << "model invalid (" << violations.size() << " violation(s)):\n";
            for (const auto& viol : violations) std::cout << "  " << viol.message() << "\n";
        } else {
            std::cout << "model valid: " << m.num_nodes() << " nodes, alpha = " << m.alpha
                      << "\n";
            std::cout << "certificate: M = " << cert.M << ", beta = " << cert.beta
                      << ", gamma = " << cert.gamma << " -> "
                      << (cert.pass ? "pass" : "FAIL (gamma >= 1)") << "\n";
            if (!cc_ok)
                std::cout << (strict_cc ? "FAIL" : "warning")
                          << ": weight is not constant across envelope neighborhoods\n";
        }
    }
    if (structural_ok && !cc_ok && !strict_cc)
        std::cerr << "warning: weight is not constant across envelope neighborhoods\n";
    return pass ? kExitOk : kExitDomain;
}

int cmd_certify(const std::string& model_path) {
    hlsc::ModelSpec m = load_checked(model_path);
    hlsc::GrowthCertificate cert = hlsc::certify_growth(m);
    std::cout << hlsc::certificate_to_json(cert);
    return cert.pass ? kExitOk : kExitDomain;
}

hlsc::EvalMethod parse_method(const std::string& name) {
    if (name == "auto") return hlsc::EvalMethod::automatic;
    if (name == "direct") return hlsc::EvalMethod::direct;
    if (name == "iterative") return hlsc::EvalMethod::iterative;
    throw CLI::ValidationError("--method must be auto, direct or iterative");
}

struct SolveOptions {
    std::string model_path;
    std::string algorithm = "pi";
    double tol = 1e-9;
    double epsilon = hlsc::kArgminEpsilon;
    std::string f0_path;
    std::string trace_csv;
    std::string trace_json;
    bool compare = false;
    std::string method = "auto";
    long max_iter = 0;
};

int cmd_solve(const SolveOptions& opt) {
    hlsc::ModelSpec m = load_checked(opt.model_path);
    hlsc::GrowthCertificate cert = hlsc::certify_growth(m);
    if (!cert.pass) {
        std::cerr << "error: growth certificate failed, gamma = " << cert.gamma << " >= 1\n";
        return kExitDomain;
    }

    hlsc::Policy f0;
    if (!opt.f0_path.empty()) {
        f0 = hlsc::load_policy_file(opt.f0_path);
        if (!hlsc::is_admissible(m, f0)) {
            std::cerr << "error: initial policy is not admissible for this model\n";
            return kExitDomain;
        }
    } else {
        f0 = hlsc::bellman_min(m, hlsc::GridFunction(m.num_nodes(), 0.0)).policy;
    }

    json summary;
    summary["algorithm"] = opt.algorithm;
    summary["gamma"] = cert.gamma;
    bool converged = false;
    bool compare_ok = true;
    hlsc::GridFunction final_values;

    if (opt.algorithm == "vi") {
        long cap = opt.max_iter > 0 ? opt.max_iter : hlsc::kViIterationCap;
        hlsc::ViResult vi = hlsc::value_iteration(m, opt.tol, cap);
        converged = true;
        final_values = vi.values;
        summary["iterations"] = vi.iterations;
        summary["terminated_by"] = "tolerance";
        summary["error_bound"] = vi.error_bounds.back();
        if (!opt.trace_csv.empty()) {
            std::ostringstream os;
            hlsc::write_trace_csv(vi, os);
            write_text(opt.trace_csv, os.str());
        }
    } else if (opt.algorithm == "pi" || opt.algorithm == "pi-best") {
        long cap = opt.max_iter > 0 ? opt.max_iter : hlsc::kPiIterationCap;
        std::optional<hlsc::ViResult> oracle;
        if (opt.compare) oracle = hlsc::value_iteration(m, opt.tol / 10.0);

        if (opt.algorithm == "pi") {
            hlsc::PiResult r = hlsc::smoothed_policy_iteration(m, f0, parse_method(opt.method),
                                                               opt.tol, cap);
            converged = r.trace.terminated_by == hlsc::Termination::fixed_point;
            final_values = r.trace.iterations.back().values;
            summary["iterations"] = r.trace.iterations.size();
            summary["terminated_by"] = hlsc::termination_name(r.trace.terminated_by);
            if (oracle) hlsc::fill_optimality_gaps(r.trace, oracle->values, m);
            auto chain = hlsc::check_descent_chain(r.trace, 1e-10);
            summary["chain_violations"] = chain.size();
            if (oracle) {
                double max_ratio = 0.0;
                bool any = false;
                for (const auto& it : r.trace.iterations)
                    if (!std::isnan(it.rate_ratio)) {
                        max_ratio = std::max(max_ratio, it.rate_ratio);
                        any = true;
                    }
                if (any) summary["max_rate_ratio"] = max_ratio;
            }
            if (!opt.trace_csv.empty()) write_text(opt.trace_csv, hlsc::trace_to_csv(r.trace));
            if (!opt.trace_json.empty()) write_text(opt.trace_json, hlsc::trace_to_json(r.trace));
        } else {
            hlsc::BiResult r = hlsc::best_improvement_pi(m, f0, opt.epsilon, opt.tol, cap);
            converged = r.trace.terminated_by == hlsc::Termination::fixed_point;
            final_values = r.trace.iterations.back().values;
            summary["iterations"] = r.trace.iterations.size();
            summary["terminated_by"] = hlsc::termination_name(r.trace.terminated_by);
            if (!opt.trace_csv.empty()) {
                std::ostringstream os;
                hlsc::write_trace_csv(r.trace, m, os);
                write_text(opt.trace_csv, os.str());
            }
            if (!opt.trace_json.empty()) write_text(opt.trace_json, hlsc::trace_to_json(r.trace));
        }

        if (oracle) {
            double gap = hlsc::w_norm_diff(final_values, oracle->values, m);
            summary["gap_to_vi"] = gap;
            compare_ok = gap <= 2.0 * opt.tol;
        }
    } else {
        std::cerr << "error: unknown algorithm \"" << opt.algorithm << "\"\n";
        return kExitEnvironment;
    }

    summary["converged"] = converged;
    if (opt.compare) summary["compare_ok"] = compare_ok;
    std::cout << summary.dump(2) << "\n";
    return converged && compare_ok ? kExitOk : kExitDomain;
}

int cmd_eval(const std::string& model_path, const std::string& policy_path,
             const std::string& method, double tol) {
    hlsc::ModelSpec m = load_checked(model_path);
    hlsc::Policy f = hlsc::load_policy_file(policy_path);
    if (!hlsc::is_admissible(m, f)) {
        std::cerr << "error: policy is not admissible for this model\n";
        return kExitDomain;
    }
    hlsc::GridFunction v = hlsc::evaluate_policy(m, f, parse_method(method), tol);
    json doc;
    doc["values"] = v;
    doc["wnorm"] = hlsc::w_norm(v, m);
    doc["value_bound"] = hlsc::value_bound(hlsc::certify_growth(m));
    std::cout << doc.dump(2) << "\n";
    return kExitOk;
}

int cmd_simulate(const std::string& model_path, const std::string& policy_path, int x0,
                 long n_traj, int horizon, std::uint64_t seed) {
    hlsc::ModelSpec m = load_checked(model_path);
    hlsc::Policy f = hlsc::load_policy_file(policy_path);
    if (!hlsc::is_admissible(m, f)) {
        std::cerr << "error: policy is not admissible for this model\n";
        return kExitDomain;
    }
    hlsc::Estimate e = hlsc::estimate_value(m, f, x0, n_traj, horizon, seed);
    json doc;
    doc["mean"] = e.mean;
    doc["halfwidth95"] = e.halfwidth95;
    doc["truncation_bound"] = e.truncation_bound;
    doc["n_traj"] = e.n_traj;
    doc["horizon"] = e.horizon;
    doc["seed"] = e.seed;
    std::cout << doc.dump(2) << "\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"discounted MDP solver with envelope-smoothed policy iteration"};
    app.require_subcommand(1);

    // validate
    std::string model_path;
    bool strict_cc = false;
    bool as_json = false;
    auto* validate = app.add_subcommand("validate", "check model invariants and growth bounds");
    validate->add_option("model", model_path, "model JSON file")->required();
    validate->add_flag("--strict-cc", strict_cc, "fail if W varies across envelope neighborhoods");
    validate->add_flag("--json", as_json, "emit a JSON report");

    // certify
    std::string certify_path;
    auto* certify = app.add_subcommand("certify", "print the growth certificate");
    certify->add_option("model", certify_path, "model JSON file")->required();

    // gen
    auto* gen = app.add_subcommand("gen", "generate a benchmark model");
    gen->require_subcommand(1);
    std::string gen_out = "-";
    int th_cells = 11;
    double th_jump = 1.0;
    double gen_alpha = 0.9;
    auto* gen_threshold = gen->add_subcommand("threshold", "1-D threshold model");
    gen_threshold->add_option("--n-cells", th_cells, "interior cell count (odd, >= 3)");
    gen_threshold->add_option("--jump", th_jump, "cost jump at the threshold");
    gen_threshold->add_option("--alpha", gen_alpha, "discount factor");
    gen_threshold->add_option("-o,--output", gen_out, "output file (default stdout)");

    int inv_capacity = 20;
    double inv_order = 1.0, inv_hold = 1.0;
    std::vector<double> inv_demand;
    auto* gen_inventory = gen->add_subcommand("inventory", "unit-replenishment inventory model");
    gen_inventory->add_option("--capacity", inv_capacity, "maximum stock");
    gen_inventory->add_option("--order-cost", inv_order, "per-unit order cost");
    gen_inventory->add_option("--holding-cost", inv_hold, "per-unit holding cost");
    gen_inventory->add_option("--demand", inv_demand, "demand probabilities (default built-in)");
    gen_inventory->add_option("--alpha", gen_alpha, "discount factor");
    gen_inventory->add_option("-o,--output", gen_out, "output file (default stdout)");

    int q_buffer = 10;
    double q_arrival = 0.25, q_service = 0.8, q_reject = 5.0, q_hold = 1.0;
    auto* gen_queueing = gen->add_subcommand("queueing", "admission-control queue model");
    gen_queueing->add_option("--buffer", q_buffer, "queue capacity");
    gen_queueing->add_option("--arrival-p", q_arrival, "arrival probability per slot");
    gen_queueing->add_option("--service-p", q_service, "service probability per slot");
    gen_queueing->add_option("--reject-cost", q_reject, "cost of rejecting an arrival");
    gen_queueing->add_option("--hold-cost", q_hold, "holding cost per job");
    gen_queueing->add_option("--alpha", gen_alpha, "discount factor");
    gen_queueing->add_option("-o,--output", gen_out, "output file (default stdout)");

    int r_states = 50, r_actions = 5, r_sparsity = 3;
    std::uint64_t r_seed = 1;
    auto* gen_random = gen->add_subcommand("random", "seeded random finite MDP");
    gen_random->add_option("--states", r_states, "state count");
    gen_random->add_option("--actions", r_actions, "actions per state");
    gen_random->add_option("--sparsity", r_sparsity, "successors per pair");
    gen_random->add_option("--seed", r_seed, "generator seed");
    gen_random->add_option("--alpha", gen_alpha, "discount factor");
    gen_random->add_option("-o,--output", gen_out, "output file (default stdout)");

    // solve
    SolveOptions solve_opt;
    auto* solve = app.add_subcommand("solve", "solve a model");
    solve->add_option("model", solve_opt.model_path, "model JSON file")->required();
    solve->add_option("--algorithm", solve_opt.algorithm, "vi | pi | pi-best")
        ->check(CLI::IsMember({"vi", "pi", "pi-best"}));
    solve->add_option("--tol", solve_opt.tol, "termination tolerance (W-norm)");
    solve->add_option("--epsilon", solve_opt.epsilon, "near-argmin tolerance (pi-best)");
    solve->add_option("--f0", solve_opt.f0_path, "initial policy file (default: greedy from 0)");
    solve->add_option("--trace-out", solve_opt.trace_csv, "write per-iteration CSV trace");
    solve->add_option("--trace-json", solve_opt.trace_json, "write full JSON trace");
    solve->add_flag("--compare", solve_opt.compare, "also run value iteration and compare");
    solve->add_option("--eval-method", solve_opt.method, "auto | direct | iterative");
    solve->add_option("--max-iter", solve_opt.max_iter, "iteration cap (0 = default)");

    // eval
    std::string eval_model, eval_policy, eval_method = "auto";
    double eval_tol = 1e-9;
    auto* eval = app.add_subcommand("eval", "evaluate a stationary policy");
    eval->add_option("model", eval_model, "model JSON file")->required();
    eval->add_option("--policy", eval_policy, "policy JSON file")->required();
    eval->add_option("--method", eval_method, "auto | direct | iterative");
    eval->add_option("--tol", eval_tol, "tolerance (iterative method)");

    // simulate
    std::string sim_model, sim_policy;
    int sim_x0 = 0, sim_horizon = 100;
    long sim_ntraj = 10'000;
    std::uint64_t sim_seed = 1;
    auto* simulate = app.add_subcommand("simulate", "Monte Carlo policy value estimate");
    simulate->add_option("model", sim_model, "model JSON file")->required();
    simulate->add_option("--policy", sim_policy, "policy JSON file")->required();
    simulate->add_option("--x0", sim_x0, "initial node");
    simulate->add_option("--n-traj", sim_ntraj, "trajectory count");
    simulate->add_option("--horizon", sim_horizon, "steps per trajectory");
    simulate->add_option("--seed", sim_seed, "base seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kExitOk : kExitEnvironment;
    }

    try {
        if (validate->parsed()) return cmd_validate(model_path, strict_cc, as_json);
        if (certify->parsed()) return cmd_certify(certify_path);
        if (gen->parsed()) {
            hlsc::ModelSpec m;
            if (gen_threshold->parsed())
                m = hlsc::make_threshold_model(th_cells, th_jump, gen_alpha);
            else if (gen_inventory->parsed())
                m = hlsc::make_inventory_model(
                    inv_capacity, inv_demand.empty() ? hlsc::default_demand_probs() : inv_demand,
                    inv_order, inv_hold, gen_alpha);
            else if (gen_queueing->parsed())
                m = hlsc::make_queueing_model(q_buffer, q_arrival, q_service, q_reject, q_hold,
                                              gen_alpha);
            else
                m = hlsc::make_random_finite_mdp(r_states, r_actions, r_sparsity, r_seed,
                                                 gen_alpha);
            write_text(gen_out, hlsc::save_model(m));
            return kExitOk;
        }
        if (solve->parsed()) return cmd_solve(solve_opt);
        if (eval->parsed()) return cmd_eval(eval_model, eval_policy, eval_method, eval_tol);
        if (simulate->parsed())
            return cmd_simulate(sim_model, sim_policy, sim_x0, sim_ntraj, sim_horizon, sim_seed);
    } catch (const hlsc::IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitEnvironment;
    } catch (const hlsc::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitEnvironment;
    } catch (const hlsc::SchemaError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitEnvironment;
    } catch (const hlsc::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitDomain;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitDomain;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitDomain;
    } catch (const std::runtime_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitDomain;
    } catch (const std::exception& e) {
        std::cerr << "unexpected error: " << e.what() << "\n";
        return kExitEnvironment;
    }
    return kExitEnvironment;
}
