#include "hlsc/lyapunov.hpp"

#include <cmath>
#include <stdexcept>

#include <json.hpp>

namespace hlsc {

GrowthCertificate certify_growth(const ModelSpec& m) {
    GrowthCertificate c;
    double max_cost_ratio = 0.0;
    double max_drift_ratio = 0.0;
    for (int x = 0; x < m.num_nodes(); ++x) {
        for (const ActionEntry& a : m.actions[x]) {
            double cost_ratio = std::abs(a.cost) / m.weight[x];
            if (cost_ratio > max_cost_ratio) {
                max_cost_ratio = cost_ratio;
                c.witness_M = {x, a.id};
            }
            double qw = 0.0;
            for (const auto& [y, p] : a.transitions) qw += p * m.weight[y];
            double drift_ratio = qw / m.weight[x];
            if (drift_ratio > max_drift_ratio) {
                max_drift_ratio = drift_ratio;
                c.witness_beta = {x, a.id};
            }
        }
    }
    c.M = max_cost_ratio;
    c.beta = std::max(1.0, max_drift_ratio);
    c.gamma = m.alpha * c.beta;
    c.pass = c.gamma < 1.0;
    return c;
}

double w_norm(const GridFunction& u, const ModelSpec& m) {
    double best = 0.0;
    for (int x = 0; x < m.num_nodes(); ++x) {
        double r = std::abs(u[x]) / m.weight[x];
        if (r > best) best = r;
    }
    return best;
}

double w_norm_diff(const GridFunction& u, const GridFunction& v, const ModelSpec& m) {
    double best = 0.0;
    for (int x = 0; x < m.num_nodes(); ++x) {
        double r = std::abs(u[x] - v[x]) / m.weight[x];
        if (r > best) best = r;
    }
    return best;
}

double value_bound(const GrowthCertificate& c) {
    if (!c.pass) throw std::domain_error("value_bound: growth certificate failed (gamma >= 1)");
    return c.M / (1.0 - c.gamma);
}

std::string certificate_to_json(const GrowthCertificate& c) {
    nlohmann::json doc;
    doc["M"] = c.M;
    doc["beta"] = c.beta;
    doc["gamma"] = c.gamma;
    doc["pass"] = c.pass;
    doc["witness_M"] = {c.witness_M.first, c.witness_M.second};
    doc["witness_beta"] = {c.witness_beta.first, c.witness_beta.second};
    return doc.dump(2) + "\n";
}

}  // namespace hlsc
