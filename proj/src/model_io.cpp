#include "hlsc/model_io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace hlsc {

using nlohmann::json;

ValidationError::ValidationError(std::vector<Violation> v)
    : std::runtime_error([&v] {
          std::string msg = "model validation failed:";
          for (const auto& viol : v) msg += "\n  " + viol.message();
          return msg;
      }()),
      violations(std::move(v)) {}

namespace {

const json& require(const json& obj, const char* key, const std::string& where) {
    auto it = obj.find(key);
    if (it == obj.end())
        throw SchemaError("missing field \"" + std::string(key) + "\" in " + where);
    return *it;
}

double require_number(const json& obj, const char* key, const std::string& where) {
    const json& v = require(obj, key, where);
    if (!v.is_number())
        throw SchemaError("field \"" + std::string(key) + "\" in " + where + " must be a number");
    return v.get<double>();
}

int require_int(const json& obj, const char* key, const std::string& where) {
    const json& v = require(obj, key, where);
    if (!v.is_number_integer())
        throw SchemaError("field \"" + std::string(key) + "\" in " + where +
                          " must be an integer");
    return v.get<int>();
}

std::vector<std::pair<int, double>> decode_transitions(const json& t, const std::string& where) {
    if (!t.is_array()) throw SchemaError("\"transitions\" in " + where + " must be an array");
    std::vector<std::pair<int, double>> row;
    if (!t.empty() && t.front().is_number()) {
        // Dense row: one probability per node id; zeros dropped.
        for (int i = 0; i < static_cast<int>(t.size()); ++i) {
            if (!t[i].is_number())
                throw SchemaError("dense transition row in " + where + " must hold numbers");
            double p = t[i].get<double>();
            if (p != 0.0) row.emplace_back(i, p);
        }
        return row;
    }
    for (const json& e : t) {
        if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() || !e[1].is_number())
            throw SchemaError("transition entries in " + where + " must be [node_id, prob] pairs");
        row.emplace_back(e[0].get<int>(), e[1].get<double>());
    }
    return row;
}

ModelSpec decode_model(const json& doc, std::vector<std::string>* warnings) {
    if (!doc.is_object()) throw SchemaError("top-level document must be an object");
    for (const char* key : {"M", "beta", "gamma"}) {
        if (doc.contains(key) && warnings)
            warnings->push_back(std::string("ignoring user-supplied \"") + key +
                                "\"; growth constants are recomputed from the model");
    }

    ModelSpec m;
    m.alpha = require_number(doc, "alpha", "top-level object");
    const json& nodes = require(doc, "nodes", "top-level object");
    if (!nodes.is_array()) throw SchemaError("\"nodes\" must be an array");

    struct Decoded {
        Node node;
        double weight;
        std::vector<ActionEntry> actions;
    };
    std::vector<Decoded> decoded;
    decoded.reserve(nodes.size());

    for (const json& jn : nodes) {
        if (!jn.is_object()) throw SchemaError("node entries must be objects");
        Decoded d;
        d.node.id = require_int(jn, "id", "node entry");
        const std::string where = "node " + std::to_string(d.node.id);

        const json& kind = require(jn, "kind", where);
        if (kind == "interior")
            d.node.kind = NodeKind::interior;
        else if (kind == "boundary")
            d.node.kind = NodeKind::boundary;
        else
            throw SchemaError("field \"kind\" in " + where +
                              " must be \"interior\" or \"boundary\"");

        if (auto it = jn.find("coordinate"); it != jn.end()) {
            if (!it->is_array()) throw SchemaError("\"coordinate\" in " + where + " must be an array");
            for (const json& c : *it) {
                if (!c.is_number())
                    throw SchemaError("\"coordinate\" in " + where + " must hold numbers");
                d.node.coordinate.push_back(c.get<double>());
            }
        }
        if (auto it = jn.find("envelope_neighbors"); it != jn.end()) {
            if (!it->is_array())
                throw SchemaError("\"envelope_neighbors\" in " + where + " must be an array");
            for (const json& y : *it) {
                if (!y.is_number_integer())
                    throw SchemaError("\"envelope_neighbors\" in " + where + " must hold integers");
                d.node.envelope_neighbors.push_back(y.get<int>());
            }
            std::sort(d.node.envelope_neighbors.begin(), d.node.envelope_neighbors.end());
        }
        d.weight = jn.contains("weight") ? require_number(jn, "weight", where) : 1.0;

        const json& acts = require(jn, "actions", where);
        if (!acts.is_array()) throw SchemaError("\"actions\" in " + where + " must be an array");
        for (const json& ja : acts) {
            if (!ja.is_object()) throw SchemaError("action entries in " + where + " must be objects");
            ActionEntry a;
            a.id = require_int(ja, "id", where);
            a.cost = require_number(ja, "cost", where + " action " + std::to_string(a.id));
            a.transitions = decode_transitions(require(ja, "transitions", where), where);
            std::sort(a.transitions.begin(), a.transitions.end());
            d.actions.push_back(std::move(a));
        }
        std::sort(d.actions.begin(), d.actions.end(),
                  [](const ActionEntry& a, const ActionEntry& b) { return a.id < b.id; });
        decoded.push_back(std::move(d));
    }

    std::sort(decoded.begin(), decoded.end(),
              [](const Decoded& a, const Decoded& b) { return a.node.id < b.node.id; });
    for (Decoded& d : decoded) {
        m.grid.nodes.push_back(std::move(d.node));
        m.weight.push_back(d.weight);
        m.actions.push_back(std::move(d.actions));
    }

    auto violations = validate_model(m);
    if (!violations.empty()) throw ValidationError(std::move(violations));
    return m;
}

}  // namespace

ModelSpec load_model(const std::string& text, std::vector<std::string>* warnings) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(e.what());
    }
    return decode_model(doc, warnings);
}

ModelSpec load_model(std::istream& in, std::vector<std::string>* warnings) {
    std::ostringstream buf;
    buf << in.rdbuf();
    return load_model(buf.str(), warnings);
}

ModelSpec load_model_file(const std::string& path, std::vector<std::string>* warnings) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open model file: " + path);
    return load_model(in, warnings);
}

std::string save_model(const ModelSpec& m) {
    json doc;
    doc["alpha"] = m.alpha;
    json nodes = json::array();
    for (int i = 0; i < m.num_nodes(); ++i) {
        const Node& node = m.grid.nodes[i];
        json jn;
        jn["id"] = node.id;
        jn["coordinate"] = node.coordinate;
        jn["kind"] = node.kind == NodeKind::interior ? "interior" : "boundary";
        auto neighbors = node.envelope_neighbors;
        std::sort(neighbors.begin(), neighbors.end());
        jn["envelope_neighbors"] = neighbors;
        jn["weight"] = m.weight[i];
        json acts = json::array();
        auto sorted = m.actions[i];
        std::sort(sorted.begin(), sorted.end(),
                  [](const ActionEntry& a, const ActionEntry& b) { return a.id < b.id; });
        for (const ActionEntry& a : sorted) {
            json ja;
            ja["id"] = a.id;
            ja["cost"] = a.cost;
            auto transitions = a.transitions;
            std::sort(transitions.begin(), transitions.end());
            json jt = json::array();
            for (const auto& [target, p] : transitions) jt.push_back(json::array({target, p}));
            ja["transitions"] = std::move(jt);
            acts.push_back(std::move(ja));
        }
        jn["actions"] = std::move(acts);
        nodes.push_back(std::move(jn));
    }
    doc["nodes"] = std::move(nodes);
    return doc.dump(2) + "\n";
}

void save_model_file(const ModelSpec& m, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write model file: " + path);
    out << save_model(m);
}

Policy load_policy_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open policy file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    json doc;
    try {
        doc = json::parse(buf.str());
    } catch (const json::parse_error& e) {
        throw ParseError(e.what());
    }
    if (!doc.is_array()) throw SchemaError("policy file must be a JSON array of action ids");
    Policy f;
    for (const json& v : doc) {
        if (!v.is_number_integer()) throw SchemaError("policy entries must be integers");
        f.push_back(v.get<int>());
    }
    return f;
}

std::string save_policy(const Policy& f) { return json(f).dump() + "\n"; }

void save_policy_file(const Policy& f, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write policy file: " + path);
    out << save_policy(f);
}

}  // namespace hlsc
