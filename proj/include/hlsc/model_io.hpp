#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "hlsc/model.hpp"

namespace hlsc {

/// A file could not be opened or written.
struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Input is not valid JSON.
struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// JSON is well-formed but a required field is missing or has the wrong type.
struct SchemaError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// The decoded model breaks a model invariant; carries the full list.
struct ValidationError : std::runtime_error {
    std::vector<Violation> violations;
    explicit ValidationError(std::vector<Violation> v);
};

/// Decodes and validates a model from its JSON document.  Kernel rows may
/// be given sparse ([[node, prob], ...]) or dense ([p0, p1, ...]); dense
/// rows are converted to sparse form with zero entries dropped.  Top-level
/// "M"/"beta"/"gamma" keys are ignored (growth constants are always
/// recomputed); a note is appended to `warnings` when they are present.
ModelSpec load_model(const std::string& text, std::vector<std::string>* warnings = nullptr);
ModelSpec load_model(std::istream& in, std::vector<std::string>* warnings = nullptr);
ModelSpec load_model_file(const std::string& path, std::vector<std::string>* warnings = nullptr);

/// Canonical serialization: nodes and actions sorted by id, transitions by
/// target node id.  Serializing the same model twice is byte-identical.
std::string save_model(const ModelSpec& m);
void save_model_file(const ModelSpec& m, const std::string& path);

/// Policy files are a JSON array of action ids indexed by node id.
Policy load_policy_file(const std::string& path);
std::string save_policy(const Policy& f);
void save_policy_file(const Policy& f, const std::string& path);

}  // namespace hlsc
