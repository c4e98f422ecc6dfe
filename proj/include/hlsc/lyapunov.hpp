#pragma once

#include <string>
#include <utility>

#include "hlsc/model.hpp"

namespace hlsc {

/// Result of checking the growth conditions
///   (a) |C(x,a)| <= M W(x)      on all admissible pairs,
///   (b) sum_y W(y) Q(y|x,a) <= beta W(x),
///   (c) gamma = alpha * beta < 1,
/// with the minimal constants the model admits.  `beta` is clamped below
/// at 1 (the tight constant on a self-looping model with W == 1 is exactly
/// 1, and every result downstream only needs gamma < 1).  Witnesses are the
/// (node, action-id) pairs attaining the maxima.
struct GrowthCertificate {
    double M = 0.0;
    double beta = 1.0;
    double gamma = 0.0;
    bool pass = false;
    std::pair<int, int> witness_M{-1, -1};
    std::pair<int, int> witness_beta{-1, -1};
};

/// Computes the minimal M and beta over the admissible pairs.  A failing
/// model yields pass == false, never an exception.  Deterministic: the max
/// reductions run in fixed node/action order.
GrowthCertificate certify_growth(const ModelSpec& m);

/// Weighted sup norm: max over nodes of |u(x)| / W(x).
double w_norm(const GridFunction& u, const ModelSpec& m);

/// W-norm of the difference u - v.
double w_norm_diff(const GridFunction& u, const GridFunction& v, const ModelSpec& m);

/// The a-priori value bound M / (1 - gamma): every policy value satisfies
/// ||V_f||_W <= value_bound.  Throws std::domain_error if the certificate
/// failed.
double value_bound(const GrowthCertificate& c);

/// Certificate as a JSON document.
std::string certificate_to_json(const GrowthCertificate& c);

}  // namespace hlsc
