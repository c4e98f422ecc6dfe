#pragma once

#include "hlsc/model.hpp"

namespace hlsc {

/// Discrete lower semicontinuous envelope: at every node,
///   result(x) = min(u(x), min over y in envelope_neighbors(x) of u(y)).
/// Interior nodes are unchanged.  The result is the largest grid-lsc
/// function dominated by u, and the operator is idempotent thanks to the
/// two-layer neighborhood invariant.  Pure min on stored doubles, no
/// tolerance.
GridFunction lsc_envelope(const ModelSpec& m, const GridFunction& u);

/// True iff u(x) <= min over envelope_neighbors(x) of u(y) + tol at every
/// boundary node; equivalently the envelope changes u by at most tol.
bool is_grid_lsc(const ModelSpec& m, const GridFunction& u, double tol);

}  // namespace hlsc
