#pragma once

#include <iosfwd>
#include <string>

#include "hlsc/solvers.hpp"

namespace hlsc {

/// CSV with one row per iteration and columns exactly
///   n, wnorm_gap, rate_ratio, chain_ok, lsc_check, terminated_by
/// (header included).  wnorm_gap and rate_ratio print as "nan" when no
/// optimal-value oracle was supplied; flags print as 1/0; terminated_by
/// repeats the run-level outcome on every row.
void write_trace_csv(const PiTrace& trace, std::ostream& out);
std::string trace_to_csv(const PiTrace& trace);

/// Full trace as JSON, including the per-iteration grid functions and
/// policies.
std::string trace_to_json(const PiTrace& trace);

/// Best-improvement traces map onto the same CSV columns: chain_ok reports
/// the monotone-iterates flag and lsc_check the continuity proxy.
void write_trace_csv(const BiTrace& trace, const ModelSpec& m, std::ostream& out);
std::string trace_to_json(const BiTrace& trace);

/// Value-iteration runs map each sweep onto a CSV row with wnorm_gap set to
/// the a-posteriori error bound.
void write_trace_csv(const ViResult& vi, std::ostream& out);

}  // namespace hlsc
