#include "hlsc/trace_io.hpp"

#include <cmath>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "hlsc/lyapunov.hpp"

namespace hlsc {

namespace {

constexpr char kCsvHeader[] = "n,wnorm_gap,rate_ratio,chain_ok,lsc_check,terminated_by\n";

void csv_number(std::ostream& out, double v) {
    if (std::isnan(v)) {
        out << "nan";
    } else {
        out.precision(17);
        out << v;
    }
}

}  // namespace

void write_trace_csv(const PiTrace& trace, std::ostream& out) {
    out << kCsvHeader;
    for (const PiIterate& it : trace.iterations) {
        out << it.n << ',';
        csv_number(out, it.gap_to_opt);
        out << ',';
        csv_number(out, it.rate_ratio);
        out << ',' << (it.chain_ok ? 1 : 0) << ',' << (it.lsc_check ? 1 : 0) << ','
            << termination_name(trace.terminated_by) << '\n';
    }
}

std::string trace_to_csv(const PiTrace& trace) {
    std::ostringstream os;
    write_trace_csv(trace, os);
    return os.str();
}

std::string trace_to_json(const PiTrace& trace) {
    nlohmann::json doc;
    doc["terminated_by"] = termination_name(trace.terminated_by);
    nlohmann::json its = nlohmann::json::array();
    for (const PiIterate& it : trace.iterations) {
        nlohmann::json j;
        j["n"] = it.n;
        j["v"] = it.values;
        j["v_envelope"] = it.envelope;
        j["bellman_of_envelope"] = it.backup;
        j["policy"] = it.policy;
        j["gap_to_opt"] = it.gap_to_opt;
        j["rate_ratio"] = it.rate_ratio;
        j["chain_ok"] = it.chain_ok;
        j["lsc_check"] = it.lsc_check;
        its.push_back(std::move(j));
    }
    doc["iterations"] = std::move(its);
    return doc.dump(2) + "\n";
}

void write_trace_csv(const BiTrace& trace, const ModelSpec& m, std::ostream& out) {
    out << kCsvHeader;
    for (size_t n = 0; n < trace.iterations.size(); ++n) {
        const BiIterate& it = trace.iterations[n];
        bool monotone = n == 0 || [&] {
            const GridFunction& prev = trace.iterations[n - 1].values;
            for (size_t i = 0; i < it.values.size(); ++i)
                if (it.values[i] > prev[i] + kChainTol) return false;
            return true;
        }();
        out << it.n << ",nan,nan," << (monotone ? 1 : 0) << ',' << (it.continuity_check ? 1 : 0)
            << ',' << termination_name(trace.terminated_by) << '\n';
    }
}

std::string trace_to_json(const BiTrace& trace) {
    nlohmann::json doc;
    doc["terminated_by"] = termination_name(trace.terminated_by);
    nlohmann::json its = nlohmann::json::array();
    for (const BiIterate& it : trace.iterations) {
        nlohmann::json j;
        j["n"] = it.n;
        j["w"] = it.values;
        j["policy"] = it.policy;
        j["continuity_check"] = it.continuity_check;
        its.push_back(std::move(j));
    }
    doc["iterations"] = std::move(its);
    return doc.dump(2) + "\n";
}

void write_trace_csv(const ViResult& vi, std::ostream& out) {
    out << kCsvHeader;
    for (size_t k = 0; k < vi.error_bounds.size(); ++k) {
        out << k << ',';
        csv_number(out, vi.error_bounds[k]);
        out << ",nan,1,1,tolerance\n";
    }
}

}  // namespace hlsc
