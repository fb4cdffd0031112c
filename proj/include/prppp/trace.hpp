#ifndef PRPPP_TRACE_HPP
#define PRPPP_TRACE_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "prppp/engine.hpp"
#include "prppp/protocol.hpp"

namespace prppp {

/// Replayable log of a run: header (instance fingerprint + config), one
/// record per processed transaction, and the final plan. Serialized as
/// line-delimited JSON. The final plan is kept as its compact JSON dump so
/// replays can compare byte for byte.
struct Trace {
    std::string fingerprint;
    EngineConfig config;
    std::vector<TransactionRecord> records;
    std::string final_plan_json;
    bool has_final = true; // false for a truncated file
};

void write_trace(std::ostream& out, const Trace& trace);
void write_trace_file(const std::string& path, const Trace& trace);

/// Parses a trace; tolerates a missing final record (has_final = false) so
/// truncated files can still be partially replayed.
Trace read_trace(std::istream& in);
Trace read_trace_file(const std::string& path);

struct ReplayResult {
    Plan plan;        // state after applying every accepted record
    int revision = 0; // accepted transactions applied
    bool complete = true;
};

/// Rebuilds the initial solution from the instance and the trace's config,
/// then re-applies each accepted transaction's chosen moves. No negotiation
/// is re-run; the trace is the authority on what was applied.
ReplayResult replay(const Instance& instance, const Trace& trace);

} // namespace prppp

#endif
