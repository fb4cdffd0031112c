#include "prppp/trace.hpp"

#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

namespace prppp {

using nlohmann::json;

namespace {

json moves_to_json(const std::vector<Move>& moves) {
    json arr = json::array();
    for (const Move& move : moves) {
        arr.push_back({{"retailer", move.retailer},
                       {"from", move.from_period + 1},
                       {"to", move.to_period + 1},
                       {"qty", move.qty}});
    }
    return arr;
}

std::vector<Move> moves_from_json(const json& arr) {
    std::vector<Move> moves;
    for (const auto& entry : arr) {
        moves.push_back(Move{entry.at("retailer").get<int>(), entry.at("from").get<int>() - 1,
                             entry.at("to").get<int>() - 1, entry.at("qty").get<double>()});
    }
    return moves;
}

json deltas_to_json(const std::map<int, double>& deltas) {
    json obj = json::object();
    for (const auto& [retailer, delta] : deltas) obj[std::to_string(retailer)] = delta;
    return obj;
}

std::map<int, double> deltas_from_json(const json& obj) {
    std::map<int, double> deltas;
    for (const auto& [key, value] : obj.items()) deltas[std::stoi(key)] = value.get<double>();
    return deltas;
}

TxnKind kind_from_name(const std::string& name) {
    if (name == "removal") return TxnKind::Removal;
    if (name == "insertion") return TxnKind::Insertion;
    if (name == "substitution") return TxnKind::Substitution;
    throw ValidationError("unknown transaction kind: " + name);
}

json record_to_json(const TransactionRecord& record) {
    json doc;
    doc["type"] = "txn";
    doc["id"] = record.id;
    doc["kind"] = txn_kind_name(record.kind);
    doc["moves"] = moves_to_json(record.moves);
    doc["estimated_saving"] = record.estimated_saving;
    doc["stale"] = record.stale;
    json outcomes = json::array();
    for (const auto& eval : record.outcomes) {
        outcomes.push_back({{"applied", eval.applied},
                            {"deltas", deltas_to_json(eval.negotiator_deltas)},
                            {"sum", eval.delta_sum},
                            {"feasible", eval.feasible},
                            {"admissible", eval.admissible}});
    }
    doc["outcomes"] = outcomes;
    doc["chosen_outcome"] = record.chosen;
    doc["voter_deltas"] = deltas_to_json(record.voter_deltas);
    doc["tally"] = {{"favor", record.favor}, {"against", record.against}};
    doc["tiebreak"] = record.tiebreak.has_value() ? json(*record.tiebreak) : json(nullptr);
    doc["accepted"] = record.accepted;
    doc["revision"] = record.revision;
    return doc;
}

TransactionRecord record_from_json(const json& doc) {
    TransactionRecord record;
    record.id = doc.at("id").get<long>();
    record.kind = kind_from_name(doc.at("kind").get<std::string>());
    record.moves = moves_from_json(doc.at("moves"));
    record.estimated_saving = doc.value("estimated_saving", 0.0);
    record.stale = doc.value("stale", false);
    if (doc.contains("outcomes")) {
        for (const auto& entry : doc.at("outcomes")) {
            OutcomeEval eval;
            eval.applied = entry.at("applied").get<std::vector<int>>();
            eval.negotiator_deltas = deltas_from_json(entry.at("deltas"));
            eval.delta_sum = entry.at("sum").get<double>();
            eval.feasible = entry.at("feasible").get<bool>();
            eval.admissible = entry.at("admissible").get<bool>();
            record.outcomes.push_back(std::move(eval));
        }
    }
    record.chosen = doc.at("chosen_outcome").get<std::vector<int>>();
    record.voter_deltas = deltas_from_json(doc.at("voter_deltas"));
    record.favor = doc.at("tally").at("favor").get<int>();
    record.against = doc.at("tally").at("against").get<int>();
    if (!doc.at("tiebreak").is_null()) record.tiebreak = doc.at("tiebreak").get<bool>();
    record.accepted = doc.at("accepted").get<bool>();
    record.revision = doc.at("revision").get<int>();
    return record;
}

} // namespace

void write_trace(std::ostream& out, const Trace& trace) {
    json header;
    header["type"] = "header";
    header["fingerprint"] = trace.fingerprint;
    header["config"] = trace.config.to_json();
    out << header.dump() << "\n";
    for (const auto& record : trace.records) {
        out << record_to_json(record).dump() << "\n";
    }
    if (trace.has_final) {
        json final_record;
        final_record["type"] = "final";
        final_record["revision"] = trace.records.empty() ? 0 : trace.records.back().revision;
        final_record["plan"] = json::parse(trace.final_plan_json);
        out << final_record.dump() << "\n";
    }
}

void write_trace_file(const std::string& path, const Trace& trace) {
    std::ofstream out(path);
    if (!out) throw ValidationError("cannot write trace file: " + path);
    write_trace(out, trace);
}

Trace read_trace(std::istream& in) {
    Trace trace;
    trace.has_final = false;
    std::string line;
    bool have_header = false;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        json doc;
        try {
            doc = json::parse(line);
        } catch (const json::parse_error&) {
            break; // treat a torn last line as truncation
        }
        std::string type = doc.value("type", "");
        if (type == "header") {
            trace.fingerprint = doc.at("fingerprint").get<std::string>();
            trace.config = EngineConfig::from_json(doc.at("config"));
            have_header = true;
        } else if (type == "txn") {
            trace.records.push_back(record_from_json(doc));
        } else if (type == "final") {
            trace.final_plan_json = doc.at("plan").dump();
            trace.has_final = true;
        }
    }
    if (!have_header) throw ValidationError("trace has no header record");
    return trace;
}

Trace read_trace_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open trace file: " + path);
    return read_trace(in);
}

ReplayResult replay(const Instance& instance, const Trace& trace) {
    std::vector<std::vector<DeliveryPattern>> preferences(static_cast<size_t>(instance.retailers()) + 1);
    for (int i = 1; i <= instance.retailers(); ++i) {
        preferences[static_cast<size_t>(i)] = delivery_preferences(instance, i, trace.config.preference_depth);
    }
    PlanningBoard board(instance, initial_solution(instance, preferences));

    for (const auto& record : trace.records) {
        if (!record.accepted) continue;
        std::vector<Move> applied;
        for (const Move& move : record.moves) {
            for (int retailer : record.chosen) {
                if (move.retailer == retailer) applied.push_back(move);
            }
        }
        if (!board.apply(applied)) {
            throw ValidationError("trace replay diverged at transaction " + std::to_string(record.id));
        }
    }
    return ReplayResult{board.current_plan(), board.revision(), trace.has_final};
}

} // namespace prppp
