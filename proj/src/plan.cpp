#include "prppp/plan.hpp"

#include <algorithm>
#include <fstream>

#include <nlohmann/json.hpp>

namespace prppp {

using nlohmann::json;

namespace {
const std::vector<int> kNoRoute;
[[noreturn]] void fail(const std::string& msg) { throw ValidationError(msg); }
} // namespace

Plan::Plan(int n_retailers, int horizon, int n_vehicles)
    : n_(n_retailers),
      horizon_(horizon),
      m_(n_vehicles),
      qty_(static_cast<size_t>(n_retailers) + 1, std::vector<double>(static_cast<size_t>(horizon), 0.0)),
      veh_(static_cast<size_t>(n_retailers) + 1, std::vector<int>(static_cast<size_t>(horizon), -1)),
      routes_(static_cast<size_t>(n_vehicles), std::vector<std::vector<int>>(static_cast<size_t>(horizon))) {
    production.assign(static_cast<size_t>(horizon), 0.0);
    setup.assign(static_cast<size_t>(horizon), false);
}

double Plan::quantity(int retailer, int period) const {
    return qty_.at(static_cast<size_t>(retailer)).at(static_cast<size_t>(period));
}

int Plan::vehicle_of(int retailer, int period) const {
    return veh_.at(static_cast<size_t>(retailer)).at(static_cast<size_t>(period));
}

void Plan::set_delivery(int retailer, int period, double qty, int vehicle) {
    qty_.at(static_cast<size_t>(retailer)).at(static_cast<size_t>(period)) = qty;
    veh_.at(static_cast<size_t>(retailer)).at(static_cast<size_t>(period)) = qty > 0.0 ? vehicle : -1;
}

void Plan::clear_delivery(int retailer, int period) {
    set_delivery(retailer, period, 0.0, -1);
}

const std::vector<int>& Plan::route(int vehicle, int period) const {
    if (vehicle < 0 || vehicle >= m_) return kNoRoute;
    return routes_.at(static_cast<size_t>(vehicle)).at(static_cast<size_t>(period));
}

void Plan::set_route(int vehicle, int period, std::vector<int> nodes) {
    routes_.at(static_cast<size_t>(vehicle)).at(static_cast<size_t>(period)) = std::move(nodes);
}

void Plan::clear_routes(int period) {
    for (int k = 0; k < m_; ++k) routes_[static_cast<size_t>(k)][static_cast<size_t>(period)].clear();
}

std::vector<int> Plan::neighborhood(int period) const {
    std::vector<int> members;
    for (int i = 1; i <= n_; ++i) {
        if (quantity(i, period) > 0.0) members.push_back(i);
    }
    return members;
}

double Plan::period_total(int period) const {
    double total = 0.0;
    for (int i = 1; i <= n_; ++i) total += quantity(i, period);
    return total;
}

double Plan::routing_cost(const CostMatrix& c, int period) const {
    double total = 0.0;
    for (int k = 0; k < m_; ++k) {
        const auto& nodes = route(k, period);
        for (size_t a = 0; a + 1 < nodes.size(); ++a) {
            total += c[static_cast<size_t>(nodes[a])][static_cast<size_t>(nodes[a + 1])];
        }
    }
    return total;
}

double Plan::routing_cost(const CostMatrix& c) const {
    double total = 0.0;
    for (int t = 0; t < horizon_; ++t) total += routing_cost(c, t);
    return total;
}

std::vector<std::vector<double>> simulate_inventory(const PublicProblem& pub, const Plan& plan) {
    size_t nodes = static_cast<size_t>(pub.node_count());
    int T = pub.horizon;
    std::vector<std::vector<double>> inv(nodes, std::vector<double>(static_cast<size_t>(T), 0.0));
    for (int t = 0; t < T; ++t) {
        double carried = t == 0 ? pub.initial_inventory[0] : inv[0][static_cast<size_t>(t - 1)];
        inv[0][static_cast<size_t>(t)] = carried + plan.production[static_cast<size_t>(t)] - plan.period_total(t);
        for (int i = 1; i <= pub.n_retailers; ++i) {
            double prev = t == 0 ? pub.initial_inventory[static_cast<size_t>(i)]
                                 : inv[static_cast<size_t>(i)][static_cast<size_t>(t - 1)];
            inv[static_cast<size_t>(i)][static_cast<size_t>(t)] =
                prev + plan.quantity(i, t) - pub.demand[static_cast<size_t>(i)][static_cast<size_t>(t)];
        }
    }
    return inv;
}

json Plan::to_json() const {
    json doc;
    json deliveries = json::array();
    for (int t = 0; t < horizon_; ++t) {
        for (int i = 1; i <= n_; ++i) {
            double q = quantity(i, t);
            if (q > 0.0) {
                deliveries.push_back({{"i", i}, {"k", vehicle_of(i, t) + 1}, {"t", t + 1}, {"q", q}});
            }
        }
    }
    doc["deliveries"] = deliveries;
    json routes = json::array();
    for (int t = 0; t < horizon_; ++t) {
        for (int k = 0; k < m_; ++k) {
            const auto& nodes = route(k, t);
            if (!nodes.empty()) {
                routes.push_back({{"k", k + 1}, {"t", t + 1}, {"nodes", nodes}});
            }
        }
    }
    doc["routes"] = routes;
    doc["p"] = production;
    doc["y"] = setup;
    return doc;
}

std::string Plan::canonical_dump() const {
    return to_json().dump(2) + "\n";
}

Plan Plan::from_json(const json& doc, const PublicProblem& pub) {
    if (!doc.is_object()) fail("plan document must be a JSON object");
    Plan plan(pub.n_retailers, pub.horizon, pub.n_vehicles);

    if (!doc.contains("deliveries") || !doc.at("deliveries").is_array()) fail("missing 'deliveries' array");
    for (const auto& entry : doc.at("deliveries")) {
        int i = entry.at("i").get<int>();
        int k = entry.at("k").get<int>();
        int t = entry.at("t").get<int>();
        double q = entry.at("q").get<double>();
        if (i < 1 || i > pub.n_retailers) fail("delivery retailer out of range: " + std::to_string(i));
        if (t < 1 || t > pub.horizon) fail("delivery period out of range: " + std::to_string(t));
        if (k < 1 || k > pub.n_vehicles) fail("delivery vehicle out of range: " + std::to_string(k));
        if (q < 0) fail("delivery quantity must be nonnegative");
        if (plan.quantity(i, t - 1) > 0.0) {
            fail("duplicate delivery for retailer " + std::to_string(i) + " in period " + std::to_string(t));
        }
        plan.set_delivery(i, t - 1, q, k - 1);
    }

    if (!doc.contains("routes") || !doc.at("routes").is_array()) fail("missing 'routes' array");
    for (const auto& entry : doc.at("routes")) {
        int k = entry.at("k").get<int>();
        int t = entry.at("t").get<int>();
        if (t < 1 || t > pub.horizon) fail("route period out of range: " + std::to_string(t));
        if (k < 1 || k > pub.n_vehicles) fail("route vehicle out of range: " + std::to_string(k));
        const auto& nv = entry.at("nodes");
        if (!nv.is_array()) fail("route nodes must be an array");
        std::vector<int> nodes;
        for (const auto& node : nv) {
            int v = node.get<int>();
            if (v < 0 || v > pub.n_retailers) fail("route node out of range: " + std::to_string(v));
            nodes.push_back(v);
        }
        if (!plan.route(k - 1, t - 1).empty()) {
            fail("duplicate route for vehicle " + std::to_string(k) + " in period " + std::to_string(t));
        }
        plan.set_route(k - 1, t - 1, std::move(nodes));
    }

    if (doc.contains("p")) {
        auto p = doc.at("p").get<std::vector<double>>();
        if (p.size() != static_cast<size_t>(pub.horizon)) fail("'p' must have length horizon");
        plan.production = std::move(p);
    }
    if (doc.contains("y")) {
        auto y = doc.at("y").get<std::vector<bool>>();
        if (y.size() != static_cast<size_t>(pub.horizon)) fail("'y' must have length horizon");
        plan.setup = std::move(y);
    }
    return plan;
}

Plan Plan::from_file(const std::string& path, const PublicProblem& pub) {
    std::ifstream in(path);
    if (!in) fail("cannot open plan file: " + path);
    json doc;
    try {
        in >> doc;
    } catch (const json::parse_error& e) {
        fail("plan file is not valid JSON: " + std::string(e.what()));
    }
    return from_json(doc, pub);
}

} // namespace prppp
