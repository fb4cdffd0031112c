#include "prppp/instance.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "prppp/fingerprint.hpp"

namespace prppp {

using nlohmann::json;

double round2(double v) {
    return std::floor(v * 100.0 + 0.5) / 100.0;
}

double PublicProblem::total_demand(int retailer) const {
    double total = 0.0;
    for (int t = 0; t < horizon; ++t) total += demand[static_cast<size_t>(retailer)][static_cast<size_t>(t)];
    return total;
}

double PublicProblem::period_demand(int period) const {
    double total = 0.0;
    for (int i = 1; i <= n_retailers; ++i) total += demand[static_cast<size_t>(i)][static_cast<size_t>(period)];
    return total;
}

double PublicProblem::remaining_demand(int period) const {
    double total = 0.0;
    for (int t = period; t < horizon; ++t) total += period_demand(t);
    return total;
}

double PublicProblem::remaining_demand(int retailer, int period) const {
    double total = 0.0;
    for (int t = period; t < horizon; ++t) total += demand[static_cast<size_t>(retailer)][static_cast<size_t>(t)];
    return total;
}

namespace {

[[noreturn]] void fail(const std::string& msg) { throw ValidationError(msg); }

double require_number(const json& doc, const char* key) {
    if (!doc.contains(key)) fail(std::string("missing field '") + key + "'");
    const auto& v = doc.at(key);
    if (!v.is_number()) fail(std::string("field '") + key + "' must be a number");
    return v.get<double>();
}

int require_int(const json& doc, const char* key) {
    double v = require_number(doc, key);
    if (v != std::floor(v)) fail(std::string("field '") + key + "' must be an integer");
    return static_cast<int>(v);
}

std::vector<double> require_real_array(const json& doc, const char* key, size_t size) {
    if (!doc.contains(key)) fail(std::string("missing field '") + key + "'");
    const auto& v = doc.at(key);
    if (!v.is_array() || v.size() != size) {
        std::ostringstream os;
        os << "field '" << key << "' must be an array of length " << size;
        fail(os.str());
    }
    std::vector<double> out;
    out.reserve(size);
    for (size_t i = 0; i < size; ++i) {
        if (!v[i].is_number()) {
            std::ostringstream os;
            os << "field '" << key << "' entry " << i << " must be a number";
            fail(os.str());
        }
        out.push_back(v[i].get<double>());
    }
    return out;
}

CostMatrix derive_costs(const std::vector<std::array<double, 2>>& coords, double scale) {
    size_t nodes = coords.size();
    CostMatrix c(nodes, std::vector<double>(nodes, 0.0));
    for (size_t i = 0; i < nodes; ++i) {
        for (size_t j = i + 1; j < nodes; ++j) {
            double dx = coords[i][0] - coords[j][0];
            double dy = coords[i][1] - coords[j][1];
            double cost = round2(scale * std::sqrt(dx * dx + dy * dy));
            c[i][j] = cost;
            c[j][i] = cost;
        }
    }
    return c;
}

void validate(const PublicProblem& pub, const std::vector<double>& holding) {
    size_t nodes = static_cast<size_t>(pub.node_count());
    if (pub.n_retailers < 1) fail("n_retailers must be >= 1");
    if (pub.horizon < 1) fail("horizon must be >= 1");
    if (pub.n_vehicles < 1) fail("n_vehicles must be >= 1");
    if (pub.unit_production_cost < 0) fail("u must be nonnegative");
    if (pub.setup_cost < 0) fail("f must be nonnegative");
    if (pub.production_capacity <= 0) fail("C must be positive");
    if (pub.vehicle_capacity <= 0) fail("Q must be positive");
    if (pub.coord_scale <= 0) fail("scale must be positive");

    for (size_t i = 0; i < nodes; ++i) {
        if (holding[i] < 0) fail("h[" + std::to_string(i) + "] must be nonnegative");
        if (pub.inventory_capacity[i] <= 0) fail("L[" + std::to_string(i) + "] must be positive");
        if (pub.initial_inventory[i] < 0) fail("I0[" + std::to_string(i) + "] must be nonnegative");
        if (pub.initial_inventory[i] > pub.inventory_capacity[i]) {
            fail((i == 0 ? std::string("SupplierInventoryCap") : std::string("RetailerInventoryCap")) +
                 ": I0[" + std::to_string(i) + "] exceeds L[" + std::to_string(i) + "]");
        }
    }

    if (pub.transport_cost.size() != nodes) fail("c must be (n+1)x(n+1)");
    for (size_t i = 0; i < nodes; ++i) {
        if (pub.transport_cost[i].size() != nodes) fail("c row " + std::to_string(i) + " has wrong length");
        if (pub.transport_cost[i][i] != 0.0) fail("c[" + std::to_string(i) + "][" + std::to_string(i) + "] must be zero");
        for (size_t j = 0; j < nodes; ++j) {
            if (pub.transport_cost[i][j] < 0) fail("c entries must be nonnegative");
            if (pub.transport_cost[i][j] != pub.transport_cost[j][i]) {
                fail("c must be symmetric (mismatch at " + std::to_string(i) + "," + std::to_string(j) + ")");
            }
        }
    }

    for (int i = 1; i <= pub.n_retailers; ++i) {
        double total = 0.0;
        for (int t = 0; t < pub.horizon; ++t) {
            int d = pub.demand[static_cast<size_t>(i)][static_cast<size_t>(t)];
            if (d < 0) fail("d[" + std::to_string(i) + "][" + std::to_string(t + 1) + "] must be nonnegative");
            total += d;
        }
        if (total < 1) fail("retailer " + std::to_string(i) + " has zero total demand");
    }
}

} // namespace

Instance Instance::make(PublicProblem pub, std::vector<double> holding) {
    if (holding.size() != static_cast<size_t>(pub.node_count())) {
        fail("h must have length n+1");
    }
    pub.supplier_holding_cost = holding[0];
    validate(pub, holding);
    Instance inst;
    inst.pub_ = std::move(pub);
    inst.holding_ = std::move(holding);
    return inst;
}

Instance Instance::from_json(const json& doc) {
    if (!doc.is_object()) fail("instance document must be a JSON object");

    PublicProblem pub;
    pub.n_retailers = require_int(doc, "n_retailers");
    pub.horizon = require_int(doc, "horizon");
    pub.n_vehicles = require_int(doc, "n_vehicles");
    if (pub.n_retailers < 1) fail("n_retailers must be >= 1");
    if (pub.horizon < 1) fail("horizon must be >= 1");
    size_t nodes = static_cast<size_t>(pub.n_retailers) + 1;

    pub.unit_production_cost = require_number(doc, "u");
    pub.setup_cost = require_number(doc, "f");
    pub.production_capacity = require_number(doc, "C");
    pub.vehicle_capacity = require_number(doc, "Q");
    std::vector<double> holding = require_real_array(doc, "h", nodes);
    pub.inventory_capacity = require_real_array(doc, "L", nodes);
    pub.initial_inventory = require_real_array(doc, "I0", nodes);
    pub.coord_scale = doc.contains("scale") ? require_number(doc, "scale") : 1.0;

    if (!doc.contains("d") || !doc.at("d").is_array() || doc.at("d").size() != static_cast<size_t>(pub.n_retailers)) {
        fail("field 'd' must be an n x horizon array");
    }
    pub.demand.assign(nodes, std::vector<int>(static_cast<size_t>(pub.horizon), 0));
    for (int i = 1; i <= pub.n_retailers; ++i) {
        const auto& row = doc.at("d")[static_cast<size_t>(i - 1)];
        if (!row.is_array() || row.size() != static_cast<size_t>(pub.horizon)) {
            fail("d row " + std::to_string(i) + " must have length horizon");
        }
        for (int t = 0; t < pub.horizon; ++t) {
            const auto& v = row[static_cast<size_t>(t)];
            if (!v.is_number() || v.get<double>() != std::floor(v.get<double>())) {
                fail("d[" + std::to_string(i) + "][" + std::to_string(t + 1) + "] must be an integer");
            }
            pub.demand[static_cast<size_t>(i)][static_cast<size_t>(t)] = v.get<int>();
        }
    }

    bool has_coords = doc.contains("coords");
    bool has_matrix = doc.contains("c");
    if (has_coords == has_matrix) fail("exactly one of 'coords' and 'c' is required");

    if (has_coords) {
        const auto& cv = doc.at("coords");
        if (!cv.is_array() || cv.size() != nodes) fail("coords must be (n+1) pairs");
        std::vector<std::array<double, 2>> coords(nodes);
        for (size_t i = 0; i < nodes; ++i) {
            if (!cv[i].is_array() || cv[i].size() != 2 || !cv[i][0].is_number() || !cv[i][1].is_number()) {
                fail("coords[" + std::to_string(i) + "] must be a pair of numbers");
            }
            coords[i] = {cv[i][0].get<double>(), cv[i][1].get<double>()};
        }
        pub.coordinates = coords;
        if (pub.coord_scale <= 0) fail("scale must be positive");
        pub.transport_cost = derive_costs(coords, pub.coord_scale);
    } else {
        const auto& cm = doc.at("c");
        if (!cm.is_array() || cm.size() != nodes) fail("c must be (n+1)x(n+1)");
        pub.transport_cost.assign(nodes, std::vector<double>(nodes, 0.0));
        for (size_t i = 0; i < nodes; ++i) {
            if (!cm[i].is_array() || cm[i].size() != nodes) fail("c row " + std::to_string(i) + " has wrong length");
            for (size_t j = 0; j < nodes; ++j) {
                if (!cm[i][j].is_number()) fail("c entries must be numbers");
                pub.transport_cost[i][j] = cm[i][j].get<double>();
            }
        }
    }

    return make(std::move(pub), std::move(holding));
}

Instance Instance::from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail("cannot open instance file: " + path);
    json doc;
    try {
        in >> doc;
    } catch (const json::parse_error& e) {
        fail("instance file is not valid JSON: " + std::string(e.what()));
    }
    return from_json(doc);
}

json Instance::to_json() const {
    json doc;
    doc["n_retailers"] = pub_.n_retailers;
    doc["horizon"] = pub_.horizon;
    doc["n_vehicles"] = pub_.n_vehicles;
    doc["u"] = pub_.unit_production_cost;
    doc["f"] = pub_.setup_cost;
    doc["h"] = holding_;
    json d = json::array();
    for (int i = 1; i <= pub_.n_retailers; ++i) d.push_back(pub_.demand[static_cast<size_t>(i)]);
    doc["d"] = d;
    if (pub_.coordinates) {
        json coords = json::array();
        for (const auto& p : *pub_.coordinates) coords.push_back({p[0], p[1]});
        doc["coords"] = coords;
        doc["scale"] = pub_.coord_scale;
    } else {
        doc["c"] = pub_.transport_cost;
    }
    doc["C"] = pub_.production_capacity;
    doc["Q"] = pub_.vehicle_capacity;
    doc["L"] = pub_.inventory_capacity;
    doc["I0"] = pub_.initial_inventory;
    return doc;
}

std::string Instance::fingerprint() const {
    return hex64(fnv1a64(to_json().dump()));
}

} // namespace prppp
