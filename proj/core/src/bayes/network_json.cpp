#include "skg/bayes/network_json.hpp"

#include <json.hpp>

#include "skg/error.hpp"

namespace skg::bayes {

std::string to_json(const BayesianNetwork& bn) {
    nlohmann::ordered_json nodes = nlohmann::ordered_json::array();
    for (const auto& n : bn.nodes()) {
        nlohmann::ordered_json node;
        node["id"] = n.id;
        node["states"] = n.states;
        node["parents"] = n.parents;
        node["cpt"] = n.cpt;
        nodes.push_back(std::move(node));
    }
    nlohmann::ordered_json doc;
    doc["nodes"] = std::move(nodes);
    return doc.dump(2) + "\n";
}

BayesianNetwork from_json(std::string_view text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw FormatError(std::string("invalid BN JSON: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("nodes") || !doc["nodes"].is_array()) {
        throw FormatError("BN JSON needs a top-level 'nodes' array");
    }
    std::vector<Node> nodes;
    try {
        for (const auto& j : doc["nodes"]) {
            Node n;
            n.id = j.at("id").get<std::string>();
            n.role = role_from_id(n.id);
            n.states = j.at("states").get<std::vector<std::string>>();
            n.parents = j.at("parents").get<std::vector<std::string>>();
            n.cpt = j.at("cpt").get<std::vector<double>>();
            nodes.push_back(std::move(n));
        }
    } catch (const nlohmann::json::exception& e) {
        throw FormatError(std::string("malformed BN node: ") + e.what());
    }
    return BayesianNetwork(std::move(nodes));
}

}  // namespace skg::bayes
