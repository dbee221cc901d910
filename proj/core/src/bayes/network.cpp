#include "skg/bayes/network.hpp"

#include <cmath>
#include <set>

#include "skg/error.hpp"

namespace skg::bayes {

const char* to_string(NodeRole role) {
    switch (role) {
        case NodeRole::EntityPresent:
            return "entity-present";
        case NodeRole::ActionOccurs:
            return "action-occurs";
        case NodeRole::SignalEmitted:
            return "signal-emitted";
        case NodeRole::SensorOutput:
            return "sensor-output";
        case NodeRole::Other:
            return "other";
    }
    return "other";
}

NodeRole role_from_id(std::string_view id) {
    if (id.starts_with("entity:")) return NodeRole::EntityPresent;
    if (id.starts_with("action:")) return NodeRole::ActionOccurs;
    if (id.starts_with("signal:")) return NodeRole::SignalEmitted;
    if (id.starts_with("sensor:")) return NodeRole::SensorOutput;
    return NodeRole::Other;
}

BayesianNetwork::BayesianNetwork(std::vector<Node> nodes) : nodes_(std::move(nodes)) {
    parents_.resize(nodes_.size());
    children_.resize(nodes_.size());
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
        const Node& n = nodes_[i];
        if (n.states.empty()) throw NetworkError("node '" + n.id + "' has no states");
        if (std::set<std::string>(n.states.begin(), n.states.end()).size() != n.states.size()) {
            throw NetworkError("node '" + n.id + "' has duplicate state labels");
        }
        std::size_t rows = 1;
        for (const auto& p : n.parents) {
            auto it = index_.find(p);
            if (it == index_.end()) {
                throw NetworkError("parent '" + p + "' of '" + n.id + "' is unknown or does not precede it");
            }
            for (std::size_t q : parents_[i]) {
                if (q == it->second) throw NetworkError("node '" + n.id + "' lists parent '" + p + "' twice");
            }
            parents_[i].push_back(it->second);
            children_[it->second].push_back(i);
            rows *= nodes_[it->second].states.size();
        }
        const std::size_t card = n.states.size();
        if (n.cpt.size() != rows * card) {
            throw NetworkError("node '" + n.id + "' has " + std::to_string(n.cpt.size()) + " CPT entries, expected " +
                               std::to_string(rows * card));
        }
        for (std::size_t r = 0; r < rows; ++r) {
            double sum = 0.0;
            for (std::size_t s = 0; s < card; ++s) {
                const double p = n.cpt[r * card + s];
                if (!std::isfinite(p) || p < 0.0) {
                    throw NetworkError("node '" + n.id + "' has a negative or non-finite CPT entry");
                }
                sum += p;
            }
            if (std::abs(sum - 1.0) > 1e-12) {
                throw NetworkError("CPT row " + std::to_string(r) + " of '" + n.id + "' sums to " +
                                   std::to_string(sum));
            }
        }
        if (!index_.emplace(n.id, i).second) throw NetworkError("duplicate node id '" + n.id + "'");
    }
}

std::optional<std::size_t> BayesianNetwork::index_of(std::string_view id) const {
    auto it = index_.find(id);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

std::size_t BayesianNetwork::require(std::string_view id) const {
    auto i = index_of(id);
    if (!i) throw EvidenceError("unknown node '" + std::string(id) + "'");
    return *i;
}

std::optional<std::size_t> BayesianNetwork::state_index(std::size_t node, std::string_view label) const {
    const auto& states = nodes_[node].states;
    for (std::size_t s = 0; s < states.size(); ++s) {
        if (states[s] == label) return s;
    }
    return std::nullopt;
}

std::size_t BayesianNetwork::row_offset(std::size_t node, const std::vector<std::size_t>& assignment) const {
    std::size_t row = 0;
    for (std::size_t p : parents_[node]) row = row * nodes_[p].states.size() + assignment[p];
    return row * nodes_[node].states.size();
}

}  // namespace skg::bayes
