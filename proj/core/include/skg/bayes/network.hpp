#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace skg::bayes {

enum class NodeRole {
    EntityPresent,
    ActionOccurs,
    SignalEmitted,
    SensorOutput,
    Other,
};

const char* to_string(NodeRole role);

// Role implied by the id prefix (`entity:`, `action:`, `signal:`, `sensor:`).
NodeRole role_from_id(std::string_view id);

// One discrete variable. `cpt` is flat row-major: one row per joint parent
// assignment, counted with the first parent most significant; each row holds
// the probabilities of `states` in order.
struct Node {
    std::string id;
    NodeRole role = NodeRole::Other;
    std::vector<std::string> states;
    std::vector<std::string> parents;
    std::vector<double> cpt;

    friend bool operator==(const Node&, const Node&) = default;
};

// Immutable discrete Bayesian network with nodes in topological order.
class BayesianNetwork {
   public:
    BayesianNetwork() = default;

    // Throws NetworkError on duplicate ids, parents that do not precede their
    // child, CPT size mismatches, negative entries or rows that do not sum to
    // 1 within 1e-12.
    explicit BayesianNetwork(std::vector<Node> nodes);

    std::size_t size() const { return nodes_.size(); }
    const std::vector<Node>& nodes() const { return nodes_; }
    const Node& node(std::size_t i) const { return nodes_[i]; }
    const Node& node(std::string_view id) const { return nodes_[require(id)]; }

    std::optional<std::size_t> index_of(std::string_view id) const;
    // Throws EvidenceError naming the id when it is absent.
    std::size_t require(std::string_view id) const;

    const std::vector<std::size_t>& parent_indices(std::size_t i) const { return parents_[i]; }
    const std::vector<std::size_t>& child_indices(std::size_t i) const { return children_[i]; }
    std::size_t cardinality(std::size_t i) const { return nodes_[i].states.size(); }

    std::optional<std::size_t> state_index(std::size_t node, std::string_view label) const;

    // Offset of the CPT row selected by the parent states in `assignment`
    // (indexed by node).
    std::size_t row_offset(std::size_t node, const std::vector<std::size_t>& assignment) const;

    friend bool operator==(const BayesianNetwork& a, const BayesianNetwork& b) { return a.nodes_ == b.nodes_; }

   private:
    std::vector<Node> nodes_;
    std::map<std::string, std::size_t, std::less<>> index_;
    std::vector<std::vector<std::size_t>> parents_;
    std::vector<std::vector<std::size_t>> children_;
};

}  // namespace skg::bayes
