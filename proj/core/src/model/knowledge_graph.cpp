#include <algorithm>

#include "skg/error.hpp"
#include "skg/model.hpp"

namespace skg::model {

const char* to_string(Falloff falloff) {
    switch (falloff) {
        case Falloff::InverseSquareDb:
            return "inverse_square_db";
        case Falloff::InverseLinear:
            return "inverse_linear";
        case Falloff::None:
            return "none";
    }
    return "none";
}

std::optional<Falloff> falloff_from_string(std::string_view text) {
    if (text == "inverse_square_db") return Falloff::InverseSquareDb;
    if (text == "inverse_linear") return Falloff::InverseLinear;
    if (text == "none") return Falloff::None;
    return std::nullopt;
}

std::vector<std::string> ClassifierModel::states() const {
    std::vector<std::string> out = classes;
    out.emplace_back(kNoneState);
    return out;
}

std::optional<std::size_t> ClassifierModel::class_index(std::string_view cls) const {
    auto it = std::find(classes.begin(), classes.end(), cls);
    if (it == classes.end()) return std::nullopt;
    return static_cast<std::size_t>(it - classes.begin());
}

std::vector<WallSegment> KnowledgeGraph::wall_list() const {
    std::vector<WallSegment> out;
    out.reserve(walls.size());
    for (const auto& [id, wall] : walls) out.push_back(wall);
    return out;
}

std::size_t KnowledgeGraph::declaration_count() const {
    return kinds.size() + signals.size() + entities.size() + actions.size() + emissions.size() +
           classifiers.size() + sensors.size() + places.size() + walls.size() + profiles.size();
}

const SignalKindSpec& KnowledgeGraph::kind_of(const SignalClass& signal) const {
    auto it = kinds.find(signal.kind);
    if (it == kinds.end()) {
        throw ContractViolation("signal '" + signal.id + "' references unknown kind '" + signal.kind + "'");
    }
    return it->second;
}

std::string emission_target(const EmissionKey& key) { return key.first + "->" + key.second; }

}  // namespace skg::model
