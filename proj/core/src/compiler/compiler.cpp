#include "skg/compiler/compiler.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <set>
#include <tuple>

#include "skg/error.hpp"
#include "skg/propagation.hpp"

namespace skg::compiler {

using model::KnowledgeGraph;

std::string entity_node(const std::string& entity) { return "entity:" + entity; }
std::string action_node(const std::string& action, const std::string& place) {
    return "action:" + action + "@" + place;
}
std::string signal_node(const std::string& signal, const std::string& place) {
    return "signal:" + signal + "@" + place;
}
std::string sensor_node(const std::string& sensor) { return "sensor:" + sensor; }

std::vector<ActionSite> enumerate_action_sites(const KnowledgeGraph& kg) {
    std::vector<ActionSite> out;
    for (const auto& [aid, action] : kg.actions) {
        const std::size_t first = out.size();
        double total = 0.0;
        for (const auto& [pid, place] : kg.places) {
            if (place.location_class != action.location_class) continue;
            out.push_back({aid, pid, place.weight});
            total += place.weight;
        }
        for (std::size_t i = first; i < out.size(); ++i) out[i].weight /= total;
    }
    return out;
}

std::vector<Candidate> candidate_emissions_for_sensor(const KnowledgeGraph& kg, const model::Sensor& sensor) {
    std::vector<Candidate> out;
    const auto& classifier = kg.classifiers.at(sensor.classifier);
    const auto walls = kg.wall_list();
    for (const auto& site : enumerate_action_sites(kg)) {
        const auto& place = kg.places.at(site.place);
        for (auto it = kg.emissions.lower_bound({site.action, ""});
             it != kg.emissions.end() && it->first.first == site.action; ++it) {
            const auto& emission = it->second;
            const auto& signal = kg.signals.at(emission.signal);
            if (signal.kind != classifier.kind) continue;
            auto resolved = model::resolve_classifier_class(kg, emission.signal, classifier);
            if (!resolved) continue;
            const double strength = model::received_strength(kg.kind_of(signal), emission.intensity,
                                                              place.position, sensor.position, walls);
            if (model::detection_probability(classifier, *resolved, strength) <= kDetectionPruneThreshold) continue;
            out.push_back({it->first, site.place, signal_node(emission.signal, site.place), strength, *resolved});
        }
    }
    std::sort(out.begin(), out.end(), [](const Candidate& a, const Candidate& b) {
        return std::tie(a.node, a.emission) < std::tie(b.node, b.emission);
    });
    return out;
}

double noisy_or(std::span<const double> probs) {
    double none = 1.0;
    for (double p : probs) none *= 1.0 - p;
    return 1.0 - none;
}

SensorTable sensor_cpt(const KnowledgeGraph& kg, const model::Sensor& sensor,
                       const std::vector<Candidate>& candidates) {
    const auto& classifier = kg.classifiers.at(sensor.classifier);

    struct Source {
        double strength;
        std::string resolved;
    };
    std::map<std::string, Source> sources;  // by signal node id
    for (const auto& c : candidates) {
        auto [it, inserted] = sources.emplace(c.node, Source{c.strength, c.resolved_class});
        if (!inserted && c.strength > it->second.strength) it->second = {c.strength, c.resolved_class};
    }
    if (sources.size() > kMaxSensorFanIn) {
        throw CompileError("sensor fan-in too large: '" + sensor.id + "' has " + std::to_string(sources.size()) +
                           " candidate signals (limit " + std::to_string(kMaxSensorFanIn) + ")");
    }

    SensorTable table;
    table.states = classifier.states();
    std::vector<const Source*> ordered;
    for (const auto& [node, source] : sources) {
        table.parents.push_back(node);
        ordered.push_back(&source);
    }

    const std::size_t k = ordered.size();
    const auto quiet = model::false_alarm_distribution(classifier);
    table.cpt.reserve((std::size_t{1} << k) * table.states.size());
    for (std::size_t row = 0; row < (std::size_t{1} << k); ++row) {
        // First parent is the most significant bit of the row index.
        const Source* strongest = nullptr;
        for (std::size_t p = 0; p < k; ++p) {
            const bool active = (row >> (k - 1 - p)) & 1U;
            if (active && (!strongest || ordered[p]->strength > strongest->strength)) strongest = ordered[p];
        }
        const auto dist = strongest
                              ? model::detection_distribution(classifier, strongest->resolved, strongest->strength)
                              : quiet;
        table.cpt.insert(table.cpt.end(), dist.begin(), dist.end());
    }
    return table;
}

namespace {

int role_rank(bayes::NodeRole role) { return static_cast<int>(role); }

// Kahn's algorithm; among ready nodes the smallest (role, id) goes first.
std::vector<bayes::Node> topological(std::vector<bayes::Node> nodes) {
    std::map<std::string, std::size_t> index;
    for (std::size_t i = 0; i < nodes.size(); ++i) index.emplace(nodes[i].id, i);
    std::vector<std::size_t> missing(nodes.size(), 0);
    std::vector<std::vector<std::size_t>> children(nodes.size());
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        for (const auto& p : nodes[i].parents) {
            children[index.at(p)].push_back(i);
            ++missing[i];
        }
    }
    using Key = std::tuple<int, std::string, std::size_t>;
    std::priority_queue<Key, std::vector<Key>, std::greater<>> ready;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        if (missing[i] == 0) ready.emplace(role_rank(nodes[i].role), nodes[i].id, i);
    }
    std::vector<bayes::Node> out;
    std::vector<bool> placed(nodes.size(), false);
    while (!ready.empty()) {
        const std::size_t i = std::get<2>(ready.top());
        ready.pop();
        placed[i] = true;
        for (std::size_t c : children[i]) {
            if (--missing[c] == 0) ready.emplace(role_rank(nodes[c].role), nodes[c].id, c);
        }
        out.push_back(std::move(nodes[i]));
    }
    if (out.size() != nodes.size()) {
        std::string stuck;
        for (std::size_t i = 0; i < nodes.size(); ++i) {
            if (!placed[i] && nodes[i].role == bayes::NodeRole::ActionOccurs) {
                stuck += (stuck.empty() ? "" : ", ") + nodes[i].id;
            }
        }
        throw CompileError("cyclic stimulus chain through " + stuck);
    }
    return out;
}

}  // namespace

bayes::BayesianNetwork compile(const KnowledgeGraph& kg) {
    std::vector<bayes::Node> nodes;

    for (const auto& [id, entity] : kg.entities) {
        nodes.push_back({entity_node(id), bayes::NodeRole::EntityPresent, {"absent", "present"}, {},
                         {1.0 - entity.prior, entity.prior}});
    }

    const auto sites = enumerate_action_sites(kg);

    // (signal, place) -> emitting action nodes with their emission probability.
    std::map<std::string, std::vector<std::pair<std::string, double>>> emitters;
    for (const auto& site : sites) {
        for (auto it = kg.emissions.lower_bound({site.action, ""});
             it != kg.emissions.end() && it->first.first == site.action; ++it) {
            emitters[signal_node(it->second.signal, site.place)].emplace_back(
                action_node(site.action, site.place), it->second.prob);
        }
    }

    for (const auto& site : sites) {
        const auto& action = kg.actions.at(site.action);
        const double p_yes = action.prob * site.weight;
        bayes::Node node{action_node(site.action, site.place), bayes::NodeRole::ActionOccurs, {"no", "yes"},
                         {entity_node(action.actor)}, {}};
        if (!action.stimulus) {
            node.cpt = {1.0, 0.0, 1.0 - p_yes, p_yes};
        } else if (const auto stim = signal_node(*action.stimulus, site.place); emitters.count(stim)) {
            node.parents.push_back(stim);
            node.cpt = {1.0, 0.0, 1.0, 0.0, 1.0, 0.0, 1.0 - p_yes, p_yes};
        } else {
            // The stimulus is never emitted at this site.
            node.cpt = {1.0, 0.0, 1.0, 0.0};
        }
        nodes.push_back(std::move(node));
    }

    for (auto& [id, parents] : emitters) {
        std::sort(parents.begin(), parents.end());
        bayes::Node node{id, bayes::NodeRole::SignalEmitted, {"no", "yes"}, {}, {}};
        for (const auto& [parent, p] : parents) node.parents.push_back(parent);
        const std::size_t k = parents.size();
        std::vector<double> active;
        for (std::size_t row = 0; row < (std::size_t{1} << k); ++row) {
            active.clear();
            for (std::size_t p = 0; p < k; ++p) {
                if ((row >> (k - 1 - p)) & 1U) active.push_back(parents[p].second);
            }
            const double yes = noisy_or(active);
            node.cpt.push_back(1.0 - yes);
            node.cpt.push_back(yes);
        }
        nodes.push_back(std::move(node));
    }

    for (const auto& [id, sensor] : kg.sensors) {
        SensorTable table = sensor_cpt(kg, sensor, candidate_emissions_for_sensor(kg, sensor));
        nodes.push_back({sensor_node(id), bayes::NodeRole::SensorOutput, std::move(table.states),
                         std::move(table.parents), std::move(table.cpt)});
    }

    return bayes::BayesianNetwork(topological(std::move(nodes)));
}

}  // namespace skg::compiler
