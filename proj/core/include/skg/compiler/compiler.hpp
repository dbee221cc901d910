#pragma once

// Turns a resolved knowledge graph into a discrete Bayesian network:
//   entity:<e>            {absent, present}  behaviour prior
//   action:<a>@<place>    {no, yes}          P(yes | actor present [, stimulus]) = prob * site weight
//   signal:<class>@<place>{no, yes}          noisy-OR over the actions emitting it there
//   sensor:<s>            classes + none     strongest active candidate through the classifier

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "skg/bayes/network.hpp"
#include "skg/model.hpp"

namespace skg::compiler {

inline constexpr double kDetectionPruneThreshold = 1e-9;
inline constexpr std::size_t kMaxSensorFanIn = 20;

std::string entity_node(const std::string& entity);
std::string action_node(const std::string& action, const std::string& place);
std::string signal_node(const std::string& signal, const std::string& place);
std::string sensor_node(const std::string& sensor);

struct ActionSite {
    std::string action;
    std::string place;
    double weight = 0.0;  // normalized over the action's sites
};

// Every (action, place) pair whose location class matches, ordered by
// (action id, place id).
std::vector<ActionSite> enumerate_action_sites(const model::KnowledgeGraph& kg);

struct Candidate {
    model::EmissionKey emission;
    std::string place;
    std::string node;  // signal:<class>@<place>
    double strength = 0.0;
    std::string resolved_class;
};

// Emissions a sensor can plausibly detect: kind matches the sensor's
// classifier, the signal resolves onto its vocabulary and the detection
// probability at the received strength exceeds kDetectionPruneThreshold.
// Ordered by (node, action, signal).
std::vector<Candidate> candidate_emissions_for_sensor(const model::KnowledgeGraph& kg,
                                                      const model::Sensor& sensor);

// 1 - prod(1 - p_i); 0 for no causes.
double noisy_or(std::span<const double> probs);

struct SensorTable {
    std::vector<std::string> parents;  // signal nodes, sorted by id
    std::vector<std::string> states;
    std::vector<double> cpt;
};

// CPT of a sensor node. A signal node reached by several candidates uses the
// strongest of them. Throws CompileError when the fan-in exceeds
// kMaxSensorFanIn.
SensorTable sensor_cpt(const model::KnowledgeGraph& kg, const model::Sensor& sensor,
                       const std::vector<Candidate>& candidates);

// Throws CompileError on cyclic stimulus chains or excessive sensor fan-in.
bayes::BayesianNetwork compile(const model::KnowledgeGraph& kg);

}  // namespace skg::compiler
