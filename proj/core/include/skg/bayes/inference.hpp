#pragma once

// Exact inference over discrete networks: brute-force enumeration (the
// oracle), variable elimination, MAP and virtual evidence.

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "skg/bayes/network.hpp"

namespace skg::bayes {

struct Evidence {
    std::map<std::string, std::string> hard;                  // node id -> state label
    std::map<std::string, std::vector<double>> likelihood;    // node id -> weights per state

    bool empty() const { return hard.empty() && likelihood.empty(); }
};

// Throws EvidenceError when evidence references unknown nodes or states, sets
// both kinds on one node, or has a bad likelihood vector.
void check_evidence(const BayesianNetwork& bn, const Evidence& evidence);

// Distribution over the joint states of `variables`, row-major with the first
// variable most significant.
struct JointDistribution {
    std::vector<std::string> variables;
    std::vector<std::vector<std::string>> states;
    std::vector<double> probs;

    double at(const std::vector<std::size_t>& state_indices) const;
    // Marginal of one variable of the joint.
    std::vector<double> marginal(std::size_t variable) const;
    std::vector<std::size_t> unflatten(std::size_t flat) const;
};

inline constexpr std::size_t kEnumerationLimit = std::size_t{1} << 22;
inline constexpr std::size_t kMapWidthLimit = 20;

// Product of CPT entries for a full assignment (state index per node).
double joint_probability(const BayesianNetwork& bn, const std::vector<std::size_t>& assignment);
double joint_probability(const BayesianNetwork& bn, const std::map<std::string, std::string>& assignment);

// Oracle: sums the joint over every completion. Throws GuardExceeded when
// the full state space exceeds kEnumerationLimit and ImpossibleEvidence when
// the evidence has probability zero.
JointDistribution enumerate_posterior(const BayesianNetwork& bn, const Evidence& evidence,
                                      const std::vector<std::string>& query);

// Variable elimination with a min-degree ordering (ties by node id).
JointDistribution ve_posterior(const BayesianNetwork& bn, const Evidence& evidence,
                               const std::vector<std::string>& query);

// Elimination order VE uses for the given query (exposed for tests/tools).
std::vector<std::string> elimination_order(const BayesianNetwork& bn, const Evidence& evidence,
                                           const std::vector<std::string>& query);

struct Explanation {
    std::map<std::string, std::string> assignment;
    std::vector<std::size_t> states;  // aligned with the `over` argument
    double probability = 0.0;
};

// Most probable joint state of `over` given the evidence; ties go to the
// lexicographically smallest state-index vector.
Explanation map_assignment(const BayesianNetwork& bn, const Evidence& evidence,
                           const std::vector<std::string>& over);

// The k most probable joint states of `over`, descending, same tie rule.
std::vector<Explanation> top_assignments(const BayesianNetwork& bn, const Evidence& evidence,
                                         const std::vector<std::string>& over, std::size_t k);

struct VirtualEvidence {
    BayesianNetwork network;
    std::string aux_id;
    Evidence evidence;  // {aux_id: "on"}
};

// Adds a binary child `virtual:<node>` with P(on | state i) proportional to
// likelihood[i] (scaled so the maximum is 1). The input network is untouched.
VirtualEvidence apply_virtual_evidence(const BayesianNetwork& bn, const std::string& node,
                                       const std::vector<double>& likelihood);

}  // namespace skg::bayes
