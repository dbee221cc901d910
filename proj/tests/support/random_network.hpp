#pragma once

#include <cstdint>
#include <random>

#include "skg/bayes/inference.hpp"
#include "skg/bayes/network.hpp"

namespace skg::testing {

struct RandomNetworkOptions {
    std::size_t max_nodes = 12;
    std::size_t max_states = 3;
    std::size_t max_parents = 3;
    // Chance that a CPT entry is forced to zero, so that some evidence is
    // impossible and deterministic rows occur.
    double zero_rate = 0.1;
};

// Random DAG over nodes n0..nk in topological order with random CPTs.
bayes::BayesianNetwork random_network(std::mt19937_64& rng, const RandomNetworkOptions& options = {});

// Hard evidence on up to a third of the nodes, plus likelihood evidence on
// one further node half of the time.
bayes::Evidence random_evidence(std::mt19937_64& rng, const bayes::BayesianNetwork& bn);

}  // namespace skg::testing
