#pragma once

#include <string>
#include <string_view>

#include "skg/bayes/network.hpp"

namespace skg::bayes {

// BN JSON document: {"nodes": [{"id", "states", "parents", "cpt"}, ...]} in
// topological order, CPT layout as in Node. Output is byte-stable.
std::string to_json(const BayesianNetwork& bn);

// Throws FormatError for malformed JSON and NetworkError for invalid networks.
BayesianNetwork from_json(std::string_view text);

}  // namespace skg::bayes
