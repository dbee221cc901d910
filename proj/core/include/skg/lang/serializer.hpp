#pragma once

#include <string>

#include "skg/model.hpp"

namespace skg::lang {

// Canonical `.skg` text: statements grouped by declaration kind and sorted by
// id, fields in a fixed order per kind, numbers in shortest round-trip form.
std::string serialize(const model::KnowledgeGraph& kg);

// Shortest decimal text that parses back to exactly `value`.
std::string format_number(double value);

}  // namespace skg::lang
