#pragma once

#include <optional>
#include <vector>

#include "skg/lang/diagnostic.hpp"
#include "skg/lang/document.hpp"
#include "skg/model.hpp"

namespace skg::lang {

struct ValidationResult {
    std::optional<model::KnowledgeGraph> graph;
    std::vector<Diagnostic> diagnostics;

    bool ok() const { return graph.has_value(); }
};

// Resolves a parsed document into a knowledge graph. Either a graph or at
// least one error diagnostic is returned, never both; every violation found
// is reported.
ValidationResult validate(const Document& doc);

}  // namespace skg::lang
