#pragma once

#include <string>

#include "skg/model.hpp"

namespace skg::lang {

// Returns a copy of `kg` with every override of `profile` applied in order.
// Throws ValidationError for an unknown profile, an override path that names
// nothing, a value of the wrong type, or a result that breaks an invariant.
model::KnowledgeGraph apply_profile(const model::KnowledgeGraph& kg, const std::string& profile);

// Applies one override in place; throws ValidationError when the path does
// not resolve or the value has the wrong type.
void apply_override(model::KnowledgeGraph& kg, const model::Override& override_);

}  // namespace skg::lang
