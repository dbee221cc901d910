#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "skg/model.hpp"

namespace skg::testing {

std::filesystem::path fixture_path(const std::string& name);
std::filesystem::path test_data_path(const std::string& name);
std::string read_file(const std::filesystem::path& path);

// Loads a `.skg` file; throws std::runtime_error listing diagnostics on failure.
model::KnowledgeGraph load_graph(const std::filesystem::path& path);
model::KnowledgeGraph load_graph_text(const std::string& text);

// Malformed corpus files start with `# expect-error: L:C message-part`.
struct ExpectedError {
    int line = 0;
    int column = 0;
    std::string message_part;
};
std::optional<ExpectedError> expected_error(const std::string& text);

// Files of a corpus directory in name order.
std::vector<std::filesystem::path> corpus(const std::string& dir);

// Empty when the source yields a diagnostic at the expected position whose
// message contains the expected text; otherwise a description of the miss.
std::string check_malformed(const std::string& text);

// Empty when parse(serialize(kg)) reproduces kg and the canonical text is a
// fixed point; otherwise a description of the failure.
std::string check_round_trip(const std::string& text);

}  // namespace skg::testing
