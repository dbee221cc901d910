#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "skg/lang/diagnostic.hpp"
#include "skg/model.hpp"

namespace skg::lang {

enum class LoadStage { Ok, Io, Syntax, Validation };

struct LoadResult {
    LoadStage stage = LoadStage::Ok;
    std::optional<model::KnowledgeGraph> graph;
    std::vector<Diagnostic> diagnostics;
    std::size_t statement_count = 0;
    std::string io_error;

    bool ok() const { return stage == LoadStage::Ok; }
};

LoadResult load_source(std::string_view source);
LoadResult load_file(const std::filesystem::path& path);

}  // namespace skg::lang
