#include "skg/lang/loader.hpp"

#include <fstream>
#include <sstream>

#include "skg/lang/document.hpp"
#include "skg/lang/validator.hpp"

namespace skg::lang {

LoadResult load_source(std::string_view source) {
    LoadResult out;
    ParseResult parsed = parse_source(source);
    if (!parsed.ok()) {
        out.stage = LoadStage::Syntax;
        out.diagnostics = std::move(parsed.diagnostics);
        return out;
    }
    out.statement_count = parsed.document->statements.size();
    ValidationResult validated = validate(*parsed.document);
    if (!validated.ok()) {
        out.stage = LoadStage::Validation;
        out.diagnostics = std::move(validated.diagnostics);
        return out;
    }
    out.graph = std::move(validated.graph);
    return out;
}

LoadResult load_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        LoadResult out;
        out.stage = LoadStage::Io;
        out.io_error = "cannot read '" + path.string() + "'";
        return out;
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return load_source(buf.str());
}

}  // namespace skg::lang
