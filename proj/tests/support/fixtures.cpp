#include "fixtures.hpp"

#include <algorithm>
#include <fstream>
#include <regex>
#include <sstream>
#include <stdexcept>

#include "skg/lang/loader.hpp"
#include "skg/lang/serializer.hpp"

namespace skg::testing {
namespace {

model::KnowledgeGraph unwrap(lang::LoadResult r, const std::string& what) {
    if (r.ok()) return std::move(*r.graph);
    std::string msg = what + ":";
    if (!r.io_error.empty()) msg += " " + r.io_error;
    for (const auto& d : r.diagnostics) msg += "\n  " + lang::format(d);
    throw std::runtime_error(msg);
}

}  // namespace

std::filesystem::path fixture_path(const std::string& name) { return std::filesystem::path(SKG_FIXTURE_DIR) / name; }

std::filesystem::path test_data_path(const std::string& name) {
    return std::filesystem::path(SKG_TEST_DATA_DIR) / name;
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

model::KnowledgeGraph load_graph(const std::filesystem::path& path) {
    return unwrap(lang::load_file(path), path.string());
}

model::KnowledgeGraph load_graph_text(const std::string& text) { return unwrap(lang::load_source(text), "<text>"); }

std::optional<ExpectedError> expected_error(const std::string& text) {
    static const std::regex header(R"(^# expect-error: (\d+):(\d+) (.+))");
    const auto first_line = text.substr(0, text.find('\n'));
    std::smatch m;
    if (!std::regex_match(first_line, m, header)) return std::nullopt;
    return ExpectedError{std::stoi(m[1]), std::stoi(m[2]), m[3]};
}

std::vector<std::filesystem::path> corpus(const std::string& dir) {
    std::vector<std::filesystem::path> out;
    for (const auto& e : std::filesystem::directory_iterator(test_data_path(dir))) {
        if (e.path().extension() == ".skg") out.push_back(e.path());
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::string check_malformed(const std::string& text) {
    const auto expected = expected_error(text);
    if (!expected) return "missing expect-error header";
    const auto r = lang::load_source(text);
    if (r.ok()) return "loaded without diagnostics";
    std::string seen;
    for (const auto& d : r.diagnostics) {
        if (d.loc.line == expected->line && d.loc.column == expected->column &&
            d.message.find(expected->message_part) != std::string::npos) {
            return {};
        }
        seen += " [" + lang::format(d) + "]";
    }
    return "expected " + std::to_string(expected->line) + ":" + std::to_string(expected->column) + " '" +
           expected->message_part + "', got" + seen;
}

std::string check_round_trip(const std::string& text) {
    const auto first = lang::load_source(text);
    if (!first.ok()) return "source does not load";
    const auto canonical = lang::serialize(*first.graph);
    const auto second = lang::load_source(canonical);
    if (!second.ok()) {
        std::string msg = "canonical text does not load:";
        for (const auto& d : second.diagnostics) msg += " [" + lang::format(d) + "]";
        return msg;
    }
    if (!(*second.graph == *first.graph)) return "graph changed across the round trip";
    if (lang::serialize(*second.graph) != canonical) return "canonical text is not a fixed point";
    return {};
}

}  // namespace skg::testing
