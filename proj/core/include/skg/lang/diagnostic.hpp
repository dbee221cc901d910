#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace skg::lang {

// 1-based source position. Columns count code points.
struct SourceLoc {
    int line = 1;
    int column = 1;

    friend bool operator==(const SourceLoc&, const SourceLoc&) = default;
};

enum class Severity { Error, Warning };

struct Diagnostic {
    Severity severity = Severity::Error;
    std::string message;
    SourceLoc loc;
};

bool has_errors(const std::vector<Diagnostic>& diagnostics);

// `line:col: error: message`
std::string format(const Diagnostic& d);
std::ostream& operator<<(std::ostream& os, const Diagnostic& d);

}  // namespace skg::lang
