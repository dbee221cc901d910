#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "skg/lang/diagnostic.hpp"

namespace skg::lang {

enum class TokenKind {
    Keyword,
    Identifier,
    Number,
    Punctuation,     // { } [ ] : , .
    Arrow,           // ->
    TupleDelimiter,  // ( )
};

const char* to_string(TokenKind kind);

struct Token {
    TokenKind kind;
    std::string lexeme;
    SourceLoc loc;
};

struct TokenStream {
    std::vector<Token> tokens;
    SourceLoc end;  // position just past the last character
    std::vector<Diagnostic> diagnostics;

    bool ok() const { return diagnostics.empty(); }
};

// Statement keywords. They are reserved only at statement level; everywhere
// else the parser accepts them as identifiers.
bool is_keyword(std::string_view word);

TokenStream tokenize(std::string_view source);

}  // namespace skg::lang
