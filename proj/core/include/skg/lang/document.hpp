#pragma once

// Raw syntax tree of a `.skg` file. References are not resolved yet.

#include <optional>
#include <string>
#include <vector>

#include "skg/lang/diagnostic.hpp"
#include "skg/lang/lexer.hpp"

namespace skg::lang {

struct Value {
    enum class Kind { Number, Ident, Tuple, List };

    Kind kind = Kind::Number;
    double number = 0.0;
    std::string ident;
    double first = 0.0;  // tuple components
    double second = 0.0;
    std::vector<Value> items;
    SourceLoc loc;

    static Value make_number(double v, SourceLoc loc);
    static Value make_ident(std::string v, SourceLoc loc);
    static Value make_tuple(double a, double b, SourceLoc loc);
    static Value make_list(std::vector<Value> items, SourceLoc loc);
};

const char* to_string(Value::Kind kind);

struct Field {
    std::string key;
    Value value;
    SourceLoc loc;
};

// `curve cls {...}`, `confusion a -> b: v`, `false_alarm cls: v`,
// `set kind.id.field: v`. `heads` holds the identifiers after the keyword
// (one for curve/false_alarm, two for confusion, three for set; an emission
// target in a set path is kept whole as `action->signal`).
struct SubStatement {
    std::string keyword;
    std::vector<std::string> heads;
    std::optional<Value> inline_value;
    std::vector<Field> fields;
    SourceLoc loc;
};

struct Statement {
    std::string kind;
    std::string id;
    std::optional<std::string> arrow_head;
    std::vector<Field> fields;
    std::vector<SubStatement> subs;
    SourceLoc loc;
    SourceLoc id_loc;
    SourceLoc head_loc;
};

struct Document {
    std::vector<Statement> statements;
};

struct ParseResult {
    std::optional<Document> document;
    std::vector<Diagnostic> diagnostics;  // at most one syntax error

    bool ok() const { return document.has_value(); }
};

ParseResult parse(const TokenStream& tokens);

// tokenize + parse; lexical errors win over syntax errors.
ParseResult parse_source(std::string_view source);

}  // namespace skg::lang
