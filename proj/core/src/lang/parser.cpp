#include <charconv>
#include <cmath>

#include "skg/lang/document.hpp"

namespace skg::lang {
namespace {

constexpr std::string_view kStatementKinds[] = {
    "entity", "action", "signal", "emission", "kind", "classifier", "sensor", "place", "wall", "profile",
};

bool is_statement_kind(std::string_view word) {
    for (auto kw : kStatementKinds) {
        if (kw == word) return true;
    }
    return false;
}

bool is_sub_keyword(std::string_view word) {
    return word == "curve" || word == "confusion" || word == "false_alarm" || word == "set";
}

// Thrown inside the parser only; converted into the single syntax diagnostic.
struct SyntaxError {
    Diagnostic diagnostic;
};

class Parser {
   public:
    explicit Parser(const TokenStream& ts) : tokens_(ts.tokens), end_(ts.end) {}

    Document run() {
        Document doc;
        while (!at_end()) doc.statements.push_back(statement());
        return doc;
    }

   private:
    bool at_end() const { return pos_ >= tokens_.size(); }

    const Token* peek(std::size_t ahead = 0) const {
        return pos_ + ahead < tokens_.size() ? &tokens_[pos_ + ahead] : nullptr;
    }

    SourceLoc here() const { return at_end() ? end_ : tokens_[pos_].loc; }

    [[noreturn]] void fail(const std::string& expected) const {
        std::string found = at_end() ? "end of input" : "'" + tokens_[pos_].lexeme + "'";
        throw SyntaxError{{Severity::Error, "expected " + expected + " but found " + found, here()}};
    }

    bool check(std::string_view lexeme) const {
        return !at_end() && tokens_[pos_].lexeme == lexeme &&
               tokens_[pos_].kind != TokenKind::Identifier && tokens_[pos_].kind != TokenKind::Keyword;
    }

    bool check_word() const {
        return !at_end() &&
               (tokens_[pos_].kind == TokenKind::Identifier || tokens_[pos_].kind == TokenKind::Keyword);
    }

    const Token& expect(std::string_view lexeme) {
        if (!check(lexeme)) fail("'" + std::string(lexeme) + "'");
        return tokens_[pos_++];
    }

    const Token& expect_ident(const char* what = "identifier") {
        if (!check_word()) fail(what);
        return tokens_[pos_++];
    }

    bool accept(std::string_view lexeme) {
        if (!check(lexeme)) return false;
        ++pos_;
        return true;
    }

    Statement statement() {
        if (at_end() || tokens_[pos_].kind != TokenKind::Keyword || !is_statement_kind(tokens_[pos_].lexeme)) {
            fail("a declaration keyword");
        }
        Statement st;
        st.loc = tokens_[pos_].loc;
        st.kind = tokens_[pos_++].lexeme;
        const Token& id = expect_ident();
        st.id = id.lexeme;
        st.id_loc = id.loc;
        if (accept("->")) {
            const Token& head = expect_ident();
            st.arrow_head = head.lexeme;
            st.head_loc = head.loc;
        }
        expect("{");
        while (!check("}")) {
            if (at_end()) fail("'}'");
            if (check_word() && is_sub_keyword(tokens_[pos_].lexeme) && !(peek(1) && peek(1)->lexeme == ":")) {
                st.subs.push_back(sub_statement());
            } else {
                st.fields.push_back(field());
            }
        }
        expect("}");
        return st;
    }

    SubStatement sub_statement() {
        SubStatement sub;
        sub.loc = tokens_[pos_].loc;
        sub.keyword = tokens_[pos_++].lexeme;
        if (sub.keyword == "set") {
            sub.heads.push_back(expect_ident().lexeme);
            expect(".");
            sub.heads.push_back(expect_ident().lexeme);
            if (accept("->")) sub.heads.back() += "->" + expect_ident().lexeme;
            expect(".");
            sub.heads.push_back(expect_ident().lexeme);
        } else if (sub.keyword == "confusion") {
            sub.heads.push_back(expect_ident().lexeme);
            expect("->");
            sub.heads.push_back(expect_ident().lexeme);
        } else {
            sub.heads.push_back(expect_ident().lexeme);
        }
        if (accept(":")) {
            sub.inline_value = value();
            accept(",");
        } else if (accept("{")) {
            while (!check("}")) {
                if (at_end()) fail("'}'");
                sub.fields.push_back(field());
            }
            expect("}");
            accept(",");
        } else {
            fail("':' or '{'");
        }
        return sub;
    }

    Field field() {
        const Token& key = expect_ident("a field name or '}'");
        Field f{key.lexeme, {}, key.loc};
        expect(":");
        f.value = value();
        accept(",");
        return f;
    }

    double number() {
        if (at_end() || tokens_[pos_].kind != TokenKind::Number) fail("a number");
        const Token& tok = tokens_[pos_];
        std::string_view text = tok.lexeme;
        if (!text.empty() && text.front() == '+') text.remove_prefix(1);
        double v = 0.0;
        auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
        if (ec != std::errc() || ptr != text.data() + text.size() || !std::isfinite(v)) {
            throw SyntaxError{{Severity::Error, "number out of range: " + tok.lexeme, tok.loc}};
        }
        ++pos_;
        return v;
    }

    Value value() {
        const SourceLoc at = here();
        if (!at_end() && tokens_[pos_].kind == TokenKind::Number) return Value::make_number(number(), at);
        if (check_word()) return Value::make_ident(tokens_[pos_++].lexeme, at);
        if (accept("(")) {
            const double a = number();
            expect(",");
            const double b = number();
            expect(")");
            return Value::make_tuple(a, b, at);
        }
        if (accept("[")) {
            std::vector<Value> items;
            if (!check("]")) {
                items.push_back(value());
                while (accept(",")) items.push_back(value());
            }
            expect("]");
            return Value::make_list(std::move(items), at);
        }
        fail("a value");
    }

    const std::vector<Token>& tokens_;
    SourceLoc end_;
    std::size_t pos_ = 0;
};

}  // namespace

Value Value::make_number(double v, SourceLoc loc) {
    Value out;
    out.kind = Kind::Number;
    out.number = v;
    out.loc = loc;
    return out;
}

Value Value::make_ident(std::string v, SourceLoc loc) {
    Value out;
    out.kind = Kind::Ident;
    out.ident = std::move(v);
    out.loc = loc;
    return out;
}

Value Value::make_tuple(double a, double b, SourceLoc loc) {
    Value out;
    out.kind = Kind::Tuple;
    out.first = a;
    out.second = b;
    out.loc = loc;
    return out;
}

Value Value::make_list(std::vector<Value> items, SourceLoc loc) {
    Value out;
    out.kind = Kind::List;
    out.items = std::move(items);
    out.loc = loc;
    return out;
}

const char* to_string(Value::Kind kind) {
    switch (kind) {
        case Value::Kind::Number:
            return "number";
        case Value::Kind::Ident:
            return "identifier";
        case Value::Kind::Tuple:
            return "tuple";
        case Value::Kind::List:
            return "list";
    }
    return "value";
}

ParseResult parse(const TokenStream& tokens) {
    ParseResult result;
    try {
        result.document = Parser(tokens).run();
    } catch (const SyntaxError& e) {
        result.diagnostics.push_back(e.diagnostic);
    }
    return result;
}

ParseResult parse_source(std::string_view source) {
    TokenStream tokens = tokenize(source);
    if (!tokens.ok()) return {std::nullopt, std::move(tokens.diagnostics)};
    return parse(tokens);
}

}  // namespace skg::lang
