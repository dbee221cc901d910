#include "skg/lang/lexer.hpp"

#include <array>
#include <sstream>

namespace skg::lang {
namespace {

constexpr std::array<std::string_view, 14> kKeywords = {
    "entity", "action", "signal", "emission",  "kind",        "classifier", "sensor",
    "place",  "wall",   "profile", "curve",    "confusion",   "false_alarm", "set",
};

bool is_ident_start(char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_';
}
bool is_digit(char c) { return c >= '0' && c <= '9'; }
bool is_ident_char(char c) { return is_ident_start(c) || is_digit(c); }

class Lexer {
   public:
    explicit Lexer(std::string_view src) : src_(src) {}

    TokenStream run() {
        TokenStream out;
        while (pos_ < src_.size()) {
            const char c = src_[pos_];
            if (c == '\n' || c == ' ' || c == '\t' || c == '\r') {
                advance();
            } else if (c == '#') {
                while (pos_ < src_.size() && src_[pos_] != '\n') advance();
            } else if (is_ident_start(c)) {
                const SourceLoc at = loc();
                const std::size_t start = pos_;
                while (pos_ < src_.size() && is_ident_char(src_[pos_])) advance();
                std::string word(src_.substr(start, pos_ - start));
                const TokenKind kind = is_keyword(word) ? TokenKind::Keyword : TokenKind::Identifier;
                out.tokens.push_back({kind, std::move(word), at});
            } else if (c == '-' && peek(1) == '>') {
                out.tokens.push_back({TokenKind::Arrow, "->", loc()});
                advance();
                advance();
            } else if (starts_number()) {
                lex_number(out);
            } else if (c == '(' || c == ')') {
                out.tokens.push_back({TokenKind::TupleDelimiter, std::string(1, c), loc()});
                advance();
            } else if (c == '{' || c == '}' || c == '[' || c == ']' || c == ':' || c == ',' || c == '.') {
                out.tokens.push_back({TokenKind::Punctuation, std::string(1, c), loc()});
                advance();
            } else {
                const SourceLoc at = loc();
                const std::size_t start = pos_;
                advance();
                out.diagnostics.push_back(
                    {Severity::Error, "unexpected character '" + std::string(src_.substr(start, pos_ - start)) + "'",
                     at});
            }
        }
        out.end = loc();
        return out;
    }

   private:
    char peek(std::size_t ahead) const {
        return pos_ + ahead < src_.size() ? src_[pos_ + ahead] : '\0';
    }

    SourceLoc loc() const { return {line_, column_}; }

    // Consumes one code point.
    void advance() {
        const unsigned char c = static_cast<unsigned char>(src_[pos_]);
        std::size_t width = 1;
        if (c >= 0xF0) {
            width = 4;
        } else if (c >= 0xE0) {
            width = 3;
        } else if (c >= 0xC0) {
            width = 2;
        }
        pos_ = std::min(pos_ + width, src_.size());
        if (c == '\n') {
            ++line_;
            column_ = 1;
        } else {
            ++column_;
        }
    }

    bool starts_number() const {
        std::size_t i = 0;
        if (peek(0) == '+' || peek(0) == '-') i = 1;
        if (is_digit(peek(i))) return true;
        return peek(i) == '.' && is_digit(peek(i + 1));
    }

    void lex_number(TokenStream& out) {
        const SourceLoc at = loc();
        const std::size_t start = pos_;
        if (src_[pos_] == '+' || src_[pos_] == '-') advance();
        while (is_digit(peek(0))) advance();
        if (peek(0) == '.') {
            advance();
            while (is_digit(peek(0))) advance();
        }
        if (peek(0) == 'e' || peek(0) == 'E') {
            std::size_t i = 1;
            if (peek(i) == '+' || peek(i) == '-') ++i;
            if (is_digit(peek(i))) {
                for (std::size_t k = 0; k < i; ++k) advance();
                while (is_digit(peek(0))) advance();
            } else {
                for (std::size_t k = 0; k < i; ++k) advance();
                out.diagnostics.push_back({Severity::Error, "malformed number", at});
                while (is_ident_char(peek(0))) advance();
                return;
            }
        }
        if (is_ident_start(peek(0))) {
            out.diagnostics.push_back({Severity::Error, "malformed number", at});
            while (is_ident_char(peek(0))) advance();
            return;
        }
        out.tokens.push_back({TokenKind::Number, std::string(src_.substr(start, pos_ - start)), at});
    }

    std::string_view src_;
    std::size_t pos_ = 0;
    int line_ = 1;
    int column_ = 1;
};

}  // namespace

const char* to_string(TokenKind kind) {
    switch (kind) {
        case TokenKind::Keyword:
            return "keyword";
        case TokenKind::Identifier:
            return "identifier";
        case TokenKind::Number:
            return "number";
        case TokenKind::Punctuation:
            return "punctuation";
        case TokenKind::Arrow:
            return "arrow";
        case TokenKind::TupleDelimiter:
            return "tuple-delimiter";
    }
    return "token";
}

bool is_keyword(std::string_view word) {
    for (auto kw : kKeywords) {
        if (kw == word) return true;
    }
    return false;
}

TokenStream tokenize(std::string_view source) { return Lexer(source).run(); }

bool has_errors(const std::vector<Diagnostic>& diagnostics) {
    for (const auto& d : diagnostics) {
        if (d.severity == Severity::Error) return true;
    }
    return false;
}

std::string format(const Diagnostic& d) {
    std::ostringstream os;
    os << d;
    return os.str();
}

std::ostream& operator<<(std::ostream& os, const Diagnostic& d) {
    return os << d.loc.line << ':' << d.loc.column << ": "
              << (d.severity == Severity::Error ? "error" : "warning") << ": " << d.message;
}

}  // namespace skg::lang
