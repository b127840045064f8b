#include "oraclegen/error.hpp"
#include "oraclegen/oracle_grammar.hpp"

#include <array>
#include <cctype>

namespace oraclegen::grammar {

namespace {

constexpr std::array<std::string_view, 6> kReserved{"true", "false", "null", "this", "methodResultID", "jdVar"};

// Longest first so that greedy matching works.
constexpr std::array<std::string_view, 17> kOperators{"==", "!=", "<=", ">=", "&&", "||", "->", "<", ">",
                                                      "+",  "-",  "*",  "/",  "%",  "?",  ":",  "instanceof"};

constexpr std::array<char, 5> kPunctuation{'(', ')', '.', ',', ';'};

bool ident_start(char c) {
    return std::isalpha(static_cast<unsigned char>(c)) || c == '_' || c == '$';
}

bool ident_part(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '$';
}

bool ends_operand(const Token& t) {
    switch (t.kind) {
    case TokenKind::Identifier:
    case TokenKind::MemberName:
    case TokenKind::Literal:
    case TokenKind::Reserved:
        return true;
    case TokenKind::Punctuation:
        return t.text == ")";
    default:
        return false;
    }
}

std::size_t scan_number(std::string_view text, std::size_t i) {
    const std::size_t n = text.size();
    if (text[i] == '0' && i + 1 < n && (text[i + 1] == 'x' || text[i + 1] == 'X' || text[i + 1] == 'b' ||
                                        text[i + 1] == 'B')) {
        i += 2;
        while (i < n && (std::isxdigit(static_cast<unsigned char>(text[i])) || text[i] == '_')) {
            ++i;
        }
        if (i < n && (text[i] == 'L' || text[i] == 'l')) {
            ++i;
        }
        return i;
    }
    while (i < n && (std::isdigit(static_cast<unsigned char>(text[i])) || text[i] == '_')) {
        ++i;
    }
    if (i + 1 < n && text[i] == '.' && std::isdigit(static_cast<unsigned char>(text[i + 1]))) {
        ++i;
        while (i < n && (std::isdigit(static_cast<unsigned char>(text[i])) || text[i] == '_')) {
            ++i;
        }
    }
    if (i < n && (text[i] == 'e' || text[i] == 'E')) {
        std::size_t j = i + 1;
        if (j < n && (text[j] == '+' || text[j] == '-')) {
            ++j;
        }
        if (j < n && std::isdigit(static_cast<unsigned char>(text[j]))) {
            i = j;
            while (i < n && std::isdigit(static_cast<unsigned char>(text[i]))) {
                ++i;
            }
        }
    }
    if (i < n && std::string_view("lLfFdD").find(text[i]) != std::string_view::npos) {
        ++i;
    }
    return i;
}

std::size_t scan_quoted(std::string_view text, std::size_t i) {
    const char quote = text[i];
    ++i;
    while (i < text.size() && text[i] != quote) {
        if (text[i] == '\\') {
            ++i;
        }
        ++i;
    }
    if (i >= text.size()) {
        throw LexicalError("unterminated literal", i);
    }
    return i + 1;
}

} // namespace

std::string_view to_string(TokenKind kind) {
    switch (kind) {
    case TokenKind::Identifier:
        return "identifier";
    case TokenKind::MemberName:
        return "member-name";
    case TokenKind::MethodCallName:
        return "method-call-name";
    case TokenKind::Reserved:
        return "reserved";
    case TokenKind::Operator:
        return "operator";
    case TokenKind::Punctuation:
        return "punctuation";
    case TokenKind::Literal:
        return "literal";
    }
    return "identifier";
}

bool is_reserved_word(std::string_view text) {
    for (auto r : kReserved) {
        if (r == text) {
            return true;
        }
    }
    return false;
}

bool is_operator(std::string_view text) {
    for (auto op : kOperators) {
        if (op == text) {
            return true;
        }
    }
    return false;
}

bool is_binary_operator(std::string_view text) {
    return is_operator(text);
}

bool is_relational_operator(std::string_view text) {
    return text == "<" || text == "<=" || text == ">" || text == ">=";
}

bool is_equality_operator(std::string_view text) {
    return text == "==" || text == "!=";
}

bool is_comparison_operator(std::string_view text) {
    return is_relational_operator(text) || is_equality_operator(text);
}

bool is_arithmetic_operator(std::string_view text) {
    return text == "+" || text == "-" || text == "*" || text == "/" || text == "%";
}

bool is_logical_operator(std::string_view text) {
    return text == "&&" || text == "||";
}

bool is_quantifier(std::string_view name) {
    return name == "anyMatch" || name == "allMatch" || name == "noneMatch";
}

TokenKind classify_lexeme(std::string_view text) {
    if (text.empty()) {
        return TokenKind::Identifier;
    }
    if (is_reserved_word(text)) {
        return TokenKind::Reserved;
    }
    if (is_operator(text)) {
        return TokenKind::Operator;
    }
    if (text.size() == 1) {
        for (char p : kPunctuation) {
            if (text[0] == p) {
                return TokenKind::Punctuation;
            }
        }
    }
    const char c = text[0];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '"' || c == '\'' ||
        (c == '-' && text.size() > 1)) {
        return TokenKind::Literal;
    }
    return TokenKind::Identifier;
}

std::vector<Token> tokenize(std::string_view text) {
    std::vector<Token> out;
    std::size_t i = 0;
    const std::size_t n = text.size();
    while (i < n) {
        const char c = text[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
            continue;
        }
        const bool negative = c == '-' && i + 1 < n && std::isdigit(static_cast<unsigned char>(text[i + 1])) &&
                              (out.empty() || !ends_operand(out.back()));
        if (std::isdigit(static_cast<unsigned char>(c)) || negative) {
            const std::size_t end = scan_number(text, negative ? i + 1 : i);
            if (end < n && ident_part(text[end])) {
                throw LexicalError("malformed number", i);
            }
            out.push_back({std::string(text.substr(i, end - i)), TokenKind::Literal});
            i = end;
            continue;
        }
        if (c == '"' || c == '\'') {
            const std::size_t end = scan_quoted(text, i);
            out.push_back({std::string(text.substr(i, end - i)), TokenKind::Literal});
            i = end;
            continue;
        }
        if (ident_start(c)) {
            std::size_t end = i;
            while (end < n && ident_part(text[end])) {
                ++end;
            }
            std::string word(text.substr(i, end - i));
            TokenKind kind = TokenKind::Identifier;
            if (word == "instanceof") {
                kind = TokenKind::Operator;
            } else if (is_reserved_word(word)) {
                kind = TokenKind::Reserved;
            } else if (!out.empty() && out.back().text == ".") {
                std::size_t k = end;
                while (k < n && std::isspace(static_cast<unsigned char>(text[k]))) {
                    ++k;
                }
                kind = k < n && text[k] == '(' ? TokenKind::MethodCallName : TokenKind::MemberName;
            }
            out.push_back({std::move(word), kind});
            i = end;
            continue;
        }
        bool matched = false;
        for (auto op : kOperators) {
            if (op == "instanceof") {
                continue;
            }
            if (text.substr(i, op.size()) == op) {
                out.push_back({std::string(op), TokenKind::Operator});
                i += op.size();
                matched = true;
                break;
            }
        }
        if (matched) {
            continue;
        }
        for (char p : kPunctuation) {
            if (c == p) {
                out.push_back({std::string(1, c), TokenKind::Punctuation});
                ++i;
                matched = true;
                break;
            }
        }
        if (!matched) {
            throw LexicalError(std::string("unexpected character '") + c + "' at offset " + std::to_string(i), i);
        }
    }
    return out;
}

std::string join_tokens(const std::vector<Token>& tokens, std::size_t begin, std::size_t end) {
    std::string out;
    for (std::size_t i = begin; i < end && i < tokens.size(); ++i) {
        const Token& t = tokens[i];
        if (t.kind == TokenKind::Operator) {
            if (!out.empty() && out.back() != ' ') {
                out.push_back(' ');
            }
            out += t.text;
            out.push_back(' ');
        } else if (t.text == ",") {
            out += ", ";
        } else {
            out += t.text;
        }
    }
    return out;
}

std::string join_tokens(const std::vector<Token>& tokens) {
    return join_tokens(tokens, 0, tokens.size());
}

ExprType literal_type(const Token& token) {
    using K = ExprType::Kind;
    const std::string& s = token.text;
    if (s == "true" || s == "false") {
        return ExprType::of(K::Boolean, "boolean");
    }
    if (s == "null") {
        return ExprType::of(K::Null, "null");
    }
    if (s.empty()) {
        return ExprType::of(K::Unknown);
    }
    if (s.front() == '"') {
        return ExprType::of(K::Reference, "java.lang.String");
    }
    if (s.front() == '\'') {
        return ExprType::of(K::Char, "char");
    }
    const bool hex = s.find("0x") != std::string::npos || s.find("0X") != std::string::npos;
    const char last = s.back();
    if (last == 'L' || last == 'l') {
        return ExprType::of(K::Integral, "long");
    }
    if (!hex && (last == 'f' || last == 'F')) {
        return ExprType::of(K::Floating, "float");
    }
    if (!hex && (last == 'd' || last == 'D' || s.find('.') != std::string::npos ||
                 s.find_first_of("eE") != std::string::npos)) {
        return ExprType::of(K::Floating, "double");
    }
    return ExprType::of(K::Integral, "int");
}

} // namespace oraclegen::grammar
