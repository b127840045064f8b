#include "oraclegen/error.hpp"
#include "oraclegen/java_source.hpp"

#include <algorithm>
#include <array>
#include <cctype>

namespace oraclegen::java {

namespace {

constexpr std::array keywords = {
    "abstract", "assert",     "boolean",   "break",      "byte",     "case",
    "catch",    "char",       "class",     "const",      "continue", "default",
    "do",       "double",     "else",      "enum",       "extends",  "final",
    "finally",  "float",      "for",       "goto",       "if",       "implements",
    "import",   "instanceof", "int",       "interface",  "long",     "native",
    "new",      "package",    "private",   "protected",  "public",   "return",
    "short",    "static",     "strictfp",  "super",      "switch",   "synchronized",
    "this",     "throw",      "throws",    "transient",  "try",      "void",
    "volatile", "while",      "true",      "false",      "null",
};

// Longest first so that the scan below is greedy.
constexpr std::array operators = {
    ">>>=", "<<=", ">>=", "...", "->", "::", "++", "--", "&&", "||", "==", "!=", "<=",
    "+=",   "-=",  "*=",  "/=",  "%=", "&=", "|=", "^=", "<<",
    "(",    ")",   "{",   "}",   "[",  "]",  ";",  ",",  ".",  "@",  "=",  "<",  ">",
    "!",    "~",   "?",   ":",   "+",  "-",  "*",  "/",  "&",  "|",  "^",  "%",
};

bool ident_start(unsigned char c) {
    return std::isalpha(c) || c == '_' || c == '$' || c >= 0x80;
}

bool ident_part(unsigned char c) {
    return ident_start(c) || std::isdigit(c);
}

} // namespace

bool is_keyword(std::string_view word) {
    return std::find(keywords.begin(), keywords.end(), word) != keywords.end();
}

std::vector<Token> lex(std::string_view src) {
    std::vector<Token> out;
    std::size_t i = 0;
    std::size_t line = 1;
    const std::size_t n = src.size();

    auto push = [&](TokenKind kind, std::size_t begin, std::size_t end, std::size_t at_line) {
        out.push_back(Token{kind, src.substr(begin, end - begin), begin, at_line});
    };
    auto count_lines = [&](std::size_t begin, std::size_t end) {
        line += static_cast<std::size_t>(std::count(src.begin() + begin, src.begin() + end, '\n'));
    };

    while (i < n) {
        const unsigned char c = static_cast<unsigned char>(src[i]);
        if (c == '\n') {
            ++line;
            ++i;
            continue;
        }
        if (std::isspace(c)) {
            ++i;
            continue;
        }
        if (c == '/' && i + 1 < n && src[i + 1] == '/') {
            while (i < n && src[i] != '\n') {
                ++i;
            }
            continue;
        }
        if (c == '/' && i + 1 < n && src[i + 1] == '*') {
            const std::size_t end = src.find("*/", i + 2);
            if (end == std::string_view::npos) {
                throw LexicalError("unterminated comment", i);
            }
            const bool doc = i + 2 < n && src[i + 2] == '*' && end > i + 2;
            const std::size_t start_line = line;
            count_lines(i, end + 2);
            if (doc) {
                push(TokenKind::DocComment, i, end + 2, start_line);
            }
            i = end + 2;
            continue;
        }
        if (ident_start(c)) {
            std::size_t j = i + 1;
            while (j < n && ident_part(static_cast<unsigned char>(src[j]))) {
                ++j;
            }
            const auto word = src.substr(i, j - i);
            push(is_keyword(word) ? TokenKind::Keyword : TokenKind::Identifier, i, j, line);
            i = j;
            continue;
        }
        if (std::isdigit(c) || (c == '.' && i + 1 < n && std::isdigit(static_cast<unsigned char>(src[i + 1])))) {
            std::size_t j = i;
            bool floating = false;
            if (c == '0' && i + 1 < n && (src[i + 1] == 'x' || src[i + 1] == 'X' || src[i + 1] == 'b' || src[i + 1] == 'B')) {
                j += 2;
                while (j < n && (std::isxdigit(static_cast<unsigned char>(src[j])) || src[j] == '_')) {
                    ++j;
                }
            } else {
                while (j < n) {
                    const unsigned char d = static_cast<unsigned char>(src[j]);
                    if (std::isdigit(d) || d == '_') {
                        ++j;
                    } else if (d == '.' && !(j + 1 < n && src[j + 1] == '.')) {
                        floating = true;
                        ++j;
                    } else if ((d == 'e' || d == 'E') && j + 1 < n) {
                        floating = true;
                        ++j;
                        if (src[j] == '+' || src[j] == '-') {
                            ++j;
                        }
                    } else {
                        break;
                    }
                }
            }
            if (j < n && std::string_view("fFdD").find(src[j]) != std::string_view::npos) {
                floating = true;
                ++j;
            } else if (j < n && (src[j] == 'l' || src[j] == 'L')) {
                ++j;
            }
            push(floating ? TokenKind::FloatLiteral : TokenKind::IntLiteral, i, j, line);
            i = j;
            continue;
        }
        if (c == '"') {
            const std::size_t start_line = line;
            if (src.substr(i, 3) == "\"\"\"") {
                const std::size_t end = src.find("\"\"\"", i + 3);
                if (end == std::string_view::npos) {
                    throw LexicalError("unterminated text block", i);
                }
                count_lines(i, end + 3);
                push(TokenKind::StringLiteral, i, end + 3, start_line);
                i = end + 3;
                continue;
            }
            std::size_t j = i + 1;
            while (j < n && src[j] != '"') {
                if (src[j] == '\\') {
                    ++j;
                }
                if (j < n && src[j] == '\n') {
                    throw LexicalError("newline in string literal", j);
                }
                ++j;
            }
            if (j >= n) {
                throw LexicalError("unterminated string literal", i);
            }
            push(TokenKind::StringLiteral, i, j + 1, start_line);
            i = j + 1;
            continue;
        }
        if (c == '\'') {
            std::size_t j = i + 1;
            while (j < n && src[j] != '\'') {
                if (src[j] == '\\') {
                    ++j;
                }
                if (j < n && src[j] == '\n') {
                    throw LexicalError("newline in char literal", j);
                }
                ++j;
            }
            if (j >= n) {
                throw LexicalError("unterminated char literal", i);
            }
            push(TokenKind::CharLiteral, i, j + 1, line);
            i = j + 1;
            continue;
        }
        bool matched = false;
        for (std::string_view op : operators) {
            if (src.substr(i, op.size()) == op) {
                push(TokenKind::Operator, i, i + op.size(), line);
                i += op.size();
                matched = true;
                break;
            }
        }
        if (!matched) {
            throw LexicalError(std::string("unexpected character '") + src[i] + "'", i);
        }
    }
    out.push_back(Token{TokenKind::End, src.substr(n, 0), n, line});
    return out;
}

} // namespace oraclegen::java
