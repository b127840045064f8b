#pragma once

// Declaration-level Java front end shared by the code model and the test
// injector. Method bodies are kept as text; statements are never parsed.

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "oraclegen/code_model.hpp"

namespace oraclegen::java {

enum class TokenKind {
    Identifier,
    Keyword,
    IntLiteral,
    FloatLiteral,
    StringLiteral,
    CharLiteral,
    Operator,
    DocComment,
    End,
};

struct Token {
    TokenKind kind = TokenKind::End;
    std::string_view text;
    std::size_t offset = 0;
    std::size_t line = 1;

    bool is(std::string_view s) const noexcept {
        return (kind == TokenKind::Operator || kind == TokenKind::Keyword) && text == s;
    }
};

/// Tokenizes Java source. Ordinary comments are dropped, doc comments kept.
/// The returned views point into `source`. Always ends with an End token.
std::vector<Token> lex(std::string_view source);

bool is_keyword(std::string_view word);

/// Result of parsing one compilation unit. Types are left unresolved:
/// every TypeRef holds the type as written with category Unknown.
struct CompilationUnit {
    std::string package_name;
    std::vector<std::string> imports;
    std::vector<ClassInfo> classes;
};

CompilationUnit parse_compilation_unit(std::string_view source, const std::string& file_name);

/// Parses a single member declaration ("public boolean isClosed() throws X",
/// "int TYPE_FORWARD_ONLY") as found in signature files. Exactly one of the
/// outputs is filled; throws Error on malformed text.
struct MemberDeclaration {
    bool is_method = false;
    MethodInfo method;
    FieldInfo field;
};
MemberDeclaration parse_member_signature(std::string_view text, std::string_view owner_simple_name);

/// Splits a doc comment (with or without delimiters) into its main
/// description and block tags.
std::vector<DocTag> parse_doc_comment(std::string_view comment);

/// The comment body with delimiters and leading asterisks removed.
std::string strip_doc_comment(std::string_view comment);

/// Collapses runs of whitespace into single spaces and trims.
std::string collapse_whitespace(std::string_view text);

} // namespace oraclegen::java
