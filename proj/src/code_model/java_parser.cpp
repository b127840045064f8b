#include "oraclegen/error.hpp"
#include "oraclegen/java_source.hpp"

#include <algorithm>
#include <cctype>
#include <fmt/format.h>

namespace oraclegen::java {

namespace {

struct Modifiers {
    Visibility visibility = Visibility::Package;
    bool explicit_visibility = false;
    bool is_static = false;
    bool is_default = false;
    /// Offset of the first annotation or modifier (source text start).
    std::size_t decl_start = 0;
    /// Offset of the first non-annotation token (signature text start).
    std::size_t sig_start = 0;
};

/// Removes the common indentation of continuation lines, taking the column
/// of `offset` in `src` as the indentation of the first line.
std::string dedent(std::string_view src, std::size_t offset, std::string_view text) {
    std::size_t line_begin = src.rfind('\n', offset == 0 ? 0 : offset - 1);
    line_begin = line_begin == std::string_view::npos ? 0 : line_begin + 1;
    const std::size_t indent = offset - line_begin;
    std::string out;
    std::size_t start = 0;
    bool first = true;
    while (start <= text.size()) {
        std::size_t end = text.find('\n', start);
        if (end == std::string_view::npos) {
            end = text.size();
        }
        std::string_view line = text.substr(start, end - start);
        if (!first) {
            std::size_t k = 0;
            while (k < indent && k < line.size() && (line[k] == ' ' || line[k] == '\t')) {
                ++k;
            }
            line.remove_prefix(k);
            out.push_back('\n');
        }
        out.append(line);
        first = false;
        start = end + 1;
    }
    return out;
}

class DeclarationParser {
public:
    DeclarationParser(std::string_view src, std::string file)
        : src_(src), file_(std::move(file)), toks_(lex(src)) {}

    CompilationUnit parse_unit() {
        take_doc();
        if (at("package")) {
            ++pos_;
            unit_.package_name = parse_qualified_name();
            expect(";");
        }
        while (take_doc(), at("import")) {
            ++pos_;
            std::string name;
            if (at("static")) {
                ++pos_;
                name = "static ";
            }
            name += parse_qualified_name();
            if (at(".")) {
                ++pos_;
                expect("*");
                name += ".*";
            }
            expect(";");
            unit_.imports.push_back(std::move(name));
        }
        while (peek().kind != TokenKind::End) {
            take_doc();
            if (at(";")) {
                ++pos_;
                continue;
            }
            pending_doc_.clear();
            Modifiers mods = parse_modifiers();
            if (!parse_type_declaration(mods, nullptr)) {
                fail("expected a type declaration");
            }
        }
        return std::move(unit_);
    }

    MemberDeclaration parse_single_member(std::string_view owner) {
        ClassInfo holder;
        holder.name = std::string(owner);
        holder.qualified_name = holder.name;
        Modifiers mods = parse_modifiers();
        parse_member(holder, mods, /*in_interface=*/false, /*signature_only=*/true);
        if (peek().kind != TokenKind::End) {
            fail("trailing text after member signature");
        }
        MemberDeclaration decl;
        if (!holder.methods.empty()) {
            decl.is_method = true;
            decl.method = std::move(holder.methods.front());
        } else if (!holder.fields.empty()) {
            decl.field = std::move(holder.fields.front());
        } else {
            fail("no member declared");
        }
        return decl;
    }

private:
    const Token& peek(std::size_t k = 0) const {
        return toks_[std::min(pos_ + k, toks_.size() - 1)];
    }
    bool at(std::string_view s, std::size_t k = 0) const { return peek(k).is(s); }
    bool at_identifier(std::string_view s, std::size_t k = 0) const {
        return peek(k).kind == TokenKind::Identifier && peek(k).text == s;
    }

    [[noreturn]] void fail(const std::string& what) const {
        throw Error(fmt::format("{}:{}: {} (at '{}')", file_, peek().line, what, peek().text));
    }

    void expect(std::string_view s) {
        if (!at(s)) {
            fail(fmt::format("expected '{}'", s));
        }
        ++pos_;
    }

    std::string expect_identifier() {
        if (peek().kind != TokenKind::Identifier) {
            fail("expected identifier");
        }
        return std::string(toks_[pos_++].text);
    }

    void take_doc() {
        while (peek().kind == TokenKind::DocComment) {
            pending_doc_ = std::string(peek().text);
            pending_doc_offset_ = peek().offset;
            ++pos_;
        }
    }

    std::string parse_qualified_name() {
        std::string name = expect_identifier();
        while (at(".") && peek(1).kind == TokenKind::Identifier) {
            pos_ += 2;
            name += ".";
            name += toks_[pos_ - 1].text;
        }
        return name;
    }

    /// Skips a balanced region starting at the current open token; returns
    /// the offset just past the closing token.
    std::size_t skip_balanced(std::string_view open, std::string_view close) {
        expect(open);
        int depth = 1;
        while (depth > 0) {
            const Token& t = peek();
            if (t.kind == TokenKind::End) {
                fail(fmt::format("unbalanced '{}'", open));
            }
            if (t.is(open)) {
                ++depth;
            } else if (t.is(close)) {
                --depth;
            }
            ++pos_;
        }
        return toks_[pos_ - 1].offset + toks_[pos_ - 1].text.size();
    }

    void skip_annotation() {
        expect("@");
        parse_qualified_name();
        if (at("(")) {
            skip_balanced("(", ")");
        }
    }

    Modifiers parse_modifiers() {
        Modifiers mods;
        mods.decl_start = peek().offset;
        bool seen_modifier = false;
        mods.sig_start = peek().offset;
        while (true) {
            take_doc();
            const Token& t = peek();
            if (t.is("@") && !at("interface", 1)) {
                skip_annotation();
                if (!seen_modifier) {
                    mods.sig_start = peek().offset;
                }
                continue;
            }
            if (t.kind == TokenKind::Keyword &&
                (t.text == "public" || t.text == "protected" || t.text == "private")) {
                mods.visibility = t.text == "public"      ? Visibility::Public
                                  : t.text == "protected" ? Visibility::Protected
                                                          : Visibility::Private;
                mods.explicit_visibility = true;
            } else if (t.is("static")) {
                mods.is_static = true;
            } else if (t.is("default") && !at(":", 1)) {
                mods.is_default = true;
            } else if (t.is("final") || t.is("abstract") || t.is("native") || t.is("synchronized") ||
                       t.is("transient") || t.is("volatile") || t.is("strictfp")) {
                // no model impact
            } else if (t.kind == TokenKind::Identifier && (t.text == "sealed") &&
                       peek(1).kind != TokenKind::Operator) {
                // contextual modifier
            } else if (t.kind == TokenKind::Identifier && t.text == "non" && at("-", 1) &&
                       peek(2).text == "sealed") {
                pos_ += 2;
            } else {
                break;
            }
            if (!seen_modifier) {
                mods.sig_start = t.offset;
                seen_modifier = true;
            }
            ++pos_;
        }
        if (!seen_modifier) {
            mods.sig_start = peek().offset;
        }
        return mods;
    }

    std::vector<std::string> parse_type_parameters() {
        std::vector<std::string> names;
        if (!at("<")) {
            return names;
        }
        ++pos_;
        int depth = 1;
        bool expect_name = true;
        while (depth > 0) {
            const Token& t = peek();
            if (t.kind == TokenKind::End) {
                fail("unbalanced type parameters");
            }
            if (t.is("<")) {
                ++depth;
            } else if (t.is(">")) {
                --depth;
            } else if (t.is(",") && depth == 1) {
                expect_name = true;
                ++pos_;
                continue;
            } else if (t.is("@")) {
                skip_annotation();
                continue;
            } else if (expect_name && depth == 1 && t.kind == TokenKind::Identifier) {
                names.emplace_back(t.text);
                expect_name = false;
            }
            ++pos_;
        }
        return names;
    }

    void skip_type_arguments() {
        if (!at("<")) {
            return;
        }
        int depth = 0;
        do {
            if (peek().kind == TokenKind::End) {
                fail("unbalanced type arguments");
            }
            if (at("<")) {
                ++depth;
            } else if (at(">")) {
                --depth;
            }
            ++pos_;
        } while (depth > 0);
    }

    /// Parses a type; returns its text as written (whitespace collapsed).
    std::string parse_type() {
        while (at("@")) {
            skip_annotation();
        }
        const std::size_t begin = peek().offset;
        const Token& first = peek();
        if (first.kind == TokenKind::Keyword &&
            (first.text == "int" || first.text == "long" || first.text == "short" || first.text == "byte" ||
             first.text == "char" || first.text == "boolean" || first.text == "float" ||
             first.text == "double" || first.text == "void")) {
            ++pos_;
        } else if (first.kind == TokenKind::Identifier) {
            ++pos_;
            skip_type_arguments();
            while (at(".") && peek(1).kind == TokenKind::Identifier) {
                pos_ += 2;
                skip_type_arguments();
            }
        } else if (first.is("?")) {
            ++pos_;
        } else {
            fail("expected a type");
        }
        while (at("[") && at("]", 1)) {
            pos_ += 2;
        }
        std::size_t end = toks_[pos_ - 1].offset + toks_[pos_ - 1].text.size();
        std::string text = collapse_whitespace(src_.substr(begin, end - begin));
        if (at("...")) {
            ++pos_;
            text += "[]";
        }
        return text;
    }

    static TypeRef unresolved(std::string text) { return TypeRef::unknown(std::move(text)); }

    bool at_type_declaration() const {
        return at("class") || at("interface") || at("enum") || (at("@") && at("interface", 1)) ||
               (at_identifier("record") && peek(1).kind == TokenKind::Identifier);
    }

    /// Parses class/interface/enum/record/@interface; false when the current
    /// token does not start one.
    bool parse_type_declaration(const Modifiers& /*mods*/, const ClassInfo* outer) {
        if (!at_type_declaration()) {
            return false;
        }
        ClassInfo info;
        bool is_enum = false;
        bool is_record = false;
        if (at("@")) {
            pos_ += 2;
            info.is_interface = true;
        } else if (at("interface")) {
            ++pos_;
            info.is_interface = true;
        } else if (at("enum")) {
            ++pos_;
            is_enum = true;
        } else if (at_identifier("record")) {
            ++pos_;
            is_record = true;
        } else {
            ++pos_;
        }
        info.name = expect_identifier();
        if (outer) {
            info.qualified_name = outer->qualified_name + "." + info.name;
            info.type_params = outer->type_params;
        } else {
            info.qualified_name =
                unit_.package_name.empty() ? info.name : unit_.package_name + "." + info.name;
        }
        info.imports = unit_.imports;
        for (auto& p : parse_type_parameters()) {
            info.type_params.push_back(std::move(p));
        }

        std::vector<ParameterInfo> record_components;
        if (is_record) {
            record_components = parse_parameters();
        }
        if (at("extends")) {
            ++pos_;
            info.super_types.push_back(unresolved(parse_type()));
            while (at(",")) {
                ++pos_;
                info.super_types.push_back(unresolved(parse_type()));
            }
        }
        if (at("implements")) {
            ++pos_;
            info.super_types.push_back(unresolved(parse_type()));
            while (at(",")) {
                ++pos_;
                info.super_types.push_back(unresolved(parse_type()));
            }
        }
        if (at_identifier("permits")) {
            ++pos_;
            parse_type();
            while (at(",")) {
                ++pos_;
                parse_type();
            }
        }
        for (const auto& component : record_components) {
            FieldInfo field;
            field.name = component.name;
            field.type = component.type;
            field.visibility = Visibility::Private;
            field.declaration_text = "private final " + component.type.name + " " + component.name;
            info.fields.push_back(field);
            MethodInfo accessor;
            accessor.name = component.name;
            accessor.return_type = component.type;
            accessor.visibility = Visibility::Public;
            accessor.signature_text = "public " + component.type.name + " " + component.name + "()";
            accessor.owner = info.qualified_name;
            info.methods.push_back(std::move(accessor));
        }
        pending_doc_.clear();
        parse_class_body(info, is_enum);
        unit_.classes.push_back(std::move(info));
        return true;
    }

    void parse_class_body(ClassInfo& info, bool is_enum) {
        expect("{");
        if (is_enum) {
            parse_enum_constants(info);
        }
        while (true) {
            take_doc();
            if (at("}")) {
                ++pos_;
                break;
            }
            if (peek().kind == TokenKind::End) {
                fail("unterminated class body");
            }
            if (at(";")) {
                ++pos_;
                continue;
            }
            if (at("{")) {
                skip_balanced("{", "}");
                pending_doc_.clear();
                continue;
            }
            if (at("static") && at("{", 1)) {
                ++pos_;
                skip_balanced("{", "}");
                pending_doc_.clear();
                continue;
            }
            Modifiers mods = parse_modifiers();
            if (at_type_declaration()) {
                parse_type_declaration(mods, &info);
                continue;
            }
            parse_member(info, mods, info.is_interface, /*signature_only=*/false);
        }
    }

    void parse_enum_constants(ClassInfo& info) {
        while (true) {
            take_doc();
            while (at("@")) {
                skip_annotation();
            }
            if (at(";")) {
                ++pos_;
                break;
            }
            if (at("}")) {
                break;
            }
            const std::string name = expect_identifier();
            if (at("(")) {
                skip_balanced("(", ")");
            }
            if (at("{")) {
                skip_balanced("{", "}");
            }
            FieldInfo field;
            field.name = name;
            field.type = unresolved(info.name);
            field.visibility = Visibility::Public;
            field.is_static = true;
            field.declaration_text = "public static final " + info.name + " " + name;
            info.fields.push_back(std::move(field));
            pending_doc_.clear();
            if (at(",")) {
                ++pos_;
            }
        }
    }

    std::vector<ParameterInfo> parse_parameters() {
        std::vector<ParameterInfo> params;
        expect("(");
        while (!at(")")) {
            while (at("final") || at("@")) {
                if (at("final")) {
                    ++pos_;
                } else {
                    skip_annotation();
                }
            }
            std::string type = parse_type();
            if (at("this")) {
                // receiver parameter
                ++pos_;
            } else {
                ParameterInfo p;
                p.name = expect_identifier();
                while (at("[") && at("]", 1)) {
                    pos_ += 2;
                    type += "[]";
                }
                p.type = unresolved(type);
                p.position = params.size();
                params.push_back(std::move(p));
            }
            if (at(",")) {
                ++pos_;
            } else if (!at(")")) {
                fail("expected ',' or ')' in parameter list");
            }
        }
        ++pos_;
        return params;
    }

    std::string doc_for(std::size_t decl_offset) {
        if (pending_doc_.empty()) {
            return {};
        }
        std::string doc = dedent(src_, pending_doc_offset_, pending_doc_);
        (void)decl_offset;
        pending_doc_.clear();
        return doc;
    }

    void parse_member(ClassInfo& info, const Modifiers& mods, bool in_interface, bool signature_only) {
        const std::string doc = doc_for(mods.decl_start);
        std::vector<std::string> method_type_params = parse_type_parameters();

        const bool is_constructor =
            peek().kind == TokenKind::Identifier && peek().text == info.name && at("(", 1);
        std::string type_text;
        std::size_t type_end = peek().offset;
        if (!is_constructor) {
            type_text = parse_type();
            type_end = toks_[pos_ - 1].offset + toks_[pos_ - 1].text.size();
        }
        const std::string name = expect_identifier();

        Visibility visibility = mods.visibility;
        if (in_interface && !mods.explicit_visibility) {
            visibility = Visibility::Public;
        }

        if (at("(")) {
            MethodInfo method;
            method.name = name;
            method.owner = info.qualified_name;
            method.visibility = visibility;
            method.is_static = mods.is_static;
            method.is_constructor = is_constructor;
            method.type_params = std::move(method_type_params);
            method.return_type = is_constructor ? TypeRef::void_type() : unresolved(type_text);
            method.parameters = parse_parameters();
            while (at("[") && at("]", 1)) {
                pos_ += 2;
                method.return_type.name += "[]";
            }
            if (at("throws")) {
                ++pos_;
                parse_type();
                while (at(",")) {
                    ++pos_;
                    parse_type();
                }
            }
            const std::size_t sig_end = toks_[pos_ - 1].offset + toks_[pos_ - 1].text.size();
            method.signature_text = collapse_whitespace(src_.substr(mods.sig_start, sig_end - mods.sig_start));
            std::size_t source_end = sig_end;
            if (at("{")) {
                source_end = skip_balanced("{", "}");
            } else if (at("default")) {
                ++pos_;
                while (!at(";")) {
                    if (peek().kind == TokenKind::End) {
                        fail("unterminated annotation default");
                    }
                    ++pos_;
                }
                source_end = peek().offset + 1;
                ++pos_;
            } else if (at(";")) {
                source_end = peek().offset + 1;
                ++pos_;
            } else if (!signature_only) {
                fail("expected method body");
            }
            if (!signature_only) {
                method.source_text =
                    dedent(src_, mods.decl_start, src_.substr(mods.decl_start, source_end - mods.decl_start));
            }
            method.doc_text = doc;
            if (!doc.empty()) {
                method.tags = parse_doc_comment(doc);
            }
            for (auto& tag : method.tags) {
                if (tag.kind == DocTagKind::Param) {
                    tag.dangling = std::none_of(method.parameters.begin(), method.parameters.end(),
                                                [&](const ParameterInfo& p) { return p.name == tag.target; });
                }
            }
            info.methods.push_back(std::move(method));
            return;
        }

        const std::string prefix = collapse_whitespace(src_.substr(mods.sig_start, type_end - mods.sig_start));
        std::string current = name;
        while (true) {
            std::string field_type = type_text;
            while (at("[") && at("]", 1)) {
                pos_ += 2;
                field_type += "[]";
            }
            FieldInfo field;
            field.name = current;
            field.type = unresolved(field_type);
            field.visibility = visibility;
            field.is_static = mods.is_static || in_interface;
            field.declaration_text = prefix + " " + current;
            info.fields.push_back(std::move(field));
            if (at("=")) {
                ++pos_;
                skip_initializer();
            }
            if (at(",")) {
                ++pos_;
                current = expect_identifier();
                continue;
            }
            if (signature_only && peek().kind == TokenKind::End) {
                return;
            }
            expect(";");
            return;
        }
    }

    void skip_initializer() {
        int depth = 0;
        while (true) {
            const Token& t = peek();
            if (t.kind == TokenKind::End) {
                fail("unterminated field initializer");
            }
            if (t.is("(") || t.is("{") || t.is("[")) {
                ++depth;
            } else if (t.is(")") || t.is("}") || t.is("]")) {
                --depth;
            } else if (depth == 0 && t.is(";")) {
                return;
            } else if (depth == 0 && t.is(",")) {
                // A declarator follows only if the shape is `name =|,|;|[`.
                const Token& next = peek(1);
                const Token& after = peek(2);
                if (next.kind == TokenKind::Identifier &&
                    (after.is("=") || after.is(",") || after.is(";") || after.is("["))) {
                    return;
                }
            }
            ++pos_;
        }
    }

    std::string_view src_;
    std::string file_;
    std::vector<Token> toks_;
    std::size_t pos_ = 0;
    std::string pending_doc_;
    std::size_t pending_doc_offset_ = 0;
    CompilationUnit unit_;
};

} // namespace

CompilationUnit parse_compilation_unit(std::string_view source, const std::string& file_name) {
    try {
        return DeclarationParser(source, file_name).parse_unit();
    } catch (const LexicalError& e) {
        throw Error(fmt::format("{}: {} at offset {}", file_name, e.what(), e.offset()));
    }
}

MemberDeclaration parse_member_signature(std::string_view text, std::string_view owner_simple_name) {
    return DeclarationParser(text, "<signature>").parse_single_member(owner_simple_name);
}

} // namespace oraclegen::java
