#include <algorithm>
#include <cctype>
#include <set>

#include <fmt/format.h>

#include "oraclegen/augmentation.hpp"
#include "oraclegen/java_source.hpp"

namespace oraclegen {

namespace {

using java::Token;
using JKind = java::TokenKind;

bool is_open(const Token& t) {
    return t.is("(") || t.is("[") || t.is("{");
}

bool is_close(const Token& t) {
    return t.is(")") || t.is("]") || t.is("}");
}

bool is_primitive_keyword(std::string_view w) {
    static const std::set<std::string_view> names = {"void", "boolean", "byte", "char", "short",
                                                      "int",  "long",    "float", "double"};
    return names.count(w) > 0;
}

/// Index of the token closing the group opened at `open`.
std::size_t matching_close(const std::vector<Token>& toks, std::size_t open) {
    int depth = 0;
    for (std::size_t i = open; i < toks.size(); ++i) {
        if (is_open(toks[i])) {
            ++depth;
        } else if (is_close(toks[i]) && --depth == 0) {
            return i;
        }
    }
    return toks.size();
}

std::size_t end_offset(const Token& t) {
    return t.offset + t.text.size();
}

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string_view::npos) {
        return {};
    }
    const auto e = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(b, e - b + 1));
}

std::size_t line_start(std::string_view src, std::size_t offset) {
    const auto nl = src.rfind('\n', offset == 0 ? 0 : offset - 1);
    return offset == 0 || nl == std::string_view::npos ? 0 : nl + 1;
}

std::size_t line_after(std::string_view src, std::size_t offset) {
    const auto nl = src.find('\n', offset);
    return nl == std::string_view::npos ? src.size() : nl + 1;
}

std::string indent_of(std::string_view src, std::size_t offset) {
    const auto begin = line_start(src, offset);
    std::size_t end = begin;
    while (end < src.size() && (src[end] == ' ' || src[end] == '\t')) {
        ++end;
    }
    return std::string(src.substr(begin, end - begin));
}

/// Identifier chains, literals and `this` need no parentheses when
/// substituted into an oracle.
bool simple_expression(std::string_view text) {
    const auto toks = java::lex(text);
    if (toks.size() == 3 && toks[0].is("-") &&
        (toks[1].kind == JKind::IntLiteral || toks[1].kind == JKind::FloatLiteral)) {
        return true;
    }
    for (const auto& t : toks) {
        if (t.kind == JKind::End) {
            continue;
        }
        const bool ok = t.kind == JKind::Identifier || t.kind == JKind::IntLiteral ||
                        t.kind == JKind::FloatLiteral || t.kind == JKind::StringLiteral ||
                        t.kind == JKind::CharLiteral || t.is(".") || t.is("this") || t.is("null") ||
                        t.is("true") || t.is("false");
        if (!ok) {
            return false;
        }
    }
    return toks.size() > 1;
}

std::string wrap(const std::string& text) {
    return simple_expression(text) ? text : "(" + text + ")";
}

/// Line ranges [begin, end] of previously injected blocks.
std::vector<std::pair<std::size_t, std::size_t>> injected_regions(std::string_view src) {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    std::size_t line = 1;
    std::size_t pos = 0;
    std::optional<std::size_t> open;
    while (pos <= src.size()) {
        const auto nl = src.find('\n', pos);
        const auto text = trim(src.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos));
        if (text.rfind(kMarkerBegin, 0) == 0) {
            open = line;
        } else if (text == kMarkerEnd && open) {
            out.emplace_back(*open, line);
            open.reset();
        }
        if (nl == std::string_view::npos) {
            break;
        }
        pos = nl + 1;
        ++line;
    }
    return out;
}

struct Scanner {
    std::string_view src;
    std::vector<Token> toks;

    /// First token of the access chain ending just before `dot`.
    std::size_t chain_start(std::size_t dot) const {
        std::size_t i = dot;
        while (i > 0) {
            const Token& prev = toks[i - 1];
            if (prev.kind == JKind::Identifier || prev.is("this") || prev.is("super")) {
                --i;
                if (i > 0 && toks[i - 1].is(".")) {
                    --i;
                    continue;
                }
                if (i > 0 && toks[i - 1].is("new")) {
                    --i;
                }
                break;
            }
            if (prev.is(")") || prev.is("]")) {
                int depth = 0;
                std::size_t j = i - 1;
                for (;; --j) {
                    if (is_close(toks[j])) {
                        ++depth;
                    } else if (is_open(toks[j]) && --depth == 0) {
                        break;
                    }
                    if (j == 0) {
                        return i;
                    }
                }
                i = j;
                continue;
            }
            break;
        }
        return i;
    }

    std::vector<std::string> split_arguments(std::size_t open, std::size_t close) const {
        std::vector<std::string> out;
        if (close == open + 1) {
            return out;
        }
        int depth = 0;
        std::size_t begin = end_offset(toks[open]);
        for (std::size_t i = open + 1; i < close; ++i) {
            if (is_open(toks[i])) {
                ++depth;
            } else if (is_close(toks[i])) {
                --depth;
            } else if (depth == 0 && toks[i].is(",")) {
                out.push_back(trim(src.substr(begin, toks[i].offset - begin)));
                begin = end_offset(toks[i]);
            }
        }
        out.push_back(trim(src.substr(begin, toks[close].offset - begin)));
        return out;
    }

    /// Index just past the previous statement boundary before `at`.
    std::optional<std::size_t> statement_start(std::size_t at) const {
        int depth = 0;
        std::size_t i = at;
        while (i > 0) {
            const Token& t = toks[i - 1];
            if (is_close(t) && !t.is("}")) {
                ++depth;
            } else if (is_open(t) && !t.is("{")) {
                if (depth == 0) {
                    return std::nullopt;
                }
                --depth;
            } else if (depth == 0 && (t.is(";") || t.is("{") || t.is("}"))) {
                return i;
            }
            --i;
        }
        return std::nullopt;
    }
};

bool control_prefix(const std::vector<Token>& toks, std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
        if (toks[i].is("for") || toks[i].is("while") || toks[i].is("if") || toks[i].is("do") ||
            toks[i].is("else") || toks[i].is("->") || toks[i].is("switch") || toks[i].is("case") ||
            toks[i].is("try") || toks[i].is("catch") || toks[i].is(":")) {
            return true;
        }
    }
    return false;
}

std::set<std::string> identifiers_of(std::string_view src) {
    std::set<std::string> out;
    for (const auto& t : java::lex(src)) {
        if (t.kind == JKind::Identifier) {
            out.emplace(t.text);
        }
    }
    return out;
}

std::string fresh_name(std::set<std::string>& taken) {
    std::string name(kResultLocal);
    for (int n = 2; taken.count(name); ++n) {
        name = std::string(kResultLocal) + std::to_string(n);
    }
    taken.insert(name);
    return name;
}

bool uses_result(const std::string& oracle) {
    for (const auto& t : grammar::tokenize(oracle)) {
        if (t.text == "methodResultID") {
            return true;
        }
    }
    return false;
}

struct Edit {
    std::size_t offset;
    std::string text;
};

} // namespace

std::string injection_marker(const InjectionRequest& request) {
    return std::string(kMarkerBegin) + " " + std::string(to_string(request.type)) + " " + request.oracle;
}

InjectionPlan plan_injection(std::string_view src, const InjectionRequest& request, std::string test_file) {
    if (!request.method) {
        throw ContractViolation("injection request without a method");
    }
    InjectionPlan plan;
    plan.test_file = std::move(test_file);
    plan.request = request;
    plan.request.oracle = grammar::render(grammar::parse(request.oracle));

    const MethodInfo& m = *request.method;
    const bool needs_result = uses_result(plan.request.oracle);
    Scanner scan{src, java::lex(src)};
    const auto& toks = scan.toks;
    const auto regions = injected_regions(src);
    std::set<std::string> taken = identifiers_of(src);
    const std::string simple_owner = m.owner.substr(m.owner.rfind('.') + 1);
    const std::string call_name = m.is_constructor ? simple_owner : m.name;

    auto site_label = [&](const CallSite& s) {
        return fmt::format("{}:{}:{}", plan.test_file.empty() ? "<test>" : plan.test_file, s.line, s.column);
    };

    for (std::size_t i = 0; i + 1 < toks.size(); ++i) {
        if (toks[i].kind != JKind::Identifier || toks[i].text != call_name) {
            continue;
        }
        std::size_t open = i + 1;
        std::size_t expr_begin = i;
        if (m.is_constructor) {
            if (i == 0 || !toks[i - 1].is("new")) {
                continue;
            }
            expr_begin = i - 1;
            while (open < toks.size() && !toks[open].is("(") &&
                   (toks[open].is("<") || toks[open].is(">") || toks[open].is(",") || toks[open].is("?") ||
                    toks[open].is(".") || toks[open].kind == JKind::Identifier)) {
                ++open;
            }
        } else if (i > 0) {
            const Token& prev = toks[i - 1];
            if (prev.kind == JKind::Identifier || is_primitive_keyword(prev.text) || prev.is("]") ||
                prev.is("new")) {
                continue;
            }
        }
        if (open >= toks.size() || !toks[open].is("(")) {
            continue;
        }
        const std::size_t close = matching_close(toks, open);
        if (close >= toks.size()) {
            continue;
        }
        if (toks[close + 1].is("{") && !m.is_constructor) {
            continue;
        }
        CallSite site;
        site.line = toks[expr_begin].line;
        site.column = toks[expr_begin].offset - line_start(src, toks[expr_begin].offset) + 1;
        site.arguments = scan.split_arguments(open, close);
        if (site.arguments.size() != m.parameters.size()) {
            continue;
        }
        const bool in_region = std::any_of(regions.begin(), regions.end(), [&](const auto& r) {
            return site.line >= r.first && site.line <= r.second;
        });
        if (in_region) {
            continue;
        }
        if (!m.is_constructor && i > 0 && toks[i - 1].is(".")) {
            expr_begin = scan.chain_start(i - 1);
            site.receiver = trim(src.substr(toks[expr_begin].offset, toks[i - 1].offset - toks[expr_begin].offset));
        }
        site.call_text = std::string(src.substr(toks[expr_begin].offset, end_offset(toks[close]) - toks[expr_begin].offset));

        const auto stmt = scan.statement_start(expr_begin);
        if (!stmt || *stmt >= toks.size()) {
            plan.diagnostics.push_back(site_label(site) + ": call is not inside a statement");
            continue;
        }
        if (control_prefix(toks, *stmt, expr_begin)) {
            plan.diagnostics.push_back(site_label(site) + ": call inside a control structure");
            continue;
        }
        site.statement_begin = toks[*stmt].offset;
        site.indent = indent_of(src, site.statement_begin);
        const bool ends_statement = close + 1 < toks.size() && toks[close + 1].is(";");
        if (ends_statement) {
            site.statement_end = end_offset(toks[close + 1]);
            if (*stmt == expr_begin) {
                site.statement_level = true;
            } else if (expr_begin >= *stmt + 2 && toks[expr_begin - 1].is("=") &&
                       toks[expr_begin - 2].kind == JKind::Identifier) {
                site.statement_level = true;
                site.result_variable = std::string(toks[expr_begin - 2].text);
            }
        }
        if (!site.statement_level) {
            std::size_t j = close + 1;
            int depth = 0;
            for (; j < toks.size(); ++j) {
                if (is_open(toks[j])) {
                    ++depth;
                } else if (is_close(toks[j])) {
                    if (--depth < 0) {
                        break;
                    }
                } else if (depth == 0 && toks[j].is(";")) {
                    break;
                }
            }
            if (j >= toks.size() || !toks[j].is(";")) {
                plan.diagnostics.push_back(site_label(site) + ": enclosing statement has no ';'");
                continue;
            }
            site.statement_end = end_offset(toks[j]);
        }

        SiteBinding bound;
        if (needs_result) {
            if (site.result_variable.empty()) {
                if (!site.statement_level) {
                    plan.diagnostics.push_back(site_label(site) + ": result of a nested call cannot be bound");
                    continue;
                }
                bound.capture = fresh_name(taken);
                bound.binding["methodResultID"] = bound.capture;
            } else {
                bound.binding["methodResultID"] = site.result_variable;
            }
        }
        if (!m.is_static && !m.is_constructor) {
            bound.binding["this"] = site.receiver.empty() ? "this" : wrap(site.receiver);
        }
        for (std::size_t p = 0; p < m.parameters.size(); ++p) {
            bound.binding[m.parameters[p].name] = wrap(site.arguments[p]);
        }
        if (request.type == OracleType::NormalPost && !site.statement_level) {
            plan.diagnostics.push_back(site_label(site) + ": postcondition needs a statement-level call");
            continue;
        }

        auto tokens = grammar::tokenize(plan.request.oracle);
        std::string unbound;
        for (std::size_t k = 0; k < tokens.size(); ++k) {
            auto& t = tokens[k];
            const bool head = k == 0 || tokens[k - 1].text != ".";
            if (!head) {
                continue;
            }
            if (auto it = bound.binding.find(t.text); it != bound.binding.end()) {
                t.text = it->second;
            } else if (t.kind == grammar::TokenKind::Identifier && t.text != "jdVar" &&
                       !std::isupper(static_cast<unsigned char>(t.text.front()))) {
                unbound = t.text;
            } else if (t.text == "this" || t.text == "methodResultID") {
                unbound = t.text;
            }
        }
        if (!unbound.empty()) {
            plan.diagnostics.push_back(site_label(site) + ": cannot bind '" + unbound + "'");
            continue;
        }
        tokens.pop_back();
        bound.condition = grammar::join_tokens(tokens);
        bound.site = std::move(site);
        plan.sites.push_back(std::move(bound));
    }
    return plan;
}

InjectionResult apply_injection(std::string_view src, const InjectionPlan& plan) {
    InjectionResult result;
    result.source = std::string(src);
    const std::string marker = injection_marker(plan.request);
    if (plan.sites.empty() || src.find(marker) != std::string_view::npos) {
        return result;
    }
    std::vector<Edit> edits;
    for (const auto& b : plan.sites) {
        const auto& s = b.site;
        const std::string& in = s.indent;
        switch (plan.request.type) {
        case OracleType::Pre:
            edits.push_back({line_start(src, s.statement_begin),
                             in + marker + "\n" + in + "assertTrue(" + b.condition + ");\n" + in +
                                 std::string(kMarkerEnd) + "\n"});
            break;
        case OracleType::NormalPost:
            if (!b.capture.empty()) {
                edits.push_back({s.statement_begin, "var " + b.capture + " = "});
            }
            edits.push_back({line_after(src, s.statement_end - 1),
                             in + marker + "\n" + in + "assertTrue(" + b.condition + ");\n" + in +
                                 std::string(kMarkerEnd) + "\n"});
            break;
        case OracleType::ExceptPost: {
            const std::string ex = plan.request.exception_type.empty() ? "Exception" : plan.request.exception_type;
            std::string block = in + marker + "\n";
            block += in + "if (" + b.condition + ") {\n";
            block += in + "    try {\n";
            block += in + "        " + s.call_text + ";\n";
            block += in + "        fail(\"expected " + ex + "\");\n";
            block += in + "    } catch (" + ex + " __tr_expected) {\n";
            block += in + "    }\n";
            block += in + "}\n";
            block += in + std::string(kMarkerEnd) + "\n";
            edits.push_back({line_start(src, s.statement_begin), block});
            break;
        }
        }
    }
    std::stable_sort(edits.begin(), edits.end(), [](const Edit& a, const Edit& b) { return a.offset > b.offset; });
    std::string out(src);
    for (const auto& e : edits) {
        out.insert(e.offset, e.text);
    }
    try {
        java::parse_compilation_unit(out, plan.test_file.empty() ? "<test>" : plan.test_file);
    } catch (const Error& e) {
        result.error = std::string("rewritten source does not parse: ") + e.what();
        return result;
    }
    result.source = std::move(out);
    result.changed = true;
    return result;
}

namespace {

std::vector<std::string_view> split_lines(std::string_view text) {
    std::vector<std::string_view> out;
    std::size_t pos = 0;
    while (pos < text.size()) {
        const auto nl = text.find('\n', pos);
        const auto end = nl == std::string_view::npos ? text.size() : nl + 1;
        out.push_back(text.substr(pos, end - pos));
        pos = end;
    }
    return out;
}

} // namespace

std::string unified_diff(std::string_view before, std::string_view after, const std::string& old_name,
                         const std::string& new_name) {
    const auto a = split_lines(before);
    const auto b = split_lines(after);
    const std::size_t n = a.size();
    const std::size_t m = b.size();
    std::vector<std::vector<std::uint32_t>> lcs(n + 1, std::vector<std::uint32_t>(m + 1, 0));
    for (std::size_t i = n; i-- > 0;) {
        for (std::size_t j = m; j-- > 0;) {
            lcs[i][j] = a[i] == b[j] ? lcs[i + 1][j + 1] + 1 : std::max(lcs[i + 1][j], lcs[i][j + 1]);
        }
    }
    struct Op {
        char kind;
        std::size_t ai;
        std::size_t bi;
    };
    std::vector<Op> ops;
    std::size_t i = 0;
    std::size_t j = 0;
    while (i < n || j < m) {
        if (i < n && j < m && a[i] == b[j]) {
            ops.push_back({' ', i++, j++});
        } else if (j < m && (i == n || lcs[i][j + 1] >= lcs[i + 1][j])) {
            ops.push_back({'+', i, j++});
        } else {
            ops.push_back({'-', i++, j});
        }
    }
    auto line_text = [](std::string_view l) {
        std::string s(l);
        if (s.empty() || s.back() != '\n') {
            s += "\n\\ No newline at end of file\n";
        }
        return s;
    };
    std::string out;
    constexpr std::size_t context = 3;
    std::vector<std::size_t> changes;
    for (std::size_t k = 0; k < ops.size(); ++k) {
        if (ops[k].kind != ' ') {
            changes.push_back(k);
        }
    }
    std::size_t c = 0;
    while (c < changes.size()) {
        std::size_t last = c;
        while (last + 1 < changes.size() && changes[last + 1] - changes[last] <= 2 * context + 1) {
            ++last;
        }
        const std::size_t begin = changes[c] >= context ? changes[c] - context : 0;
        const std::size_t end = std::min(ops.size(), changes[last] + context + 1);
        if (out.empty()) {
            out += "--- " + old_name + "\n+++ " + new_name + "\n";
        }
        std::size_t a_count = 0;
        std::size_t b_count = 0;
        for (std::size_t q = begin; q < end; ++q) {
            a_count += ops[q].kind != '+';
            b_count += ops[q].kind != '-';
        }
        const std::size_t a_start = a_count ? ops[begin].ai + 1 : ops[begin].ai;
        const std::size_t b_start = b_count ? ops[begin].bi + 1 : ops[begin].bi;
        out += fmt::format("@@ -{},{} +{},{} @@\n", a_start, a_count, b_start, b_count);
        for (std::size_t q = begin; q < end; ++q) {
            const auto& op = ops[q];
            out += op.kind;
            out += line_text(op.kind == '+' ? b[op.bi] : a[op.ai]);
        }
        c = last + 1;
    }
    return out;
}

} // namespace oraclegen
