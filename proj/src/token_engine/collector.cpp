#include <algorithm>
#include <cctype>
#include <set>

#include "internal.hpp"

namespace oraclegen {

namespace {

using grammar::Token;
using grammar::TokenKind;

bool word_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '$';
}

bool digit(char c) {
    return std::isdigit(static_cast<unsigned char>(c)) != 0;
}

class Collector {
public:
    void add(Token token, Provenance provenance) {
        if (!seen_.insert(std::to_string(static_cast<int>(token.kind)) + token.text).second) {
            return;
        }
        out_.push_back({std::move(token), provenance, next_++});
    }

    void add_members(const Members& members, Provenance provenance, bool statics_only) {
        for (const auto& f : members.fields) {
            if (!statics_only || f.is_static) {
                add({f.name, TokenKind::MemberName}, provenance);
            }
        }
        for (const auto& m : members.methods) {
            if (!statics_only || m.is_static) {
                add({m.name, TokenKind::MethodCallName}, provenance);
            }
        }
    }

    std::vector<Candidate> take() { return std::move(out_); }

private:
    std::set<std::string> seen_;
    std::vector<Candidate> out_;
    std::size_t next_ = 0;
};

const std::vector<std::string_view>& common_texts() {
    static const std::vector<std::string_view> texts{
        "==", "!=", "<",     "<=", ">",    ">=",   "&&",   "||", "+", "-", "*", "/", "%", "instanceof", "?",
        ":",  "->", "true", "false", "null", "jdVar", "(", ")",  ".", ",", ";", "0", "1"};
    return texts;
}

} // namespace

std::vector<std::string> mine_doc_literals(std::string_view text) {
    std::vector<std::string> out;
    auto push = [&](std::string lit) {
        if (std::find(out.begin(), out.end(), lit) == out.end()) {
            out.push_back(std::move(lit));
        }
    };
    const std::size_t n = text.size();
    std::size_t i = 0;
    while (i < n) {
        const char c = text[i];
        if (c == '"') {
            const std::size_t close = text.find('"', i + 1);
            if (close == std::string_view::npos) {
                break;
            }
            const std::string_view body = text.substr(i + 1, close - i - 1);
            if (body.find('\\') == std::string_view::npos && body.find('\n') == std::string_view::npos) {
                push(std::string(text.substr(i, close - i + 1)));
            }
            i = close + 1;
            continue;
        }
        const bool negative = c == '-' && i + 1 < n && digit(text[i + 1]);
        if ((digit(c) || negative) && (i == 0 || (!word_char(text[i - 1]) && text[i - 1] != '.'))) {
            std::size_t j = negative ? i + 1 : i;
            while (j < n && digit(text[j])) {
                ++j;
            }
            if (j + 1 < n && text[j] == '.' && digit(text[j + 1])) {
                ++j;
                while (j < n && digit(text[j])) {
                    ++j;
                }
            }
            const bool glued = j < n && (word_char(text[j]) || (text[j] == '.' && j + 1 < n && digit(text[j + 1])));
            if (!glued) {
                push(std::string(text.substr(i, j - i)));
            }
            while (j < n && (word_char(text[j]) || text[j] == '.')) {
                ++j;
            }
            i = j;
            continue;
        }
        ++i;
    }
    return out;
}

std::vector<Candidate> collect_generic(const GenerationContext& ctx) {
    Collector c;
    std::vector<std::string_view> common = common_texts();
    std::sort(common.begin(), common.end());
    for (auto text : common) {
        c.add({std::string(text), grammar::classify_lexeme(text)}, Provenance::Common);
    }

    const ProjectModel& model = *ctx.model;
    for (const auto* classes : {&model.classes(), &model.external_classes()}) {
        for (const auto& [qualified, info] : *classes) {
            const ClassInfo* back = model.find_by_simple_name(info.name, ctx.owner->qualified_name);
            if (!back || back->qualified_name != qualified) {
                continue;
            }
            c.add({info.name, TokenKind::Identifier}, Provenance::Project);
            Members statics;
            statics.fields = info.fields;
            statics.methods = info.methods;
            std::erase_if(statics.fields, [](const FieldInfo& f) { return f.visibility == Visibility::Private; });
            std::erase_if(statics.methods, [](const MethodInfo& m) {
                return m.visibility == Visibility::Private || m.is_constructor;
            });
            c.add_members(statics, Provenance::Project, true);
        }
    }

    std::vector<TypeRef> roots;
    for (const auto& p : ctx.unit->parameters) {
        c.add({p.name, TokenKind::Identifier}, Provenance::Method);
        roots.push_back(p.type);
    }
    if (ctx.is_instance_method()) {
        c.add({"this", TokenKind::Reserved}, Provenance::Method);
        roots.push_back(TypeRef::reference(ctx.owner->qualified_name));
    }
    if (ctx.result_available()) {
        c.add({"methodResultID", TokenKind::Reserved}, Provenance::Method);
        roots.push_back(ctx.unit->return_type);
    }
    for (const auto& root : roots) {
        if (root.is_object_like()) {
            c.add_members(accessible_members(model, root), Provenance::Method, false);
        }
    }

    for (auto& lit : mine_doc_literals(ctx.tag_text())) {
        c.add({std::move(lit), TokenKind::Literal}, Provenance::DocLiteral);
    }
    return c.take();
}

std::vector<Candidate> TokenEngine::specific(const grammar::GrammarState& state) const {
    std::vector<Candidate> out;
    if (state.tokens().empty() || state.tokens().back().text != "." ||
        state.frames().back().phase != grammar::Phase::OperandDot) {
        return out;
    }
    const ExprType& receiver = state.frames().back().receiver;
    std::set<std::pair<std::string, TokenKind>> seen;
    auto push = [&](const std::string& text, TokenKind kind) {
        if (seen.emplace(text, kind).second) {
            out.push_back({{text, kind}, Provenance::SpecificMember, out.size()});
        }
    };
    if (receiver.kind == ExprType::Kind::Stream) {
        for (const char* q : {"anyMatch", "allMatch", "noneMatch"}) {
            push(q, TokenKind::MethodCallName);
        }
        return out;
    }
    if (!receiver.has_members()) {
        return out;
    }
    const Members& members = members_of(receiver);
    for (const auto& f : members.fields) {
        push(f.name, TokenKind::MemberName);
    }
    for (const auto& m : members.methods) {
        push(m.name, TokenKind::MethodCallName);
    }
    return out;
}

std::vector<Candidate> collect_specific(const GenerationContext& ctx, const std::vector<grammar::Token>& partial) {
    if (partial.empty() || partial.back().text != ".") {
        throw ContractViolation("collect_specific requires a partial oracle ending with '.'");
    }
    TokenEngine engine(ctx);
    return engine.specific(engine.replay(partial));
}

} // namespace oraclegen
