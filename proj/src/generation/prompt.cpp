#include <algorithm>
#include <set>

#include <nlohmann/json.hpp>

#include "oraclegen/generation.hpp"

namespace oraclegen {

namespace {

using json = nlohmann::json;
using grammar::Token;
using grammar::TokenKind;

std::string quote_list(const std::vector<std::string>& items) {
    std::string out = "[";
    for (std::size_t i = 0; i < items.size(); ++i) {
        out += (i ? ", '" : "'") + items[i] + "'";
    }
    return out + "]";
}

std::string class_line(const ClassInfo& info) {
    return (info.is_interface ? "interface " : "class ") + info.qualified_name;
}

void member_lines(const Members& members, std::string_view name, std::vector<std::string>& out) {
    for (const auto& f : members.fields) {
        if (f.name == name) {
            out.push_back(f.declaration_text.empty() ? f.type.display_name() + " " + f.name : f.declaration_text);
        }
    }
    for (const auto& m : members.methods) {
        if (m.name == name && !m.is_constructor) {
            out.push_back(m.signature_text);
        }
    }
}

/// Member tables searched for a member token, most specific first.
std::vector<Members> member_sources(const TokenEngine& engine, const std::vector<Token>& partial) {
    const GenerationContext& ctx = engine.context();
    const ProjectModel& model = *ctx.model;
    std::vector<Members> sources;
    if (!partial.empty() && partial.back().text == ".") {
        const auto state = engine.replay(partial);
        const auto& top = state.frames().back();
        if (top.phase == grammar::Phase::OperandDot && top.receiver.has_members()) {
            sources.push_back(engine.members_of(top.receiver));
        }
    }
    std::vector<TypeRef> roots;
    if (ctx.is_instance_method()) {
        roots.push_back(TypeRef::reference(ctx.owner->qualified_name));
    }
    for (const auto& p : ctx.unit->parameters) {
        roots.push_back(p.type);
    }
    if (ctx.result_available()) {
        roots.push_back(ctx.unit->return_type);
    }
    for (const auto& root : roots) {
        if (root.is_object_like()) {
            sources.push_back(accessible_members(model, root));
        }
    }
    for (const auto* classes : {&model.classes(), &model.external_classes()}) {
        for (const auto& [qualified, info] : *classes) {
            Members statics;
            for (const auto& f : info.fields) {
                if (f.is_static && f.visibility != Visibility::Private) {
                    statics.fields.push_back(f);
                }
            }
            for (const auto& m : info.methods) {
                if (m.is_static && m.visibility != Visibility::Private) {
                    statics.methods.push_back(m);
                }
            }
            sources.push_back(std::move(statics));
        }
    }
    return sources;
}

PromptFields base_fields(const GenerationContext& ctx, PromptKind kind) {
    PromptFields f;
    f.kind = kind;
    f.oracle_type = ctx.type;
    f.tag_text = ctx.tag_text();
    f.method_doc = ctx.unit->doc_text;
    f.method_source = ctx.unit->source_text.empty() ? ctx.unit->signature_text : ctx.unit->source_text;
    f.class_name = ctx.owner->qualified_name;
    f.method_signature = ctx.unit->key();
    for (const auto& p : ctx.unit->parameters) {
        f.parameters.push_back(p.name);
    }
    return f;
}

} // namespace

std::string render_prompt(const PromptFields& f) {
    std::string out;
    out += "// " + std::string(template_label(f.oracle_type)) + ": \"" + f.tag_text + "\"\n";
    if (f.kind == PromptKind::Evaluator) {
        out += "// Next possible tokens: " +
               quote_list({std::string(kAssertArm), std::string(kNoAssertArm)}) + "\n";
        out += "// Assertion:\n";
        out += std::string(kFillMarker) + "\n";
    } else {
        out += "// Next possible tokens: " + quote_list(f.candidates) + "\n";
        out += "// Assertion:\n";
        out += std::string(kAssertArm) + f.partial_text + std::string(kFillMarker) + "\n";
    }
    out += "\n// Method under test:\n";
    if (!f.method_doc.empty()) {
        out += f.method_doc + "\n";
    }
    out += f.method_source + "\n";
    if (f.kind == PromptKind::Selector) {
        out += "\n// Additional context:\n";
        for (const auto& line : f.context_snippets) {
            out += line + "\n";
        }
    }
    if (f.reminder) {
        out += std::string(kChooseReminder) + "\n";
    }
    return out;
}

PromptBundle render_evaluator_prompt(const GenerationContext& ctx) {
    PromptBundle bundle;
    bundle.fields = base_fields(ctx, PromptKind::Evaluator);
    bundle.fields.candidates = {std::string(kAssertArm), std::string(kNoAssertArm)};
    bundle.rendered = render_prompt(bundle.fields);
    return bundle;
}

std::vector<std::string> context_lines_for(const TokenEngine& engine, const std::vector<Token>& partial,
                                           const CandidateSet& candidates) {
    const GenerationContext& ctx = engine.context();
    std::vector<std::string> out;
    std::set<std::string> seen;
    std::optional<std::vector<Members>> sources;
    for (const auto& c : candidates.candidates) {
        std::vector<std::string> lines;
        if (c.token.kind == TokenKind::MemberName || c.token.kind == TokenKind::MethodCallName) {
            if (!sources) {
                sources = member_sources(engine, partial);
            }
            for (const auto& members : *sources) {
                member_lines(members, c.token.text, lines);
                if (!lines.empty()) {
                    break;
                }
            }
        } else if (c.token.kind == TokenKind::Identifier && c.provenance == Provenance::Project) {
            if (const ClassInfo* info = ctx.model->find_by_simple_name(c.token.text, ctx.owner->qualified_name)) {
                lines.push_back(class_line(*info));
            }
        }
        for (auto& line : lines) {
            if (seen.insert(line).second) {
                out.push_back(std::move(line));
            }
        }
    }
    return out;
}

std::vector<std::string> context_lines_for(const GenerationContext& ctx, const std::vector<Token>& partial,
                                           const CandidateSet& candidates) {
    return context_lines_for(TokenEngine(ctx), partial, candidates);
}

PromptBundle render_selector_prompt(const GenerationContext& ctx, const std::vector<Token>& partial,
                                    const CandidateSet& candidates, const PromptLimits& limits) {
    return render_selector_prompt(TokenEngine(ctx), partial, candidates, limits);
}

PromptBundle render_selector_prompt(const TokenEngine& engine, const std::vector<Token>& partial,
                                    const CandidateSet& candidates, const PromptLimits& limits) {
    const GenerationContext& ctx = engine.context();
    if (candidates.empty()) {
        throw ContractViolation("selector prompt needs at least one candidate");
    }
    PromptBundle bundle;
    bundle.fields = base_fields(ctx, PromptKind::Selector);
    bundle.fields.candidates = candidates.texts();
    bundle.fields.partial_text = grammar::join_tokens(partial);
    bundle.fields.position = partial.size();
    auto lines = context_lines_for(engine, partial, candidates);
    if (lines.size() > limits.context_lines) {
        bundle.truncated_lines = lines.size() - limits.context_lines;
        lines.resize(limits.context_lines);
    }
    bundle.fields.context_snippets = std::move(lines);
    bundle.rendered = render_prompt(bundle.fields);
    while (bundle.rendered.size() > limits.max_chars && !bundle.fields.context_snippets.empty()) {
        bundle.fields.context_snippets.pop_back();
        ++bundle.truncated_lines;
        bundle.rendered = render_prompt(bundle.fields);
    }
    return bundle;
}

std::string prompt_meta_json(const PromptFields& f) {
    json j;
    j["kind"] = f.kind == PromptKind::Evaluator ? "evaluator" : "selector";
    j["oracleType"] = std::string(to_string(f.oracle_type));
    j["tagText"] = f.tag_text;
    j["candidates"] = f.candidates;
    j["partialText"] = f.partial_text;
    j["methodDoc"] = f.method_doc;
    j["methodSource"] = f.method_source;
    j["contextSnippets"] = f.context_snippets;
    j["reminder"] = f.reminder;
    j["className"] = f.class_name;
    j["methodSignature"] = f.method_signature;
    j["parameters"] = f.parameters;
    j["position"] = f.position;
    return j.dump();
}

PromptFields prompt_fields_from_json(std::string_view text) {
    PromptFields f;
    try {
        const json j = json::parse(text);
        f.kind = j.at("kind").get<std::string>() == "evaluator" ? PromptKind::Evaluator : PromptKind::Selector;
        const auto type = parse_oracle_type(j.at("oracleType").get<std::string>());
        if (!type) {
            throw Error("unknown oracleType");
        }
        f.oracle_type = *type;
        f.tag_text = j.value("tagText", "");
        f.candidates = j.value("candidates", std::vector<std::string>{});
        f.partial_text = j.value("partialText", "");
        f.method_doc = j.value("methodDoc", "");
        f.method_source = j.value("methodSource", "");
        f.context_snippets = j.value("contextSnippets", std::vector<std::string>{});
        f.reminder = j.value("reminder", false);
        f.class_name = j.value("className", "");
        f.method_signature = j.value("methodSignature", "");
        f.parameters = j.value("parameters", std::vector<std::string>{});
        f.position = j.value("position", std::size_t{0});
    } catch (const json::exception& e) {
        throw Error(std::string("malformed prompt meta: ") + e.what());
    }
    return f;
}

} // namespace oraclegen
