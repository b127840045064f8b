#include <algorithm>
#include <set>
#include <tuple>

#include "internal.hpp"

namespace oraclegen {

namespace {

using K = ExprType::Kind;
using grammar::GrammarState;
using grammar::Token;
using grammar::TokenKind;

GrammarState replay_with(const std::vector<Token>& tokens, std::size_t end, const grammar::TypeEnv& env) {
    GrammarState state = grammar::initial_state();
    for (std::size_t i = 0; i < end && i < tokens.size(); ++i) {
        if (!detail::slot_of(state, tokens[i])) {
            throw SyntaxError("token '" + tokens[i].text + "' at index " + std::to_string(i) +
                                  " does not fit the oracle grammar",
                              i);
        }
        state = grammar::advance(state, tokens[i], &env);
    }
    return state;
}

} // namespace

std::vector<std::string> CandidateSet::texts() const {
    std::vector<std::string> out;
    out.reserve(candidates.size());
    for (const auto& c : candidates) {
        out.push_back(c.token.text);
    }
    return out;
}

bool CandidateSet::contains(std::string_view text) const {
    return std::any_of(candidates.begin(), candidates.end(), [&](const Candidate& c) { return c.token.text == text; });
}

std::string FilterResult::reason_for(std::string_view text) const {
    if (kept.contains(text)) {
        return {};
    }
    for (const auto& p : pruned) {
        if (p.token.text == text) {
            return p.reason;
        }
    }
    return {};
}

TokenEngine::TokenEngine(GenerationContext ctx) : ctx_(std::move(ctx)) {
    if (!ctx_.model || !ctx_.owner || !ctx_.unit) {
        throw ContractViolation("generation context is missing its model, class or method");
    }
    env_ = std::make_unique<detail::ContextTypeEnv>(*this, false);
    generic_ = collect_generic(ctx_);
    completion_ = std::make_unique<detail::CompletionModel>(*this);
}

TokenEngine::~TokenEngine() = default;

const Members& TokenEngine::members_of(const ExprType& type) const {
    static const Members empty;
    if (!type.has_members()) {
        return empty;
    }
    const std::string key = type.key();
    auto it = member_cache_.find(key);
    if (it != member_cache_.end()) {
        return it->second;
    }
    Members members;
    if (type.kind == K::StaticClass) {
        members = accessible_members(*ctx_.model, TypeRef::reference(type.name));
        std::erase_if(members.fields, [](const FieldInfo& f) { return !f.is_static; });
        std::erase_if(members.methods, [](const MethodInfo& m) { return !m.is_static; });
    } else {
        members = accessible_members(*ctx_.model, type.as_type_ref());
    }
    return member_cache_.emplace(key, std::move(members)).first->second;
}

std::vector<const MethodInfo*> TokenEngine::methods_named(const ExprType& receiver, std::string_view name) const {
    std::vector<const MethodInfo*> out;
    if (!receiver.has_members()) {
        return out;
    }
    members_of(receiver);
    for (const auto& m : member_cache_.at(receiver.key()).methods) {
        if (m.name == name) {
            out.push_back(&m);
        }
    }
    return out;
}

const std::vector<std::pair<Token, ExprType>>& TokenEngine::argument_pool(bool in_lambda,
                                                                         const ExprType& jd_type) const {
    const std::string key = in_lambda ? "lambda:" + jd_type.key() : "plain";
    auto it = arg_pool_cache_.find(key);
    if (it != arg_pool_cache_.end()) {
        return it->second;
    }
    std::vector<std::pair<Token, ExprType>> pool;
    for (const auto& c : generic_) {
        const Token& t = c.token;
        if (t.kind == TokenKind::Literal) {
            pool.emplace_back(t, grammar::literal_type(t));
        } else if (t.kind == TokenKind::Reserved) {
            if (t.text == "jdVar") {
                if (in_lambda) {
                    pool.emplace_back(t, jd_type);
                }
            } else if (t.text == "this" || t.text == "methodResultID") {
                pool.emplace_back(t, env_->identifier(t.text));
            } else {
                pool.emplace_back(t, grammar::literal_type(t));
            }
        } else if (t.kind == TokenKind::Identifier && c.provenance == Provenance::Method) {
            pool.emplace_back(t, env_->identifier(t.text));
        }
    }
    return arg_pool_cache_.emplace(key, std::move(pool)).first->second;
}

GrammarState TokenEngine::replay(const std::vector<Token>& tokens) const {
    return replay_with(tokens, tokens.size(), *env_);
}

GrammarState TokenEngine::advance(const GrammarState& state, const Token& token) const {
    return grammar::advance(state, token, env_.get());
}

std::size_t TokenEngine::completion_cost(const GrammarState& state) const {
    return completion_->cost(state);
}

FilterResult TokenEngine::filter(const GrammarState& state, const std::vector<Candidate>& collected,
                                 std::size_t max_tokens) const {
    FilterResult result;
    if (state.complete()) {
        return result;
    }
    const std::size_t used = state.tokens().size();
    const std::size_t remaining = max_tokens > used ? max_tokens - used : 0;
    const auto legal = grammar::legal_next_kinds(state);
    std::set<std::string> kept;
    for (const auto& c : collected) {
        if (kept.count(c.token.text)) {
            continue;
        }
        const auto slot = detail::slot_of(legal, c.token);
        if (!slot) {
            result.pruned.push_back({c.token, "grammar"});
            continue;
        }
        std::string reason = detail::precheck(*this, state, c.token, *slot);
        if (reason.empty()) {
            const GrammarState after = advance(state, c.token);
            reason = detail::postcheck(*this, state, c.token, *slot, after);
            if (reason.empty()) {
                const std::size_t cost = completion_cost(after);
                if (cost == kInfinite || 1 + cost > remaining) {
                    reason = "R21";
                }
            }
        }
        if (!reason.empty()) {
            result.pruned.push_back({c.token, std::move(reason)});
            continue;
        }
        kept.insert(c.token.text);
        result.kept.candidates.push_back(c);
    }
    std::stable_sort(result.kept.candidates.begin(), result.kept.candidates.end(),
                     [](const Candidate& a, const Candidate& b) {
                         return std::tie(a.provenance, a.order, a.token.text) <
                                std::tie(b.provenance, b.order, b.token.text);
                     });
    return result;
}

FilterResult TokenEngine::candidates(const GrammarState& state, std::size_t max_tokens) const {
    std::vector<Candidate> collected = generic_;
    for (auto& c : specific(state)) {
        collected.push_back(std::move(c));
    }
    return filter(state, collected, max_tokens);
}

ExprType type_of(const GenerationContext& ctx, const std::vector<Token>& partial,
                 std::pair<std::size_t, std::size_t> span) {
    if (span.first >= span.second || span.second > partial.size()) {
        throw ContractViolation("operand span out of range");
    }
    TokenEngine engine(ctx);
    const detail::ContextTypeEnv strict(engine, true);
    const GrammarState state = replay_with(partial, span.second, strict);
    const auto& frames = state.frames();
    for (auto it = frames.rbegin(); it != frames.rend(); ++it) {
        if (it->kind == grammar::FrameKind::Operand && it->begin == span.first) {
            if (!grammar::frame_can_complete(*it)) {
                break;
            }
            return it->type;
        }
    }
    throw ContractViolation("span [" + std::to_string(span.first) + ", " + std::to_string(span.second) +
                            ") is not a completed operand");
}

FilterResult filter(const GenerationContext& ctx, const std::vector<Token>& partial,
                    const std::vector<Candidate>& collected, std::size_t max_tokens) {
    TokenEngine engine(ctx);
    return engine.filter(engine.replay(partial), collected, max_tokens);
}

} // namespace oraclegen
