#include <algorithm>

#include "oraclegen/generation.hpp"

namespace oraclegen {

namespace {

using Clock = std::chrono::steady_clock;

OracleResult aborted(std::vector<TraceStep> trace, std::string diagnostic) {
    OracleResult r;
    r.status = OracleStatus::Aborted;
    r.trace = std::move(trace);
    r.diagnostic = std::move(diagnostic);
    return r;
}

const Candidate* find_candidate(const CandidateSet& set, std::string_view text) {
    for (const auto& c : set.candidates) {
        if (c.token.text == text) {
            return &c;
        }
    }
    return nullptr;
}

} // namespace

std::string_view to_string(OracleStatus status) {
    switch (status) {
    case OracleStatus::Generated:
        return "generated";
    case OracleStatus::Declined:
        return "declined";
    case OracleStatus::Aborted:
        return "aborted";
    }
    return "?";
}

std::string BackendGate::evaluate(const PromptBundle& prompt) {
    if (!backend_.serial()) {
        return backend_.evaluate(prompt);
    }
    std::lock_guard lock(mutex_);
    return backend_.evaluate(prompt);
}

std::string BackendGate::select(const PromptBundle& prompt) {
    if (!backend_.serial()) {
        return backend_.select(prompt);
    }
    std::lock_guard lock(mutex_);
    return backend_.select(prompt);
}

bool should_generate(const GenerationContext& ctx, BackendGate& evaluator) {
    const std::string reply = evaluator.evaluate(render_evaluator_prompt(ctx));
    if (reply.rfind(kAssertArm, 0) == 0) {
        return true;
    }
    if (reply.rfind(kNoAssertArm, 0) == 0) {
        return false;
    }
    throw BackendError("invalid evaluator reply '" + reply + "'");
}

OracleResult generate_oracle(const GenerationContext& ctx, BackendGate& evaluator, BackendGate& selector,
                             const GenerationLimits& limits) {
    const auto deadline = Clock::now() + limits.max_time;
    try {
        if (!should_generate(ctx, evaluator)) {
            return {};
        }
    } catch (const BackendUnreachable&) {
        throw;
    } catch (const Error& e) {
        return aborted({}, std::string("evaluator: ") + e.what());
    }

    TokenEngine engine(ctx);
    grammar::GrammarState state = grammar::initial_state();
    std::vector<TraceStep> trace;
    while (!state.complete()) {
        const std::string partial = state.text();
        if (state.tokens().size() >= limits.max_tokens) {
            return aborted(std::move(trace), "token limit " + std::to_string(limits.max_tokens) + " reached at '" +
                                                 partial + "'");
        }
        if (Clock::now() > deadline) {
            return aborted(std::move(trace), "time limit reached at '" + partial + "'");
        }
        const FilterResult filtered = engine.candidates(state, limits.max_tokens);
        if (filtered.kept.empty()) {
            return aborted(std::move(trace), "no legal candidate after '" + partial + "'");
        }
        PromptBundle prompt = render_selector_prompt(engine, state.tokens(), filtered.kept, limits.prompt);
        TraceStep step;
        step.candidate_count = filtered.kept.size();
        step.candidates = filtered.kept.texts();
        step.truncated_lines = prompt.truncated_lines;

        const Candidate* chosen = nullptr;
        try {
            std::string reply = selector.select(prompt);
            chosen = find_candidate(filtered.kept, reply);
            if (!chosen) {
                step.retried = true;
                prompt.fields.reminder = true;
                prompt.rendered = render_prompt(prompt.fields);
                reply = selector.select(prompt);
                chosen = find_candidate(filtered.kept, reply);
                if (!chosen) {
                    return aborted(std::move(trace), "selector chose '" + reply + "' outside the candidate set at '" +
                                                         partial + "'");
                }
            }
        } catch (const BackendUnreachable&) {
            throw;
        } catch (const Error& e) {
            return aborted(std::move(trace), std::string("selector: ") + e.what());
        }
        step.chosen = chosen->token.text;
        trace.push_back(std::move(step));
        state = engine.advance(state, chosen->token);
    }

    OracleResult result;
    result.status = OracleStatus::Generated;
    result.oracle_text = state.text();
    result.trace = std::move(trace);
    grammar::parse(state.tokens());
    return result;
}

std::vector<Attempt> enumerate_attempts(const ClassInfo& owner, const MethodInfo& method, bool free_text) {
    std::vector<Attempt> out;
    bool has_param = false;
    bool has_return = false;
    bool has_throws = false;
    const DocTag* description = nullptr;
    for (const auto& tag : method.tags) {
        switch (tag.kind) {
        case DocTagKind::Param:
            if (!tag.dangling) {
                out.push_back({&owner, &method, OracleType::Pre, tag});
                has_param = true;
            }
            break;
        case DocTagKind::Return:
            if (method.returns_value()) {
                out.push_back({&owner, &method, OracleType::NormalPost, tag});
                has_return = true;
            }
            break;
        case DocTagKind::Throws:
            out.push_back({&owner, &method, OracleType::ExceptPost, tag});
            has_throws = true;
            break;
        case DocTagKind::FreeText:
            description = &tag;
            break;
        }
    }
    if (free_text && description) {
        if (!has_param) {
            out.push_back({&owner, &method, OracleType::Pre, *description});
        }
        if (!has_return && method.returns_value()) {
            out.push_back({&owner, &method, OracleType::NormalPost, *description});
        }
        if (!has_throws) {
            out.push_back({&owner, &method, OracleType::ExceptPost, *description});
        }
    }
    return out;
}

std::vector<Attempt> enumerate_attempts(const ProjectModel& model, bool free_text) {
    std::vector<Attempt> out;
    for (const auto& [qualified, info] : model.classes()) {
        for (const auto& m : info.methods) {
            if (m.visibility == Visibility::Private) {
                continue;
            }
            auto attempts = enumerate_attempts(info, m, free_text);
            out.insert(out.end(), std::make_move_iterator(attempts.begin()), std::make_move_iterator(attempts.end()));
        }
    }
    return out;
}

} // namespace oraclegen
