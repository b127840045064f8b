#pragma once

// Token-by-token oracle generation: prompt rendering, backends and the
// evaluator/selector loop.

#include <chrono>
#include <cstddef>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "oraclegen/error.hpp"
#include "oraclegen/token_engine.hpp"

namespace oraclegen {

inline constexpr std::string_view kAssertArm = "assertTrue(";
inline constexpr std::string_view kNoAssertArm = "// No assertion possible";
inline constexpr std::string_view kFillMarker = "<FILL_ME>";
inline constexpr std::string_view kChooseReminder = "// Choose exactly one token from the list of next possible tokens.";

struct PromptLimits {
    /// Lines of "Additional context" kept before tail-drop.
    std::size_t context_lines = 40;
    /// Whole-prompt character budget; the additional context is dropped
    /// from the tail until the prompt fits.
    std::size_t max_chars = 8000;
};

enum class PromptKind { Evaluator, Selector };

/// Everything a prompt is rendered from. Identity fields (class, method,
/// parameters, position) are not part of the prompt text; backends use them
/// to key replies.
struct PromptFields {
    PromptKind kind = PromptKind::Evaluator;
    OracleType oracle_type = OracleType::Pre;
    std::string tag_text;
    std::vector<std::string> candidates;
    std::string partial_text;
    std::string method_doc;
    std::string method_source;
    std::vector<std::string> context_snippets;
    bool reminder = false;

    std::string class_name;
    std::string method_signature;
    std::vector<std::string> parameters;
    std::size_t position = 0;
};

struct PromptBundle {
    std::string rendered;
    PromptFields fields;
    /// Context lines dropped by the budget.
    std::size_t truncated_lines = 0;
};

/// Deterministic rendering of the Listing-1/Listing-2 layouts.
std::string render_prompt(const PromptFields& fields);

PromptBundle render_evaluator_prompt(const GenerationContext& ctx);
PromptBundle render_selector_prompt(const GenerationContext& ctx, const std::vector<grammar::Token>& partial,
                                    const CandidateSet& candidates, const PromptLimits& limits = {});
PromptBundle render_selector_prompt(const TokenEngine& engine, const std::vector<grammar::Token>& partial,
                                    const CandidateSet& candidates, const PromptLimits& limits = {});

/// Signature or declaration line shown for a member or class token.
std::vector<std::string> context_lines_for(const GenerationContext& ctx, const std::vector<grammar::Token>& partial,
                                           const CandidateSet& candidates);
std::vector<std::string> context_lines_for(const TokenEngine& engine, const std::vector<grammar::Token>& partial,
                                           const CandidateSet& candidates);

/// JSON object with every PromptFields entry (the wire "meta").
std::string prompt_meta_json(const PromptFields& fields);
PromptFields prompt_fields_from_json(std::string_view json);

class BackendError : public Error {
public:
    using Error::Error;
};

/// Transport failure after all retries; generation cannot continue.
class BackendUnreachable : public BackendError {
public:
    using BackendError::BackendError;
};

/// Oracle Evaluator and Token Selector behind one interface. `evaluate`
/// answers one of the two arms, `select` one candidate text; neither is
/// trusted by the caller.
class Backend {
public:
    virtual ~Backend() = default;
    virtual std::string evaluate(const PromptBundle& prompt) = 0;
    virtual std::string select(const PromptBundle& prompt) = 0;
    /// Serial backends get their calls queued by a mutex.
    virtual bool serial() const { return true; }
    virtual std::string describe() const = 0;
};

/// Replays a fixed token list with a cursor; `evaluate` answers
/// `evaluator_reply` without consuming the script.
std::unique_ptr<Backend> scripted_backend(std::vector<std::string> script,
                                          std::string evaluator_reply = std::string(kAssertArm));

/// Answers from a table keyed by (class, method signature, oracle type, tag
/// text). An entry with no oracle declines; selection returns the expected
/// token at the prompt's position.
struct KeyedAnswer {
    std::string class_name;
    std::string method_signature;
    OracleType oracle_type = OracleType::Pre;
    std::string tag_text;
    std::optional<std::string> oracle;
};

std::string answer_key(std::string_view class_name, std::string_view method_signature, OracleType type,
                       std::string_view tag_text);
std::unique_ptr<Backend> keyed_backend(std::vector<KeyedAnswer> answers);
/// Reads JSONL with className, methodSignature, oracleType, tagText and
/// either expectedOracle ("NONE" declines) or oracleText ("" declines).
std::vector<KeyedAnswer> load_keyed_answers(const std::string& path);

struct HeuristicOptions {
    /// Render preconditions as "(cond) == false;".
    bool negate = false;
};

/// Rule list:
///   1. @param tag saying "must not be null", "not null" or "non-null":
///      "(p == null) == false;".
///   2. @param tag saying "(zero based)", "zero-based" or "non-negative":
///      "p >= 0;", or "(p >= 0) == false;" with `negate`.
///   3. @throws tag mentioning null: "p == null;" for the parameter named in
///      the text, or the only reference parameter.
/// Anything else declines.
std::unique_ptr<Backend> heuristic_backend(HeuristicOptions options = {});
/// Oracle text the heuristic rules produce for a prompt, if any.
std::optional<std::string> heuristic_oracle(const PromptFields& fields, const HeuristicOptions& options);

struct RemoteOptions {
    std::string url;
    std::chrono::milliseconds timeout{5000};
    int retries = 1;
};

std::unique_ptr<Backend> remote_backend(RemoteOptions options);

struct BackendSpec {
    enum class Kind { Scripted, Heuristic, Remote };
    Kind kind = Kind::Heuristic;
    std::string script_path;
    HeuristicOptions heuristic;
    RemoteOptions remote;

    /// "scripted:<file>", "heuristic", "heuristic:negate", "remote:<url>".
    static BackendSpec parse(std::string_view text);
    std::string to_string() const;
};

std::unique_ptr<Backend> make_backend(const BackendSpec& spec);

struct GenerationLimits {
    std::size_t max_tokens = 64;
    std::chrono::milliseconds max_time{60000};
    PromptLimits prompt;
};

enum class OracleStatus { Generated, Declined, Aborted };

std::string_view to_string(OracleStatus status);

struct TraceStep {
    std::size_t candidate_count = 0;
    std::vector<std::string> candidates;
    std::string chosen;
    std::size_t truncated_lines = 0;
    bool retried = false;
};

struct OracleResult {
    OracleStatus status = OracleStatus::Declined;
    std::string oracle_text;
    std::vector<TraceStep> trace;
    std::string diagnostic;
};

/// Serializes calls into a serial backend.
class BackendGate {
public:
    explicit BackendGate(Backend& backend) : backend_(backend) {}
    std::string evaluate(const PromptBundle& prompt);
    std::string select(const PromptBundle& prompt);
    Backend& backend() noexcept { return backend_; }

private:
    Backend& backend_;
    std::mutex mutex_;
};

/// True for the 'assertTrue(' arm, false for the decline arm; anything else
/// raises BackendError("invalid evaluator reply").
bool should_generate(const GenerationContext& ctx, BackendGate& evaluator);

/// Backend errors abort the attempt, except BackendUnreachable which
/// propagates.
OracleResult generate_oracle(const GenerationContext& ctx, BackendGate& evaluator, BackendGate& selector,
                             const GenerationLimits& limits = {});

/// One generation attempt of a method: one per @param (PRE), @return
/// (NORMAL_POST) and @throws/@exception (EXCEPT_POST) tag, plus a free-text
/// attempt per oracle type whose tag class is absent when enabled.
struct Attempt {
    const ClassInfo* owner = nullptr;
    const MethodInfo* method = nullptr;
    OracleType type = OracleType::Pre;
    std::optional<DocTag> tag;
};

std::vector<Attempt> enumerate_attempts(const ProjectModel& model, bool free_text);
std::vector<Attempt> enumerate_attempts(const ClassInfo& owner, const MethodInfo& method, bool free_text);

} // namespace oraclegen
