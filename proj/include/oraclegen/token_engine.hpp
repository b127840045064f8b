#pragma once

// Token collector and token filter. A TokenEngine is bound to one
// GenerationContext; it owns the typing environment, the generic token pool
// and the caches of the completion-cost analysis. Engines are not
// thread-safe; use one per context.

#include <cstddef>
#include <limits>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "oraclegen/code_model.hpp"
#include "oraclegen/error.hpp"
#include "oraclegen/expr_type.hpp"
#include "oraclegen/oracle_grammar.hpp"

namespace oraclegen {

enum class OracleType { Pre, NormalPost, ExceptPost };

std::string_view to_string(OracleType type);
/// Accepts "PRE", "NORMAL_POST", "EXCEPT_POST".
std::optional<OracleType> parse_oracle_type(std::string_view text);
/// Label used by the prompt templates ("Precondition", ...).
std::string_view template_label(OracleType type);

struct GenerationContext {
    const ProjectModel* model = nullptr;
    const ClassInfo* owner = nullptr;
    const MethodInfo* unit = nullptr;
    OracleType type = OracleType::Pre;
    /// Empty for free-text attempts without a tag.
    std::optional<DocTag> tag;
    /// Exception named by the throws tag (EXCEPT_POST only).
    std::string exception_type;

    /// Validates the combination; throws ContractViolation for a
    /// NORMAL_POST context on a void method or a tag of the wrong kind.
    static GenerationContext make(const ProjectModel& model, const ClassInfo& owner, const MethodInfo& unit,
                                  OracleType type, std::optional<DocTag> tag = std::nullopt);

    /// Rendered tag ("@param series the series index") or "".
    std::string tag_text() const;
    bool is_instance_method() const noexcept { return !unit->is_static && !unit->is_constructor; }
    bool result_available() const noexcept { return unit->returns_value() && type != OracleType::Pre; }
};

enum class Provenance { Common, Project, Method, SpecificMember, DocLiteral };

std::string_view to_string(Provenance provenance);

struct Candidate {
    grammar::Token token;
    Provenance provenance = Provenance::Common;
    /// Declaration order inside the provenance group.
    std::size_t order = 0;
};

struct CandidateSet {
    std::vector<Candidate> candidates;

    std::vector<std::string> texts() const;
    bool contains(std::string_view text) const;
    bool empty() const noexcept { return candidates.empty(); }
    std::size_t size() const noexcept { return candidates.size(); }
};

struct PrunedToken {
    grammar::Token token;
    /// Restriction id, or "grammar" for tokens no expectation accepts.
    std::string reason;
};

struct FilterResult {
    CandidateSet kept;
    std::vector<PrunedToken> pruned;

    /// Reason a token text was pruned, or empty when kept or never seen.
    std::string reason_for(std::string_view text) const;
};

struct RestrictionDescriptor {
    std::string id;
    std::string description;
    std::string applicability;
};

/// R1..R15 plus the extensions this implementation needs.
const std::vector<RestrictionDescriptor>& list_restrictions();
std::string restrictions_markdown();

/// Integer, floating and quoted-string literals appearing in doc text.
std::vector<std::string> mine_doc_literals(std::string_view text);

/// Java assignment/invocation conversion between oracle types.
bool assignable(const ProjectModel& model, const ExprType& value, const ExprType& target);
/// Operands that `==`/`!=` may compare.
bool comparable(const ProjectModel& model, const ExprType& a, const ExprType& b);
/// Reference types where one may be cast to the other.
bool castable(const ProjectModel& model, const ExprType& a, const ExprType& b);

namespace detail {
class CompletionModel;
}

class TokenEngine {
public:
    static constexpr std::size_t kInfinite = std::numeric_limits<std::size_t>::max();

    explicit TokenEngine(GenerationContext ctx);
    ~TokenEngine();
    TokenEngine(const TokenEngine&) = delete;
    TokenEngine& operator=(const TokenEngine&) = delete;

    const GenerationContext& context() const noexcept { return ctx_; }
    const grammar::TypeEnv& env() const noexcept { return *env_; }

    /// Typed automaton over `tokens`; throws SyntaxError when a token does not
    /// fit the grammar.
    grammar::GrammarState replay(const std::vector<grammar::Token>& tokens) const;
    grammar::GrammarState advance(const grammar::GrammarState& state, const grammar::Token& token) const;

    const std::vector<Candidate>& generic() const noexcept { return generic_; }
    /// Members of the expression ending at the trailing '.'; empty otherwise.
    std::vector<Candidate> specific(const grammar::GrammarState& state) const;

    /// Grammar legality, restrictions and the token budget. `max_tokens`
    /// bounds the final oracle length including ';'.
    FilterResult filter(const grammar::GrammarState& state, const std::vector<Candidate>& collected,
                        std::size_t max_tokens) const;
    /// collect_generic ∪ collect_specific, then filter.
    FilterResult candidates(const grammar::GrammarState& state, std::size_t max_tokens) const;

    /// Fewest tokens that complete the oracle (';' included), or kInfinite.
    std::size_t completion_cost(const grammar::GrammarState& state) const;

    /// Id of the first restriction that advancing `before` with `token`
    /// (giving `after`) violates; empty when none. Budget (R21) excluded.
    std::string violation(const grammar::GrammarState& before, const grammar::Token& token,
                          const grammar::GrammarState& after) const;

    /// Member lookups shared by typing, restrictions and completion costs.
    const Members& members_of(const ExprType& type) const;
    std::vector<const MethodInfo*> methods_named(const ExprType& receiver, std::string_view name) const;
    /// Argument tokens of the pool usable at the given nesting.
    const std::vector<std::pair<grammar::Token, ExprType>>& argument_pool(bool in_lambda,
                                                                          const ExprType& jd_type) const;

private:
    GenerationContext ctx_;
    std::unique_ptr<grammar::TypeEnv> env_;
    std::vector<Candidate> generic_;
    std::unique_ptr<detail::CompletionModel> completion_;
    mutable std::map<std::string, Members> member_cache_;
    mutable std::map<std::string, std::vector<std::pair<grammar::Token, ExprType>>> arg_pool_cache_;
};

std::vector<Candidate> collect_generic(const GenerationContext& ctx);
/// Precondition: `partial` ends with '.'.
std::vector<Candidate> collect_specific(const GenerationContext& ctx, const std::vector<grammar::Token>& partial);
/// Type of the completed operand spanning tokens [span.first, span.second).
/// Throws TypingError for a member that does not resolve on a known type.
ExprType type_of(const GenerationContext& ctx, const std::vector<grammar::Token>& partial,
                 std::pair<std::size_t, std::size_t> span);
FilterResult filter(const GenerationContext& ctx, const std::vector<grammar::Token>& partial,
                    const std::vector<Candidate>& collected, std::size_t max_tokens = 64);

class TypingError : public Error {
public:
    using Error::Error;
};

} // namespace oraclegen
