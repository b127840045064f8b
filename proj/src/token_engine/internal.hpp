#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "oraclegen/token_engine.hpp"

namespace oraclegen::detail {

using grammar::Frame;
using grammar::GrammarState;
using grammar::Token;

ExprType int_type();
ExprType boolean_type();
ExprType promote(const ExprType& a, const ExprType& b);
bool completable(const ExprType& type);
bool bool_capable(grammar::OperandForm form);
bool is_arrays_stream(const ExprType& receiver, std::string_view member);

/// Typing environment over a GenerationContext. In strict mode a member
/// that does not exist on a known receiver raises TypingError.
class ContextTypeEnv : public grammar::TypeEnv {
public:
    ContextTypeEnv(const TokenEngine& engine, bool strict) : engine_(engine), strict_(strict) {}

    ExprType identifier(std::string_view name) const override;
    ExprType field(const ExprType& receiver, std::string_view name) const override;
    ExprType call(const ExprType& receiver, std::string_view name, const std::vector<ExprType>& args) const override;

private:
    const TokenEngine& engine_;
    bool strict_;
};

/// First overload (declaration order) whose arity equals args.size() and
/// whose parameters accept the arguments.
const MethodInfo* resolve_overload(const TokenEngine& engine, const ExprType& receiver, std::string_view name,
                                   const std::vector<ExprType>& args);

/// True when some non-void overload accepts `prefix` as its leading
/// arguments; `need_more` asks for an arity above prefix.size().
bool overload_prefix_ok(const TokenEngine& engine, const ExprType& receiver, std::string_view name,
                        const std::vector<ExprType>& prefix, bool need_more);

/// Restriction checks split around advancing: `precheck` needs only the
/// state before the token, `postcheck` inspects the state after it. Both
/// return the violated restriction id or "".
std::string precheck(const TokenEngine& engine, const GrammarState& before, const Token& token, grammar::Slot slot);
std::string postcheck(const TokenEngine& engine, const GrammarState& before, const Token& token, grammar::Slot slot,
                      const GrammarState& after);
/// Slot the token fills in `state`, or nullopt when no expectation fits.
std::optional<grammar::Slot> slot_of(const GrammarState& state, const Token& token);
std::optional<grammar::Slot> slot_of(const std::vector<grammar::Expectation>& legal, const Token& token);
/// Type of a call argument or operand head token in `state`.
ExprType token_value_type(const TokenEngine& engine, const GrammarState& state, const Token& token);

/// Fewest tokens needed to complete a partial oracle without violating any
/// restriction. Costs are exact for the witness shapes it explores and an
/// upper bound otherwise, so a finite cost always has a legal completion.
class CompletionModel {
public:
    static constexpr std::size_t kInf = TokenEngine::kInfinite;

    explicit CompletionModel(const TokenEngine& engine);

    std::size_t cost(const GrammarState& state);

    struct Ctx {
        bool in_lambda = false;
        ExprType jd;
        std::size_t depth = 0;
        std::string key() const;
    };

    struct Option {
        ExprType type;
        grammar::OperandForm form = grammar::OperandForm::None;
        std::size_t cost = 0;
        std::string text;
    };

    struct Witness {
        std::size_t cost = kInf;
        std::string text;
    };

    struct Reach {
        ExprType type;
        std::size_t cost = 0;
        std::string suffix;
    };

    const std::vector<Option>& fresh_operands(const Ctx& ctx);
    Witness fresh_right(const Ctx& ctx, const ExprType& left, const std::string& left_text, bool relational);
    Witness fresh_expr(const Ctx& ctx, bool top);
    const std::vector<Reach>& reach(const ExprType& type);

    /// Canonical argument for a parameter, or nullptr.
    const std::pair<Token, ExprType>* canonical_argument(const ExprType& param, bool array_any);

private:
    struct Info {
        ExprType type;
        grammar::OperandForm form = grammar::OperandForm::None;
        std::string text;
        std::size_t terms = 1;
        bool single_literal = false;
        /// Token index where the delivered child starts.
        std::size_t begin = 0;
    };

    std::size_t finish(std::size_t i);
    std::size_t up(std::size_t i, const Info& info);
    std::size_t arith_after(std::size_t i, const ExprType& type, std::size_t terms, const std::string& text);
    std::size_t atom_with_left(std::size_t i, const ExprType& left, grammar::OperandForm form,
                               const std::string& left_text);
    std::string prefix(const Frame& parent, const Info& child) const;
    bool single_bool_literal(std::size_t begin) const;
    std::vector<Option> operand_results(std::size_t i);
    void from_type(const ExprType& type, grammar::OperandForm form, const std::string& text, std::size_t base,
                   const Ctx& ctx, std::vector<Option>& out);
    void add_quantifier(const ExprType& stream, const std::string& text, std::size_t base, const Ctx& ctx,
                        std::vector<Option>& out, bool need_dot);
    void call_results(const ExprType& receiver, const std::string& member, const std::vector<ExprType>& given,
                      grammar::Phase phase, const std::string& text, std::size_t base, const Ctx& ctx,
                      std::vector<Option>& out);
    Ctx ctx_at(std::size_t i) const;
    std::string real_text(std::size_t begin) const;
    bool castable_class_exists(const ExprType& left);

    const TokenEngine& engine_;
    // Current state while computing cost().
    const std::vector<Frame>* frames_ = nullptr;
    const std::vector<Token>* tokens_ = nullptr;

    std::map<std::string, std::vector<Option>> fresh_cache_;
    std::map<std::string, std::vector<Witness>> right_cache_;
    std::map<std::string, Witness> expr_cache_;
    std::map<std::string, std::vector<Reach>> reach_cache_;
    std::map<std::string, std::optional<std::pair<Token, ExprType>>> arg_cache_;
    std::map<std::string, bool> instanceof_cache_;
};

} // namespace oraclegen::detail
