#pragma once

// Oracle expression language: tokens, AST, canonical rendering and the
// incremental automaton driving candidate filtering. The grammar is written
// out in docs/grammar.md.

#include <cstddef>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "oraclegen/expr_type.hpp"

namespace oraclegen::grammar {

enum class TokenKind {
    Identifier,
    MemberName,
    MethodCallName,
    Reserved,
    Operator,
    Punctuation,
    Literal,
};

std::string_view to_string(TokenKind kind);

struct Token {
    std::string text;
    TokenKind kind = TokenKind::Identifier;

    friend bool operator==(const Token&, const Token&) = default;
};

bool is_reserved_word(std::string_view text);
bool is_operator(std::string_view text);
bool is_binary_operator(std::string_view text);
bool is_relational_operator(std::string_view text);
bool is_equality_operator(std::string_view text);
bool is_comparison_operator(std::string_view text);
bool is_arithmetic_operator(std::string_view text);
bool is_logical_operator(std::string_view text);
bool is_quantifier(std::string_view name);

/// Kind a bare lexeme gets outside any context. Identifiers stay
/// Identifier; callers classify member names themselves.
TokenKind classify_lexeme(std::string_view text);

/// Splits oracle text into tokens. An identifier right after '.' becomes a
/// MethodCallName when followed by '(' and a MemberName otherwise. A '-'
/// directly followed by a digit is part of a negative literal unless the
/// previous token ends an operand. Throws LexicalError.
std::vector<Token> tokenize(std::string_view text);

/// Canonical spacing: one space around binary operators, ", " after commas,
/// nothing else. A trailing binary operator keeps its trailing space.
std::string join_tokens(const std::vector<Token>& tokens);
std::string join_tokens(const std::vector<Token>& tokens, std::size_t begin, std::size_t end);

/// Static type of a literal token (including true/false/null).
ExprType literal_type(const Token& token);

// ---------------------------------------------------------------------------
// AST

/// Owning pointer with deep copy and deep comparison.
template <class T>
class Box {
public:
    Box() = default;
    Box(T value) : ptr_(std::make_unique<T>(std::move(value))) {}
    Box(const Box& other) : ptr_(other.ptr_ ? std::make_unique<T>(*other.ptr_) : nullptr) {}
    Box(Box&&) noexcept = default;
    Box& operator=(const Box& other) {
        if (this != &other) {
            ptr_ = other.ptr_ ? std::make_unique<T>(*other.ptr_) : nullptr;
        }
        return *this;
    }
    Box& operator=(Box&&) noexcept = default;
    ~Box() = default;

    explicit operator bool() const noexcept { return ptr_ != nullptr; }
    const T& operator*() const { return *ptr_; }
    T& operator*() { return *ptr_; }
    const T* operator->() const { return ptr_.get(); }
    T* operator->() { return ptr_.get(); }

    friend bool operator==(const Box& a, const Box& b) {
        if (!a.ptr_ || !b.ptr_) {
            return !a.ptr_ && !b.ptr_;
        }
        return *a.ptr_ == *b.ptr_;
    }

private:
    std::unique_ptr<T> ptr_;
};

struct Expr;

/// `.name`, `.name(args)` or `.quantifier(jdVar -> body)`.
struct Step {
    std::string name;
    bool call = false;
    std::vector<Token> args;
    Box<Expr> lambda;

    friend bool operator==(const Step&, const Step&) = default;
};

struct Operand {
    enum class Form { Access, Literal, Paren };

    Form form = Form::Access;
    /// Head of an access chain or the literal; unused for Paren.
    Token head;
    std::vector<Step> steps;
    Box<Expr> inner;

    friend bool operator==(const Operand&, const Operand&) = default;
};

/// Right-hand side of a comparison: terms joined by arithmetic operators.
struct Arith {
    std::vector<Operand> terms;
    std::vector<std::string> ops;

    friend bool operator==(const Arith&, const Arith&) = default;
};

/// A bare operand (op empty), a comparison, or an instanceof test.
struct Atom {
    Operand left;
    std::string op;
    Arith right;
    std::string class_name;

    friend bool operator==(const Atom&, const Atom&) = default;
};

/// Disjunction of conjunctions.
struct Prop {
    std::vector<std::vector<Atom>> disjuncts;

    friend bool operator==(const Prop&, const Prop&) = default;
};

/// `cond` alone, or `cond ? then : else`.
struct Expr {
    Prop cond;
    Box<Expr> then_branch;
    Box<Expr> else_branch;

    bool guarded() const noexcept { return static_cast<bool>(then_branch); }

    friend bool operator==(const Expr&, const Expr&) = default;
};

struct OracleAst {
    Expr root;

    friend bool operator==(const OracleAst&, const OracleAst&) = default;
};

/// Throws SyntaxError naming the offending token index and the expected
/// kinds; a missing ';' is reported at index tokens.size().
OracleAst parse(const std::vector<Token>& tokens);
OracleAst parse(std::string_view text);

std::vector<Token> flatten(const OracleAst& ast);
std::vector<Token> flatten(const Operand& operand);
std::string render(const OracleAst& ast);

// ---------------------------------------------------------------------------
// Incremental automaton

/// Grammar slot a token fills; refined with types by the token engine.
enum class Slot {
    OperandStart,
    Dot,
    MemberAfterDot,
    CallOpen,
    CallArgument,
    ArgumentComma,
    CallClose,
    LambdaVariable,
    LambdaArrow,
    LambdaClose,
    ParenClose,
    RelationalOp,
    EqualityOp,
    Instanceof,
    InstanceofClass,
    ArithmeticOp,
    LogicalOp,
    TernaryQuestion,
    TernaryColon,
    Terminator,
};

std::string_view to_string(Slot slot);

struct Expectation {
    TokenKind kind;
    Slot slot;

    friend bool operator==(const Expectation&, const Expectation&) = default;
};

/// True when `token` may fill the expectation (kind match plus the fixed
/// spellings of operator and punctuation slots).
bool fits(const Expectation& expectation, const Token& token);

/// Type queries the automaton issues while advancing. Without an
/// environment every identifier and member is typed Unknown.
class TypeEnv {
public:
    virtual ~TypeEnv() = default;
    /// Parameters, class names, `this`, `methodResultID`.
    virtual ExprType identifier(std::string_view name) const = 0;
    virtual ExprType field(const ExprType& receiver, std::string_view name) const = 0;
    virtual ExprType call(const ExprType& receiver, std::string_view name,
                          const std::vector<ExprType>& args) const = 0;
};

enum class FrameKind { Oracle, Expr, Prop, Atom, Arith, Operand };

std::string_view to_string(FrameKind kind);

enum class Phase {
    OracleBody,
    OracleEnd,
    OracleDone,
    ExprCond,
    ExprAfterCond,
    ExprThen,
    ExprAfterThen,
    ExprElse,
    ExprDone,
    PropAtom,
    PropAfterAtom,
    AtomLeft,
    AtomAfterLeft,
    AtomRight,
    AtomClass,
    AtomDone,
    ArithTerm,
    ArithAfterTerm,
    OperandStart,
    OperandAccess,
    OperandLiteral,
    OperandDot,
    OperandCallName,
    OperandArgFirst,
    OperandArgAfter,
    OperandArgNext,
    OperandLambdaOpen,
    OperandLambdaVar,
    OperandLambdaArrow,
    OperandLambdaBody,
    OperandLambdaClose,
    OperandParenBody,
    OperandParenClose,
    OperandParenDone,
};

enum class ExprRole { Top, Paren, Lambda, Then, Else };

enum class OperandForm { None, Name, Reserved, BoolLiteral, Literal, Chain, Paren };

/// One level of the parse stack. Only the fields of the frame's kind are
/// meaningful; spans index into GrammarState::tokens().
struct Frame {
    FrameKind kind = FrameKind::Oracle;
    Phase phase = Phase::OracleBody;
    std::size_t begin = 0;
    std::size_t end = 0;

    // Expr
    ExprRole role = ExprRole::Top;

    // Prop
    std::size_t atoms = 0;

    // Atom
    ExprType left;
    OperandForm left_form = OperandForm::None;
    std::size_t left_begin = 0;
    std::size_t left_end = 0;
    std::string op;
    ExprType right;
    std::size_t right_terms = 0;
    std::size_t right_begin = 0;
    std::size_t right_end = 0;

    // Arith and Operand: type so far
    ExprType type;
    std::size_t terms = 0;
    std::string last_op;

    // Operand
    OperandForm form = OperandForm::None;
    std::size_t steps = 0;
    std::string member;
    ExprType receiver;
    std::vector<ExprType> args;
    ExprType jd_type;

    /// True when the frame waits for a child frame that has not been pushed.
    bool awaits_child() const noexcept;
};

class GrammarState {
public:
    const std::vector<Token>& tokens() const noexcept { return tokens_; }
    const std::vector<Frame>& frames() const noexcept { return frames_; }
    /// Frames completed while consuming the last token, innermost first.
    const std::vector<Frame>& popped() const noexcept { return popped_; }

    /// True after the terminating ';'.
    bool complete() const noexcept;
    /// Open parentheses (grouping and lambda) plus ternary branches.
    std::size_t depth() const noexcept;
    /// Innermost enclosing lambda frame, if any.
    const Frame* enclosing_lambda() const noexcept;
    std::string text() const { return join_tokens(tokens_); }

private:
    friend GrammarState initial_state();
    friend class Automaton;

    std::vector<Token> tokens_;
    std::vector<Frame> frames_;
    std::vector<Frame> popped_;
};

GrammarState initial_state();

/// Throws ContractViolation when `token` fits no legal expectation.
GrammarState advance(const GrammarState& state, const Token& token, const TypeEnv* env = nullptr);

/// Token kinds (with their slot) that may follow; empty once complete.
std::vector<Expectation> legal_next_kinds(const GrammarState& state);

/// Pops the top frame of a copied stack and delivers its result to the
/// parent, as advance does before retrying a token. `end` is the token index
/// the completed frame stops at. Exposed for the completion-cost analysis.
Frame complete_top(std::vector<Frame>& frames, std::size_t end);

/// Frame pushed when `parent` (which awaits a child) receives its first token
/// at index `begin`.
Frame child_frame(const Frame& parent, std::size_t begin);

bool frame_can_complete(const Frame& frame);

/// Result type of a frame that can complete.
ExprType frame_result(const Frame& frame);

} // namespace oraclegen::grammar
