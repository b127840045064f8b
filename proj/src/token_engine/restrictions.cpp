#include <algorithm>

#include "internal.hpp"

namespace oraclegen {

namespace {

using K = ExprType::Kind;
using grammar::Frame;
using grammar::FrameKind;
using grammar::GrammarState;
using grammar::Phase;
using grammar::Slot;
using grammar::Token;
using grammar::TokenKind;

constexpr std::size_t kMaxDepth = 8;

} // namespace

const std::vector<RestrictionDescriptor>& list_restrictions() {
    static const std::vector<RestrictionDescriptor> registry{
        {"R1", "methodResultID is forbidden when the method under test is void or a constructor.",
         "operand start, call argument"},
        {"R2", "methodResultID is forbidden in PRE oracles.", "operand start, call argument"},
        {"R3",
         "instanceof requires a reference or array left operand and a known class name it can be cast to on the "
         "right.",
         "instanceof, instanceof class"},
        {"R4", "Relational operators require numeric operands on both sides.", "relational operator, atom end"},
        {"R5", "Arithmetic operators require numeric operands.", "arithmetic operator, term end"},
        {"R6",
         "== and != require comparable operands; null is legal only against reference or array operands and "
         "unknown-typed operands compare only with null.",
         "equality operator, atom end"},
        {"R7", "'.' may only follow reference, array, class-name or stream operands of known type.", "dot"},
        {"R8", "Member tokens must be accessible members of the receiver type, static ones for class names.",
         "member after dot"},
        {"R9", "this is legal only in instance methods, not in static methods or constructors.",
         "operand start, call argument"},
        {"R10", "jdVar is legal only inside a stream-quantifier body, typed as the stream element.",
         "operand start, call argument"},
        {"R11",
         "Stream quantifiers need a stream receiver obtained from Arrays.stream over an array or stream() over a "
         "collection; a stream is never a value by itself.",
         "member after dot, call argument, operand end"},
        {"R12",
         "Method calls are limited to zero-argument methods and methods whose every parameter accepts an in-scope "
         "identifier or literal of matching category; the arguments must fit an overload by arity and category.",
         "member after dot, call argument, argument comma, call close"},
        {"R13", "A bare top-level true; or false; is forbidden.", "terminator"},
        {"R14", "The two sides of a comparison may not be the same single operand (x == x).", "atom end"},
        {"R15", "The ternary '?' is legal only after the top-level proposition, never nested.",
         "ternary question"},
        {"R16", "An operand standing alone as a proposition must be boolean.", "atom end"},
        {"R17", "Void methods cannot be called inside an oracle.", "member after dot, call close"},
        {"R18", "A class name is only a receiver of static members, never a value.", "operand end"},
        {"R19", "Stream quantifiers may not nest.", "member after dot"},
        {"R20", "Nesting of parentheses, quantifier bodies and ternary branches is at most 8.",
         "operand start, call open, ternary question"},
        {"R21", "A candidate must leave a legal completion within the token budget.", "every slot"},
    };
    return registry;
}

std::string restrictions_markdown() {
    std::string out = "| id | restriction | guards |\n|----|-------------|--------|\n";
    for (const auto& r : list_restrictions()) {
        out += "| " + r.id + " | " + r.description + " | " + r.applicability + " |\n";
    }
    return out;
}

namespace detail {

std::optional<Slot> slot_of(const GrammarState& state, const Token& token) {
    return slot_of(grammar::legal_next_kinds(state), token);
}

std::optional<Slot> slot_of(const std::vector<grammar::Expectation>& legal, const Token& token) {
    for (const auto& e : legal) {
        if (grammar::fits(e, token)) {
            return e.slot;
        }
    }
    return std::nullopt;
}

ExprType token_value_type(const TokenEngine& engine, const GrammarState& state, const Token& token) {
    if (token.kind == TokenKind::Literal || token.text == "true" || token.text == "false" || token.text == "null") {
        return grammar::literal_type(token);
    }
    if (token.text == "jdVar") {
        const Frame* lambda = state.enclosing_lambda();
        return lambda ? lambda->jd_type : ExprType::of(K::Unknown, "jdVar");
    }
    return engine.env().identifier(token.text);
}

std::string precheck(const TokenEngine& engine, const GrammarState& before, const Token& token, Slot slot) {
    const GenerationContext& ctx = engine.context();
    const std::string& s = token.text;
    if (s == "methodResultID" && !ctx.unit->returns_value()) {
        return "R1";
    }
    if (s == "methodResultID" && ctx.type == OracleType::Pre) {
        return "R2";
    }
    if (s == "this" && !ctx.is_instance_method()) {
        return "R9";
    }
    if (s == "jdVar" && slot != Slot::LambdaVariable && !before.enclosing_lambda()) {
        return "R10";
    }
    const Frame& top = before.frames().back();
    switch (slot) {
    case Slot::Dot:
        if (!top.type.has_members() && top.type.kind != K::Stream) {
            return "R7";
        }
        break;
    case Slot::MemberAfterDot: {
        const ExprType& receiver = top.receiver;
        const bool quantifier = grammar::is_quantifier(s);
        if (quantifier != (receiver.kind == K::Stream)) {
            return "R11";
        }
        if (quantifier) {
            if (token.kind != TokenKind::MethodCallName) {
                return "R11";
            }
            if (before.enclosing_lambda()) {
                return "R19";
            }
            break;
        }
        if (token.kind == TokenKind::MemberName) {
            const Members& members = engine.members_of(receiver);
            const bool found = std::any_of(members.fields.begin(), members.fields.end(),
                                           [&](const FieldInfo& f) { return f.name == s; });
            if (!found) {
                return "R8";
            }
            break;
        }
        const auto methods = engine.methods_named(receiver, s);
        if (methods.empty()) {
            return "R8";
        }
        if (std::none_of(methods.begin(), methods.end(), [](const MethodInfo* m) { return m->returns_value(); })) {
            return "R17";
        }
        if (is_arrays_stream(receiver, s)) {
            break;
        }
        const bool satisfiable = std::any_of(methods.begin(), methods.end(), [&](const MethodInfo* m) {
            if (!m->returns_value()) {
                return false;
            }
            for (const auto& p : m->parameters) {
                const ExprType target = ExprType::from(p.type);
                const auto& pool =
                    engine.argument_pool(before.enclosing_lambda() != nullptr,
                                         before.enclosing_lambda() ? before.enclosing_lambda()->jd_type : ExprType{});
                const bool any = std::any_of(pool.begin(), pool.end(), [&](const auto& arg) {
                    return assignable(*engine.context().model, arg.second, target);
                });
                if (!any) {
                    return false;
                }
            }
            return true;
        });
        if (!satisfiable) {
            return "R12";
        }
        break;
    }
    case Slot::CallArgument: {
        const ExprType arg = token_value_type(engine, before, token);
        if (is_arrays_stream(top.receiver, top.member)) {
            if (!top.args.empty() || arg.kind != K::Array) {
                return "R11";
            }
            break;
        }
        std::vector<ExprType> prefix = top.args;
        prefix.push_back(arg);
        if (!overload_prefix_ok(engine, top.receiver, top.member, prefix, false)) {
            return "R12";
        }
        break;
    }
    case Slot::ArgumentComma:
        if (is_arrays_stream(top.receiver, top.member) ||
            !overload_prefix_ok(engine, top.receiver, top.member, top.args, true)) {
            return "R12";
        }
        break;
    case Slot::CallClose: {
        if (is_arrays_stream(top.receiver, top.member)) {
            if (top.args.size() != 1) {
                return "R11";
            }
            break;
        }
        const MethodInfo* m = resolve_overload(engine, top.receiver, top.member, top.args);
        if (!m) {
            return "R12";
        }
        if (!m->returns_value()) {
            return "R17";
        }
        break;
    }
    default:
        break;
    }
    return {};
}

std::string postcheck(const TokenEngine& engine, const GrammarState& before, const Token& token, Slot slot,
                      const GrammarState& after) {
    const ProjectModel& model = *engine.context().model;
    const Frame& top = after.frames().back();
    std::vector<int> hits;

    switch (slot) {
    case Slot::Instanceof:
        if (!top.left.is_object_like()) {
            hits.push_back(3);
        }
        break;
    case Slot::InstanceofClass:
        if (top.right.kind != K::StaticClass ||
            !castable(model, top.left, ExprType::of(K::Reference, top.right.name))) {
            hits.push_back(3);
        }
        break;
    case Slot::RelationalOp:
        if (!top.left.is_numeric()) {
            hits.push_back(4);
        }
        break;
    case Slot::EqualityOp:
        switch (top.left.kind) {
        case K::StaticClass:
        case K::Stream:
        case K::Void:
        case K::None:
            hits.push_back(6);
            break;
        default:
            break;
        }
        break;
    case Slot::ArithmeticOp:
        if (!top.type.is_numeric()) {
            hits.push_back(5);
        }
        break;
    case Slot::TernaryQuestion:
        if (top.kind != FrameKind::Expr || top.role != grammar::ExprRole::Top) {
            hits.push_back(15);
        }
        break;
    case Slot::Terminator:
        if (before.tokens().size() == 1 && (before.tokens()[0].text == "true" || before.tokens()[0].text == "false")) {
            hits.push_back(13);
        }
        break;
    default:
        break;
    }
    (void)token;

    for (const Frame& p : after.popped()) {
        switch (p.kind) {
        case FrameKind::Operand:
            if (p.type.kind == K::StaticClass) {
                hits.push_back(18);
            } else if (p.type.kind == K::Stream) {
                hits.push_back(11);
            } else if (p.type.kind == K::Void) {
                hits.push_back(17);
            }
            break;
        case FrameKind::Arith:
            if (p.terms >= 2 && !p.type.is_numeric()) {
                hits.push_back(5);
            }
            break;
        case FrameKind::Atom:
            if (p.op.empty()) {
                if (!p.left.is_boolean()) {
                    hits.push_back(16);
                }
                break;
            }
            if (p.op == "instanceof") {
                break;
            }
            if (grammar::is_relational_operator(p.op) && !(p.left.is_numeric() && p.right.is_numeric())) {
                hits.push_back(4);
            }
            if (grammar::is_equality_operator(p.op) && !comparable(model, p.left, p.right)) {
                hits.push_back(6);
            }
            if (p.right_terms == 1 &&
                grammar::join_tokens(after.tokens(), p.left_begin, p.left_end) ==
                    grammar::join_tokens(after.tokens(), p.right_begin, p.right_end)) {
                hits.push_back(14);
            }
            break;
        default:
            break;
        }
    }
    if (after.depth() > kMaxDepth) {
        hits.push_back(20);
    }
    if (hits.empty()) {
        return {};
    }
    return "R" + std::to_string(*std::min_element(hits.begin(), hits.end()));
}

} // namespace detail

std::string TokenEngine::violation(const grammar::GrammarState& before, const grammar::Token& token,
                                   const grammar::GrammarState& after) const {
    const auto slot = detail::slot_of(before, token);
    if (!slot) {
        return "grammar";
    }
    std::string id = detail::precheck(*this, before, token, *slot);
    if (id.empty()) {
        id = detail::postcheck(*this, before, token, *slot, after);
    }
    return id;
}

} // namespace oraclegen
