#include "oraclegen/error.hpp"
#include "oraclegen/oracle_grammar.hpp"

namespace oraclegen::grammar {

namespace {

using K = ExprType::Kind;

const std::vector<Expectation>& operand_start() {
    static const std::vector<Expectation> start{
        {TokenKind::Identifier, Slot::OperandStart},
        {TokenKind::Reserved, Slot::OperandStart},
        {TokenKind::Literal, Slot::OperandStart},
        {TokenKind::Punctuation, Slot::OperandStart},
    };
    return start;
}

const std::vector<Expectation>& call_argument() {
    static const std::vector<Expectation> arg{
        {TokenKind::Identifier, Slot::CallArgument},
        {TokenKind::Reserved, Slot::CallArgument},
        {TokenKind::Literal, Slot::CallArgument},
    };
    return arg;
}

Frame make_frame(FrameKind kind, Phase phase, std::size_t begin) {
    Frame f;
    f.kind = kind;
    f.phase = phase;
    f.begin = begin;
    return f;
}

bool bool_capable(OperandForm form) {
    return form == OperandForm::BoolLiteral || form == OperandForm::Chain || form == OperandForm::Paren;
}

ExprType promote(const ExprType& a, const ExprType& b) {
    if (!a.is_numeric() || !b.is_numeric()) {
        return ExprType::of(K::Unknown);
    }
    auto has = [&](std::string_view n) { return a.name == n || b.name == n; };
    if (has("double")) {
        return ExprType::of(K::Floating, "double");
    }
    if (has("float")) {
        return ExprType::of(K::Floating, "float");
    }
    if (has("long")) {
        return ExprType::of(K::Integral, "long");
    }
    return ExprType::of(K::Integral, "int");
}

ExprType jd_var_type(const std::vector<Frame>& frames) {
    for (auto it = frames.rbegin(); it != frames.rend(); ++it) {
        if (it->kind == FrameKind::Operand && it->phase == Phase::OperandLambdaBody) {
            return it->jd_type;
        }
    }
    return ExprType::of(K::Unknown, "jdVar");
}

ExprType value_type(const Token& token, const std::vector<Frame>& frames, const TypeEnv* env) {
    if (token.kind == TokenKind::Literal || token.text == "true" || token.text == "false" ||
        token.text == "null") {
        return literal_type(token);
    }
    if (token.text == "jdVar") {
        return jd_var_type(frames);
    }
    return env ? env->identifier(token.text) : ExprType::of(K::Unknown, token.text);
}

std::vector<Expectation> own_expectations(const Frame& f) {
    switch (f.phase) {
    case Phase::OracleEnd:
        return {{TokenKind::Punctuation, Slot::Terminator}};
    case Phase::ExprAfterCond:
        return {{TokenKind::Operator, Slot::TernaryQuestion}};
    case Phase::ExprAfterThen:
        return {{TokenKind::Operator, Slot::TernaryColon}};
    case Phase::PropAfterAtom:
        return {{TokenKind::Operator, Slot::LogicalOp}};
    case Phase::AtomAfterLeft:
        return {{TokenKind::Operator, Slot::RelationalOp},
                {TokenKind::Operator, Slot::EqualityOp},
                {TokenKind::Operator, Slot::Instanceof}};
    case Phase::AtomClass:
        return {{TokenKind::Identifier, Slot::InstanceofClass}};
    case Phase::ArithAfterTerm:
        return {{TokenKind::Operator, Slot::ArithmeticOp}};
    case Phase::OperandStart:
        return operand_start();
    case Phase::OperandAccess:
        return {{TokenKind::Punctuation, Slot::Dot}};
    case Phase::OperandDot:
        return {{TokenKind::MemberName, Slot::MemberAfterDot}, {TokenKind::MethodCallName, Slot::MemberAfterDot}};
    case Phase::OperandCallName:
    case Phase::OperandLambdaOpen:
        return {{TokenKind::Punctuation, Slot::CallOpen}};
    case Phase::OperandArgFirst: {
        auto out = call_argument();
        out.push_back({TokenKind::Punctuation, Slot::CallClose});
        return out;
    }
    case Phase::OperandArgAfter:
        return {{TokenKind::Punctuation, Slot::ArgumentComma}, {TokenKind::Punctuation, Slot::CallClose}};
    case Phase::OperandArgNext:
        return call_argument();
    case Phase::OperandLambdaVar:
        return {{TokenKind::Reserved, Slot::LambdaVariable}};
    case Phase::OperandLambdaArrow:
        return {{TokenKind::Operator, Slot::LambdaArrow}};
    case Phase::OperandLambdaClose:
        return {{TokenKind::Punctuation, Slot::LambdaClose}};
    case Phase::OperandParenClose:
        return {{TokenKind::Punctuation, Slot::ParenClose}};
    default:
        return {};
    }
}

bool fits_any(const std::vector<Expectation>& expectations, const Token& token, Slot* slot) {
    for (const auto& e : expectations) {
        if (fits(e, token)) {
            *slot = e.slot;
            return true;
        }
    }
    return false;
}

/// Applies `token` to the top frame; false when the frame does not take it.
bool consume(std::vector<Frame>& frames, const Token& token, std::size_t index, const TypeEnv* env) {
    Frame& f = frames.back();
    Slot slot{};
    if (!fits_any(own_expectations(f), token, &slot)) {
        return false;
    }
    const std::string& s = token.text;
    switch (f.phase) {
    case Phase::OracleEnd:
        f.phase = Phase::OracleDone;
        break;
    case Phase::ExprAfterCond:
        f.phase = Phase::ExprThen;
        break;
    case Phase::ExprAfterThen:
        f.phase = Phase::ExprElse;
        break;
    case Phase::PropAfterAtom:
        f.last_op = s;
        f.phase = Phase::PropAtom;
        break;
    case Phase::AtomAfterLeft:
        f.op = s;
        f.phase = s == "instanceof" ? Phase::AtomClass : Phase::AtomRight;
        break;
    case Phase::AtomClass:
        f.right = env ? env->identifier(s) : ExprType::of(K::Unknown, s);
        f.right_begin = index;
        f.right_end = index + 1;
        f.phase = Phase::AtomDone;
        break;
    case Phase::ArithAfterTerm:
        f.last_op = s;
        f.phase = Phase::ArithTerm;
        break;
    case Phase::OperandStart:
        if (s == "(") {
            f.form = OperandForm::Paren;
            f.phase = Phase::OperandParenBody;
        } else if (token.kind == TokenKind::Literal || s == "null") {
            f.form = OperandForm::Literal;
            f.type = literal_type(token);
            f.phase = Phase::OperandLiteral;
        } else if (s == "true" || s == "false") {
            f.form = OperandForm::BoolLiteral;
            f.type = literal_type(token);
            f.phase = Phase::OperandLiteral;
        } else {
            f.form = token.kind == TokenKind::Reserved ? OperandForm::Reserved : OperandForm::Name;
            f.type = value_type(token, frames, env);
            f.phase = Phase::OperandAccess;
        }
        break;
    case Phase::OperandAccess:
        f.receiver = f.type;
        f.phase = Phase::OperandDot;
        break;
    case Phase::OperandDot:
        f.member = s;
        f.args.clear();
        if (token.kind == TokenKind::MethodCallName) {
            f.phase = is_quantifier(s) ? Phase::OperandLambdaOpen : Phase::OperandCallName;
        } else {
            f.type = env ? env->field(f.receiver, s) : ExprType::of(K::Unknown, s);
            f.form = OperandForm::Chain;
            ++f.steps;
            f.phase = Phase::OperandAccess;
        }
        break;
    case Phase::OperandCallName:
        f.args.clear();
        f.phase = Phase::OperandArgFirst;
        break;
    case Phase::OperandArgFirst:
    case Phase::OperandArgAfter:
    case Phase::OperandArgNext:
        if (slot == Slot::CallClose) {
            f.type = env ? env->call(f.receiver, f.member, f.args) : ExprType::of(K::Unknown, f.member);
            f.form = OperandForm::Chain;
            ++f.steps;
            f.phase = Phase::OperandAccess;
        } else if (slot == Slot::ArgumentComma) {
            f.phase = Phase::OperandArgNext;
        } else {
            ExprType arg = value_type(token, frames, env);
            frames.back().args.push_back(std::move(arg));
            frames.back().phase = Phase::OperandArgAfter;
        }
        break;
    case Phase::OperandLambdaOpen:
        f.phase = Phase::OperandLambdaVar;
        break;
    case Phase::OperandLambdaVar:
        f.jd_type = f.receiver.kind == K::Stream && f.receiver.element ? *f.receiver.element
                                                                        : ExprType::of(K::Unknown, "jdVar");
        f.phase = Phase::OperandLambdaArrow;
        break;
    case Phase::OperandLambdaArrow:
        f.phase = Phase::OperandLambdaBody;
        break;
    case Phase::OperandLambdaClose:
        f.type = ExprType::of(K::Boolean, "boolean");
        f.form = OperandForm::Chain;
        ++f.steps;
        f.phase = Phase::OperandAccess;
        break;
    case Phase::OperandParenClose:
        f.type = ExprType::of(K::Proposition);
        f.phase = Phase::OperandParenDone;
        break;
    default:
        return false;
    }
    return true;
}

void deliver(Frame& parent, const Frame& child) {
    const ExprType result = frame_result(child);
    switch (parent.phase) {
    case Phase::OracleBody:
        parent.phase = Phase::OracleEnd;
        break;
    case Phase::ExprCond:
        parent.phase = Phase::ExprAfterCond;
        break;
    case Phase::ExprThen:
        parent.phase = Phase::ExprAfterThen;
        break;
    case Phase::ExprElse:
        parent.phase = Phase::ExprDone;
        break;
    case Phase::PropAtom:
        ++parent.atoms;
        parent.phase = Phase::PropAfterAtom;
        break;
    case Phase::AtomLeft:
        parent.left = result;
        parent.left_form = child.form;
        parent.left_begin = child.begin;
        parent.left_end = child.end;
        parent.phase = Phase::AtomAfterLeft;
        break;
    case Phase::AtomRight:
        parent.right = result;
        parent.right_terms = child.terms;
        parent.right_begin = child.begin;
        parent.right_end = child.end;
        parent.phase = Phase::AtomDone;
        break;
    case Phase::ArithTerm:
        parent.type = parent.terms == 0 ? result : promote(parent.type, result);
        ++parent.terms;
        parent.phase = Phase::ArithAfterTerm;
        break;
    case Phase::OperandLambdaBody:
        parent.phase = Phase::OperandLambdaClose;
        break;
    case Phase::OperandParenBody:
        parent.phase = Phase::OperandParenClose;
        break;
    default:
        throw ContractViolation("frame cannot receive a completed child");
    }
}

std::string describe(const std::vector<Expectation>& expectations) {
    std::string out;
    for (const auto& e : expectations) {
        std::string item = std::string(to_string(e.kind)) + " (" + std::string(to_string(e.slot)) + ")";
        if (out.find(item) != std::string::npos) {
            continue;
        }
        if (!out.empty()) {
            out += ", ";
        }
        out += item;
    }
    return out.empty() ? "end of oracle" : out;
}

} // namespace

std::string_view to_string(Slot slot) {
    switch (slot) {
    case Slot::OperandStart:
        return "operand start";
    case Slot::Dot:
        return "dot";
    case Slot::MemberAfterDot:
        return "member after dot";
    case Slot::CallOpen:
        return "call open";
    case Slot::CallArgument:
        return "call argument";
    case Slot::ArgumentComma:
        return "argument comma";
    case Slot::CallClose:
        return "call close";
    case Slot::LambdaVariable:
        return "lambda variable";
    case Slot::LambdaArrow:
        return "lambda arrow";
    case Slot::LambdaClose:
        return "lambda close";
    case Slot::ParenClose:
        return "paren close";
    case Slot::RelationalOp:
        return "relational operator";
    case Slot::EqualityOp:
        return "equality operator";
    case Slot::Instanceof:
        return "instanceof";
    case Slot::InstanceofClass:
        return "instanceof class";
    case Slot::ArithmeticOp:
        return "arithmetic operator";
    case Slot::LogicalOp:
        return "logical operator";
    case Slot::TernaryQuestion:
        return "ternary question";
    case Slot::TernaryColon:
        return "ternary colon";
    case Slot::Terminator:
        return "terminator";
    }
    return "operand start";
}

std::string_view to_string(FrameKind kind) {
    switch (kind) {
    case FrameKind::Oracle:
        return "oracle";
    case FrameKind::Expr:
        return "expr";
    case FrameKind::Prop:
        return "prop";
    case FrameKind::Atom:
        return "atom";
    case FrameKind::Arith:
        return "arith";
    case FrameKind::Operand:
        return "operand";
    }
    return "oracle";
}

bool fits(const Expectation& e, const Token& token) {
    if (e.kind != token.kind) {
        return false;
    }
    const std::string& s = token.text;
    switch (e.slot) {
    case Slot::OperandStart:
        return token.kind != TokenKind::Punctuation || s == "(";
    case Slot::Dot:
        return s == ".";
    case Slot::CallOpen:
        return s == "(";
    case Slot::ArgumentComma:
        return s == ",";
    case Slot::CallClose:
    case Slot::LambdaClose:
    case Slot::ParenClose:
        return s == ")";
    case Slot::LambdaVariable:
        return s == "jdVar";
    case Slot::LambdaArrow:
        return s == "->";
    case Slot::RelationalOp:
        return is_relational_operator(s);
    case Slot::EqualityOp:
        return is_equality_operator(s);
    case Slot::Instanceof:
        return s == "instanceof";
    case Slot::ArithmeticOp:
        return is_arithmetic_operator(s);
    case Slot::LogicalOp:
        return is_logical_operator(s);
    case Slot::TernaryQuestion:
        return s == "?";
    case Slot::TernaryColon:
        return s == ":";
    case Slot::Terminator:
        return s == ";";
    case Slot::CallArgument:
    case Slot::MemberAfterDot:
    case Slot::InstanceofClass:
        return true;
    }
    return false;
}

bool Frame::awaits_child() const noexcept {
    switch (phase) {
    case Phase::OracleBody:
    case Phase::ExprCond:
    case Phase::ExprThen:
    case Phase::ExprElse:
    case Phase::PropAtom:
    case Phase::AtomLeft:
    case Phase::AtomRight:
    case Phase::ArithTerm:
    case Phase::OperandLambdaBody:
    case Phase::OperandParenBody:
        return true;
    default:
        return false;
    }
}

bool frame_can_complete(const Frame& f) {
    switch (f.phase) {
    case Phase::ExprAfterCond:
    case Phase::ExprDone:
    case Phase::PropAfterAtom:
    case Phase::AtomDone:
    case Phase::ArithAfterTerm:
    case Phase::OperandAccess:
    case Phase::OperandLiteral:
    case Phase::OperandParenDone:
        return true;
    case Phase::AtomAfterLeft:
        return bool_capable(f.left_form);
    default:
        return false;
    }
}

ExprType frame_result(const Frame& f) {
    switch (f.kind) {
    case FrameKind::Operand:
    case FrameKind::Arith:
        return f.type;
    default:
        return ExprType::of(K::Proposition);
    }
}

Frame child_frame(const Frame& parent, std::size_t begin) {
    switch (parent.phase) {
    case Phase::OracleBody: {
        Frame f = make_frame(FrameKind::Expr, Phase::ExprCond, begin);
        f.role = ExprRole::Top;
        return f;
    }
    case Phase::ExprCond:
        return make_frame(FrameKind::Prop, Phase::PropAtom, begin);
    case Phase::ExprThen:
    case Phase::ExprElse: {
        Frame f = make_frame(FrameKind::Expr, Phase::ExprCond, begin);
        f.role = parent.phase == Phase::ExprThen ? ExprRole::Then : ExprRole::Else;
        return f;
    }
    case Phase::PropAtom:
        return make_frame(FrameKind::Atom, Phase::AtomLeft, begin);
    case Phase::AtomLeft:
    case Phase::ArithTerm:
        return make_frame(FrameKind::Operand, Phase::OperandStart, begin);
    case Phase::AtomRight:
        return make_frame(FrameKind::Arith, Phase::ArithTerm, begin);
    case Phase::OperandLambdaBody:
    case Phase::OperandParenBody: {
        Frame f = make_frame(FrameKind::Expr, Phase::ExprCond, begin);
        f.role = parent.phase == Phase::OperandLambdaBody ? ExprRole::Lambda : ExprRole::Paren;
        return f;
    }
    default:
        throw ContractViolation("frame does not await a child");
    }
}

Frame complete_top(std::vector<Frame>& frames, std::size_t end) {
    if (frames.size() < 2 || !frame_can_complete(frames.back())) {
        throw ContractViolation("top frame cannot complete");
    }
    Frame child = std::move(frames.back());
    frames.pop_back();
    child.end = end;
    deliver(frames.back(), child);
    return child;
}

bool GrammarState::complete() const noexcept {
    return !frames_.empty() && frames_.front().phase == Phase::OracleDone;
}

std::size_t GrammarState::depth() const noexcept {
    std::size_t depth = 0;
    for (const auto& f : frames_) {
        switch (f.phase) {
        case Phase::OperandLambdaVar:
        case Phase::OperandLambdaArrow:
        case Phase::OperandLambdaBody:
        case Phase::OperandLambdaClose:
        case Phase::OperandParenBody:
        case Phase::OperandParenClose:
        case Phase::ExprThen:
        case Phase::ExprAfterThen:
        case Phase::ExprElse:
            ++depth;
            break;
        default:
            break;
        }
    }
    return depth;
}

const Frame* GrammarState::enclosing_lambda() const noexcept {
    for (auto it = frames_.rbegin(); it != frames_.rend(); ++it) {
        if (it->kind == FrameKind::Operand && it->phase == Phase::OperandLambdaBody) {
            return &*it;
        }
    }
    return nullptr;
}

GrammarState initial_state() {
    GrammarState s;
    s.frames_.push_back(make_frame(FrameKind::Oracle, Phase::OracleBody, 0));
    return s;
}

class Automaton {
public:
    static GrammarState step(const GrammarState& state, const Token& token, const TypeEnv* env) {
        GrammarState out;
        out.tokens_ = state.tokens_;
        out.frames_ = state.frames_;
        const std::size_t index = out.tokens_.size();
        auto& frames = out.frames_;
        while (true) {
            if (frames.back().awaits_child()) {
                frames.push_back(child_frame(frames.back(), index));
                continue;
            }
            if (consume(frames, token, index, env)) {
                break;
            }
            if (frames.size() > 1 && frame_can_complete(frames.back())) {
                out.popped_.push_back(complete_top(frames, index));
                continue;
            }
            throw ContractViolation("token '" + token.text + "' (" + std::string(to_string(token.kind)) +
                                    ") is not legal here; expected " + describe(legal_next_kinds(state)));
        }
        out.tokens_.push_back(token);
        return out;
    }
};

GrammarState advance(const GrammarState& state, const Token& token, const TypeEnv* env) {
    if (state.complete()) {
        throw ContractViolation("oracle already complete");
    }
    return Automaton::step(state, token, env);
}

std::vector<Expectation> legal_next_kinds(const GrammarState& state) {
    std::vector<Expectation> out;
    if (state.complete()) {
        return out;
    }
    std::vector<Frame> frames = state.frames();
    const std::size_t index = state.tokens().size();
    while (true) {
        const Frame& top = frames.back();
        if (top.awaits_child()) {
            for (const auto& e : operand_start()) {
                out.push_back(e);
            }
            break;
        }
        for (const auto& e : own_expectations(top)) {
            out.push_back(e);
        }
        if (frames.size() > 1 && frame_can_complete(top)) {
            complete_top(frames, index);
            continue;
        }
        break;
    }
    return out;
}

} // namespace oraclegen::grammar
