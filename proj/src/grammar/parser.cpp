#include "oraclegen/error.hpp"
#include "oraclegen/oracle_grammar.hpp"

namespace oraclegen::grammar {

namespace {

std::string expected_text(const GrammarState& state) {
    std::string out;
    for (const auto& e : legal_next_kinds(state)) {
        std::string item = std::string(to_string(e.kind)) + " (" + std::string(to_string(e.slot)) + ")";
        if (out.find(item) != std::string::npos) {
            continue;
        }
        out += out.empty() ? item : ", " + item;
    }
    return out;
}

/// Runs the automaton over the tokens so that syntax errors carry the
/// expected-kind set of the failing position.
void validate(const std::vector<Token>& tokens) {
    GrammarState state = initial_state();
    for (std::size_t i = 0; i < tokens.size(); ++i) {
        if (state.complete()) {
            throw SyntaxError("unexpected '" + tokens[i].text + "' at token " + std::to_string(i) +
                                  " after ';'",
                              i);
        }
        bool legal = false;
        for (const auto& e : legal_next_kinds(state)) {
            if (fits(e, tokens[i])) {
                legal = true;
                break;
            }
        }
        if (!legal) {
            throw SyntaxError("unexpected " + std::string(to_string(tokens[i].kind)) + " '" + tokens[i].text +
                                  "' at token " + std::to_string(i) + "; expected " + expected_text(state),
                              i);
        }
        state = advance(state, tokens[i]);
    }
    if (!state.complete()) {
        throw SyntaxError("unexpected end of oracle at token " + std::to_string(tokens.size()) + "; expected " +
                              expected_text(state),
                          tokens.size());
    }
}

class Parser {
public:
    explicit Parser(const std::vector<Token>& tokens) : tokens_(tokens) {}

    OracleAst parse_oracle() {
        OracleAst ast;
        ast.root = parse_expr();
        expect(";");
        return ast;
    }

private:
    Expr parse_expr() {
        Expr e;
        e.cond = parse_prop();
        if (at("?")) {
            ++pos_;
            e.then_branch = parse_expr();
            expect(":");
            e.else_branch = parse_expr();
        }
        return e;
    }

    Prop parse_prop() {
        Prop p;
        p.disjuncts.emplace_back();
        p.disjuncts.back().push_back(parse_atom());
        while (at("&&") || at("||")) {
            const bool disjunction = at("||");
            ++pos_;
            if (disjunction) {
                p.disjuncts.emplace_back();
            }
            p.disjuncts.back().push_back(parse_atom());
        }
        return p;
    }

    Atom parse_atom() {
        Atom a;
        a.left = parse_operand();
        if (pos_ < tokens_.size() && is_comparison_operator(tokens_[pos_].text)) {
            a.op = tokens_[pos_++].text;
            a.right = parse_arith();
        } else if (at("instanceof")) {
            a.op = tokens_[pos_++].text;
            a.class_name = take().text;
        }
        return a;
    }

    Arith parse_arith() {
        Arith r;
        r.terms.push_back(parse_operand());
        while (pos_ < tokens_.size() && tokens_[pos_].kind == TokenKind::Operator &&
               is_arithmetic_operator(tokens_[pos_].text)) {
            r.ops.push_back(tokens_[pos_++].text);
            r.terms.push_back(parse_operand());
        }
        return r;
    }

    Operand parse_operand() {
        Operand o;
        if (at("(")) {
            ++pos_;
            o.form = Operand::Form::Paren;
            o.inner = parse_expr();
            expect(")");
            return o;
        }
        o.head = take();
        check_jd_var(o.head);
        if (o.head.kind == TokenKind::Literal || o.head.text == "true" || o.head.text == "false" ||
            o.head.text == "null") {
            o.form = Operand::Form::Literal;
            return o;
        }
        o.form = Operand::Form::Access;
        while (at(".")) {
            ++pos_;
            Step step;
            const Token name = take();
            step.name = name.text;
            if (name.kind == TokenKind::MethodCallName) {
                step.call = true;
                expect("(");
                if (is_quantifier(name.text)) {
                    expect("jdVar");
                    expect("->");
                    ++lambda_depth_;
                    step.lambda = parse_expr();
                    --lambda_depth_;
                } else {
                    while (!at(")")) {
                        if (!step.args.empty()) {
                            expect(",");
                        }
                        step.args.push_back(take());
                        check_jd_var(step.args.back());
                    }
                }
                expect(")");
            }
            o.steps.push_back(std::move(step));
        }
        return o;
    }

    void check_jd_var(const Token& t) const {
        if (t.text == "jdVar" && lambda_depth_ == 0) {
            throw SyntaxError("jdVar used outside a stream quantifier at token " + std::to_string(pos_ - 1),
                              pos_ - 1);
        }
    }

    bool at(std::string_view text) const { return pos_ < tokens_.size() && tokens_[pos_].text == text; }

    const Token& take() {
        if (pos_ >= tokens_.size()) {
            throw SyntaxError("unexpected end of oracle", pos_);
        }
        return tokens_[pos_++];
    }

    void expect(std::string_view text) {
        if (!at(text)) {
            throw SyntaxError("expected '" + std::string(text) + "' at token " + std::to_string(pos_), pos_);
        }
        ++pos_;
    }

    const std::vector<Token>& tokens_;
    std::size_t pos_ = 0;
    int lambda_depth_ = 0;
};

Token op_token(std::string text) {
    return {std::move(text), TokenKind::Operator};
}

Token punct(std::string text) {
    return {std::move(text), TokenKind::Punctuation};
}

void flatten_expr(const Expr& e, std::vector<Token>& out);

void flatten_operand(const Operand& o, std::vector<Token>& out) {
    if (o.form == Operand::Form::Paren) {
        out.push_back(punct("("));
        flatten_expr(*o.inner, out);
        out.push_back(punct(")"));
        return;
    }
    out.push_back(o.head);
    for (const auto& step : o.steps) {
        out.push_back(punct("."));
        out.push_back({step.name, step.call ? TokenKind::MethodCallName : TokenKind::MemberName});
        if (!step.call) {
            continue;
        }
        out.push_back(punct("("));
        if (step.lambda) {
            out.push_back({"jdVar", TokenKind::Reserved});
            out.push_back(op_token("->"));
            flatten_expr(*step.lambda, out);
        } else {
            for (std::size_t i = 0; i < step.args.size(); ++i) {
                if (i > 0) {
                    out.push_back(punct(","));
                }
                out.push_back(step.args[i]);
            }
        }
        out.push_back(punct(")"));
    }
}

void flatten_atom(const Atom& a, std::vector<Token>& out) {
    flatten_operand(a.left, out);
    if (a.op.empty()) {
        return;
    }
    out.push_back(op_token(a.op));
    if (a.op == "instanceof") {
        out.push_back({a.class_name, TokenKind::Identifier});
        return;
    }
    for (std::size_t i = 0; i < a.right.terms.size(); ++i) {
        if (i > 0) {
            out.push_back(op_token(a.right.ops[i - 1]));
        }
        flatten_operand(a.right.terms[i], out);
    }
}

void flatten_expr(const Expr& e, std::vector<Token>& out) {
    for (std::size_t d = 0; d < e.cond.disjuncts.size(); ++d) {
        if (d > 0) {
            out.push_back(op_token("||"));
        }
        const auto& conj = e.cond.disjuncts[d];
        for (std::size_t c = 0; c < conj.size(); ++c) {
            if (c > 0) {
                out.push_back(op_token("&&"));
            }
            flatten_atom(conj[c], out);
        }
    }
    if (e.guarded()) {
        out.push_back(op_token("?"));
        flatten_expr(*e.then_branch, out);
        out.push_back(op_token(":"));
        flatten_expr(*e.else_branch, out);
    }
}

} // namespace

OracleAst parse(const std::vector<Token>& tokens) {
    validate(tokens);
    return Parser(tokens).parse_oracle();
}

OracleAst parse(std::string_view text) {
    return parse(tokenize(text));
}

std::vector<Token> flatten(const OracleAst& ast) {
    std::vector<Token> out;
    flatten_expr(ast.root, out);
    out.push_back(punct(";"));
    return out;
}

std::vector<Token> flatten(const Operand& operand) {
    std::vector<Token> out;
    flatten_operand(operand, out);
    return out;
}

std::string render(const OracleAst& ast) {
    return join_tokens(flatten(ast));
}

} // namespace oraclegen::grammar
