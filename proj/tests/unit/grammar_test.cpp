#include <gtest/gtest.h>

#include <algorithm>

#include "oraclegen/error.hpp"
#include "oraclegen/oracle_grammar.hpp"

using namespace oraclegen;
using namespace oraclegen::grammar;

namespace {

std::vector<std::string> texts(const std::vector<Token>& tokens) {
    std::vector<std::string> out;
    for (const auto& t : tokens) {
        out.push_back(t.text);
    }
    return out;
}

std::vector<std::string> next_operators(const GrammarState& state) {
    std::vector<std::string> out;
    for (const auto& e : legal_next_kinds(state)) {
        for (const char* op : {"==", "!=", "<", "<=", ">", ">=", "+", "-", "*", "/", "%", "&&", "||", "?", ":",
                               ";", ".", "(", ")", ",", "->", "instanceof"}) {
            if (fits(e, Token{op, classify_lexeme(op)}) && std::find(out.begin(), out.end(), op) == out.end()) {
                out.push_back(op);
            }
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

GrammarState walk(std::string_view text) {
    auto state = initial_state();
    for (const auto& t : tokenize(text)) {
        state = advance(state, t);
    }
    return state;
}

} // namespace

TEST(Tokenizer, SplitsOperatorsAndClassifiesMembers) {
    const auto tokens = tokenize("resultSet.isClosed()&&x.length>=-1;");
    EXPECT_EQ(texts(tokens), (std::vector<std::string>{"resultSet", ".", "isClosed", "(", ")", "&&", "x", ".",
                                                        "length", ">=", "-1", ";"}));
    EXPECT_EQ(tokens[2].kind, TokenKind::MethodCallName);
    EXPECT_EQ(tokens[8].kind, TokenKind::MemberName);
    EXPECT_EQ(tokens[10].kind, TokenKind::Literal);
}

TEST(Tokenizer, MinusAfterOperandIsOperator) {
    EXPECT_EQ(texts(tokenize("a == b -1;")), (std::vector<std::string>{"a", "==", "b", "-", "1", ";"}));
}

TEST(Tokenizer, LiteralsAndReservedWords) {
    const auto tokens = tokenize("x == \"a b\" || y == 'c' || z == 1.5f || methodResultID == null;");
    EXPECT_EQ(tokens[2].text, "\"a b\"");
    EXPECT_EQ(tokens[2].kind, TokenKind::Literal);
    EXPECT_EQ(tokens[6].kind, TokenKind::Literal);
    EXPECT_EQ(tokens[10].text, "1.5f");
    EXPECT_EQ(tokens[12].kind, TokenKind::Reserved);
    EXPECT_EQ(tokens[14].kind, TokenKind::Reserved);
    EXPECT_TRUE(is_reserved_word("jdVar"));
    EXPECT_THROW(tokenize("a # b"), LexicalError);
    EXPECT_THROW(tokenize("\"open"), LexicalError);
}

TEST(Tokenizer, JoinIsCanonical) {
    EXPECT_EQ(join_tokens(tokenize("series>=0 ;")), "series >= 0;");
    EXPECT_EQ(join_tokens(tokenize("a.f( 1 ,b ) ;")), "a.f(1, b);");
    EXPECT_EQ(join_tokens(tokenize("loadFactor <=")), "loadFactor <= ");
}

TEST(Parser, ShapesOfTheAst) {
    const auto ast = parse("str == null ? methodResultID == 0 : methodResultID == str.length();");
    ASSERT_TRUE(ast.root.guarded());
    EXPECT_EQ(ast.root.cond.disjuncts.size(), 1u);
    EXPECT_EQ(ast.root.then_branch->cond.disjuncts[0][0].op, "==");
    const auto& right = ast.root.else_branch->cond.disjuncts[0][0].right;
    ASSERT_EQ(right.terms.size(), 1u);
    ASSERT_EQ(right.terms[0].steps.size(), 1u);
    EXPECT_TRUE(right.terms[0].steps[0].call);

    const auto disj = parse("a == 1 && b == 2 || c == 3;");
    ASSERT_EQ(disj.root.cond.disjuncts.size(), 2u);
    EXPECT_EQ(disj.root.cond.disjuncts[0].size(), 2u);

    const auto quant = parse("Arrays.stream(array).anyMatch(jdVar -> jdVar == target);");
    const auto& steps = quant.root.cond.disjuncts[0][0].left.steps;
    ASSERT_EQ(steps.size(), 2u);
    EXPECT_TRUE(static_cast<bool>(steps[1].lambda));

    const auto inst = parse("value instanceof Comparable;");
    EXPECT_EQ(inst.root.cond.disjuncts[0][0].class_name, "Comparable");
}

TEST(Parser, SyntaxErrorsCarryIndex) {
    try {
        parse("series >= 0");
        FAIL();
    } catch (const SyntaxError& e) {
        EXPECT_EQ(e.token_index(), 3u);
    }
    try {
        parse("series >= >= 0;");
        FAIL();
    } catch (const SyntaxError& e) {
        EXPECT_EQ(e.token_index(), 2u);
    }
    EXPECT_THROW(parse("a == 1; b"), SyntaxError);
    EXPECT_THROW(parse(";"), SyntaxError);
}

TEST(Parser, RenderIsCanonicalAndIdempotent) {
    for (const char* text : {"series >= 0;", "(object == null) == false;", "resultSet.isClosed();",
                             "a.b(c, 1).d == e + 2 * f;", "a.b() ? y == 1 : z == 2;"}) {
        const auto once = render(parse(text));
        EXPECT_EQ(once, text);
        EXPECT_EQ(render(parse(once)), once);
        EXPECT_EQ(flatten(parse(text)), tokenize(text));
    }
}

TEST(Automaton, LegalNextAfterOperand) {
    EXPECT_EQ(next_operators(walk("loadFactor")),
              (std::vector<std::string>{"!=", ".", "<", "<=", "==", ">", ">=", "instanceof"}));
}

TEST(Automaton, LegalNextAfterComparison) {
    const auto ops = next_operators(walk("loadFactor <= 0"));
    for (const char* op : {"%", "&&", "*", "+", "-", "/", ";", "?", "||"}) {
        EXPECT_NE(std::find(ops.begin(), ops.end(), op), ops.end()) << op;
    }
    EXPECT_EQ(std::find(ops.begin(), ops.end(), "=="), ops.end());
}

TEST(Automaton, CompleteStateAcceptsNothing) {
    const auto state = walk("series >= 0;");
    EXPECT_TRUE(state.complete());
    EXPECT_TRUE(legal_next_kinds(state).empty());
    EXPECT_THROW(advance(state, Token{";", TokenKind::Punctuation}), ContractViolation);
}

TEST(Automaton, IllegalTokenIsContractViolation) {
    EXPECT_THROW(advance(initial_state(), Token{"==", TokenKind::Operator}), ContractViolation);
    EXPECT_THROW(advance(walk("a"), Token{"a", TokenKind::Identifier}), ContractViolation);
}

TEST(Automaton, DepthCountsParensLambdasAndBranches) {
    EXPECT_EQ(walk("((").depth(), 2u);
    EXPECT_EQ(walk("a.b() ? (").depth(), 2u);
    EXPECT_EQ(walk("xs.stream().anyMatch(jdVar ->").depth(), 1u);
    EXPECT_NE(walk("xs.stream().anyMatch(jdVar ->").enclosing_lambda(), nullptr);
}

TEST(Automaton, PrefixesOfValidOraclesStayLegal) {
    for (const char* text : {"str == null ? methodResultID == 0 : methodResultID == str.length();",
                             "Arrays.stream(array).anyMatch(jdVar -> jdVar == target);",
                             "array.getClass().isArray() == false;", "(object == null) == false;"}) {
        auto state = initial_state();
        for (const auto& t : tokenize(text)) {
            const auto legal = legal_next_kinds(state);
            EXPECT_TRUE(std::any_of(legal.begin(), legal.end(), [&](const Expectation& e) { return fits(e, t); }))
                << text << " at " << t.text;
            state = advance(state, t);
        }
        EXPECT_TRUE(state.complete());
        EXPECT_EQ(state.text(), text);
    }
}
