#include <gtest/gtest.h>

#include <algorithm>

#include "support.hpp"

using namespace oraclegen;
using namespace testing_support;
using T = OracleType;

namespace {

std::vector<std::string> texts_of(const std::vector<Candidate>& candidates, Provenance provenance) {
    std::vector<std::string> out;
    for (const auto& c : candidates) {
        if (c.provenance == provenance) {
            out.push_back(c.token.text);
        }
    }
    return out;
}

bool has(const std::vector<std::string>& v, const std::string& s) {
    return std::find(v.begin(), v.end(), s) != v.end();
}

} // namespace

TEST(Collector, GenericGroupsByProvenance) {
    const auto candidates = collect_generic(context(kRenderer, kSetGenerator, T::Pre));
    const auto common = texts_of(candidates, Provenance::Common);
    const auto project = texts_of(candidates, Provenance::Project);
    const auto method = texts_of(candidates, Provenance::Method);
    for (const char* t : {"==", "!=", "(", ";", "null", "true", "0", "1", "instanceof", "jdVar"}) {
        EXPECT_TRUE(has(common, t)) << t;
    }
    for (const char* t : {"SimpleMap", "Arrays", "ResultSet", "String"}) {
        EXPECT_TRUE(has(project, t)) << t;
    }
    EXPECT_EQ(std::vector<std::string>(method.begin(), method.begin() + 3),
              (std::vector<std::string>{"series", "generator", "this"}));
    EXPECT_FALSE(has(method, "methodResultID"));
    EXPECT_FALSE(has(common, "methodResultID"));
}

TEST(Collector, ResultAndThisFollowTheMethod) {
    const auto getter = collect_generic(context(kRenderer, "getRowCount()", T::NormalPost));
    bool result = false;
    for (const auto& c : getter) {
        result = result || c.token.text == "methodResultID";
    }
    EXPECT_TRUE(result);
    const auto ctor = texts_of(collect_generic(context(kSimpleMap, "SimpleMap(int,float)", T::ExceptPost)),
                               Provenance::Method);
    EXPECT_EQ(ctor, (std::vector<std::string>{"initialCapacity", "loadFactor"}));
}

TEST(Collector, SpecificMembersOfReceiver) {
    const auto ctx = context(kPrinter, "printHeaders(ResultSet)", T::ExceptPost);
    const auto members = collect_specific(ctx, grammar::tokenize("resultSet."));
    std::vector<std::string> names;
    for (const auto& c : members) {
        EXPECT_EQ(c.provenance, Provenance::SpecificMember);
        names.push_back(c.token.text);
        if (c.token.text == "isClosed") {
            EXPECT_EQ(c.token.kind, grammar::TokenKind::MethodCallName);
        }
        if (c.token.text == "TYPE_FORWARD_ONLY") {
            EXPECT_EQ(c.token.kind, grammar::TokenKind::MemberName);
        }
    }
    EXPECT_TRUE(has(names, "isClosed"));
    EXPECT_TRUE(has(names, "getClass"));
    EXPECT_THROW(collect_specific(ctx, grammar::tokenize("resultSet")), ContractViolation);
}

TEST(Collector, DocLiteralsMined) {
    EXPECT_EQ(mine_doc_literals("returns 0 or -1.5 and \"abc\""),
              (std::vector<std::string>{"0", "-1.5", "\"abc\""}));
    EXPECT_TRUE(mine_doc_literals("no literals here").empty());
}

TEST(TokenEngine, FigureFourCandidates) {
    Probe probe(kSimpleMap, "SimpleMap(int,float)", T::ExceptPost);
    ASSERT_TRUE(probe.walk("loadFactor"));
    EXPECT_EQ(probe.next().kept.texts(), (std::vector<std::string>{"!=", "<", "<=", "==", ">", ">="}));
    ASSERT_TRUE(probe.walk("<="));
    const auto operands = probe.next().kept.texts();
    EXPECT_TRUE(has(operands, "0"));
    EXPECT_TRUE(has(operands, "initialCapacity"));
    ASSERT_TRUE(probe.walk("0"));
    EXPECT_TRUE(has(probe.next().kept.texts(), ";"));
}

TEST(TokenEngine, TypeOfOperands) {
    const auto ctx = context(kPrinter, "printHeaders(ResultSet)", T::ExceptPost);
    const auto tokens = grammar::tokenize("resultSet.getRow() == 1");
    EXPECT_EQ(type_of(ctx, tokens, {0, 5}).kind, ExprType::Kind::Integral);
    EXPECT_EQ(type_of(ctx, tokens, {0, 1}).kind, ExprType::Kind::Reference);
    EXPECT_THROW(type_of(ctx, grammar::tokenize("resultSet.nope"), {0, 3}), TypingError);
    EXPECT_THROW(type_of(ctx, tokens, {0, 9}), ContractViolation);
}

TEST(TokenEngine, CompletionCost) {
    TokenEngine engine(context(kRenderer, kSetGenerator, T::Pre));
    EXPECT_EQ(engine.completion_cost(engine.replay(grammar::tokenize("series >= 0"))), 1u);
    EXPECT_EQ(engine.completion_cost(engine.replay(grammar::tokenize("series >="))), 2u);
    EXPECT_EQ(engine.completion_cost(engine.replay(grammar::tokenize("(((series"))), 6u);
    EXPECT_EQ(engine.completion_cost(engine.replay(grammar::tokenize("series >= 0;"))), 0u);
}

TEST(TokenEngine, CandidatesAreSortedByProvenance) {
    Probe probe(kRenderer, kSetGenerator, T::Pre);
    const auto kept = probe.next().kept.candidates;
    ASSERT_FALSE(kept.empty());
    for (std::size_t i = 1; i < kept.size(); ++i) {
        EXPECT_LE(static_cast<int>(kept[i - 1].provenance), static_cast<int>(kept[i].provenance));
    }
}

TEST(TokenEngine, EveryKeptCandidateAdvances) {
    Probe probe(kConverter, "convert(Object)", T::NormalPost);
    ASSERT_TRUE(probe.walk("methodResultID == object"));
    for (const auto& c : probe.next().kept.candidates) {
        EXPECT_NO_THROW(probe.engine().advance(probe.state(), c.token)) << c.token.text;
    }
}

TEST(TypeRelations, AssignableComparableCastable) {
    const auto& model = corpus();
    using K = ExprType::Kind;
    const auto i = ExprType::of(K::Integral, "int");
    const auto l = ExprType::of(K::Integral, "long");
    const auto str = ExprType::of(K::Reference, "java.lang.String");
    const auto obj = ExprType::of(K::Reference, "java.lang.Object");
    const auto cs = ExprType::of(K::Reference, "java.lang.CharSequence");
    const auto null_type = grammar::literal_type(grammar::Token{"null", grammar::TokenKind::Reserved});
    EXPECT_TRUE(assignable(model, i, l));
    EXPECT_FALSE(assignable(model, l, i));
    EXPECT_TRUE(assignable(model, str, obj));
    EXPECT_TRUE(assignable(model, str, cs));
    EXPECT_FALSE(assignable(model, obj, str));
    EXPECT_TRUE(comparable(model, str, null_type));
    EXPECT_FALSE(comparable(model, i, null_type));
    EXPECT_TRUE(comparable(model, i, l));
    EXPECT_TRUE(castable(model, obj, str));
    EXPECT_TRUE(castable(model, cs, str));
}
