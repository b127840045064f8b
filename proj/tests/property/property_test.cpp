#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "oraclegen/dataset.hpp"
#include "oraclegen/evaluation.hpp"
#include "oraclegen/generation.hpp"
#include "support.hpp"

using namespace oraclegen;
using namespace testing_support;
using grammar::Token;
using grammar::TokenKind;

namespace {

/// Random token sequences drawn from the oracle grammar.
class OracleGen {
public:
    explicit OracleGen(std::uint32_t seed) : rng_(seed) {}

    std::vector<Token> oracle() {
        out_.clear();
        expr(0, true);
        punct(";");
        return out_;
    }

private:
    std::size_t pick(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng_); }
    bool chance(int percent) { return pick(100) < static_cast<std::size_t>(percent); }

    void push(std::string text, TokenKind kind) { out_.push_back(Token{std::move(text), kind}); }
    void punct(const char* text) { push(text, grammar::classify_lexeme(text)); }

    void expr(int depth, bool allow_ternary) {
        prop(depth);
        if (allow_ternary && depth < 2 && chance(15)) {
            punct("?");
            expr(depth + 1, false);
            punct(":");
            expr(depth + 1, false);
        }
    }

    void prop(int depth) {
        const std::size_t disjuncts = 1 + (chance(25) ? pick(2) + 1 : 0);
        for (std::size_t d = 0; d < disjuncts; ++d) {
            if (d) {
                punct("||");
            }
            const std::size_t atoms = 1 + (chance(25) ? pick(2) + 1 : 0);
            for (std::size_t a = 0; a < atoms; ++a) {
                if (a) {
                    punct("&&");
                }
                atom(depth);
            }
        }
    }

    void atom(int depth) {
        const auto form = pick(10);
        if (form < 2) {
            lone_operand(depth);
            return;
        }
        operand(depth);
        if (form == 2) {
            punct("instanceof");
            push(kClasses[pick(std::size(kClasses))], TokenKind::Identifier);
            return;
        }
        punct(kComparisons[pick(std::size(kComparisons))]);
        operand(depth);
        while (chance(20)) {
            punct(kArithmetic[pick(std::size(kArithmetic))]);
            operand(depth);
        }
    }

    /// Operands that may stand alone as a proposition.
    void lone_operand(int depth) {
        const auto form = pick(4);
        if (form == 0) {
            punct(chance(50) ? "true" : "false");
        } else if (form == 1 && depth < 3) {
            punct("(");
            expr(depth + 1, false);
            punct(")");
        } else {
            push(kNames[pick(std::size(kNames))], TokenKind::Identifier);
            steps(depth, true);
        }
    }

    void operand(int depth) {
        const auto form = pick(10);
        if (form < 3) {
            literal();
            return;
        }
        if (form == 3 && depth < 3) {
            punct("(");
            expr(depth + 1, false);
            punct(")");
            return;
        }
        const auto head = pick(std::size(kNames) + 2);
        if (head < std::size(kNames)) {
            push(kNames[head], TokenKind::Identifier);
        } else {
            push(head == std::size(kNames) ? "this" : "methodResultID", TokenKind::Reserved);
        }
        steps(depth, false);
    }

    void steps(int depth, bool at_least_one) {
        while (at_least_one || chance(30)) {
            at_least_one = false;
            punct(".");
            const auto kind = pick(4);
            if (kind == 0) {
                push(kNames[pick(std::size(kNames))], TokenKind::MemberName);
            } else if (kind == 1 && depth < 3) {
                push(kQuantifiers[pick(std::size(kQuantifiers))], TokenKind::MethodCallName);
                punct("(");
                push("jdVar", TokenKind::Reserved);
                punct("->");
                expr(depth + 1, false);
                punct(")");
            } else {
                push(kNames[pick(std::size(kNames))], TokenKind::MethodCallName);
                punct("(");
                const auto args = pick(3);
                for (std::size_t i = 0; i < args; ++i) {
                    if (i) {
                        punct(",");
                    }
                    if (chance(50)) {
                        literal();
                    } else {
                        push(kNames[pick(std::size(kNames))], TokenKind::Identifier);
                    }
                }
                punct(")");
            }
        }
    }

    void literal() {
        const auto text = std::string(kLiterals[pick(std::size(kLiterals))]);
        push(text, grammar::classify_lexeme(text));
    }

    static constexpr const char* kNames[] = {"series", "source", "value", "array", "size", "getRow", "x1"};
    static constexpr const char* kClasses[] = {"String", "Comparable", "Integer"};
    static constexpr const char* kQuantifiers[] = {"anyMatch", "allMatch", "noneMatch"};
    static constexpr const char* kComparisons[] = {"==", "!=", "<", "<=", ">", ">="};
    static constexpr const char* kArithmetic[] = {"+", "-", "*", "/", "%"};
    static constexpr const char* kLiterals[] = {"0", "1", "-1", "2.5", "\"a b\"", "'c'", "true", "false", "null", "10L"};

    std::mt19937 rng_;
    std::vector<Token> out_;
};

std::vector<std::string> texts(const std::vector<Token>& tokens) {
    std::vector<std::string> out;
    for (const auto& t : tokens) {
        out.push_back(t.text);
    }
    return out;
}

struct WalkTarget {
    const ClassInfo* owner;
    const MethodInfo* method;
    OracleType type;
};

std::vector<WalkTarget> walk_targets() {
    std::vector<WalkTarget> out;
    for (const auto& [name, cls] : corpus().classes()) {
        for (const auto& m : cls.methods) {
            for (auto type : {OracleType::Pre, OracleType::NormalPost, OracleType::ExceptPost}) {
                if (type != OracleType::NormalPost || m.returns_value()) {
                    out.push_back({&cls, &m, type});
                }
            }
        }
    }
    return out;
}

} // namespace

TEST(GrammarProperty, RenderParseRoundTrip) {
    OracleGen gen(20240611);
    for (int i = 0; i < 1000; ++i) {
        const auto tokens = gen.oracle();
        const std::string text = grammar::join_tokens(tokens);
        const auto ast = grammar::parse(tokens);
        ASSERT_EQ(grammar::render(ast), text) << i;
        ASSERT_EQ(texts(grammar::flatten(ast)), texts(tokens)) << text;
        ASSERT_EQ(texts(grammar::tokenize(text)), texts(tokens)) << text;
        ASSERT_EQ(grammar::parse(text), ast) << text;
    }
}

TEST(GrammarProperty, EveryPrefixIsLegal) {
    OracleGen gen(77);
    for (int i = 0; i < 1000; ++i) {
        const auto tokens = gen.oracle();
        auto state = grammar::initial_state();
        for (std::size_t k = 0; k < tokens.size(); ++k) {
            ASSERT_FALSE(state.complete());
            const auto legal = grammar::legal_next_kinds(state);
            ASSERT_TRUE(std::any_of(legal.begin(), legal.end(),
                                    [&](const grammar::Expectation& e) { return grammar::fits(e, tokens[k]); }))
                << grammar::join_tokens(tokens) << " at " << k;
            state = grammar::advance(state, tokens[k]);
        }
        ASSERT_TRUE(state.complete());
    }
}

TEST(GrammarProperty, TruncatedOraclesDoNotParse) {
    OracleGen gen(5);
    for (int i = 0; i < 300; ++i) {
        auto tokens = gen.oracle();
        tokens.pop_back();
        EXPECT_THROW(grammar::parse(tokens), SyntaxError);
    }
}

TEST(NormalizeProperty, Idempotent) {
    OracleGen gen(99);
    for (int i = 0; i < 1000; ++i) {
        const auto text = grammar::join_tokens(gen.oracle());
        const auto once = normalize(text);
        ASSERT_EQ(normalize(once), once) << text;
        ASSERT_EQ(classify(once, normalize(text)), OutcomeClass::TP);
    }
}

TEST(EngineProperty, RandomWalksStayLegalAndReplay) {
    std::mt19937 rng(4242);
    std::size_t walks = 0;
    for (const auto& target : walk_targets()) {
        const auto ctx = GenerationContext::make(corpus(), *target.owner, *target.method, target.type);
        TokenEngine engine(ctx);
        for (int k = 0; k < 6; ++k) {
            auto state = grammar::initial_state();
            while (!state.complete()) {
                const auto result = engine.candidates(state, 32);
                ASSERT_FALSE(result.kept.empty()) << target.method->key() << ": " << state.text();
                const auto& c = result.kept.candidates[rng() % result.kept.size()];
                const auto next = engine.advance(state, c.token);
                ASSERT_EQ(engine.violation(state, c.token, next), "");
                ASSERT_LE(engine.completion_cost(next) + next.tokens().size(), 32u);
                state = next;
            }
            ASSERT_LE(state.tokens().size(), 32u);
            ASSERT_NO_THROW(grammar::parse(state.tokens())) << state.text();

            OracleSample sample;
            sample.class_name = target.owner->qualified_name;
            sample.method_signature = target.method->key();
            sample.oracle_type = target.type;
            sample.oracle_text = state.text();
            auto samples = disaggregate(sample, corpus(), 32);
            ASSERT_EQ(samples.size(), state.tokens().size());
            std::shuffle(samples.begin(), samples.end(), rng);
            ASSERT_EQ(reassemble(samples), state.text());
            ++walks;
        }
    }
    EXPECT_GT(walks, 200u);
}

TEST(EngineProperty, ScriptedGenerationReplaysWalks) {
    std::mt19937 rng(8);
    for (const auto& target : walk_targets()) {
        const auto ctx = GenerationContext::make(corpus(), *target.owner, *target.method, target.type);
        TokenEngine engine(ctx);
        auto state = grammar::initial_state();
        while (!state.complete()) {
            const auto result = engine.candidates(state, 64);
            state = engine.advance(state, result.kept.candidates[rng() % result.kept.size()].token);
        }
        auto backend = scripted_backend(texts(state.tokens()));
        BackendGate gate(*backend);
        const auto generated = generate_oracle(ctx, gate, gate);
        ASSERT_EQ(generated.status, OracleStatus::Generated) << generated.diagnostic;
        ASSERT_EQ(generated.oracle_text, state.text());
    }
}

TEST(MetricsProperty, BoundsAndF1Identity) {
    std::mt19937 rng(3);
    std::uniform_int_distribution<std::int64_t> d(0, 50);
    for (int i = 0; i < 2000; ++i) {
        const Counts c{d(rng), d(rng), d(rng), d(rng)};
        const auto m = metrics_from_counts(c);
        ASSERT_EQ(m.accuracy.has_value(), c.total() > 0);
        ASSERT_EQ(m.precision.has_value(), c.tp + c.fp > 0);
        ASSERT_EQ(m.recall.has_value(), c.tp + c.fn > 0);
        for (const auto& r : {m.accuracy, m.precision, m.recall, m.f1}) {
            if (r) {
                ASSERT_GE(r->percent(), 0);
                ASSERT_LE(r->percent(), 100);
            }
        }
        if (m.f1 && c.tp > 0) {
            // F1 is the harmonic mean of P and R.
            const double p = double(c.tp) / double(c.tp + c.fp);
            const double r = double(c.tp) / double(c.tp + c.fn);
            ASSERT_NEAR(double(m.f1->num) / double(m.f1->den), 2 * p * r / (p + r), 1e-12);
        }
    }
}

TEST(MetricsProperty, PerProjectCountsSumToTotal) {
    std::mt19937 rng(17);
    const char* projects[] = {"a", "b", "c"};
    const char* oracles[] = {"x == null;", "NONE", "y >= 0;"};
    for (int round = 0; round < 50; ++round) {
        std::vector<Outcome> outcomes;
        for (int i = 0; i < 40; ++i) {
            GroundTruthEntry e;
            e.project_name = projects[rng() % 3];
            e.expected_oracle = oracles[rng() % 3];
            outcomes.push_back(make_outcome(e, oracles[rng() % 3]));
        }
        for (bool strict : {false, true}) {
            const auto report = compute_metrics(outcomes, strict);
            Counts sum;
            for (const auto& [name, g] : report.per_project) {
                sum.tp += g.counts.tp;
                sum.tn += g.counts.tn;
                sum.fp += g.counts.fp;
                sum.fn += g.counts.fn;
            }
            ASSERT_EQ(sum, report.total.counts);
            if (!strict) {
                ASSERT_EQ(report.total.counts.total(), 40);
            }
        }
    }
}

TEST(DatasetProperty, JsonLineRoundTrip) {
    std::mt19937 rng(23);
    const std::vector<std::string> alphabet{"a", "b", " ", "\"", "\\", "\n", "\t", "{", "}", ":", ",", "\xc3\xa9"};
    auto random_text = [&] {
        std::string s;
        for (std::size_t i = rng() % 12; i > 0; --i) {
            s += alphabet[rng() % alphabet.size()];
        }
        return s;
    };
    for (int i = 0; i < 500; ++i) {
        OracleSample s;
        s.project_name = random_text();
        s.class_name = random_text();
        s.method_signature = random_text();
        s.method_source = random_text();
        s.method_javadoc = random_text();
        s.oracle_type = static_cast<OracleType>(rng() % 3);
        s.tag_text = random_text();
        s.oracle_text = i % 2 ? "x == null;" : "";
        const auto line = to_json_line(s);
        ASSERT_EQ(line.find('\n'), std::string::npos);
        ASSERT_EQ(to_json_line(oracle_sample_from_json(line)), line);
    }
}
