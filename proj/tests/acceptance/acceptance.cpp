#include <chrono>
#include <functional>
#include <iostream>
#include <random>

#include "oraclegen/augmentation.hpp"
#include "oraclegen/cli.hpp"
#include "oraclegen/dataset.hpp"
#include "oraclegen/evaluation.hpp"
#include "support.hpp"

using namespace oraclegen;
using namespace testing_support;
using T = OracleType;
namespace fs = std::filesystem;

namespace {

struct Verdict {
    bool ok = false;
    std::string detail;
};

std::vector<std::string> texts(const std::vector<grammar::Token>& tokens) {
    std::vector<std::string> out;
    for (const auto& t : tokens) {
        out.push_back(t.text);
    }
    return out;
}

Verdict metrics_golden() {
    const auto m = metrics_from_counts(Counts{186, 459, 72, 169});
    const std::string got = "A " + format_percent(m.accuracy) + " P " + format_percent(m.precision) + " R " +
                            format_percent(m.recall) + " F1 " + format_percent(m.f1);
    return {got == "A 73% P 72% R 52% F1 61%", got};
}

Verdict figure_four() {
    OracleSample s;
    s.class_name = kSimpleMap;
    s.method_signature = "SimpleMap(int,float)";
    s.oracle_type = T::ExceptPost;
    s.tag_text = "@throws IllegalArgumentException if the load factor is nonpositive";
    s.oracle_text = "loadFactor<=0;";
    const auto samples = disaggregate(s, corpus());
    if (samples.size() != 4) {
        return {false, std::to_string(samples.size()) + " samples"};
    }
    const std::vector<std::string> expected{"!=", "<", "<=", "==", ">", ">="};
    std::string list;
    for (const auto& t : samples[1].legal_tokens) {
        list += (list.empty() ? "" : " ") + t;
    }
    return {samples[1].legal_tokens == expected, "4 samples, sample 2: " + list};
}

Verdict replay_completeness() {
    const auto entries = read_ground_truth(groundtruth());
    std::size_t oracles = 0;
    std::vector<std::string> failures;
    for (const auto& e : entries) {
        if (!e.positive()) {
            continue;
        }
        ++oracles;
        const auto ctx = resolve_context(corpus(), e.class_name, e.method_signature, e.oracle_type, e.tag_text);
        OracleSample s;
        s.class_name = e.class_name;
        s.method_signature = e.method_signature;
        s.oracle_type = e.oracle_type;
        s.tag_text = e.tag_text;
        s.oracle_text = e.expected_oracle;
        try {
            disaggregate(s, corpus());
        } catch (const ReplayBreach& b) {
            failures.push_back(e.expected_oracle + " breach at " + std::to_string(b.position()) + " (" +
                               b.restriction() + ")");
            continue;
        }
        auto backend = scripted_backend(texts(grammar::tokenize(e.expected_oracle)));
        BackendGate gate(*backend);
        const auto result = generate_oracle(ctx, gate, gate);
        if (result.oracle_text != e.expected_oracle) {
            failures.push_back(e.expected_oracle + " generated as '" + result.oracle_text + "' " + result.diagnostic);
        }
    }
    std::string detail = std::to_string(oracles - failures.size()) + "/" + std::to_string(oracles) + " oracles";
    for (const auto& f : failures) {
        detail += "; " + f;
    }
    return {oracles >= 30 && failures.empty(), detail};
}

/// Selector choosing uniformly among the offered candidates.
class RandomSelector : public Backend {
public:
    explicit RandomSelector(std::uint32_t seed) : rng_(seed) {}
    std::string evaluate(const PromptBundle&) override { return std::string(kAssertArm); }
    std::string select(const PromptBundle& prompt) override {
        const auto& c = prompt.fields.candidates;
        return c[rng_() % c.size()];
    }
    std::string describe() const override { return "random"; }

private:
    std::mt19937 rng_;
};

std::string type_check(const GenerationContext& ctx, const std::string& oracle) {
    TokenEngine engine(ctx);
    const auto tokens = grammar::tokenize(oracle);
    auto state = grammar::initial_state();
    for (const auto& token : tokens) {
        auto kinded = token;
        const auto kinds = grammar::legal_next_kinds(state);
        const auto next = engine.advance(state, kinded);
        const auto id = engine.violation(state, kinded, next);
        if (!id.empty()) {
            return id + " at '" + token.text + "'";
        }
        state = next;
    }
    return state.complete() ? "" : "incomplete";
}

Verdict fuzz() {
    const std::size_t total = 10000;
    std::vector<std::pair<const ClassInfo*, const MethodInfo*>> methods;
    for (const auto& [name, cls] : corpus().classes()) {
        for (const auto& m : cls.methods) {
            methods.emplace_back(&cls, &m);
        }
    }
    GenerationLimits limits;
    limits.max_tokens = 64;
    limits.max_time = std::chrono::milliseconds(10000);
    std::size_t failures = 0;
    std::string first;
    for (std::size_t i = 0; i < total; ++i) {
        const auto [owner, method] = methods[i % methods.size()];
        auto type = static_cast<T>((i / methods.size()) % 3);
        if (type == T::NormalPost && !method->returns_value()) {
            type = T::ExceptPost;
        }
        const auto ctx = GenerationContext::make(corpus(), *owner, *method, type);
        RandomSelector backend(static_cast<std::uint32_t>(i));
        BackendGate gate(backend);
        const auto result = generate_oracle(ctx, gate, gate, limits);
        std::string problem;
        if (result.status != OracleStatus::Generated) {
            problem = result.diagnostic;
        } else if (grammar::tokenize(result.oracle_text).size() > 64) {
            problem = "over 64 tokens";
        } else {
            try {
                grammar::parse(result.oracle_text);
                problem = type_check(ctx, result.oracle_text);
            } catch (const Error& e) {
                problem = e.what();
            }
        }
        if (!problem.empty()) {
            if (first.empty()) {
                first = method->key() + " seed " + std::to_string(i) + ": " + problem;
            }
            ++failures;
        }
    }
    return {failures == 0,
            std::to_string(total - failures) + "/" + std::to_string(total) + " generations" +
                (first.empty() ? "" : "; first failure " + first)};
}

Verdict restriction_suite() {
    struct Check {
        const char* id;
        bool positive;
        const char* cls;
        const char* method;
        T type;
        const char* partial;
        const char* token;
    };
    const Check checks[] = {
        {"R1", true, kRenderer, "getRowCount()", T::NormalPost, "", "methodResultID"},
        {"R1", false, kRenderer, kSetGenerator, T::ExceptPost, "", "methodResultID"},
        {"R2", true, kRenderer, "getSeriesItemLabelGenerator(int)", T::NormalPost, "", "methodResultID"},
        {"R2", false, kRenderer, "getSeriesItemLabelGenerator(int)", T::Pre, "", "methodResultID"},
        {"R3", true, kRenderer, kSetGenerator, T::Pre, "generator", "instanceof"},
        {"R3", false, kRenderer, kSetGenerator, T::Pre, "series", "instanceof"},
        {"R4", true, kRenderer, kSetGenerator, T::Pre, "series", "<"},
        {"R4", false, kPrinter, "printHeaders(ResultSet)", T::ExceptPost, "resultSet", "<"},
        {"R5", true, kConverter, "sum(int,int)", T::NormalPost, "methodResultID == a", "+"},
        {"R5", false, kConverter, "convert(Object)", T::NormalPost, "methodResultID == object", "+"},
        {"R6", true, kRenderer, kSetGenerator, T::Pre, "generator == null", ";"},
        {"R6", false, kShorts, "checkedCast(long)", T::NormalPost, "methodResultID == Short", ";"},
        {"R7", true, kPrinter, "printHeaders(ResultSet)", T::ExceptPost, "resultSet", "."},
        {"R7", false, kRenderer, kSetGenerator, T::Pre, "series", "."},
        {"R8", true, kPrinter, "printHeaders(ResultSet)", T::ExceptPost, "resultSet.", "isClosed"},
        {"R8", false, kShorts, "contains(short[],short)", T::NormalPost, "Arrays.", "equals"},
        {"R9", true, kRenderer, "getRowCount()", T::NormalPost, "", "this"},
        {"R9", false, kConverter, "sum(int,int)", T::NormalPost, "", "this"},
        {"R10", true, kShorts, "contains(short[],short)", T::NormalPost, "Arrays.stream(array).anyMatch(jdVar ->", "jdVar"},
        {"R10", false, kConverter, "sum(int,int)", T::NormalPost, "", "jdVar"},
        {"R11", true, kShorts, "contains(short[],short)", T::NormalPost, "Arrays.stream(array).", "anyMatch"},
        {"R11", false, kShorts, "contains(short[],short)", T::NormalPost, "Arrays.stream(", "target"},
        {"R12", true, kPrinter, "printHeaders(ResultSet)", T::ExceptPost, "resultSet.getString(", "1"},
        {"R12", false, kPrinter, "printHeaders(ResultSet)", T::ExceptPost, "resultSet.getString(", "resultSet"},
        {"R13", true, kRenderer, kSetGenerator, T::Pre, "true", "=="},
        {"R13", false, kRenderer, kSetGenerator, T::Pre, "true", ";"},
        {"R14", true, kRenderer, kSetGenerator, T::Pre, "series >= 0", ";"},
        {"R14", false, kRenderer, kSetGenerator, T::Pre, "series >= series", ";"},
        {"R15", true, kRenderer, kSetGenerator, T::Pre, "series >= 0", "?"},
        {"R15", false, kRenderer, kSetGenerator, T::Pre, "(series >= 0", "?"},
    };
    std::size_t passed = 0;
    std::string failures;
    for (const auto& c : checks) {
        Probe probe(c.cls, c.method, c.type);
        if (!probe.walk(c.partial)) {
            failures += std::string("; ") + c.id + " cannot walk '" + c.partial + "'";
            continue;
        }
        auto verdict = probe.verdict(c.token);
        if (!c.positive && verdict == "absent") {
            verdict = probe.verdict_for(grammar::tokenize(c.token).at(0));
        }
        const bool ok = c.positive ? verdict == "kept" : verdict == c.id;
        passed += ok ? 1 : 0;
        if (!ok) {
            failures += std::string("; ") + c.id + (c.positive ? " positive" : " negative") + " got " + verdict;
        }
    }
    return {passed == std::size(checks),
            std::to_string(passed) + "/" + std::to_string(std::size(checks)) + " checks" + failures};
}

int cli(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    return run_cli(args, out, err);
}

Verdict determinism() {
    const std::vector<std::string> model{"--source-root", corpus_src().string(), "--sig", sql_signatures().string()};
    const std::string backend = "scripted:" + groundtruth().string();
    std::vector<std::string> mismatches;
    fs::path runs[2];
    for (int r = 0; r < 2; ++r) {
        runs[r] = scratch_dir("acceptance_determinism_" + std::to_string(r));
        auto args = [&](std::vector<std::string> head) {
            head.insert(head.end(), model.begin(), model.end());
            return head;
        };
        if (cli(args({"analyze", "--out", (runs[r] / "analyze").string()})) != kExitOk ||
            cli(args({"generate", "--out", (runs[r] / "generate").string(), "--backend", backend})) == kExitFatal ||
            cli(args({"disaggregate", (runs[r] / "generate" / "oracles.jsonl").string(), "--out",
                      (runs[r] / "disaggregate").string()})) == kExitFatal) {
            return {false, "a command failed"};
        }
    }
    const char* outputs[] = {"analyze/model.jsonl", "generate/oracles.jsonl", "generate/traces.jsonl",
                             "disaggregate/tokens.jsonl"};
    for (const char* o : outputs) {
        const auto a = slurp(runs[0] / o);
        if (a.empty() || a != slurp(runs[1] / o)) {
            mismatches.push_back(o);
        }
    }
    std::string detail = std::to_string(std::size(outputs) - mismatches.size()) + "/" +
                         std::to_string(std::size(outputs)) + " outputs identical";
    for (const auto& m : mismatches) {
        detail += "; differs: " + m;
    }
    return {mismatches.empty(), detail};
}

Verdict injection_goldens() {
    struct Case {
        const char* file;
        const char* golden;
        const char* cls;
        const char* method;
        T type;
        const char* oracle;
        const char* ex;
    };
    const Case cases[] = {
        {"RendererTest.java", "RendererTest.pre.java", kRenderer, kSetGenerator, T::Pre, "series >= 0;", ""},
        {"SimpleMapTest.java", "SimpleMapTest.normal_post.java", kSimpleMap, "isEmpty()", T::NormalPost,
         "methodResultID == true;", ""},
        {"Base64Test.java", "Base64Test.except_post.java", "org.apache.commons.codec.binary.Base64",
         "encodeInteger(BigInteger)", T::ExceptPost, "bigInteger == null;", "NullPointerException"},
    };
    std::size_t ok = 0;
    std::string failures;
    for (const auto& c : cases) {
        InjectionRequest rq{corpus().find_class(c.cls)->find_method(c.method), c.type, c.oracle, c.ex};
        const auto source = slurp(fixtures() / "inject" / c.file);
        const auto once = apply_injection(source, plan_injection(source, rq, c.file)).source;
        const auto twice = apply_injection(once, plan_injection(once, rq, c.file)).source;
        const bool golden = once == slurp(fixtures() / "inject" / "expected" / c.golden);
        const bool idempotent = twice == once;
        ok += golden && idempotent ? 1 : 0;
        if (!golden) {
            failures += std::string("; ") + c.file + " differs from golden";
        }
        if (!idempotent) {
            failures += std::string("; ") + c.file + " not idempotent";
        }
    }
    return {ok == std::size(cases), std::to_string(ok) + "/3 goldens match and are idempotent" + failures};
}

} // namespace

int main() {
    struct Criterion {
        const char* name;
        double budget_seconds;
        std::function<Verdict()> run;
    };
    const Criterion criteria[] = {
        {"metrics golden", 1, metrics_golden},
        {"fig-4 disaggregation", 1, figure_four},
        {"replay completeness", 30, replay_completeness},
        {"grammar/filter soundness fuzz", 120, fuzz},
        {"restriction unit suite", 0, restriction_suite},
        {"determinism", 0, determinism},
        {"injection goldens", 0, injection_goldens},
    };
    int failed = 0;
    for (const auto& c : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Verdict v;
        try {
            v = c.run();
        } catch (const std::exception& e) {
            v = {false, std::string("exception: ") + e.what()};
        }
        const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (c.budget_seconds > 0 && seconds > c.budget_seconds) {
            v.ok = false;
            v.detail += "; over the " + std::to_string(static_cast<int>(c.budget_seconds)) + " s budget";
        }
        std::cout << (v.ok ? "PASS " : "FAIL ") << c.name << ": " << v.detail << " ("
                  << std::to_string(seconds).substr(0, std::to_string(seconds).find('.') + 3) << " s)\n";
        failed += v.ok ? 0 : 1;
    }
    return failed == 0 ? 0 : 1;
}
