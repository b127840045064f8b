#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include <nlohmann/json.hpp>

#include "oraclegen/evaluation.hpp"
#include "support.hpp"

using namespace oraclegen;
using namespace testing_support;

namespace {

Counts counts(std::int64_t tp, std::int64_t tn, std::int64_t fp, std::int64_t fn) { return Counts{tp, tn, fp, fn}; }

GroundTruthEntry entry(std::string project, std::string expected) {
    GroundTruthEntry e;
    e.project_name = std::move(project);
    e.class_name = "C";
    e.method_signature = "f()";
    e.expected_oracle = std::move(expected);
    return e;
}

} // namespace

TEST(Metrics, TableTwoGolden) {
    const auto m = metrics_from_counts(counts(186, 459, 72, 169));
    EXPECT_EQ(format_percent(m.accuracy), "73%");
    EXPECT_EQ(format_percent(m.precision), "72%");
    EXPECT_EQ(format_percent(m.recall), "52%");
    EXPECT_EQ(format_percent(m.f1), "61%");
    EXPECT_EQ(*m.accuracy, (Rational{645, 886}));
}

TEST(Metrics, AllOnes) {
    const auto m = metrics_from_counts(counts(1, 1, 1, 1));
    EXPECT_EQ(format_percent(m.accuracy), "50%");
    EXPECT_EQ(format_percent(m.precision), "50%");
    EXPECT_EQ(format_percent(m.recall), "50%");
    EXPECT_EQ(format_percent(m.f1), "50%");
}

TEST(Metrics, EmptyDenominatorsAreNotAvailable) {
    const auto none = metrics_from_counts(counts(0, 0, 0, 0));
    EXPECT_EQ(format_percent(none.accuracy), "N/A");
    EXPECT_EQ(format_percent(none.precision), "N/A");
    EXPECT_EQ(format_percent(none.f1), "N/A");
    const auto only_tn = metrics_from_counts(counts(0, 5, 0, 0));
    EXPECT_EQ(format_percent(only_tn.accuracy), "100%");
    EXPECT_EQ(format_percent(only_tn.precision), "N/A");
    EXPECT_EQ(format_percent(only_tn.recall), "N/A");
    const auto zero = metrics_from_counts(counts(0, 0, 3, 4));
    EXPECT_EQ(format_percent(zero.precision), "0%");
    EXPECT_EQ(format_percent(zero.recall), "0%");
    EXPECT_EQ(format_percent(zero.f1), "0%");
}

TEST(Metrics, HalfUpRounding) {
    EXPECT_EQ((Rational{1, 8}).percent(), 13);
    EXPECT_EQ((Rational{1, 3}).percent(), 33);
    EXPECT_EQ((Rational{2, 3}).percent(), 67);
    EXPECT_EQ((Rational{1, 200}).percent(), 1);
}

TEST(Normalize, CanonicalSpacingAndLiteralSide) {
    EXPECT_EQ(normalize("series>=0 ;"), "series >= 0;");
    EXPECT_EQ(normalize("null == source;"), "source == null;");
    EXPECT_EQ(normalize("0 != methodResultID;"), "methodResultID != 0;");
    EXPECT_EQ(normalize("(null == a) == false;"), "(a == null) == false;");
    EXPECT_EQ(normalize("1 < x;"), "1 < x;");
    EXPECT_EQ(normalize("NONE"), "NONE");
    EXPECT_THROW(normalize("series >="), SyntaxError);
}

TEST(Classify, FivePartition) {
    EXPECT_EQ(classify("a == null;", "a == null;"), OutcomeClass::TP);
    EXPECT_EQ(classify("NONE", "NONE"), OutcomeClass::TN);
    EXPECT_EQ(classify("NONE", "a == null;"), OutcomeClass::FP);
    EXPECT_EQ(classify("a == null;", "NONE"), OutcomeClass::FN);
    EXPECT_EQ(classify("a == null;", "a != null;"), OutcomeClass::FP);
    const auto wrong = make_outcome(entry("p", "a == null;"), "a != null;");
    EXPECT_TRUE(wrong.missed);
    EXPECT_FALSE(make_outcome(entry("p", "NONE"), "a != null;").missed);
}

TEST(Classify, StrictModeAddsMissedAsFalseNegative) {
    const std::vector<Outcome> outcomes{make_outcome(entry("p", "a == null;"), "a != null;"),
                                        make_outcome(entry("p", "a == null;"), "a == null;")};
    const auto lenient = compute_metrics(outcomes, false);
    EXPECT_EQ(lenient.total.counts, counts(1, 0, 1, 0));
    const auto strict = compute_metrics(outcomes, true);
    EXPECT_EQ(strict.total.counts, counts(1, 0, 1, 1));
    EXPECT_TRUE(strict.strict);
}

TEST(Metrics, PermutationInvariant) {
    std::vector<Outcome> outcomes;
    const char* expected[] = {"a == null;", "NONE", "b >= 0;", "NONE", "c.isEmpty();"};
    const char* generated[] = {"a == null;", "NONE", "NONE", "x == null;", "c.isEmpty() == false;"};
    for (int round = 0; round < 4; ++round) {
        for (int i = 0; i < 5; ++i) {
            outcomes.push_back(make_outcome(entry(round % 2 ? "p" : "q", expected[i]), generated[i]));
        }
    }
    const auto base = render_report_text(compute_metrics(outcomes));
    std::mt19937 rng(11);
    for (int i = 0; i < 20; ++i) {
        std::shuffle(outcomes.begin(), outcomes.end(), rng);
        EXPECT_EQ(render_report_text(compute_metrics(outcomes)), base);
    }
}

TEST(Report, TextAndJsonShapes) {
    std::vector<Outcome> outcomes{make_outcome(entry("alpha", "a == null;"), "a == null;"),
                                  make_outcome(entry("alpha", "NONE"), "NONE"),
                                  make_outcome(entry("beta", "NONE"), "a == null;")};
    const auto report = compute_metrics(outcomes);
    const auto text = render_report_text(report);
    EXPECT_NE(text.find("Project"), std::string::npos);
    EXPECT_NE(text.find("alpha"), std::string::npos);
    EXPECT_NE(text.find("Total"), std::string::npos);
    EXPECT_NE(text.find("1 (50%)"), std::string::npos);
    const auto json = nlohmann::json::parse(render_report_json(report));
    EXPECT_TRUE(json.contains("total"));
    const auto line = nlohmann::json::parse(outcome_json_line(outcomes[2]));
    EXPECT_EQ(line["outcome"], "FP");
    EXPECT_EQ(line["projectName"], "beta");
}

TEST(GroundTruth, ReadsCorpusFile) {
    const auto entries = read_ground_truth(groundtruth());
    EXPECT_EQ(entries.size(), 56u);
    EXPECT_EQ(std::count_if(entries.begin(), entries.end(), [](const auto& e) { return e.positive(); }), 38);
}

TEST(GroundTruth, RejectsDuplicatesAndBadOracles) {
    const auto dir = scratch_dir("gt_bad");
    const std::string line =
        R"J({"className":"C","expectedOracle":"a == null;","methodSignature":"f()","oracleType":"PRE","projectName":"p","tagText":"t"})J";
    std::ofstream(dir / "dup.jsonl") << line << "\n" << line << "\n";
    EXPECT_THROW(read_ground_truth(dir / "dup.jsonl"), FormatError);
    std::ofstream(dir / "bad.jsonl")
        << R"J({"className":"C","expectedOracle":"a ==","methodSignature":"f()","oracleType":"PRE","projectName":"p","tagText":"t"})J"
        << "\n";
    EXPECT_THROW(read_ground_truth(dir / "bad.jsonl"), FormatError);
}

TEST(RunEvaluation, ScriptedBackendIsPerfect) {
    const auto entries = read_ground_truth(groundtruth());
    auto backend = keyed_backend(load_keyed_answers(groundtruth().string()));
    EvaluationOptions options;
    options.parallelism = 4;
    const auto run = run_evaluation(corpus(), entries, *backend, options);
    EXPECT_TRUE(run.skipped.empty());
    EXPECT_EQ(run.report.total.counts, counts(38, 18, 0, 0));
    ASSERT_EQ(run.outcomes.size(), entries.size());
    for (std::size_t i = 0; i < entries.size(); ++i) {
        EXPECT_EQ(run.outcomes[i].entry.method_signature, entries[i].method_signature);
    }
}

TEST(RunEvaluation, DecliningBackendGivesNoPositives) {
    const auto entries = read_ground_truth(groundtruth());
    auto backend = scripted_backend({"x"}, std::string(kNoAssertArm));
    const auto run = run_evaluation(corpus(), entries, *backend);
    EXPECT_EQ(run.report.total.counts, counts(0, 18, 0, 38));
    EXPECT_EQ(format_percent(run.report.total.precision), "N/A");
    EXPECT_EQ(format_percent(run.report.total.f1), "N/A");
}

TEST(RunEvaluation, HeuristicBaselineSnapshot) {
    const auto entries = read_ground_truth(groundtruth());
    auto backend = heuristic_backend();
    const auto run = run_evaluation(corpus(), entries, *backend);
    EXPECT_EQ(run.report.total.counts, counts(11, 18, 1, 26));
    EXPECT_EQ(format_percent(run.report.total.accuracy), "52%");
    EXPECT_EQ(format_percent(run.report.total.precision), "92%");
    EXPECT_EQ(format_percent(run.report.total.recall), "30%");
    EXPECT_EQ(format_percent(run.report.total.f1), "45%");
}

TEST(RunEvaluation, UnresolvedEntriesAreSkipped) {
    auto entries = read_ground_truth(groundtruth());
    entries.resize(2);
    entries[1].method_signature = "nothing()";
    auto backend = heuristic_backend();
    const auto run = run_evaluation(corpus(), entries, *backend);
    EXPECT_EQ(run.skipped.size(), 1u);
    EXPECT_EQ(run.outcomes.size(), 1u);
}
