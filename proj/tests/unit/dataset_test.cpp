#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "oraclegen/dataset.hpp"
#include "support.hpp"

using namespace oraclegen;
using namespace testing_support;
using T = OracleType;

namespace {

OracleSample load_factor_sample() {
    OracleSample s;
    s.project_name = "sample";
    s.class_name = kSimpleMap;
    s.method_signature = "SimpleMap(int,float)";
    s.oracle_type = T::ExceptPost;
    s.tag_text = "@throws IllegalArgumentException if the load factor is nonpositive";
    s.oracle_text = "loadFactor <= 0;";
    return s;
}

OracleSample series_sample(std::string oracle) {
    OracleSample s;
    s.project_name = "jfreechart";
    s.class_name = kRenderer;
    s.method_signature = kSetGenerator;
    s.oracle_type = T::Pre;
    s.tag_text = "@param series the series index (zero based).";
    s.oracle_text = std::move(oracle);
    return s;
}

const char* kThreeLines =
    R"J({"className":"org.sample.util.SimpleMap","methodJavadoc":"","methodSignature":"SimpleMap(int,float)","methodSource":"","oracleText":"loadFactor <= 0;","oracleType":"EXCEPT_POST","projectName":"sample","tagText":"@throws IllegalArgumentException if the load factor is nonpositive","v":"v1"}
{"className":"org.sample.util.SimpleMap","methodJavadoc":"","methodSignature":"SimpleMap(int,float)","methodSource":"","oracleText":"","oracleType":"PRE","projectName":"sample","tagText":"@param initialCapacity the initial capacity","v":"v1"}
{"className":"org.sample.util.SimpleMap","methodJavadoc":"","methodSignature":"size()","methodSource":"","oracleText":"methodResultID >= 0;","oracleType":"NORMAL_POST","projectName":"sample","tagText":"@return the number of key-value mappings in this map","v":"v1"}
)J";

} // namespace

TEST(Dataset, ReadsThreeLineFixture) {
    const auto dir = scratch_dir("dataset_three");
    std::ofstream(dir / "oracles.jsonl") << kThreeLines;
    const auto read = read_oracle_dataset(dir / "oracles.jsonl");
    ASSERT_EQ(read.samples.size(), 3u);
    EXPECT_TRUE(read.warnings.empty());
    EXPECT_TRUE(read.samples[0].positive());
    EXPECT_FALSE(read.samples[1].positive());
    EXPECT_EQ(read.samples[2].oracle_type, T::NormalPost);
    const auto stats = dataset_stats(read.samples);
    EXPECT_EQ(stats.total, 3u);
    EXPECT_EQ(stats.positive, 2u);
    EXPECT_EQ(stats.negative, 1u);
    EXPECT_EQ(stats.by_type.at("PRE"), 1u);

    std::ostringstream out;
    write_oracle_dataset(read.samples, out);
    EXPECT_EQ(out.str(), kThreeLines);
}

TEST(Dataset, MissingFieldNamesFieldAndLine) {
    try {
        oracle_sample_from_json(R"J({"v":"v1","projectName":"p","className":"A","methodSignature":"f()","methodSource":"","methodJavadoc":""})J", "x.jsonl", 7);
        FAIL();
    } catch (const FormatError& e) {
        EXPECT_EQ(e.line(), 7u);
        EXPECT_NE(std::string(e.what()).find("x.jsonl:7"), std::string::npos);
        EXPECT_NE(std::string(e.what()).find("oracleType"), std::string::npos);
    }
    EXPECT_THROW(oracle_sample_from_json("not json"), FormatError);
}

TEST(Dataset, DuplicatesWarn) {
    const auto dir = scratch_dir("dataset_dup");
    const std::string first_line = std::string(kThreeLines).substr(0, std::string(kThreeLines).find('\n') + 1);
    std::ofstream(dir / "o.jsonl") << first_line << first_line;
    const auto read = read_oracle_dataset(dir / "o.jsonl");
    EXPECT_EQ(read.samples.size(), 2u);
    EXPECT_EQ(read.warnings.size(), 1u);
}

TEST(Dataset, TokenSampleRoundTripAndMembership) {
    const auto samples = disaggregate(load_factor_sample(), corpus());
    for (const auto& s : samples) {
        const auto back = token_sample_from_json(to_json_line(s));
        EXPECT_EQ(to_json_line(back), to_json_line(s));
    }
    auto broken = samples[1];
    broken.next_token = "~";
    EXPECT_THROW(token_sample_from_json(to_json_line(broken)), FormatError);
}

TEST(Disaggregate, FigureFour) {
    const auto samples = disaggregate(load_factor_sample(), corpus());
    ASSERT_EQ(samples.size(), 4u);
    EXPECT_EQ(samples[0].partial_oracle_text, "");
    EXPECT_EQ(samples[0].next_token, "loadFactor");
    EXPECT_EQ(samples[1].partial_oracle_text, "loadFactor");
    EXPECT_EQ(samples[1].legal_tokens, (std::vector<std::string>{"!=", "<", "<=", "==", ">", ">="}));
    EXPECT_EQ(samples[1].next_token, "<=");
    EXPECT_EQ(samples[2].partial_oracle_text, "loadFactor <= ");
    EXPECT_EQ(samples[3].next_token, ";");
    for (const auto& s : samples) {
        EXPECT_NE(std::find(s.legal_tokens.begin(), s.legal_tokens.end(), s.next_token), s.legal_tokens.end());
    }
}

TEST(Disaggregate, BreachNamesRestriction) {
    try {
        disaggregate(series_sample("true;"), corpus());
        FAIL();
    } catch (const ReplayBreach& e) {
        EXPECT_EQ(e.position(), 1u);
        EXPECT_EQ(e.token(), ";");
        EXPECT_EQ(e.restriction(), "R13");
    }
    try {
        disaggregate(series_sample("series.x == 0;"), corpus());
        FAIL();
    } catch (const ReplayBreach& e) {
        EXPECT_EQ(e.position(), 1u);
        EXPECT_EQ(e.restriction(), "R7");
    }
}

TEST(Disaggregate, UnknownIdentityIsError) {
    auto s = load_factor_sample();
    s.method_signature = "SimpleMap(int)";
    EXPECT_THROW(disaggregate(s, corpus()), Error);
    s = load_factor_sample();
    s.tag_text = "@throws Nothing";
    EXPECT_THROW(disaggregate(s, corpus()), Error);
    s = load_factor_sample();
    s.class_name = "no.Such";
    EXPECT_THROW(disaggregate(s, corpus()), Error);
}

TEST(Disaggregate, AllSkipsNegativesAndKeepsOrder) {
    auto negative = series_sample("");
    const std::vector<OracleSample> input{series_sample("series >= 0;"), negative, load_factor_sample()};
    const auto serial = disaggregate_all(input, corpus(), 1);
    const auto parallel = disaggregate_all(input, corpus(), 4);
    EXPECT_EQ(serial.negatives_skipped, 1u);
    ASSERT_EQ(serial.samples.size(), 8u);
    EXPECT_EQ(serial.samples[0].oracle.class_name, kRenderer);
    EXPECT_EQ(serial.samples[4].oracle.class_name, kSimpleMap);
    std::ostringstream a, b;
    write_token_dataset(serial.samples, a);
    write_token_dataset(parallel.samples, b);
    EXPECT_EQ(a.str(), b.str());
}

TEST(Reassemble, ShuffledSamplesRebuildOracle) {
    auto samples = disaggregate(series_sample("(series >= 0) == true;"), corpus());
    std::mt19937 rng(7);
    std::shuffle(samples.begin(), samples.end(), rng);
    EXPECT_EQ(reassemble(samples), "(series >= 0) == true;");
}

TEST(Reassemble, RejectsGapsAndMixedOracles) {
    auto samples = disaggregate(load_factor_sample(), corpus());
    auto gap = samples;
    gap.erase(gap.begin() + 1);
    EXPECT_THROW(reassemble(gap), Error);
    auto dup = samples;
    dup.push_back(samples[1]);
    EXPECT_THROW(reassemble(dup), Error);
    auto mixed = samples;
    mixed[2].oracle.tag_text = "@throws other";
    EXPECT_THROW(reassemble(mixed), Error);
    EXPECT_THROW(reassemble({}), Error);
}

TEST(Dataset, StatsMatchLineCounts) {
    std::vector<OracleSample> samples;
    for (int i = 0; i < 9; ++i) {
        auto s = i % 3 == 0 ? series_sample("") : load_factor_sample();
        s.method_source = "line " + std::to_string(i);
        samples.push_back(s);
    }
    const auto dir = scratch_dir("dataset_stats");
    write_oracle_dataset(samples, dir / "o.jsonl");
    const auto text = slurp(dir / "o.jsonl");
    std::size_t empty = 0;
    for (std::size_t pos = 0; (pos = text.find("\"oracleText\":\"\"", pos)) != std::string::npos; ++pos) {
        ++empty;
    }
    const auto stats = dataset_stats(read_oracle_dataset(dir / "o.jsonl").samples);
    EXPECT_EQ(stats.total, static_cast<std::size_t>(std::count(text.begin(), text.end(), '\n')));
    EXPECT_EQ(stats.negative, empty);
    EXPECT_EQ(stats.positive + stats.negative, stats.total);
}
