#pragma once

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "oraclegen/code_model.hpp"
#include "oraclegen/oracle_grammar.hpp"
#include "oraclegen/token_engine.hpp"

namespace testing_support {

inline std::filesystem::path fixtures() { return ORACLEGEN_FIXTURES; }
inline std::filesystem::path corpus_src() { return fixtures() / "corpus" / "src"; }
inline std::filesystem::path groundtruth() { return fixtures() / "corpus" / "groundtruth.jsonl"; }
inline std::filesystem::path sql_signatures() { return fixtures() / "signatures" / "java_sql.sig.jsonl"; }

inline const oraclegen::ProjectModel& corpus() {
    static const oraclegen::ProjectModel model = oraclegen::build_project_model(corpus_src(), {sql_signatures()});
    return model;
}

inline std::string slurp(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

inline std::filesystem::path scratch_dir(const std::string& name) {
    auto dir = std::filesystem::temp_directory_path() / ("oraclegen_test_" + name);
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

inline constexpr const char* kRenderer = "org.jfree.chart.renderer.AbstractCategoryItemRenderer";
inline constexpr const char* kConverter = "org.apache.commons.lang.ObjectConverter";
inline constexpr const char* kPrinter = "org.apache.commons.csv.CSVPrinter";
inline constexpr const char* kShorts = "com.google.common.primitives.Shorts";
inline constexpr const char* kSimpleMap = "org.sample.util.SimpleMap";
inline constexpr const char* kSetGenerator = "setSeriesItemLabelGenerator(int,CategoryItemLabelGenerator)";

inline oraclegen::GenerationContext context(const char* cls, const char* method, oraclegen::OracleType type) {
    const auto& model = corpus();
    const auto* owner = model.find_class(cls);
    const auto* unit = owner->find_method(method);
    return oraclegen::GenerationContext::make(model, *owner, *unit, type);
}

/// Walks `partial` through the engine, taking each token from the kept
/// candidates so that member tokens get their engine kind.
class Probe {
public:
    Probe(const char* cls, const char* method, oraclegen::OracleType type)
        : engine_(context(cls, method, type)), state_(oraclegen::grammar::initial_state()) {}

    bool walk(const std::string& partial) {
        if (partial.empty()) {
            return true;
        }
        for (const auto& token : oraclegen::grammar::tokenize(partial)) {
            if (!step(token.text)) {
                return false;
            }
        }
        return true;
    }

    bool step(const std::string& text) {
        const auto result = engine_.candidates(state_, 64);
        for (const auto& c : result.kept.candidates) {
            if (c.token.text == text) {
                state_ = engine_.advance(state_, c.token);
                return true;
            }
        }
        return false;
    }

    oraclegen::FilterResult next() const { return engine_.candidates(state_, 64); }

    /// "kept", the restriction id, or "absent".
    std::string verdict(const std::string& text) const {
        const auto result = next();
        if (result.kept.contains(text)) {
            return "kept";
        }
        const auto reason = result.reason_for(text);
        return reason.empty() ? "absent" : reason;
    }

    /// Filters a hand-made candidate the collector would not offer.
    std::string verdict_for(oraclegen::grammar::Token token) const {
        const auto result = engine_.filter(state_, {oraclegen::Candidate{std::move(token)}}, 64);
        return result.kept.empty() ? result.reason_for(result.pruned.at(0).token.text) : "kept";
    }

    const oraclegen::TokenEngine& engine() const { return engine_; }
    const oraclegen::grammar::GrammarState& state() const { return state_; }

private:
    oraclegen::TokenEngine engine_;
    oraclegen::grammar::GrammarState state_;
};

} // namespace testing_support
