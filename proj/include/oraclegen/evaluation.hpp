#pragma once

// Ground truth, outcome classification (TP/TN/FP/FN) and metrics reports.

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "oraclegen/generation.hpp"

namespace oraclegen {

inline constexpr std::string_view kNone = "NONE";

struct GroundTruthEntry {
    std::string project_name;
    std::string class_name;
    std::string method_signature;
    OracleType oracle_type = OracleType::Pre;
    std::string tag_text;
    /// Canonical oracle or "NONE".
    std::string expected_oracle = std::string(kNone);

    bool positive() const noexcept { return expected_oracle != kNone; }
};

/// Throws FormatError for malformed lines, unparseable expected oracles and
/// repeated (class, method, type, tag) identities.
std::vector<GroundTruthEntry> read_ground_truth(const std::filesystem::path& file);

/// render(parse(text)) with ==/!= rewritten so that a lone literal or null
/// operand sits on the right. "NONE" maps to itself.
std::string normalize(std::string_view oracle_text);

enum class OutcomeClass { TP, TN, FP, FN };

std::string_view to_string(OutcomeClass klass);

/// Both arguments normalized. A wrong oracle is a false positive.
OutcomeClass classify(std::string_view expected, std::string_view generated);

struct Outcome {
    GroundTruthEntry entry;
    std::string generated = std::string(kNone);
    OutcomeClass klass = OutcomeClass::TN;
    /// Wrong oracle for a positive entry; counted as an extra FN in strict mode.
    bool missed = false;
    OracleStatus status = OracleStatus::Declined;
    std::string diagnostic;
};

Outcome make_outcome(GroundTruthEntry entry, std::string generated);

struct Rational {
    std::int64_t num = 0;
    std::int64_t den = 1;

    /// Half-up integer percent.
    std::int64_t percent() const;
    friend bool operator==(const Rational&, const Rational&) = default;
};

struct Counts {
    std::int64_t tp = 0;
    std::int64_t tn = 0;
    std::int64_t fp = 0;
    std::int64_t fn = 0;

    std::int64_t total() const noexcept { return tp + tn + fp + fn; }
    friend bool operator==(const Counts&, const Counts&) = default;
};

struct GroupMetrics {
    Counts counts;
    /// Empty when the denominator is zero.
    std::optional<Rational> accuracy;
    std::optional<Rational> precision;
    std::optional<Rational> recall;
    std::optional<Rational> f1;
};

/// "73%" or "N/A".
std::string format_percent(const std::optional<Rational>& value);

GroupMetrics metrics_from_counts(const Counts& counts);

struct MetricsReport {
    std::map<std::string, GroupMetrics> per_project;
    GroupMetrics total;
    bool strict = false;
};

MetricsReport compute_metrics(const std::vector<Outcome>& outcomes, bool strict = false);

/// Text table: one row per project plus Total; counts carry their share of
/// the group's entries.
std::string render_report_text(const MetricsReport& report);
std::string render_report_json(const MetricsReport& report);

std::string outcome_json_line(const Outcome& outcome);
void write_outcomes(const std::vector<Outcome>& outcomes, std::ostream& out);
/// Wrong oracles for positive entries, for manual adjudication.
void write_review(const std::vector<Outcome>& outcomes, std::ostream& out);

struct EvaluationOptions {
    GenerationLimits limits;
    std::size_t parallelism = 1;
    bool strict = false;
};

struct EvaluationRun {
    std::vector<Outcome> outcomes;
    MetricsReport report;
    /// Entries that do not resolve against the model.
    std::vector<std::string> skipped;
};

/// Generates an oracle per entry, normalizes and classifies it. Outcomes keep
/// the ground-truth order.
EvaluationRun run_evaluation(const ProjectModel& model, const std::vector<GroundTruthEntry>& entries,
                             Backend& backend, const EvaluationOptions& options = {});

} // namespace oraclegen
