#pragma once

// Oracle and token datasets (line-delimited JSON, schema "v1") and the
// disaggregation of an oracle into per-position token samples.

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "oraclegen/error.hpp"
#include "oraclegen/token_engine.hpp"

namespace oraclegen {

inline constexpr std::string_view kSchemaVersion = "v1";

struct OracleSample {
    std::string project_name;
    std::string class_name;
    std::string method_signature;
    std::string method_source;
    std::string method_javadoc;
    OracleType oracle_type = OracleType::Pre;
    std::string tag_text;
    /// Empty for a negative sample.
    std::string oracle_text;

    bool positive() const noexcept { return !oracle_text.empty(); }
};

struct TokenSample {
    OracleSample oracle;
    std::string partial_oracle_text;
    std::vector<std::string> legal_tokens;
    std::string next_token;
};

/// One JSON object with alphabetically ordered keys, no trailing newline.
std::string to_json_line(const OracleSample& sample);
std::string to_json_line(const TokenSample& sample);
/// Throw FormatError naming `file`, `line` and the offending field.
OracleSample oracle_sample_from_json(std::string_view text, const std::string& file = "<input>",
                                     std::size_t line = 1);
TokenSample token_sample_from_json(std::string_view text, const std::string& file = "<input>",
                                   std::size_t line = 1);

struct ReadResult {
    std::vector<OracleSample> samples;
    std::vector<std::string> warnings;
};

/// Reads an oracles file; duplicate (class, method, type, tag, oracle) lines
/// are kept and reported as warnings.
ReadResult read_oracle_dataset(const std::filesystem::path& file);
void write_oracle_dataset(const std::vector<OracleSample>& samples, const std::filesystem::path& file);
void write_oracle_dataset(const std::vector<OracleSample>& samples, std::ostream& out);

/// Reads a tokens file, checking nextToken ∈ legalTokens on every line.
std::vector<TokenSample> read_token_dataset(const std::filesystem::path& file);
void write_token_dataset(const std::vector<TokenSample>& samples, const std::filesystem::path& file);
void write_token_dataset(const std::vector<TokenSample>& samples, std::ostream& out);

/// Generation context of a (class, method key, oracle type, rendered tag)
/// identity. Throws Error naming the part that does not resolve. An empty tag
/// text selects a context without tag.
GenerationContext resolve_context(const ProjectModel& model, std::string_view class_name,
                                  std::string_view method_signature, OracleType type, std::string_view tag_text);

/// A true token missing from its candidate set during replay.
class ReplayBreach : public Error {
public:
    ReplayBreach(const std::string& message, std::size_t position, std::string token, std::string restriction)
        : Error(message), position_(position), token_(std::move(token)), restriction_(std::move(restriction)) {}

    std::size_t position() const noexcept { return position_; }
    const std::string& token() const noexcept { return token_; }
    const std::string& restriction() const noexcept { return restriction_; }

private:
    std::size_t position_;
    std::string token_;
    std::string restriction_;
};

/// One sample per oracle token; sample i holds the first i tokens as partial
/// and the filter's candidate set at that point.
std::vector<TokenSample> disaggregate(const OracleSample& sample, const ProjectModel& model,
                                      std::size_t max_tokens = 64);

struct DisaggregateResult {
    std::vector<TokenSample> samples;
    std::size_t negatives_skipped = 0;
};

/// Positive samples only, in input order; runs on `parallelism` threads.
DisaggregateResult disaggregate_all(const std::vector<OracleSample>& samples, const ProjectModel& model,
                                    std::size_t parallelism = 1, std::size_t max_tokens = 64);

/// Inverse of disaggregate for the samples of one oracle, in any order.
std::string reassemble(const std::vector<TokenSample>& samples);

struct DatasetStats {
    std::size_t total = 0;
    std::size_t positive = 0;
    std::size_t negative = 0;
    std::map<std::string, std::size_t> by_type;
};

DatasetStats dataset_stats(const std::vector<OracleSample>& samples);

} // namespace oraclegen
