#include <algorithm>
#include <fstream>
#include <set>
#include <tuple>

#include <nlohmann/json.hpp>

#include "oraclegen/dataset.hpp"
#include "oraclegen/parallel.hpp"

namespace oraclegen {

namespace {

using json = nlohmann::json;

json oracle_fields(const OracleSample& s) {
    json j;
    j["v"] = kSchemaVersion;
    j["projectName"] = s.project_name;
    j["className"] = s.class_name;
    j["methodSignature"] = s.method_signature;
    j["methodSource"] = s.method_source;
    j["methodJavadoc"] = s.method_javadoc;
    j["oracleType"] = to_string(s.oracle_type);
    j["tagText"] = s.tag_text;
    j["oracleText"] = s.oracle_text;
    return j;
}

class LineReader {
public:
    LineReader(const json& j, const std::string& file, std::size_t line) : j_(j), file_(file), line_(line) {}

    std::string str(const char* field) const {
        const auto it = j_.find(field);
        if (it == j_.end()) {
            fail(std::string("missing field '") + field + "'");
        }
        if (!it->is_string()) {
            fail(std::string("field '") + field + "' must be a string");
        }
        return it->get<std::string>();
    }

    std::vector<std::string> list(const char* field) const {
        const auto it = j_.find(field);
        if (it == j_.end()) {
            fail(std::string("missing field '") + field + "'");
        }
        if (!it->is_array() || !std::all_of(it->begin(), it->end(), [](const json& e) { return e.is_string(); })) {
            fail(std::string("field '") + field + "' must be a list of strings");
        }
        return it->get<std::vector<std::string>>();
    }

    [[noreturn]] void fail(const std::string& what) const { throw FormatError(file_, line_, what); }

private:
    const json& j_;
    const std::string& file_;
    std::size_t line_;
};

json parse_line(std::string_view text, const std::string& file, std::size_t line) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw FormatError(file, line, std::string("malformed JSON: ") + e.what());
    }
    if (!j.is_object()) {
        throw FormatError(file, line, "expected a JSON object");
    }
    return j;
}

OracleSample read_oracle_fields(const LineReader& r) {
    if (r.str("v") != kSchemaVersion) {
        r.fail("field 'v' must be \"" + std::string(kSchemaVersion) + "\"");
    }
    OracleSample s;
    s.project_name = r.str("projectName");
    s.class_name = r.str("className");
    s.method_signature = r.str("methodSignature");
    s.method_source = r.str("methodSource");
    s.method_javadoc = r.str("methodJavadoc");
    const auto type = parse_oracle_type(r.str("oracleType"));
    if (!type) {
        r.fail("field 'oracleType' must be PRE, NORMAL_POST or EXCEPT_POST");
    }
    s.oracle_type = *type;
    s.tag_text = r.str("tagText");
    s.oracle_text = r.str("oracleText");
    if (s.positive()) {
        try {
            grammar::parse(s.oracle_text);
        } catch (const Error& e) {
            r.fail(std::string("field 'oracleText' does not parse: ") + e.what());
        }
    }
    return s;
}

auto identity(const OracleSample& s) {
    return std::tie(s.project_name, s.class_name, s.method_signature, s.method_source, s.method_javadoc,
                    s.oracle_type, s.tag_text, s.oracle_text);
}

template <typename T, typename Parse>
std::vector<T> read_lines(const std::filesystem::path& file, Parse parse) {
    std::ifstream in(file);
    if (!in) {
        throw Error("cannot open " + file.string());
    }
    std::vector<T> out;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) {
            continue;
        }
        out.push_back(parse(line, file.string(), line_no));
    }
    return out;
}

std::ofstream open_out(const std::filesystem::path& file) {
    std::ofstream out(file, std::ios::binary);
    if (!out) {
        throw Error("cannot write " + file.string());
    }
    return out;
}

} // namespace

std::string to_json_line(const OracleSample& sample) {
    return oracle_fields(sample).dump();
}

std::string to_json_line(const TokenSample& sample) {
    json j = oracle_fields(sample.oracle);
    j["partialOracleText"] = sample.partial_oracle_text;
    j["legalTokens"] = sample.legal_tokens;
    j["nextToken"] = sample.next_token;
    return j.dump();
}

OracleSample oracle_sample_from_json(std::string_view text, const std::string& file, std::size_t line) {
    const json j = parse_line(text, file, line);
    return read_oracle_fields(LineReader(j, file, line));
}

TokenSample token_sample_from_json(std::string_view text, const std::string& file, std::size_t line) {
    const json j = parse_line(text, file, line);
    const LineReader r(j, file, line);
    TokenSample s;
    s.oracle = read_oracle_fields(r);
    s.partial_oracle_text = r.str("partialOracleText");
    s.legal_tokens = r.list("legalTokens");
    s.next_token = r.str("nextToken");
    if (std::find(s.legal_tokens.begin(), s.legal_tokens.end(), s.next_token) == s.legal_tokens.end()) {
        r.fail("nextToken '" + s.next_token + "' is not in legalTokens");
    }
    return s;
}

ReadResult read_oracle_dataset(const std::filesystem::path& file) {
    ReadResult result;
    result.samples = read_lines<OracleSample>(file, [](const std::string& l, const std::string& f, std::size_t n) {
        return oracle_sample_from_json(l, f, n);
    });
    std::set<std::tuple<std::string, std::string, OracleType, std::string, std::string>> seen;
    for (std::size_t i = 0; i < result.samples.size(); ++i) {
        const auto& s = result.samples[i];
        if (!seen.emplace(s.class_name, s.method_signature, s.oracle_type, s.tag_text, s.oracle_text).second) {
            result.warnings.push_back(file.string() + ": duplicate sample " + s.class_name + "." +
                                      s.method_signature + " " + std::string(to_string(s.oracle_type)) + " '" +
                                      s.oracle_text + "' (record " + std::to_string(i + 1) + ")");
        }
    }
    return result;
}

void write_oracle_dataset(const std::vector<OracleSample>& samples, std::ostream& out) {
    for (const auto& s : samples) {
        out << to_json_line(s) << '\n';
    }
}

void write_oracle_dataset(const std::vector<OracleSample>& samples, const std::filesystem::path& file) {
    auto out = open_out(file);
    write_oracle_dataset(samples, out);
}

std::vector<TokenSample> read_token_dataset(const std::filesystem::path& file) {
    return read_lines<TokenSample>(file, [](const std::string& l, const std::string& f, std::size_t n) {
        return token_sample_from_json(l, f, n);
    });
}

void write_token_dataset(const std::vector<TokenSample>& samples, std::ostream& out) {
    for (const auto& s : samples) {
        out << to_json_line(s) << '\n';
    }
}

void write_token_dataset(const std::vector<TokenSample>& samples, const std::filesystem::path& file) {
    auto out = open_out(file);
    write_token_dataset(samples, out);
}

GenerationContext resolve_context(const ProjectModel& model, std::string_view class_name,
                                  std::string_view method_signature, OracleType type, std::string_view tag_text) {
    const ClassInfo* owner = model.find_class(class_name);
    if (!owner || owner->is_external) {
        throw Error("unknown class " + std::string(class_name));
    }
    const MethodInfo* method = owner->find_method(method_signature);
    if (!method) {
        throw Error("unknown method " + std::string(class_name) + "." + std::string(method_signature));
    }
    std::optional<DocTag> tag;
    if (!tag_text.empty()) {
        for (const auto& t : method->tags) {
            if (t.render() == tag_text) {
                tag = t;
                break;
            }
        }
        if (!tag) {
            throw Error("no doc tag \"" + std::string(tag_text) + "\" on " + std::string(class_name) + "." +
                        std::string(method_signature));
        }
    }
    if (type == OracleType::NormalPost && !method->returns_value()) {
        throw Error("NORMAL_POST on void method " + std::string(class_name) + "." + std::string(method_signature));
    }
    return GenerationContext::make(model, *owner, *method, type, tag);
}

std::vector<TokenSample> disaggregate(const OracleSample& sample, const ProjectModel& model, std::size_t max_tokens) {
    if (!sample.positive()) {
        throw ContractViolation("cannot disaggregate a negative sample");
    }
    const auto ctx = resolve_context(model, sample.class_name, sample.method_signature, sample.oracle_type,
                                     sample.tag_text);
    const auto tokens = grammar::tokenize(grammar::render(grammar::parse(sample.oracle_text)));
    TokenEngine engine(ctx);
    grammar::GrammarState state = grammar::initial_state();
    std::vector<TokenSample> out;
    for (std::size_t i = 0; i < tokens.size(); ++i) {
        const FilterResult filtered = engine.candidates(state, max_tokens);
        const Candidate* match = nullptr;
        for (const auto& c : filtered.kept.candidates) {
            if (c.token.text == tokens[i].text) {
                match = &c;
                break;
            }
        }
        if (!match) {
            std::string reason = filtered.reason_for(tokens[i].text);
            if (reason.empty()) {
                reason = "collector";
            }
            throw ReplayBreach("replay breach in " + sample.class_name + "." + sample.method_signature +
                                   " at position " + std::to_string(i) + ": token '" + tokens[i].text +
                                   "' after '" + state.text() + "' violates " + reason,
                               i, tokens[i].text, reason);
        }
        TokenSample ts;
        ts.oracle = sample;
        ts.partial_oracle_text = state.text();
        ts.legal_tokens = filtered.kept.texts();
        ts.next_token = tokens[i].text;
        out.push_back(std::move(ts));
        state = engine.advance(state, match->token);
    }
    return out;
}

DisaggregateResult disaggregate_all(const std::vector<OracleSample>& samples, const ProjectModel& model,
                                    std::size_t parallelism, std::size_t max_tokens) {
    std::vector<std::vector<TokenSample>> parts(samples.size());
    parallel_for(samples.size(), parallelism, [&](std::size_t i) {
        if (samples[i].positive()) {
            parts[i] = disaggregate(samples[i], model, max_tokens);
        }
    });
    DisaggregateResult result;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        if (!samples[i].positive()) {
            ++result.negatives_skipped;
        }
        for (auto& ts : parts[i]) {
            result.samples.push_back(std::move(ts));
        }
    }
    return result;
}

std::string reassemble(const std::vector<TokenSample>& samples) {
    if (samples.empty()) {
        throw Error("reassemble: no samples");
    }
    const auto& first = samples.front().oracle;
    std::vector<const TokenSample*> by_position(samples.size(), nullptr);
    for (const auto& s : samples) {
        if (identity(s.oracle) != identity(first)) {
            throw Error("reassemble: identity mismatch between " + first.class_name + "." + first.method_signature +
                        " '" + first.oracle_text + "' and " + s.oracle.class_name + "." +
                        s.oracle.method_signature + " '" + s.oracle.oracle_text + "'");
        }
        const std::size_t pos =
            s.partial_oracle_text.empty() ? 0 : grammar::tokenize(s.partial_oracle_text).size();
        if (pos >= by_position.size()) {
            throw Error("reassemble: gap before position " + std::to_string(pos));
        }
        if (by_position[pos]) {
            throw Error("reassemble: two samples at position " + std::to_string(pos));
        }
        by_position[pos] = &s;
    }
    std::string text;
    for (const auto* s : by_position) {
        text += s->next_token;
        text += ' ';
    }
    return grammar::render(grammar::parse(text));
}

DatasetStats dataset_stats(const std::vector<OracleSample>& samples) {
    DatasetStats stats;
    for (const auto& s : samples) {
        ++stats.total;
        ++(s.positive() ? stats.positive : stats.negative);
        ++stats.by_type[std::string(to_string(s.oracle_type))];
    }
    return stats;
}

} // namespace oraclegen
