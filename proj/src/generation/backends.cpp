#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <mutex>

#include <nlohmann/json.hpp>

#include "oraclegen/generation.hpp"

namespace oraclegen {

namespace {

using json = nlohmann::json;

std::string lower(std::string_view text) {
    std::string out(text);
    std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return std::tolower(c); });
    return out;
}

bool has_word(std::string_view text, std::string_view word) {
    std::size_t pos = 0;
    auto boundary = [](char c) { return !(std::isalnum(static_cast<unsigned char>(c)) || c == '_'); };
    while ((pos = text.find(word, pos)) != std::string_view::npos) {
        const bool left = pos == 0 || boundary(text[pos - 1]);
        const bool right = pos + word.size() == text.size() || boundary(text[pos + word.size()]);
        if (left && right) {
            return true;
        }
        ++pos;
    }
    return false;
}

std::string token_at(const std::string& oracle, std::size_t position, const std::string& who) {
    const auto tokens = grammar::tokenize(oracle);
    if (position >= tokens.size()) {
        throw BackendError(who + ": no token at position " + std::to_string(position) + " of '" + oracle + "'");
    }
    return tokens[position].text;
}

class ScriptedBackend : public Backend {
public:
    ScriptedBackend(std::vector<std::string> script, std::string reply)
        : script_(std::move(script)), reply_(std::move(reply)) {}

    std::string evaluate(const PromptBundle&) override { return reply_; }

    std::string select(const PromptBundle&) override {
        if (cursor_ >= script_.size()) {
            throw BackendError("script exhausted after " + std::to_string(script_.size()) + " tokens");
        }
        return script_[cursor_++];
    }

    std::string describe() const override { return "scripted"; }

private:
    std::vector<std::string> script_;
    std::string reply_;
    std::size_t cursor_ = 0;
};

class KeyedBackend : public Backend {
public:
    explicit KeyedBackend(std::vector<KeyedAnswer> answers) {
        for (auto& a : answers) {
            table_[answer_key(a.class_name, a.method_signature, a.oracle_type, a.tag_text)] = std::move(a.oracle);
        }
    }

    std::string evaluate(const PromptBundle& prompt) override {
        return lookup(prompt.fields) ? std::string(kAssertArm) : std::string(kNoAssertArm);
    }

    std::string select(const PromptBundle& prompt) override {
        const auto oracle = lookup(prompt.fields);
        if (!oracle) {
            throw BackendError("scripted: no oracle for " + prompt.fields.class_name + "." +
                               prompt.fields.method_signature);
        }
        return token_at(*oracle, prompt.fields.position, "scripted");
    }

    bool serial() const override { return false; }
    std::string describe() const override { return "scripted"; }

private:
    std::optional<std::string> lookup(const PromptFields& f) const {
        auto it = table_.find(answer_key(f.class_name, f.method_signature, f.oracle_type, f.tag_text));
        return it == table_.end() ? std::nullopt : it->second;
    }

    std::map<std::string, std::optional<std::string>> table_;
};

class HeuristicBackend : public Backend {
public:
    explicit HeuristicBackend(HeuristicOptions options) : options_(options) {}

    std::string evaluate(const PromptBundle& prompt) override {
        return heuristic_oracle(prompt.fields, options_) ? std::string(kAssertArm) : std::string(kNoAssertArm);
    }

    std::string select(const PromptBundle& prompt) override {
        const auto oracle = heuristic_oracle(prompt.fields, options_);
        if (!oracle) {
            throw BackendError("heuristic: no rule applies");
        }
        return token_at(*oracle, prompt.fields.position, "heuristic");
    }

    bool serial() const override { return false; }
    std::string describe() const override { return options_.negate ? "heuristic:negate" : "heuristic"; }

private:
    HeuristicOptions options_;
};

} // namespace

std::unique_ptr<Backend> scripted_backend(std::vector<std::string> script, std::string evaluator_reply) {
    if (script.empty()) {
        throw ContractViolation("scripted backend needs a non-empty script");
    }
    return std::make_unique<ScriptedBackend>(std::move(script), std::move(evaluator_reply));
}

std::string answer_key(std::string_view class_name, std::string_view method_signature, OracleType type,
                       std::string_view tag_text) {
    std::string key(class_name);
    key += '\x1f';
    key += method_signature;
    key += '\x1f';
    key += to_string(type);
    key += '\x1f';
    key += tag_text;
    return key;
}

std::unique_ptr<Backend> keyed_backend(std::vector<KeyedAnswer> answers) {
    return std::make_unique<KeyedBackend>(std::move(answers));
}

std::vector<KeyedAnswer> load_keyed_answers(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw Error("cannot open script file " + path);
    }
    std::vector<KeyedAnswer> out;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) {
            continue;
        }
        try {
            const json j = json::parse(line);
            KeyedAnswer a;
            a.class_name = j.at("className").get<std::string>();
            a.method_signature = j.at("methodSignature").get<std::string>();
            const auto type = parse_oracle_type(j.at("oracleType").get<std::string>());
            if (!type) {
                throw FormatError(path, line_no, "unknown oracleType");
            }
            a.oracle_type = *type;
            a.tag_text = j.value("tagText", "");
            if (j.contains("expectedOracle")) {
                const auto text = j["expectedOracle"].get<std::string>();
                if (text != "NONE") {
                    a.oracle = text;
                }
            } else {
                const auto text = j.at("oracleText").get<std::string>();
                if (!text.empty()) {
                    a.oracle = text;
                }
            }
            out.push_back(std::move(a));
        } catch (const json::exception& e) {
            throw FormatError(path, line_no, e.what());
        }
    }
    return out;
}

std::optional<std::string> heuristic_oracle(const PromptFields& f, const HeuristicOptions& options) {
    const std::string text = lower(f.tag_text);
    if (f.oracle_type == OracleType::Pre && text.rfind("@param ", 0) == 0) {
        const std::size_t end = f.tag_text.find(' ', 7);
        const std::string target = f.tag_text.substr(7, end == std::string::npos ? std::string::npos : end - 7);
        const std::string rest = end == std::string::npos ? std::string() : text.substr(end);
        if (rest.find("must not be null") != std::string::npos || rest.find("not null") != std::string::npos ||
            rest.find("non-null") != std::string::npos) {
            return "(" + target + " == null) == false;";
        }
        if (rest.find("(zero based)") != std::string::npos || rest.find("zero-based") != std::string::npos ||
            rest.find("non-negative") != std::string::npos) {
            return options.negate ? "(" + target + " >= 0) == false;" : target + " >= 0;";
        }
        return std::nullopt;
    }
    if (f.oracle_type == OracleType::ExceptPost && has_word(text, "null")) {
        for (const auto& p : f.parameters) {
            if (has_word(f.tag_text, p)) {
                return p + " == null;";
            }
        }
        if (f.parameters.size() == 1) {
            return f.parameters.front() + " == null;";
        }
    }
    return std::nullopt;
}

std::unique_ptr<Backend> heuristic_backend(HeuristicOptions options) {
    return std::make_unique<HeuristicBackend>(options);
}

BackendSpec BackendSpec::parse(std::string_view text) {
    BackendSpec spec;
    if (text.rfind("scripted:", 0) == 0 && text.size() > 9) {
        spec.kind = Kind::Scripted;
        spec.script_path = std::string(text.substr(9));
    } else if (text == "heuristic") {
        spec.kind = Kind::Heuristic;
    } else if (text == "heuristic:negate") {
        spec.kind = Kind::Heuristic;
        spec.heuristic.negate = true;
    } else if (text.rfind("remote:", 0) == 0 && text.size() > 7) {
        spec.kind = Kind::Remote;
        spec.remote.url = std::string(text.substr(7));
    } else {
        throw Error("invalid backend '" + std::string(text) +
                    "'; expected scripted:<file>, heuristic, heuristic:negate or remote:<url>");
    }
    return spec;
}

std::string BackendSpec::to_string() const {
    switch (kind) {
    case Kind::Scripted:
        return "scripted:" + script_path;
    case Kind::Heuristic:
        return heuristic.negate ? "heuristic:negate" : "heuristic";
    case Kind::Remote:
        return "remote:" + remote.url;
    }
    return {};
}

std::unique_ptr<Backend> make_backend(const BackendSpec& spec) {
    switch (spec.kind) {
    case BackendSpec::Kind::Scripted:
        return keyed_backend(load_keyed_answers(spec.script_path));
    case BackendSpec::Kind::Heuristic:
        return heuristic_backend(spec.heuristic);
    case BackendSpec::Kind::Remote:
        return remote_backend(spec.remote);
    }
    throw ContractViolation("unknown backend kind");
}

} // namespace oraclegen
