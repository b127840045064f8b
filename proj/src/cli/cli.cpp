#include <algorithm>
#include <fstream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "oraclegen/augmentation.hpp"
#include "oraclegen/cli.hpp"
#include "oraclegen/dataset.hpp"
#include "oraclegen/evaluation.hpp"
#include "oraclegen/parallel.hpp"

namespace oraclegen {

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

struct Flags {
    std::optional<std::string> config;
    std::optional<std::string> source_root;
    std::vector<std::string> sig;
    std::optional<std::string> backend;
    std::optional<std::string> out;
    std::optional<std::size_t> limit_tokens;
    std::optional<std::size_t> parallel;
    bool strict_metrics = false;
    bool free_text = false;

    std::string class_filter;
    std::string method_filter;
    std::string input;
    std::string test_dir;
    bool review = false;
};

class Run {
public:
    Run(RunConfig config, std::string command, json inputs, std::ostream& out, std::ostream& err)
        : config_(std::move(config)), command_(std::move(command)), inputs_(std::move(inputs)), out_(out),
          err_(err) {
        std::error_code ec;
        fs::create_directories(config_.output_dir, ec);
        if (ec || !fs::is_directory(config_.output_dir)) {
            throw Error("outputDir: cannot create " + config_.output_dir.string());
        }
    }

    const RunConfig& config() const { return config_; }
    fs::path path(const std::string& name) const { return config_.output_dir / name; }
    std::ostream& out() { return out_; }

    void warn(const std::string& message) {
        ++warnings_;
        err_ << "warning: " << message << "\n";
    }

    void count(const std::string& key, std::size_t value) { counts_[key] = value; }

    void write(const std::string& name, const std::string& content) const {
        std::ofstream f(path(name), std::ios::binary);
        if (!f) {
            throw Error("cannot write " + path(name).string());
        }
        f << content;
    }

    int finish() {
        json manifest;
        manifest["command"] = command_;
        manifest["config"] = config_.to_json();
        manifest["configHash"] = config_hash(config_, command_, inputs_);
        manifest["inputs"] = inputs_;
        manifest["versions"] = {{"oraclegen", kVersion}, {"schema", kSchemaVersion}};
        manifest["counts"] = counts_;
        manifest["warnings"] = warnings_;
        write("run.json", manifest.dump(2) + "\n");
        return warnings_ ? kExitPartial : kExitOk;
    }

private:
    RunConfig config_;
    std::string command_;
    json inputs_;
    std::ostream& out_;
    std::ostream& err_;
    json counts_ = json::object();
    std::size_t warnings_ = 0;
};

ProjectModel load_model(Run& run) {
    const auto& c = run.config();
    if (c.source_root.empty()) {
        throw Error("sourceRoot: not set (use --source-root or the config file)");
    }
    ProjectModel model = build_project_model(c.source_root, c.signature_files);
    for (const auto& w : model.warnings()) {
        run.warn(w);
    }
    return model;
}

std::string project_name(const RunConfig& c) {
    if (!c.project_name.empty()) {
        return c.project_name;
    }
    auto root = c.source_root.lexically_normal();
    if (root.filename().empty()) {
        root = root.parent_path();
    }
    return root.filename().string();
}

int cmd_analyze(Run& run) {
    const ProjectModel model = load_model(run);
    run.write("model.jsonl", serialize_model(model));
    std::size_t tags = 0;
    for (const auto& [name, info] : model.classes()) {
        for (const auto& m : info.methods) {
            tags += std::count_if(m.tags.begin(), m.tags.end(),
                                  [](const DocTag& t) { return t.kind != DocTagKind::FreeText; });
        }
    }
    run.count("classes", model.classes().size());
    run.count("methods", model.method_count());
    run.count("tags", tags);
    run.out() << fmt::format("{} classes, {} methods, {} tags -> {}\n", model.classes().size(),
                             model.method_count(), tags, run.path("model.jsonl").string());
    return run.finish();
}

bool matches_class(const ClassInfo& info, const std::string& filter) {
    return filter.empty() || info.qualified_name == filter || info.name == filter;
}

bool matches_method(const MethodInfo& m, const std::string& filter) {
    return filter.empty() || m.name == filter || m.key() == filter;
}

int cmd_generate(Run& run, const Flags& flags) {
    const ProjectModel model = load_model(run);
    const auto& c = run.config();
    std::vector<Attempt> attempts;
    for (auto& a : enumerate_attempts(model, c.free_text)) {
        if (matches_class(*a.owner, flags.class_filter) && matches_method(*a.method, flags.method_filter)) {
            attempts.push_back(std::move(a));
        }
    }
    const auto backend = make_backend(c.backend_spec());
    BackendGate gate(*backend);
    const GenerationLimits limits = c.limits();
    std::vector<OracleResult> results(attempts.size());
    std::vector<std::string> tags(attempts.size());
    parallel_for(attempts.size(), c.parallelism, [&](std::size_t i) {
        const auto& a = attempts[i];
        const auto ctx = GenerationContext::make(model, *a.owner, *a.method, a.type, a.tag);
        tags[i] = ctx.tag_text();
        results[i] = generate_oracle(ctx, gate, gate, limits);
    });

    const std::string project = project_name(c);
    std::ostringstream oracles;
    std::ostringstream traces;
    std::size_t generated = 0;
    std::size_t declined = 0;
    std::size_t aborted = 0;
    for (std::size_t i = 0; i < attempts.size(); ++i) {
        const auto& a = attempts[i];
        const auto& r = results[i];
        json trace{{"className", a.owner->qualified_name},
                   {"methodSignature", a.method->key()},
                   {"oracleType", to_string(a.type)},
                   {"tagText", tags[i]},
                   {"status", to_string(r.status)},
                   {"oracleText", r.oracle_text},
                   {"diagnostic", r.diagnostic}};
        json steps = json::array();
        for (const auto& s : r.trace) {
            steps.push_back({{"candidateCount", s.candidate_count},
                             {"chosen", s.chosen},
                             {"truncatedLines", s.truncated_lines},
                             {"retried", s.retried}});
        }
        trace["steps"] = steps;
        traces << trace.dump() << "\n";
        if (r.status == OracleStatus::Aborted) {
            ++aborted;
            run.warn(fmt::format("{}.{} {} aborted: {}", a.owner->qualified_name, a.method->key(),
                                 to_string(a.type), r.diagnostic));
            continue;
        }
        ++(r.status == OracleStatus::Generated ? generated : declined);
        OracleSample s;
        s.project_name = project;
        s.class_name = a.owner->qualified_name;
        s.method_signature = a.method->key();
        s.method_source = a.method->source_text;
        s.method_javadoc = a.method->doc_text;
        s.oracle_type = a.type;
        s.tag_text = tags[i];
        s.oracle_text = r.oracle_text;
        oracles << to_json_line(s) << "\n";
    }
    run.write("oracles.jsonl", oracles.str());
    run.write("traces.jsonl", traces.str());
    run.count("attempts", attempts.size());
    run.count("generated", generated);
    run.count("declined", declined);
    run.count("aborted", aborted);
    run.out() << fmt::format("{} attempts: {} generated, {} declined, {} aborted -> {}\n", attempts.size(),
                             generated, declined, aborted, run.path("oracles.jsonl").string());
    return run.finish();
}

int cmd_disaggregate(Run& run, const Flags& flags) {
    const ProjectModel model = load_model(run);
    const ReadResult read = read_oracle_dataset(flags.input);
    for (const auto& w : read.warnings) {
        run.warn(w);
    }
    const auto& samples = read.samples;
    std::vector<std::vector<TokenSample>> parts(samples.size());
    std::vector<std::string> failures(samples.size());
    parallel_for(samples.size(), run.config().parallelism, [&](std::size_t i) {
        if (!samples[i].positive()) {
            return;
        }
        try {
            parts[i] = disaggregate(samples[i], model, run.config().max_tokens);
        } catch (const Error& e) {
            failures[i] = fmt::format("{}: record {}: {}", flags.input, i + 1, e.what());
        }
    });
    std::vector<TokenSample> tokens;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        if (!failures[i].empty()) {
            run.warn(failures[i]);
        }
        std::move(parts[i].begin(), parts[i].end(), std::back_inserter(tokens));
    }
    std::ostringstream text;
    write_token_dataset(tokens, text);
    run.write("tokens.jsonl", text.str());
    const DatasetStats stats = dataset_stats(samples);
    run.count("oracles", stats.total);
    run.count("positive", stats.positive);
    run.count("negative", stats.negative);
    run.count("tokenSamples", tokens.size());
    run.count("failed", std::count_if(failures.begin(), failures.end(), [](const auto& f) { return !f.empty(); }));
    run.out() << fmt::format("{} oracles ({} positive, {} negative) -> {} token samples in {}\n", stats.total,
                             stats.positive, stats.negative, tokens.size(), run.path("tokens.jsonl").string());
    for (const auto& [type, n] : stats.by_type) {
        run.out() << fmt::format("  {:<12} {}\n", type, n);
    }
    return run.finish();
}

int cmd_evaluate(Run& run, const Flags& flags) {
    const ProjectModel model = load_model(run);
    const auto entries = read_ground_truth(flags.input);
    const auto& c = run.config();
    const auto backend = make_backend(c.backend_spec());
    EvaluationOptions options;
    options.limits = c.limits();
    options.parallelism = c.parallelism;
    options.strict = c.strict_metrics;
    const EvaluationRun result = run_evaluation(model, entries, *backend, options);
    for (const auto& s : result.skipped) {
        run.warn(s);
    }
    std::ostringstream outcomes;
    write_outcomes(result.outcomes, outcomes);
    run.write("outcomes.jsonl", outcomes.str());
    const std::string text = render_report_text(result.report);
    run.write("report.txt", text);
    run.write("report.json", render_report_json(result.report));
    if (flags.review) {
        std::ostringstream review;
        write_review(result.outcomes, review);
        run.write("review.jsonl", review.str());
    }
    const auto& t = result.report.total.counts;
    run.count("entries", entries.size());
    run.count("skipped", result.skipped.size());
    run.count("tp", t.tp);
    run.count("tn", t.tn);
    run.count("fp", t.fp);
    run.count("fn", t.fn);
    run.out() << text;
    return run.finish();
}

std::string read_file(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    if (!in) {
        throw Error("cannot open " + p.string());
    }
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

int cmd_inject(Run& run, const Flags& flags) {
    const ProjectModel model = load_model(run);
    const fs::path test_dir = flags.test_dir;
    if (!fs::is_directory(test_dir)) {
        throw Error("test directory " + test_dir.string() + " does not exist");
    }
    std::vector<InjectionRequest> requests;
    {
        std::ifstream in(flags.input);
        if (!in) {
            throw Error("cannot open " + flags.input);
        }
        std::string line;
        std::size_t line_no = 0;
        while (std::getline(in, line)) {
            ++line_no;
            if (line.find_first_not_of(" \t\r") == std::string::npos) {
                continue;
            }
            json j;
            try {
                j = json::parse(line);
            } catch (const json::parse_error& e) {
                throw FormatError(flags.input, line_no, e.what());
            }
            const std::string oracle = j.value("generatedOracle", std::string(kNone));
            if (oracle == kNone || oracle.empty()) {
                continue;
            }
            const auto type = parse_oracle_type(j.value("oracleType", ""));
            if (!type) {
                throw FormatError(flags.input, line_no, "field 'oracleType' missing or invalid");
            }
            try {
                const auto ctx = resolve_context(model, j.value("className", ""), j.value("methodSignature", ""),
                                                 *type, j.value("tagText", ""));
                requests.push_back({ctx.unit, *type, normalize(oracle), ctx.exception_type});
            } catch (const Error& e) {
                run.warn(fmt::format("{}:{}: {}", flags.input, line_no, e.what()));
            }
        }
    }
    std::vector<fs::path> files;
    for (const auto& entry : fs::recursive_directory_iterator(test_dir)) {
        if (entry.is_regular_file() && entry.path().extension() == ".java") {
            files.push_back(entry.path());
        }
    }
    std::sort(files.begin(), files.end());
    std::string diff;
    std::size_t changed_files = 0;
    std::size_t insertions = 0;
    std::size_t skipped_sites = 0;
    for (const auto& file : files) {
        const std::string rel = fs::relative(file, test_dir).generic_string();
        const std::string original = read_file(file);
        std::string current = original;
        for (const auto& rq : requests) {
            const InjectionPlan plan = plan_injection(current, rq, rel);
            skipped_sites += plan.diagnostics.size();
            const InjectionResult r = apply_injection(current, plan);
            if (!r.error.empty()) {
                run.warn(rel + ": " + r.error);
            } else if (r.changed) {
                insertions += plan.sites.size();
                current = r.source;
            }
        }
        if (current != original) {
            ++changed_files;
            const fs::path target = run.path("injected") / rel;
            fs::create_directories(target.parent_path());
            std::ofstream(target, std::ios::binary) << current;
            diff += unified_diff(original, current, "a/" + rel, "b/" + rel);
        }
    }
    run.write("injection.diff", diff);
    run.count("oracles", requests.size());
    run.count("files", files.size());
    run.count("changedFiles", changed_files);
    run.count("insertions", insertions);
    run.count("skippedSites", skipped_sites);
    run.out() << fmt::format("{} oracles, {} test files: {} assertions in {} files -> {}\n", requests.size(),
                             files.size(), insertions, changed_files, run.path("injection.diff").string());
    return run.finish();
}

int cmd_restrictions(Run& run) {
    const std::string md = restrictions_markdown();
    run.write("restrictions.md", md);
    run.count("restrictions", list_restrictions().size());
    run.out() << md;
    return run.finish();
}

void add_common(CLI::App* cmd, Flags& f, bool needs_model, bool uses_backend) {
    cmd->add_option("--config", f.config, "JSON config file; flags override its values");
    cmd->add_option("--out", f.out, "Output directory (default: out)");
    if (needs_model) {
        cmd->add_option("--source-root", f.source_root, "Root of the Java source tree");
        cmd->add_option("--sig", f.sig, "External signature file (*.sig.jsonl); repeatable");
        cmd->add_option("--parallel", f.parallel, "Worker threads (>= 1)");
    }
    if (uses_backend) {
        cmd->add_option("--backend", f.backend, "scripted:<file> | heuristic | heuristic:negate | remote:<url>");
        cmd->add_option("--limit-tokens", f.limit_tokens, "Maximum oracle length in tokens (default 64)");
    }
}

RunConfig effective_config(const Flags& f) {
    RunConfig c;
    if (f.config) {
        c = load_config(*f.config);
    }
    if (f.source_root) {
        c.source_root = *f.source_root;
    }
    if (!f.sig.empty()) {
        c.signature_files.assign(f.sig.begin(), f.sig.end());
    }
    if (f.backend) {
        c.backend = *f.backend;
    }
    if (f.out) {
        c.output_dir = *f.out;
    }
    if (f.limit_tokens) {
        c.max_tokens = *f.limit_tokens;
    }
    if (f.parallel) {
        c.parallelism = *f.parallel;
    }
    if (f.strict_metrics) {
        c.strict_metrics = true;
    }
    if (f.free_text) {
        c.free_text = true;
    }
    if (c.parallelism < 1) {
        throw Error("parallelism: must be >= 1");
    }
    if (c.max_tokens < 2) {
        throw Error("limits.maxTokens: must be >= 2");
    }
    c.backend_spec();
    return c;
}

} // namespace

json RunConfig::to_json() const {
    json sigs = json::array();
    for (const auto& s : signature_files) {
        sigs.push_back(s.generic_string());
    }
    return json{{"sourceRoot", source_root.generic_string()},
                {"signatureFiles", sigs},
                {"backend", backend},
                {"limits",
                 {{"maxTokens", max_tokens},
                  {"maxSeconds", max_seconds},
                  {"contextLines", context_lines},
                  {"maxChars", max_chars}}},
                {"remote", {{"timeoutMs", remote_timeout_ms}, {"retries", remote_retries}}},
                {"outputDir", output_dir.generic_string()},
                {"parallelism", parallelism},
                {"freeTextAttempts", free_text},
                {"strictMetrics", strict_metrics},
                {"projectName", project_name}};
}

void RunConfig::merge(const json& j) {
    if (!j.is_object()) {
        throw Error("config: top level must be an object");
    }
    auto str = [](const json& v, const std::string& key) {
        if (!v.is_string()) {
            throw Error(key + ": expected a string");
        }
        return v.get<std::string>();
    };
    auto count = [](const json& v, const std::string& key) {
        if (!v.is_number_integer() || v.get<std::int64_t>() < 0) {
            throw Error(key + ": expected a non-negative integer");
        }
        return v.get<std::size_t>();
    };
    auto flag = [](const json& v, const std::string& key) {
        if (!v.is_boolean()) {
            throw Error(key + ": expected true or false");
        }
        return v.get<bool>();
    };
    for (const auto& [key, v] : j.items()) {
        if (key == "sourceRoot") {
            source_root = str(v, key);
        } else if (key == "signatureFiles") {
            if (!v.is_array()) {
                throw Error(key + ": expected a list of paths");
            }
            signature_files.clear();
            for (const auto& s : v) {
                signature_files.emplace_back(str(s, key));
            }
        } else if (key == "backend") {
            backend = str(v, key);
        } else if (key == "limits" || key == "remote") {
            if (!v.is_object()) {
                throw Error(key + ": expected an object");
            }
            for (const auto& [sub, w] : v.items()) {
                const std::string name = key + "." + sub;
                if (name == "limits.maxTokens") {
                    max_tokens = count(w, name);
                } else if (name == "limits.maxSeconds") {
                    max_seconds = count(w, name);
                } else if (name == "limits.contextLines") {
                    context_lines = count(w, name);
                } else if (name == "limits.maxChars") {
                    max_chars = count(w, name);
                } else if (name == "remote.timeoutMs") {
                    remote_timeout_ms = count(w, name);
                } else if (name == "remote.retries") {
                    remote_retries = static_cast<int>(count(w, name));
                } else {
                    throw Error(name + ": unknown key");
                }
            }
        } else if (key == "outputDir") {
            output_dir = str(v, key);
        } else if (key == "parallelism") {
            parallelism = count(v, key);
        } else if (key == "freeTextAttempts") {
            free_text = flag(v, key);
        } else if (key == "strictMetrics") {
            strict_metrics = flag(v, key);
        } else if (key == "projectName") {
            project_name = str(v, key);
        } else {
            throw Error(key + ": unknown key");
        }
    }
}

BackendSpec RunConfig::backend_spec() const {
    BackendSpec spec;
    try {
        spec = BackendSpec::parse(backend);
    } catch (const Error& e) {
        throw Error(std::string("backend: ") + e.what());
    }
    spec.remote.timeout = std::chrono::milliseconds(remote_timeout_ms);
    spec.remote.retries = remote_retries;
    return spec;
}

GenerationLimits RunConfig::limits() const {
    GenerationLimits l;
    l.max_tokens = max_tokens;
    l.max_time = std::chrono::seconds(max_seconds);
    l.prompt.context_lines = context_lines;
    l.prompt.max_chars = max_chars;
    return l;
}

RunConfig load_config(const fs::path& file) {
    std::ifstream in(file);
    if (!in) {
        throw Error("config: cannot open " + file.string());
    }
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& e) {
        throw Error("config: " + file.string() + ": " + e.what());
    }
    RunConfig c;
    c.merge(j);
    return c;
}

std::uint64_t fnv1a64(std::string_view data) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char ch : data) {
        h ^= ch;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::string config_hash(const RunConfig& config, std::string_view command, const json& inputs) {
    const json j{{"command", command}, {"config", config.to_json()}, {"inputs", inputs}};
    return fmt::format("{:016x}", fnv1a64(j.dump()));
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Neuro-symbolic test oracle generation from Java sources and doc comments", "oraclegen"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(kVersion));
    Flags f;

    auto* analyze = app.add_subcommand("analyze", "Build the project model and write model.jsonl");
    add_common(analyze, f, true, false);

    auto* generate = app.add_subcommand("generate", "Generate oracles for every documented method");
    add_common(generate, f, true, true);
    generate->add_flag("--free-text", f.free_text, "Also attempt oracles from free-text descriptions");
    generate->add_option("--class", f.class_filter, "Only this class (simple or qualified name)");
    generate->add_option("--method", f.method_filter, "Only this method (name or name(T1,T2))");

    auto* disaggregate_cmd = app.add_subcommand("disaggregate", "Split an oracles file into token samples");
    add_common(disaggregate_cmd, f, true, true);
    disaggregate_cmd->add_option("oracles", f.input, "Oracles file (oracles.jsonl)")->required();

    auto* evaluate = app.add_subcommand("evaluate", "Generate against a ground truth and report metrics");
    add_common(evaluate, f, true, true);
    evaluate->add_flag("--strict-metrics", f.strict_metrics, "Count wrong oracles as FN as well as FP");
    evaluate->add_flag("--review", f.review, "Write review.jsonl with wrong oracles for manual review");
    evaluate->add_option("groundtruth", f.input, "Ground-truth file (groundtruth.jsonl)")->required();

    auto* inject = app.add_subcommand("inject", "Insert oracles into test sources as assertions");
    add_common(inject, f, true, false);
    inject->add_option("outcomes", f.input, "Outcome log (outcomes.jsonl)")->required();
    inject->add_option("tests", f.test_dir, "Directory of Java test sources")->required();

    auto* restrictions = app.add_subcommand("restrictions", "Print the context-restriction registry");
    add_common(restrictions, f, false, false);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitFatal;
    }

    CLI::App* cmd = app.get_subcommands().front();
    const std::string name = cmd->get_name();
    try {
        const RunConfig config = effective_config(f);
        json inputs = json::object();
        if (!f.input.empty()) {
            inputs["input"] = f.input;
        }
        if (!f.test_dir.empty()) {
            inputs["tests"] = f.test_dir;
        }
        if (!f.class_filter.empty()) {
            inputs["class"] = f.class_filter;
        }
        if (!f.method_filter.empty()) {
            inputs["method"] = f.method_filter;
        }
        if (f.review) {
            inputs["review"] = true;
        }
        Run run(config, name, inputs, out, err);
        if (name == "analyze") {
            return cmd_analyze(run);
        }
        if (name == "generate") {
            return cmd_generate(run, f);
        }
        if (name == "disaggregate") {
            return cmd_disaggregate(run, f);
        }
        if (name == "evaluate") {
            return cmd_evaluate(run, f);
        }
        if (name == "inject") {
            return cmd_inject(run, f);
        }
        return cmd_restrictions(run);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitFatal;
    }
}

} // namespace oraclegen
