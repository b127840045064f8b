#include <fstream>
#include <mutex>
#include <numeric>
#include <set>
#include <tuple>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "oraclegen/dataset.hpp"
#include "oraclegen/evaluation.hpp"
#include "oraclegen/parallel.hpp"

namespace oraclegen {

namespace {

using json = nlohmann::json;
using grammar::Atom;
using grammar::Expr;
using grammar::Operand;

bool lone_literal(const Operand& op) {
    if (op.form == Operand::Form::Literal) {
        return true;
    }
    return op.form == Operand::Form::Access && op.steps.empty() &&
           (op.head.text == "null" || op.head.text == "true" || op.head.text == "false");
}

void canonicalize(Expr& expr);

void canonicalize(Operand& op) {
    if (op.form == Operand::Form::Paren && op.inner) {
        canonicalize(*op.inner);
    }
    for (auto& step : op.steps) {
        if (step.lambda) {
            canonicalize(*step.lambda);
        }
    }
}

void canonicalize(Atom& atom) {
    canonicalize(atom.left);
    for (auto& t : atom.right.terms) {
        canonicalize(t);
    }
    if ((atom.op == "==" || atom.op == "!=") && atom.right.terms.size() == 1 && lone_literal(atom.left) &&
        !lone_literal(atom.right.terms.front())) {
        std::swap(atom.left, atom.right.terms.front());
    }
}

void canonicalize(Expr& expr) {
    for (auto& conj : expr.cond.disjuncts) {
        for (auto& atom : conj) {
            canonicalize(atom);
        }
    }
    if (expr.then_branch) {
        canonicalize(*expr.then_branch);
    }
    if (expr.else_branch) {
        canonicalize(*expr.else_branch);
    }
}

std::int64_t gcd_norm(std::int64_t a, std::int64_t b) {
    const auto g = std::gcd(a, b);
    return g == 0 ? 1 : g;
}

std::optional<Rational> ratio(std::int64_t num, std::int64_t den) {
    if (den == 0) {
        return std::nullopt;
    }
    const auto g = gcd_norm(num, den);
    return Rational{num / g, den / g};
}

json rational_json(const std::optional<Rational>& r) {
    if (!r) {
        return nullptr;
    }
    return json{{"num", r->num}, {"den", r->den}, {"percent", r->percent()}};
}

json group_json(const GroupMetrics& g) {
    return json{{"tp", g.counts.tp},
                {"tn", g.counts.tn},
                {"fp", g.counts.fp},
                {"fn", g.counts.fn},
                {"entries", g.counts.total()},
                {"accuracy", rational_json(g.accuracy)},
                {"precision", rational_json(g.precision)},
                {"recall", rational_json(g.recall)},
                {"f1", rational_json(g.f1)}};
}

std::string share(std::int64_t count, std::int64_t total) {
    return fmt::format("{} ({})", count, format_percent(ratio(count, total)));
}

std::string report_row(std::string_view name, const GroupMetrics& g) {
    const auto n = g.counts.total();
    return fmt::format("{:<24} {:>7}  {:<10} {:<10} {:<10} {:<10} {:>5} {:>5} {:>5} {:>5}\n", name, n,
                       share(g.counts.tp, n), share(g.counts.tn, n), share(g.counts.fp, n), share(g.counts.fn, n),
                       format_percent(g.accuracy), format_percent(g.precision), format_percent(g.recall),
                       format_percent(g.f1));
}

void add(Counts& c, const Outcome& o, bool strict) {
    switch (o.klass) {
    case OutcomeClass::TP:
        ++c.tp;
        break;
    case OutcomeClass::TN:
        ++c.tn;
        break;
    case OutcomeClass::FP:
        ++c.fp;
        break;
    case OutcomeClass::FN:
        ++c.fn;
        break;
    }
    if (strict && o.missed) {
        ++c.fn;
    }
}

} // namespace

std::vector<GroundTruthEntry> read_ground_truth(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in) {
        throw Error("cannot open " + file.string());
    }
    std::vector<GroundTruthEntry> out;
    std::set<std::tuple<std::string, std::string, OracleType, std::string>> seen;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) {
            continue;
        }
        auto fail = [&](const std::string& what) { throw FormatError(file.string(), line_no, what); };
        json j;
        try {
            j = json::parse(line);
        } catch (const json::parse_error& e) {
            fail(std::string("malformed JSON: ") + e.what());
        }
        auto field = [&](const char* name) {
            if (!j.is_object() || !j.contains(name) || !j[name].is_string()) {
                fail(std::string("missing or non-string field '") + name + "'");
            }
            return j[name].get<std::string>();
        };
        GroundTruthEntry e;
        e.project_name = field("projectName");
        e.class_name = field("className");
        e.method_signature = field("methodSignature");
        const auto type = parse_oracle_type(field("oracleType"));
        if (!type) {
            fail("field 'oracleType' must be PRE, NORMAL_POST or EXCEPT_POST");
        }
        e.oracle_type = *type;
        e.tag_text = field("tagText");
        try {
            e.expected_oracle = normalize(field("expectedOracle"));
        } catch (const FormatError&) {
            throw;
        } catch (const Error& err) {
            fail(std::string("field 'expectedOracle' does not parse: ") + err.what());
        }
        if (!seen.emplace(e.class_name, e.method_signature, e.oracle_type, e.tag_text).second) {
            fail("duplicate entry for " + e.class_name + "." + e.method_signature + " " +
                 std::string(to_string(e.oracle_type)) + " \"" + e.tag_text + "\"");
        }
        out.push_back(std::move(e));
    }
    return out;
}

std::string normalize(std::string_view oracle_text) {
    if (oracle_text == kNone) {
        return std::string(kNone);
    }
    auto ast = grammar::parse(oracle_text);
    canonicalize(ast.root);
    return grammar::render(ast);
}

std::string_view to_string(OutcomeClass klass) {
    switch (klass) {
    case OutcomeClass::TP:
        return "TP";
    case OutcomeClass::TN:
        return "TN";
    case OutcomeClass::FP:
        return "FP";
    case OutcomeClass::FN:
        return "FN";
    }
    return "?";
}

OutcomeClass classify(std::string_view expected, std::string_view generated) {
    const bool want = expected != kNone;
    const bool got = generated != kNone;
    if (!want) {
        return got ? OutcomeClass::FP : OutcomeClass::TN;
    }
    if (!got) {
        return OutcomeClass::FN;
    }
    return expected == generated ? OutcomeClass::TP : OutcomeClass::FP;
}

Outcome make_outcome(GroundTruthEntry entry, std::string generated) {
    Outcome o;
    o.entry = std::move(entry);
    o.generated = std::move(generated);
    o.klass = classify(o.entry.expected_oracle, o.generated);
    o.missed = o.klass == OutcomeClass::FP && o.entry.positive();
    return o;
}

std::int64_t Rational::percent() const {
    return (200 * num + den) / (2 * den);
}

std::string format_percent(const std::optional<Rational>& value) {
    return value ? std::to_string(value->percent()) + "%" : "N/A";
}

GroupMetrics metrics_from_counts(const Counts& c) {
    GroupMetrics g;
    g.counts = c;
    g.accuracy = ratio(c.tp + c.tn, c.total());
    g.precision = ratio(c.tp, c.tp + c.fp);
    g.recall = ratio(c.tp, c.tp + c.fn);
    if (g.precision && g.recall) {
        g.f1 = ratio(2 * c.tp, 2 * c.tp + c.fp + c.fn);
        if (!g.f1) {
            g.f1 = Rational{0, 1};
        }
    }
    return g;
}

MetricsReport compute_metrics(const std::vector<Outcome>& outcomes, bool strict) {
    std::map<std::string, Counts> groups;
    Counts total;
    for (const auto& o : outcomes) {
        add(groups[o.entry.project_name], o, strict);
        add(total, o, strict);
    }
    MetricsReport report;
    report.strict = strict;
    for (const auto& [name, counts] : groups) {
        report.per_project[name] = metrics_from_counts(counts);
    }
    report.total = metrics_from_counts(total);
    return report;
}

std::string render_report_text(const MetricsReport& report) {
    std::string out = fmt::format("{:<24} {:>7}  {:<10} {:<10} {:<10} {:<10} {:>5} {:>5} {:>5} {:>5}\n", "Project",
                                  "Entries", "TP", "TN", "FP", "FN", "A", "P", "R", "F1");
    for (const auto& [name, g] : report.per_project) {
        out += report_row(name, g);
    }
    out += report_row("Total", report.total);
    if (report.strict) {
        out += "strict mode: wrong oracles also count as FN\n";
    }
    return out;
}

std::string render_report_json(const MetricsReport& report) {
    json j;
    j["strict"] = report.strict;
    j["projects"] = json::object();
    for (const auto& [name, g] : report.per_project) {
        j["projects"][name] = group_json(g);
    }
    j["total"] = group_json(report.total);
    return j.dump(2) + "\n";
}

std::string outcome_json_line(const Outcome& o) {
    json j{{"projectName", o.entry.project_name},
           {"className", o.entry.class_name},
           {"methodSignature", o.entry.method_signature},
           {"oracleType", to_string(o.entry.oracle_type)},
           {"tagText", o.entry.tag_text},
           {"expectedOracle", o.entry.expected_oracle},
           {"generatedOracle", o.generated},
           {"outcome", to_string(o.klass)},
           {"missed", o.missed},
           {"status", to_string(o.status)},
           {"diagnostic", o.diagnostic}};
    return j.dump();
}

void write_outcomes(const std::vector<Outcome>& outcomes, std::ostream& out) {
    for (const auto& o : outcomes) {
        out << outcome_json_line(o) << '\n';
    }
}

void write_review(const std::vector<Outcome>& outcomes, std::ostream& out) {
    for (const auto& o : outcomes) {
        if (o.missed) {
            out << outcome_json_line(o) << '\n';
        }
    }
}

EvaluationRun run_evaluation(const ProjectModel& model, const std::vector<GroundTruthEntry>& entries,
                             Backend& backend, const EvaluationOptions& options) {
    BackendGate gate(backend);
    std::vector<std::optional<Outcome>> slots(entries.size());
    std::vector<std::string> skip_reasons(entries.size());
    parallel_for(entries.size(), options.parallelism, [&](std::size_t i) {
        const auto& e = entries[i];
        std::optional<GenerationContext> ctx;
        try {
            ctx = resolve_context(model, e.class_name, e.method_signature, e.oracle_type, e.tag_text);
        } catch (const Error& err) {
            skip_reasons[i] = "entry " + std::to_string(i + 1) + " skipped: " + err.what();
            return;
        }
        const OracleResult result = generate_oracle(*ctx, gate, gate, options.limits);
        const std::string generated =
            result.status == OracleStatus::Generated ? normalize(result.oracle_text) : std::string(kNone);
        Outcome o = make_outcome(e, generated);
        o.status = result.status;
        o.diagnostic = result.diagnostic;
        slots[i] = std::move(o);
    });
    EvaluationRun run;
    for (std::size_t i = 0; i < entries.size(); ++i) {
        if (slots[i]) {
            run.outcomes.push_back(std::move(*slots[i]));
        } else {
            run.skipped.push_back(std::move(skip_reasons[i]));
        }
    }
    run.report = compute_metrics(run.outcomes, options.strict);
    return run;
}

} // namespace oraclegen
