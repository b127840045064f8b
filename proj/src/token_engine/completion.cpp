#include <algorithm>
#include <queue>
#include <set>
#include <tuple>

#include "internal.hpp"

namespace oraclegen::detail {

namespace {

using K = ExprType::Kind;
using grammar::FrameKind;
using grammar::OperandForm;
using grammar::Phase;
using grammar::TokenKind;

constexpr std::size_t kInf = CompletionModel::kInf;
constexpr std::size_t kMaxDepth = 8;
// Paths longer than the largest token budget are useless.
constexpr std::size_t kReachLimit = 64;

std::size_t add(std::size_t a, std::size_t b) {
    return a == kInf || b == kInf ? kInf : a + b;
}

bool depth_phase(Phase phase) {
    switch (phase) {
    case Phase::OperandLambdaVar:
    case Phase::OperandLambdaArrow:
    case Phase::OperandLambdaBody:
    case Phase::OperandLambdaClose:
    case Phase::OperandParenBody:
    case Phase::OperandParenClose:
    case Phase::ExprThen:
    case Phase::ExprAfterThen:
    case Phase::ExprElse:
        return true;
    default:
        return false;
    }
}

ExprType element_of(const ExprType& t) {
    return t.element ? *t.element : ExprType::of(K::Unknown, "jdVar");
}

bool equality_left(const ExprType& t) {
    return completable(t);
}

std::string join_texts(const std::vector<std::string>& parts) {
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        out += i ? ", " + parts[i] : parts[i];
    }
    return out;
}

} // namespace

std::string CompletionModel::Ctx::key() const {
    return (in_lambda ? "L:" + jd.key() : std::string("P")) + "#" + std::to_string(depth);
}

CompletionModel::CompletionModel(const TokenEngine& engine) : engine_(engine) {}

std::size_t CompletionModel::cost(const GrammarState& state) {
    if (state.complete()) {
        return 0;
    }
    frames_ = &state.frames();
    tokens_ = &state.tokens();
    const std::size_t c = finish(frames_->size() - 1);
    frames_ = nullptr;
    tokens_ = nullptr;
    return c;
}

CompletionModel::Ctx CompletionModel::ctx_at(std::size_t i) const {
    Ctx ctx;
    for (std::size_t j = 0; j <= i && j < frames_->size(); ++j) {
        const Frame& f = (*frames_)[j];
        if (f.kind == FrameKind::Operand && f.phase == Phase::OperandLambdaBody) {
            ctx.in_lambda = true;
            ctx.jd = f.jd_type;
        }
        if (depth_phase(f.phase)) {
            ++ctx.depth;
        }
    }
    return ctx;
}

std::string CompletionModel::real_text(std::size_t begin) const {
    return grammar::join_tokens(*tokens_, begin, tokens_->size());
}

std::string CompletionModel::prefix(const Frame& parent, const Info& child) const {
    return grammar::join_tokens(*tokens_, parent.begin, child.begin) + child.text;
}

bool CompletionModel::single_bool_literal(std::size_t begin) const {
    if (tokens_->size() != begin + 1) {
        return false;
    }
    const std::string& t = (*tokens_)[begin].text;
    return t == "true" || t == "false";
}

const std::pair<Token, ExprType>* CompletionModel::canonical_argument(const ExprType& param, bool array_any) {
    const std::string key = (array_any ? "any-array" : param.key());
    auto it = arg_cache_.find(key);
    if (it == arg_cache_.end()) {
        std::optional<std::pair<Token, ExprType>> found;
        for (const auto& arg : engine_.argument_pool(false, {})) {
            const bool ok = array_any ? arg.second.kind == K::Array && arg.second.element
                                      : assignable(*engine_.context().model, arg.second, param);
            if (ok) {
                found = arg;
                break;
            }
        }
        it = arg_cache_.emplace(key, std::move(found)).first;
    }
    return it->second ? &*it->second : nullptr;
}

const std::vector<CompletionModel::Reach>& CompletionModel::reach(const ExprType& start) {
    const std::string start_key = start.key();
    if (auto it = reach_cache_.find(start_key); it != reach_cache_.end()) {
        return it->second;
    }
    reach_cache_.emplace(start_key, std::vector<Reach>{});

    struct Node {
        std::size_t cost;
        std::size_t seq;
        ExprType type;
        std::string suffix;
    };
    auto later = [](const Node& a, const Node& b) { return std::tie(a.cost, a.seq) > std::tie(b.cost, b.seq); };
    std::priority_queue<Node, std::vector<Node>, decltype(later)> queue(later);
    std::map<std::string, std::size_t> best{{start_key, 0}};
    std::set<std::string> settled;
    std::vector<Reach> out;
    std::size_t seq = 0;
    queue.push({0, seq++, start, ""});

    auto relax = [&](std::size_t cost, ExprType type, std::string suffix) {
        if (cost > kReachLimit) {
            return;
        }
        const std::string key = type.key();
        auto it = best.find(key);
        if (it != best.end() && it->second <= cost) {
            return;
        }
        best[key] = cost;
        queue.push({cost, seq++, std::move(type), std::move(suffix)});
    };

    while (!queue.empty()) {
        Node node = queue.top();
        queue.pop();
        const std::string key = node.type.key();
        if (!settled.insert(key).second) {
            continue;
        }
        if (key != start_key) {
            out.push_back({node.type, node.cost, node.suffix});
        }
        if (!node.type.has_members()) {
            continue;
        }
        const Members& members = engine_.members_of(node.type);
        for (const auto& f : members.fields) {
            relax(node.cost + 2, ExprType::from(f.type), node.suffix + "." + f.name);
        }
        std::set<std::string> seen_names;
        for (const auto& m : members.methods) {
            if (!m.returns_value()) {
                continue;
            }
            if (is_arrays_stream(node.type, m.name)) {
                if (!seen_names.insert(m.name).second) {
                    continue;
                }
                if (const auto* arg = canonical_argument({}, true)) {
                    relax(node.cost + 5, ExprType::stream_of(element_of(arg->second)),
                          node.suffix + ".stream(" + arg->first.text + ")");
                }
                continue;
            }
            std::vector<ExprType> types;
            std::vector<std::string> texts;
            bool ok = true;
            for (const auto& p : m.parameters) {
                const auto* arg = canonical_argument(ExprType::from(p.type), false);
                if (!arg) {
                    ok = false;
                    break;
                }
                types.push_back(arg->second);
                texts.push_back(arg->first.text);
            }
            if (!ok) {
                continue;
            }
            const MethodInfo* resolved = resolve_overload(engine_, node.type, m.name, types);
            if (!resolved || !resolved->returns_value()) {
                continue;
            }
            const std::size_t k = types.size();
            relax(node.cost + (k == 0 ? 4 : 3 + 2 * k), engine_.env().call(node.type, m.name, types),
                  node.suffix + "." + m.name + "(" + join_texts(texts) + ")");
        }
    }
    auto& slot = reach_cache_[start_key];
    slot = std::move(out);
    return slot;
}

void CompletionModel::add_quantifier(const ExprType& stream, const std::string& text, std::size_t base,
                                     const Ctx& ctx, std::vector<Option>& out, bool need_dot) {
    if (ctx.in_lambda || ctx.depth + 1 > kMaxDepth) {
        return;
    }
    Ctx inner{true, element_of(stream), ctx.depth + 1};
    const Witness body = fresh_expr(inner, false);
    if (body.cost == kInf) {
        return;
    }
    out.push_back({boolean_type(), OperandForm::Chain, base + (need_dot ? 6 : 5) + body.cost,
                   text + (need_dot ? "." : "") + "anyMatch(jdVar -> " + body.text + ")"});
}

void CompletionModel::from_type(const ExprType& type, OperandForm form, const std::string& text, std::size_t base,
                                const Ctx& ctx, std::vector<Option>& out) {
    if (completable(type)) {
        out.push_back({type, form, base, text});
    }
    if (type.kind == K::Stream) {
        add_quantifier(type, text, base, ctx, out, true);
    }
    for (const Reach& r : reach(type)) {
        if (completable(r.type)) {
            out.push_back({r.type, OperandForm::Chain, base + r.cost, text + r.suffix});
        } else if (r.type.kind == K::Stream) {
            add_quantifier(r.type, text + r.suffix, base + r.cost, ctx, out, true);
        }
    }
}

void CompletionModel::call_results(const ExprType& receiver, const std::string& member,
                                   const std::vector<ExprType>& given, Phase phase, const std::string& text,
                                   std::size_t base, const Ctx& ctx, std::vector<Option>& out) {
    const std::size_t k = given.size();
    const std::string open = phase == Phase::OperandCallName ? "(" : "";
    const std::size_t open_cost = phase == Phase::OperandCallName ? 1 : 0;
    if (is_arrays_stream(receiver, member)) {
        if (phase == Phase::OperandCallName || phase == Phase::OperandArgFirst) {
            if (const auto* arg = canonical_argument({}, true)) {
                from_type(ExprType::stream_of(element_of(arg->second)), OperandForm::Chain,
                          text + open + arg->first.text + ")", base + open_cost + 2, ctx, out);
            }
        } else if (phase == Phase::OperandArgAfter && k == 1 && given[0].kind == K::Array) {
            from_type(ExprType::stream_of(element_of(given[0])), OperandForm::Chain, text + ")", base + 1, ctx, out);
        }
        return;
    }
    const ProjectModel& model = *engine_.context().model;
    for (const MethodInfo* m : engine_.methods_named(receiver, member)) {
        if (!m->returns_value()) {
            continue;
        }
        const std::size_t a = m->parameters.size();
        if (a < k || (phase == Phase::OperandArgNext && a == k)) {
            continue;
        }
        std::vector<ExprType> args = given;
        std::vector<std::string> rest;
        bool ok = true;
        for (std::size_t j = 0; j < a && ok; ++j) {
            const ExprType param = ExprType::from(m->parameters[j].type);
            if (j < k) {
                ok = assignable(model, given[j], param);
                continue;
            }
            const auto* arg = canonical_argument(param, false);
            if (!arg) {
                ok = false;
                break;
            }
            args.push_back(arg->second);
            rest.push_back(arg->first.text);
        }
        if (!ok) {
            continue;
        }
        const MethodInfo* resolved = resolve_overload(engine_, receiver, member, args);
        if (!resolved || !resolved->returns_value()) {
            continue;
        }
        std::size_t tail = 0;
        std::string suffix;
        switch (phase) {
        case Phase::OperandCallName:
        case Phase::OperandArgFirst:
            tail = open_cost + (a == 0 ? 1 : 2 * a);
            suffix = open + join_texts(rest) + ")";
            break;
        case Phase::OperandArgAfter:
            tail = a == k ? 1 : 2 * (a - k) + 1;
            suffix = (a > k ? ", " + join_texts(rest) : std::string()) + ")";
            break;
        case Phase::OperandArgNext:
            tail = 2 * (a - k);
            suffix = join_texts(rest) + ")";
            break;
        default:
            continue;
        }
        from_type(engine_.env().call(receiver, member, args), OperandForm::Chain, text + suffix, base + tail, ctx,
                  out);
    }
}

const std::vector<CompletionModel::Option>& CompletionModel::fresh_operands(const Ctx& ctx) {
    const std::string key = ctx.key();
    if (auto it = fresh_cache_.find(key); it != fresh_cache_.end()) {
        return it->second;
    }
    std::vector<Option> all;
    for (const auto& c : engine_.generic()) {
        const Token& t = c.token;
        if (t.kind != TokenKind::Identifier && t.kind != TokenKind::Reserved && t.kind != TokenKind::Literal) {
            continue;
        }
        if (t.text == "jdVar" && !ctx.in_lambda) {
            continue;
        }
        if (t.kind == TokenKind::Literal || t.text == "null") {
            all.push_back({grammar::literal_type(t), OperandForm::Literal, 1, t.text});
        } else if (t.text == "true" || t.text == "false") {
            all.push_back({boolean_type(), OperandForm::BoolLiteral, 1, t.text});
        } else {
            const ExprType type = t.text == "jdVar" ? ctx.jd : engine_.env().identifier(t.text);
            from_type(type, t.kind == TokenKind::Reserved ? OperandForm::Reserved : OperandForm::Name, t.text, 1, ctx,
                      all);
        }
    }
    std::stable_sort(all.begin(), all.end(), [](const Option& a, const Option& b) { return a.cost < b.cost; });
    // Two distinct texts per shape are enough to dodge the identical-operand rule.
    std::map<std::string, std::vector<std::string>> kept;
    std::vector<Option> reduced;
    for (auto& o : all) {
        const std::string shape = o.type.key() + (bool_capable(o.form) ? "|b" : "|v") +
                                  (o.form == OperandForm::BoolLiteral ? "|lit" : "");
        auto& texts = kept[shape];
        if (texts.size() >= 2 || std::find(texts.begin(), texts.end(), o.text) != texts.end()) {
            continue;
        }
        texts.push_back(o.text);
        reduced.push_back(std::move(o));
    }
    return fresh_cache_.emplace(key, std::move(reduced)).first->second;
}

CompletionModel::Witness CompletionModel::fresh_right(const Ctx& ctx, const ExprType& left,
                                                      const std::string& left_text, bool relational) {
    const std::string key = ctx.key() + "|" + left.key() + (relational ? "|rel" : "|eq");
    auto it = right_cache_.find(key);
    if (it == right_cache_.end()) {
        std::vector<Witness> best;
        const ProjectModel& model = *engine_.context().model;
        for (const auto& o : fresh_operands(ctx)) {
            const bool ok = relational ? left.is_numeric() && o.type.is_numeric() : comparable(model, left, o.type);
            if (!ok || std::any_of(best.begin(), best.end(), [&](const Witness& w) { return w.text == o.text; })) {
                continue;
            }
            best.push_back({o.cost, o.text});
            if (best.size() == 2) {
                break;
            }
        }
        it = right_cache_.emplace(key, std::move(best)).first;
    }
    for (const auto& w : it->second) {
        if (w.text != left_text) {
            return w;
        }
    }
    return {};
}

CompletionModel::Witness CompletionModel::fresh_expr(const Ctx& ctx, bool top) {
    const std::string key = ctx.key() + (top ? "|top" : "|inner");
    if (auto it = expr_cache_.find(key); it != expr_cache_.end()) {
        return it->second;
    }
    Witness best;
    const std::vector<Option> options = fresh_operands(ctx);
    for (const auto& o : options) {
        if (o.cost >= best.cost) {
            break;
        }
        if (bool_capable(o.form) && o.type.is_boolean() && !(top && o.form == OperandForm::BoolLiteral)) {
            best = {o.cost, o.text};
            continue;
        }
        for (const bool relational : {false, true}) {
            if (relational ? !o.type.is_numeric() : !equality_left(o.type)) {
                continue;
            }
            const Witness right = fresh_right(ctx, o.type, o.text, relational);
            const std::size_t c = add(o.cost + 1, right.cost);
            if (c < best.cost) {
                best = {c, o.text + (relational ? " < " : " == ") + right.text};
            }
        }
    }
    expr_cache_[key] = best;
    return best;
}

bool CompletionModel::castable_class_exists(const ExprType& left) {
    if (!left.is_object_like()) {
        return false;
    }
    const std::string key = left.key();
    if (auto it = instanceof_cache_.find(key); it != instanceof_cache_.end()) {
        return it->second;
    }
    bool found = false;
    for (const auto& c : engine_.generic()) {
        if (c.provenance != Provenance::Project || c.token.kind != TokenKind::Identifier) {
            continue;
        }
        const ExprType cls = engine_.env().identifier(c.token.text);
        if (cls.kind == K::StaticClass &&
            castable(*engine_.context().model, left, ExprType::of(K::Reference, cls.name))) {
            found = true;
            break;
        }
    }
    instanceof_cache_[key] = found;
    return found;
}

std::size_t CompletionModel::atom_with_left(std::size_t i, const ExprType& left, OperandForm form,
                                            const std::string& left_text) {
    std::size_t best = kInf;
    if (bool_capable(form) && left.is_boolean()) {
        Info bare{ExprType::of(K::Proposition), OperandForm::None, left_text, 1, form == OperandForm::BoolLiteral,
                  (*frames_)[i].begin};
        best = up(i - 1, bare);
    }
    const Ctx ctx = ctx_at(i);
    for (const bool relational : {false, true}) {
        if (relational ? !left.is_numeric() : !equality_left(left)) {
            continue;
        }
        const Witness right = fresh_right(ctx, left, left_text, relational);
        if (right.cost == kInf) {
            continue;
        }
        Info atom{ExprType::of(K::Proposition), OperandForm::None,
                  left_text + (relational ? " < " : " == ") + right.text, 1, false, (*frames_)[i].begin};
        best = std::min(best, add(1 + right.cost, up(i - 1, atom)));
    }
    return best;
}

std::size_t CompletionModel::arith_after(std::size_t i, const ExprType& type, std::size_t terms,
                                         const std::string& text) {
    const Frame& f = (*frames_)[i];
    std::size_t best = up(i - 1, Info{type, OperandForm::None, text, terms, false, f.begin});
    if (type.is_numeric()) {
        best = std::min(best, add(2, up(i - 1, Info{promote(type, int_type()), OperandForm::None, text + " + 0",
                                                    terms + 1, false, f.begin})));
    }
    return best;
}

std::size_t CompletionModel::up(std::size_t i, const Info& info) {
    const Frame& p = (*frames_)[i];
    const ProjectModel& model = *engine_.context().model;
    const ExprType prop = ExprType::of(K::Proposition);
    switch (p.phase) {
    case Phase::OracleBody:
        return info.single_literal ? kInf : 1;
    case Phase::ExprCond:
        return up(i - 1, Info{prop, OperandForm::None, prefix(p, info), 1,
                              info.single_literal && p.role == grammar::ExprRole::Top, p.begin});
    case Phase::ExprThen: {
        const Witness w = fresh_expr(ctx_at(i), false);
        return add(1 + w.cost,
                   up(i - 1, Info{prop, OperandForm::None, prefix(p, info) + " : " + w.text, 1, false, p.begin}));
    }
    case Phase::ExprElse:
        return up(i - 1, Info{prop, OperandForm::None, prefix(p, info), 1, false, p.begin});
    case Phase::PropAtom: {
        const std::string text = prefix(p, info);
        std::size_t best = up(i - 1, Info{prop, OperandForm::None, text, 1, info.single_literal && p.atoms == 0,
                                          p.begin});
        if (best == kInf) {
            const Witness w = fresh_expr(ctx_at(i), false);
            best = add(1 + w.cost,
                       up(i - 1, Info{prop, OperandForm::None, text + " && " + w.text, 1, false, p.begin}));
        }
        return best;
    }
    case Phase::AtomLeft:
        return atom_with_left(i, info.type, info.form, info.text);
    case Phase::AtomRight: {
        const std::string left_text = grammar::join_tokens(*tokens_, p.left_begin, p.left_end);
        bool ok = grammar::is_relational_operator(p.op) ? p.left.is_numeric() && info.type.is_numeric()
                                                        : comparable(model, p.left, info.type);
        if (info.terms == 1 && info.text == left_text) {
            ok = false;
        }
        if (!ok) {
            return kInf;
        }
        return up(i - 1, Info{prop, OperandForm::None, prefix(p, info), 1, false, p.begin});
    }
    case Phase::ArithTerm: {
        ExprType type = info.type;
        if (p.terms > 0) {
            if (!info.type.is_numeric()) {
                return kInf;
            }
            type = promote(p.type, info.type);
        }
        return arith_after(i, type, p.terms + 1, prefix(p, info));
    }
    case Phase::OperandLambdaBody:
        return add(1, up(i - 1, Info{boolean_type(), OperandForm::Chain, prefix(p, info) + ")", 1, false, p.begin}));
    case Phase::OperandParenBody:
        return add(1, up(i - 1, Info{prop, OperandForm::Paren, prefix(p, info) + ")", 1, false, p.begin}));
    default:
        return kInf;
    }
}

std::vector<CompletionModel::Option> CompletionModel::operand_results(std::size_t i) {
    const Frame& f = (*frames_)[i];
    const Ctx ctx = ctx_at(i - 1);
    const std::string text = real_text(f.begin);
    std::vector<Option> out;
    auto lambda_ctx = [&](const ExprType& jd, bool opening) {
        Ctx inner = ctx_at(i);
        inner.in_lambda = true;
        inner.jd = jd;
        if (opening) {
            ++inner.depth;
        }
        return inner;
    };
    auto lambda_result = [&](const Ctx& inner, std::size_t fixed, const std::string& head, const std::string& tail) {
        if (inner.depth > kMaxDepth) {
            return;
        }
        const Witness w = fresh_expr(inner, false);
        if (w.cost != kInf) {
            out.push_back({boolean_type(), OperandForm::Chain, fixed + w.cost, text + head + w.text + tail});
        }
    };
    switch (f.phase) {
    case Phase::OperandStart:
        return fresh_operands(ctx);
    case Phase::OperandAccess:
        from_type(f.type, f.form, text, 0, ctx, out);
        break;
    case Phase::OperandLiteral:
    case Phase::OperandParenDone:
        if (completable(f.type)) {
            out.push_back({f.type, f.form, 0, text});
        }
        break;
    case Phase::OperandDot: {
        if (f.receiver.kind == K::Stream) {
            add_quantifier(f.receiver, text, 0, ctx, out, false);
            break;
        }
        const Members& members = engine_.members_of(f.receiver);
        for (const auto& field : members.fields) {
            from_type(ExprType::from(field.type), OperandForm::Chain, text + field.name, 1, ctx, out);
        }
        std::set<std::string> names;
        for (const auto& m : members.methods) {
            if (m.returns_value() && names.insert(m.name).second) {
                call_results(f.receiver, m.name, {}, Phase::OperandCallName, text + m.name, 1, ctx, out);
            }
        }
        break;
    }
    case Phase::OperandCallName:
    case Phase::OperandArgFirst:
    case Phase::OperandArgAfter:
    case Phase::OperandArgNext:
        call_results(f.receiver, f.member, f.args, f.phase, text, 0, ctx, out);
        break;
    case Phase::OperandLambdaOpen:
        lambda_result(lambda_ctx(element_of(f.receiver), true), 4, "(jdVar -> ", ")");
        break;
    case Phase::OperandLambdaVar:
        lambda_result(lambda_ctx(element_of(f.receiver), false), 3, "jdVar -> ", ")");
        break;
    case Phase::OperandLambdaArrow:
        lambda_result(lambda_ctx(f.jd_type, false), 2, " -> ", ")");
        break;
    case Phase::OperandLambdaBody:
        lambda_result(lambda_ctx(f.jd_type, false), 1, "", ")");
        break;
    case Phase::OperandLambdaClose:
        out.push_back({boolean_type(), OperandForm::Chain, 1, text + ")"});
        break;
    case Phase::OperandParenBody: {
        const Witness w = fresh_expr(ctx_at(i), false);
        if (w.cost != kInf) {
            out.push_back({ExprType::of(K::Proposition), OperandForm::Paren, w.cost + 1, text + w.text + ")"});
        }
        break;
    }
    case Phase::OperandParenClose:
        out.push_back({ExprType::of(K::Proposition), OperandForm::Paren, 1, text + ")"});
        break;
    default:
        break;
    }
    return out;
}

std::size_t CompletionModel::finish(std::size_t i) {
    const Frame& f = (*frames_)[i];
    const ExprType prop = ExprType::of(K::Proposition);
    switch (f.phase) {
    case Phase::OracleBody:
        return add(fresh_expr(ctx_at(i), true).cost, 1);
    case Phase::OracleEnd:
        return 1;
    case Phase::OracleDone:
        return 0;
    case Phase::ExprCond: {
        const Witness w = fresh_expr(ctx_at(i), f.role == grammar::ExprRole::Top);
        return add(w.cost, up(i - 1, Info{prop, OperandForm::None, w.text, 1, false, f.begin}));
    }
    case Phase::ExprAfterCond:
    case Phase::ExprDone:
        return up(i - 1, Info{prop, OperandForm::None, real_text(f.begin), 1,
                              f.role == grammar::ExprRole::Top && single_bool_literal(f.begin), f.begin});
    case Phase::ExprThen: {
        const Witness a = fresh_expr(ctx_at(i), false);
        const Witness b = fresh_expr(ctx_at(i), false);
        return add(add(a.cost, 1 + b.cost), up(i - 1, Info{prop, OperandForm::None,
                                                          real_text(f.begin) + a.text + " : " + b.text, 1, false,
                                                          f.begin}));
    }
    case Phase::ExprAfterThen: {
        const Witness b = fresh_expr(ctx_at(i), false);
        return add(1 + b.cost,
                   up(i - 1, Info{prop, OperandForm::None, real_text(f.begin) + " : " + b.text, 1, false, f.begin}));
    }
    case Phase::ExprElse: {
        const Witness b = fresh_expr(ctx_at(i), false);
        return add(b.cost, up(i - 1, Info{prop, OperandForm::None, real_text(f.begin) + b.text, 1, false, f.begin}));
    }
    case Phase::PropAtom: {
        const bool top = f.atoms == 0 && i > 0 && (*frames_)[i - 1].role == grammar::ExprRole::Top;
        const Witness w = fresh_expr(ctx_at(i), top);
        return add(w.cost, up(i - 1, Info{prop, OperandForm::None, real_text(f.begin) + w.text, 1, false, f.begin}));
    }
    case Phase::PropAfterAtom: {
        const std::string text = real_text(f.begin);
        std::size_t best =
            up(i - 1, Info{prop, OperandForm::None, text, 1, f.atoms == 1 && single_bool_literal(f.begin), f.begin});
        const Witness w = fresh_expr(ctx_at(i), false);
        return std::min(best, add(1 + w.cost, up(i - 1, Info{prop, OperandForm::None, text + " && " + w.text, 1,
                                                             false, f.begin})));
    }
    case Phase::AtomLeft: {
        std::size_t best = kInf;
        for (const auto& o : fresh_operands(ctx_at(i))) {
            if (o.cost >= best) {
                break;
            }
            best = std::min(best, add(o.cost, atom_with_left(i, o.type, o.form, o.text)));
        }
        return best;
    }
    case Phase::AtomAfterLeft:
        return atom_with_left(i, f.left, f.left_form, grammar::join_tokens(*tokens_, f.left_begin, f.left_end));
    case Phase::AtomRight: {
        const Witness w = fresh_right(ctx_at(i), f.left, grammar::join_tokens(*tokens_, f.left_begin, f.left_end),
                                      grammar::is_relational_operator(f.op));
        return add(w.cost, up(i - 1, Info{prop, OperandForm::None, real_text(f.begin) + w.text, 1, false, f.begin}));
    }
    case Phase::AtomClass:
        return castable_class_exists(f.left)
                   ? add(1, up(i - 1, Info{prop, OperandForm::None, real_text(f.begin) + "Object", 1, false, f.begin}))
                   : kInf;
    case Phase::AtomDone:
        return up(i - 1, Info{prop, OperandForm::None, real_text(f.begin), 1, false, f.begin});
    case Phase::ArithTerm: {
        if (f.terms > 0) {
            return add(1, arith_after(i, promote(f.type, int_type()), f.terms + 1, real_text(f.begin) + "0"));
        }
        std::size_t best = kInf;
        for (const auto& o : fresh_operands(ctx_at(i))) {
            best = std::min(best, add(o.cost, arith_after(i, o.type, 1, o.text)));
        }
        return best;
    }
    case Phase::ArithAfterTerm:
        return arith_after(i, f.type, f.terms, real_text(f.begin));
    default:
        break;
    }
    std::size_t best = kInf;
    for (const auto& o : operand_results(i)) {
        if (o.cost >= best) {
            continue;
        }
        best = std::min(best, add(o.cost, up(i - 1, Info{o.type, o.form, o.text, 1, false, f.begin})));
    }
    return best;
}

} // namespace oraclegen::detail
