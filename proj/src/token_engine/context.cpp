#include <cctype>
#include <deque>
#include <set>

#include "internal.hpp"
#include "oraclegen/error.hpp"

namespace oraclegen {

namespace {

using K = ExprType::Kind;

bool is_subclass(const ProjectModel& model, const std::string& sub, const std::string& super) {
    if (sub == super || super == "java.lang.Object") {
        return true;
    }
    std::set<std::string> seen{sub};
    std::deque<std::string> queue{sub};
    while (!queue.empty()) {
        const ClassInfo* c = model.find_class(queue.front());
        queue.pop_front();
        if (!c) {
            continue;
        }
        for (const auto& s : c->super_types) {
            if (s.name == super) {
                return true;
            }
            if (seen.insert(s.name).second) {
                queue.push_back(s.name);
            }
        }
    }
    return false;
}

bool is_interface(const ProjectModel& model, const std::string& name) {
    const ClassInfo* c = model.find_class(name);
    return c && c->is_interface;
}

int numeric_rank(const std::string& name) {
    if (name == "byte") return 1;
    if (name == "short") return 2;
    if (name == "int") return 3;
    if (name == "long") return 4;
    if (name == "float") return 5;
    if (name == "double") return 6;
    return 0;
}

bool widens(const ExprType& from, const ExprType& to) {
    if (from.name == to.name) {
        return true;
    }
    if (to.kind == K::Char || from.name == "boolean") {
        return false;
    }
    if (from.kind == K::Char) {
        return numeric_rank(to.name) >= 3;
    }
    return numeric_rank(from.name) > 0 && numeric_rank(from.name) < numeric_rank(to.name);
}

std::string box_of(const std::string& primitive) {
    if (primitive == "int") return "java.lang.Integer";
    if (primitive == "char") return "java.lang.Character";
    if (primitive.empty()) return {};
    std::string boxed = primitive;
    boxed[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(boxed[0])));
    return "java.lang." + boxed;
}

std::string simple_name(const std::string& name) {
    const auto dot = name.rfind('.');
    return dot == std::string::npos ? name : name.substr(dot + 1);
}

} // namespace

std::string_view to_string(OracleType type) {
    switch (type) {
    case OracleType::Pre:
        return "PRE";
    case OracleType::NormalPost:
        return "NORMAL_POST";
    case OracleType::ExceptPost:
        return "EXCEPT_POST";
    }
    return "PRE";
}

std::optional<OracleType> parse_oracle_type(std::string_view text) {
    if (text == "PRE") return OracleType::Pre;
    if (text == "NORMAL_POST") return OracleType::NormalPost;
    if (text == "EXCEPT_POST") return OracleType::ExceptPost;
    return std::nullopt;
}

std::string_view template_label(OracleType type) {
    switch (type) {
    case OracleType::Pre:
        return "Precondition";
    case OracleType::NormalPost:
        return "Normal postcondition";
    case OracleType::ExceptPost:
        return "Exceptional postcondition";
    }
    return "Precondition";
}

std::string_view to_string(Provenance provenance) {
    switch (provenance) {
    case Provenance::Common:
        return "common";
    case Provenance::Project:
        return "project";
    case Provenance::Method:
        return "method";
    case Provenance::SpecificMember:
        return "specific-member";
    case Provenance::DocLiteral:
        return "doc-literal";
    }
    return "common";
}

GenerationContext GenerationContext::make(const ProjectModel& model, const ClassInfo& owner, const MethodInfo& unit,
                                          OracleType type, std::optional<DocTag> tag) {
    if (type == OracleType::NormalPost && !unit.returns_value()) {
        throw ContractViolation("NORMAL_POST oracle requested for " + owner.name + "." + unit.key() +
                                ", which returns no value");
    }
    if (tag && tag->kind != DocTagKind::FreeText) {
        const DocTagKind expected = type == OracleType::Pre          ? DocTagKind::Param
                                    : type == OracleType::NormalPost ? DocTagKind::Return
                                                                     : DocTagKind::Throws;
        if (tag->kind != expected) {
            throw ContractViolation("@" + tag->keyword + " tag cannot drive a " + std::string(to_string(type)) +
                                    " oracle");
        }
    }
    GenerationContext ctx;
    ctx.model = &model;
    ctx.owner = &owner;
    ctx.unit = &unit;
    ctx.type = type;
    if (tag && tag->kind == DocTagKind::Throws) {
        ctx.exception_type = tag->target;
    }
    ctx.tag = std::move(tag);
    return ctx;
}

std::string GenerationContext::tag_text() const {
    return tag ? tag->render() : std::string();
}

bool castable(const ProjectModel& model, const ExprType& a, const ExprType& b) {
    if (a.kind == K::Array && b.kind == K::Array) {
        if (!a.element || !b.element) {
            return false;
        }
        if (a.element->is_object_like() && b.element->is_object_like()) {
            return castable(model, *a.element, *b.element);
        }
        return a.element->key() == b.element->key();
    }
    if (a.kind == K::Array || b.kind == K::Array) {
        const ExprType& other = a.kind == K::Array ? b : a;
        return other.kind == K::Reference &&
               (other.name == "java.lang.Object" || other.name == "java.lang.Cloneable" ||
                other.name == "java.io.Serializable");
    }
    if (a.kind != K::Reference || b.kind != K::Reference) {
        return false;
    }
    return is_subclass(model, a.name, b.name) || is_subclass(model, b.name, a.name) ||
           is_interface(model, a.name) || is_interface(model, b.name);
}

bool comparable(const ProjectModel& model, const ExprType& a, const ExprType& b) {
    if (a.is_numeric() && b.is_numeric()) {
        return true;
    }
    if (a.is_boolean() && b.is_boolean()) {
        return true;
    }
    auto nullable = [](const ExprType& t) {
        return t.is_object_like() || t.kind == K::Unknown || t.kind == K::Null;
    };
    if (a.kind == K::Null || b.kind == K::Null) {
        return nullable(a) && nullable(b);
    }
    if (a.is_object_like() && b.is_object_like()) {
        return castable(model, a, b);
    }
    return false;
}

bool assignable(const ProjectModel& model, const ExprType& value, const ExprType& target) {
    switch (target.kind) {
    case K::Integral:
    case K::Floating:
    case K::Char:
        return value.is_numeric() && widens(value, target);
    case K::Boolean:
        return value.kind == K::Boolean;
    case K::Reference:
        switch (value.kind) {
        case K::Null:
            return true;
        case K::Reference:
            return is_subclass(model, value.name, target.name);
        case K::Array:
            return target.name == "java.lang.Object";
        case K::Integral:
        case K::Floating:
        case K::Char:
        case K::Boolean: {
            const std::string boxed = box_of(value.name);
            return target.name == "java.lang.Object" || target.name == boxed ||
                   (target.name == "java.lang.Number" && value.kind != K::Char && value.kind != K::Boolean);
        }
        case K::Unknown:
            return target.name == "java.lang.Object";
        default:
            return false;
        }
    case K::Array:
        if (value.kind == K::Null) {
            return true;
        }
        if (value.kind != K::Array || !value.element || !target.element) {
            return false;
        }
        if (value.element->is_object_like() && target.element->is_object_like()) {
            return assignable(model, *value.element, *target.element);
        }
        return value.element->key() == target.element->key();
    case K::Unknown:
        return value.kind == K::Null || (value.kind == K::Unknown && value.name == target.name) ||
               (value.kind == K::Reference && simple_name(value.name) == simple_name(target.name));
    default:
        return false;
    }
}

namespace detail {

ExprType int_type() {
    return ExprType::of(K::Integral, "int");
}

ExprType boolean_type() {
    return ExprType::of(K::Boolean, "boolean");
}

ExprType promote(const ExprType& a, const ExprType& b) {
    if (!a.is_numeric() || !b.is_numeric()) {
        return ExprType::of(K::Unknown);
    }
    auto has = [&](std::string_view n) { return a.name == n || b.name == n; };
    if (has("double")) return ExprType::of(K::Floating, "double");
    if (has("float")) return ExprType::of(K::Floating, "float");
    if (has("long")) return ExprType::of(K::Integral, "long");
    return int_type();
}

bool completable(const ExprType& type) {
    switch (type.kind) {
    case K::None:
    case K::StaticClass:
    case K::Stream:
    case K::Void:
        return false;
    default:
        return true;
    }
}

bool bool_capable(grammar::OperandForm form) {
    using F = grammar::OperandForm;
    return form == F::BoolLiteral || form == F::Chain || form == F::Paren;
}

bool is_arrays_stream(const ExprType& receiver, std::string_view member) {
    return receiver.kind == K::StaticClass && receiver.name == "java.util.Arrays" && member == "stream";
}

const MethodInfo* resolve_overload(const TokenEngine& engine, const ExprType& receiver, std::string_view name,
                                   const std::vector<ExprType>& args) {
    const ProjectModel& model = *engine.context().model;
    for (const MethodInfo* m : engine.methods_named(receiver, name)) {
        if (m->parameters.size() != args.size()) {
            continue;
        }
        bool ok = true;
        for (std::size_t i = 0; i < args.size() && ok; ++i) {
            ok = assignable(model, args[i], ExprType::from(m->parameters[i].type));
        }
        if (ok) {
            return m;
        }
    }
    return nullptr;
}

bool overload_prefix_ok(const TokenEngine& engine, const ExprType& receiver, std::string_view name,
                        const std::vector<ExprType>& prefix, bool need_more) {
    const ProjectModel& model = *engine.context().model;
    for (const MethodInfo* m : engine.methods_named(receiver, name)) {
        if (!m->returns_value()) {
            continue;
        }
        if (m->parameters.size() < prefix.size() || (need_more && m->parameters.size() == prefix.size())) {
            continue;
        }
        bool ok = true;
        for (std::size_t i = 0; i < prefix.size() && ok; ++i) {
            ok = assignable(model, prefix[i], ExprType::from(m->parameters[i].type));
        }
        if (ok) {
            return true;
        }
    }
    return false;
}

ExprType ContextTypeEnv::identifier(std::string_view name) const {
    const GenerationContext& ctx = engine_.context();
    if (name == "this") {
        return ExprType::of(K::Reference, ctx.owner->qualified_name);
    }
    if (name == "methodResultID") {
        return ExprType::from(ctx.unit->return_type);
    }
    for (const auto& p : ctx.unit->parameters) {
        if (p.name == name) {
            return ExprType::from(p.type);
        }
    }
    if (const ClassInfo* c = ctx.model->find_by_simple_name(name, ctx.owner->qualified_name)) {
        return ExprType::of(K::StaticClass, c->qualified_name);
    }
    return ExprType::of(K::Unknown, std::string(name));
}

ExprType ContextTypeEnv::field(const ExprType& receiver, std::string_view name) const {
    if (!receiver.has_members()) {
        return ExprType::of(K::Unknown, std::string(name));
    }
    for (const auto& f : engine_.members_of(receiver).fields) {
        if (f.name == name) {
            return ExprType::from(f.type);
        }
    }
    if (strict_) {
        throw TypingError("no field '" + std::string(name) + "' on " + receiver.key());
    }
    return ExprType::of(K::Unknown, std::string(name));
}

ExprType ContextTypeEnv::call(const ExprType& receiver, std::string_view name,
                              const std::vector<ExprType>& args) const {
    if (is_arrays_stream(receiver, name) && args.size() == 1 && args[0].kind == K::Array && args[0].element) {
        return ExprType::stream_of(*args[0].element);
    }
    if (!receiver.has_members()) {
        return ExprType::of(K::Unknown, std::string(name));
    }
    if (const MethodInfo* m = resolve_overload(engine_, receiver, name, args)) {
        ExprType result = ExprType::from(m->return_type);
        if (result.kind == K::Reference && result.name == "java.util.stream.Stream") {
            return ExprType::stream_of(ExprType::of(K::Reference, "java.lang.Object"));
        }
        return result;
    }
    if (strict_) {
        throw TypingError("no applicable method '" + std::string(name) + "' with " + std::to_string(args.size()) +
                          " argument(s) on " + receiver.key());
    }
    return ExprType::of(K::Unknown, std::string(name));
}

} // namespace detail

} // namespace oraclegen
