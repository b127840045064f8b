#include "oraclegen/expr_type.hpp"

namespace oraclegen {

ExprType ExprType::of(Kind kind, std::string name) {
    ExprType t;
    t.kind = kind;
    t.name = std::move(name);
    return t;
}

ExprType ExprType::array_of(ExprType element) {
    ExprType t;
    t.kind = Kind::Array;
    t.name = element.name + "[]";
    t.element = std::make_shared<const ExprType>(std::move(element));
    return t;
}

ExprType ExprType::stream_of(ExprType element) {
    ExprType t;
    t.kind = Kind::Stream;
    t.name = "java.util.stream.Stream";
    t.element = std::make_shared<const ExprType>(std::move(element));
    return t;
}

ExprType ExprType::from(const TypeRef& ref) {
    switch (ref.category) {
    case TypeCategory::NumericIntegral:
        return of(Kind::Integral, ref.name);
    case TypeCategory::NumericFloating:
        return of(Kind::Floating, ref.name);
    case TypeCategory::Boolean:
        return of(Kind::Boolean, "boolean");
    case TypeCategory::Char:
        return of(Kind::Char, "char");
    case TypeCategory::Reference:
        return of(Kind::Reference, ref.name);
    case TypeCategory::Array:
        return array_of(ref.element ? from(*ref.element) : of(Kind::Unknown));
    case TypeCategory::Void:
        return of(Kind::Void, "void");
    case TypeCategory::Unknown:
        break;
    }
    return of(Kind::Unknown, ref.name);
}

TypeRef ExprType::as_type_ref() const {
    if (kind == Kind::Array) {
        return TypeRef::array_of(element ? element->as_type_ref() : TypeRef::unknown(""));
    }
    if (kind == Kind::Reference || kind == Kind::StaticClass) {
        return TypeRef::reference(name);
    }
    if (is_numeric() || kind == Kind::Boolean) {
        return TypeRef::primitive(name);
    }
    return TypeRef::unknown(name);
}

std::string ExprType::key() const {
    switch (kind) {
    case Kind::Array:
        return "array(" + (element ? element->key() : std::string("?")) + ")";
    case Kind::Stream:
        return "stream(" + (element ? element->key() : std::string("?")) + ")";
    case Kind::Reference:
        return "ref:" + name;
    case Kind::StaticClass:
        return "class:" + name;
    case Kind::Unknown:
        return "unknown:" + name;
    case Kind::Integral:
    case Kind::Floating:
    case Kind::Char:
    case Kind::Boolean:
        return name;
    default:
        return std::string(to_string(kind));
    }
}

bool operator==(const ExprType& a, const ExprType& b) {
    return a.key() == b.key();
}

std::string_view to_string(ExprType::Kind kind) {
    using K = ExprType::Kind;
    switch (kind) {
    case K::None:
        return "none";
    case K::Integral:
        return "numeric-integral";
    case K::Floating:
        return "numeric-floating";
    case K::Char:
        return "char";
    case K::Boolean:
        return "boolean";
    case K::Proposition:
        return "boolean-proposition";
    case K::Reference:
        return "reference";
    case K::Array:
        return "array";
    case K::Null:
        return "null";
    case K::StaticClass:
        return "class";
    case K::Stream:
        return "stream";
    case K::Void:
        return "void";
    case K::Unknown:
        return "unknown";
    }
    return "none";
}

} // namespace oraclegen
