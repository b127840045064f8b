#pragma once

#include <memory>
#include <string>
#include <string_view>

#include "oraclegen/code_model.hpp"

namespace oraclegen {

/// Static type of an oracle operand. `Proposition` is the type of a
/// parenthesized proposition, `StaticClass` the type of a bare class name
/// used as a receiver of static members.
struct ExprType {
    enum class Kind {
        None,
        Integral,
        Floating,
        Char,
        Boolean,
        Proposition,
        Reference,
        Array,
        Null,
        StaticClass,
        Stream,
        Void,
        Unknown,
    };

    Kind kind = Kind::None;
    /// Primitive spelling ("int"), qualified class name, or the raw name of an
    /// unresolved type.
    std::string name;
    /// Element type of arrays and streams.
    std::shared_ptr<const ExprType> element;

    static ExprType of(Kind kind, std::string name = {});
    static ExprType array_of(ExprType element);
    static ExprType stream_of(ExprType element);
    static ExprType from(const TypeRef& ref);

    bool is_numeric() const noexcept {
        return kind == Kind::Integral || kind == Kind::Floating || kind == Kind::Char;
    }
    bool is_boolean() const noexcept { return kind == Kind::Boolean || kind == Kind::Proposition; }
    bool is_object_like() const noexcept { return kind == Kind::Reference || kind == Kind::Array; }
    bool has_members() const noexcept { return is_object_like() || kind == Kind::StaticClass; }

    /// TypeRef view for member lookup; only meaningful when has_members().
    TypeRef as_type_ref() const;

    /// Stable text form, e.g. "int", "ref:java.lang.String", "array(int)".
    std::string key() const;

    friend bool operator==(const ExprType& a, const ExprType& b);
};

std::string_view to_string(ExprType::Kind kind);

} // namespace oraclegen
