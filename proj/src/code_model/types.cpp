#include "oraclegen/code_model.hpp"

namespace oraclegen {

std::string_view to_string(TypeCategory category) {
    switch (category) {
    case TypeCategory::NumericIntegral:
        return "numeric-integral";
    case TypeCategory::NumericFloating:
        return "numeric-floating";
    case TypeCategory::Boolean:
        return "boolean";
    case TypeCategory::Char:
        return "char";
    case TypeCategory::Reference:
        return "reference";
    case TypeCategory::Array:
        return "array";
    case TypeCategory::Void:
        return "void";
    case TypeCategory::Unknown:
        return "unknown";
    }
    return "unknown";
}

std::string_view to_string(Visibility visibility) {
    switch (visibility) {
    case Visibility::Public:
        return "public";
    case Visibility::Protected:
        return "protected";
    case Visibility::Package:
        return "package";
    case Visibility::Private:
        return "private";
    }
    return "package";
}

std::string_view to_string(DocTagKind kind) {
    switch (kind) {
    case DocTagKind::Param:
        return "param";
    case DocTagKind::Return:
        return "return";
    case DocTagKind::Throws:
        return "throws";
    case DocTagKind::FreeText:
        return "free-text";
    }
    return "free-text";
}

TypeRef TypeRef::primitive(std::string_view name) {
    TypeRef t;
    t.name = std::string(name);
    if (name == "int" || name == "long" || name == "short" || name == "byte") {
        t.category = TypeCategory::NumericIntegral;
    } else if (name == "float" || name == "double") {
        t.category = TypeCategory::NumericFloating;
    } else if (name == "boolean") {
        t.category = TypeCategory::Boolean;
    } else if (name == "char") {
        t.category = TypeCategory::Char;
    } else if (name == "void") {
        t.category = TypeCategory::Void;
    } else {
        t.category = TypeCategory::Unknown;
    }
    return t;
}

TypeRef TypeRef::reference(std::string qualified_name) {
    TypeRef t;
    t.name = std::move(qualified_name);
    t.category = TypeCategory::Reference;
    return t;
}

TypeRef TypeRef::array_of(TypeRef element) {
    TypeRef t;
    t.name = element.name + "[]";
    t.category = TypeCategory::Array;
    t.element = std::make_shared<const TypeRef>(std::move(element));
    return t;
}

TypeRef TypeRef::unknown(std::string name) {
    TypeRef t;
    t.name = std::move(name);
    t.category = TypeCategory::Unknown;
    return t;
}

TypeRef TypeRef::void_type() {
    return primitive("void");
}

std::string TypeRef::display_name() const {
    if (category == TypeCategory::Array && element) {
        return element->display_name() + "[]";
    }
    if (category == TypeCategory::Reference) {
        const auto dot = name.rfind('.');
        return dot == std::string::npos ? name : name.substr(dot + 1);
    }
    return name;
}

bool operator==(const TypeRef& a, const TypeRef& b) {
    if (a.name != b.name || a.category != b.category || a.type_args != b.type_args) {
        return false;
    }
    if (static_cast<bool>(a.element) != static_cast<bool>(b.element)) {
        return false;
    }
    return !a.element || *a.element == *b.element;
}

std::string DocTag::render() const {
    if (kind == DocTagKind::FreeText) {
        return text;
    }
    std::string out = "@" + (keyword.empty() ? std::string(to_string(kind)) : keyword);
    if (!target.empty()) {
        out += " " + target;
    }
    if (!text.empty()) {
        out += " " + text;
    }
    return out;
}

std::string MethodInfo::key() const {
    std::string out = name + "(";
    for (std::size_t i = 0; i < parameters.size(); ++i) {
        if (i > 0) {
            out += ",";
        }
        out += parameters[i].type.display_name();
    }
    out += ")";
    return out;
}

const MethodInfo* ClassInfo::find_method(std::string_view key) const {
    for (const auto& m : methods) {
        if (m.key() == key) {
            return &m;
        }
    }
    return nullptr;
}

} // namespace oraclegen
