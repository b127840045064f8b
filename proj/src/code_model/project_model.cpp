#include "oraclegen/code_model.hpp"
#include "oraclegen/error.hpp"
#include "oraclegen/java_source.hpp"

#include <algorithm>
#include <fstream>
#include <nlohmann/json.hpp>
#include <set>
#include <sstream>

namespace oraclegen {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

bool is_primitive_name(std::string_view name) {
    return name == "int" || name == "long" || name == "short" || name == "byte" || name == "char" ||
           name == "boolean" || name == "float" || name == "double" || name == "void";
}

std::string_view simple_name_of(std::string_view qualified) {
    const auto dot = qualified.rfind('.');
    return dot == std::string_view::npos ? qualified : qualified.substr(dot + 1);
}

std::string_view package_of(std::string_view qualified) {
    const auto dot = qualified.rfind('.');
    return dot == std::string_view::npos ? std::string_view{} : qualified.substr(0, dot);
}

/// Splits "Map<K, V>" into ("Map", "<K, V>") and drops annotations/spaces.
std::pair<std::string, std::string> split_type_args(std::string_view text) {
    const auto lt = text.find('<');
    if (lt == std::string_view::npos) {
        return {std::string(text), {}};
    }
    // Qualified types may carry arguments on inner segments: Outer<A>.Inner
    std::string base;
    std::string args;
    int depth = 0;
    for (char c : text) {
        if (c == '<') {
            ++depth;
        }
        if (depth > 0) {
            args.push_back(c);
        } else if (c != ' ') {
            base.push_back(c);
        }
        if (c == '>') {
            --depth;
        }
    }
    return {base, args};
}

class Resolver {
public:
    Resolver(const ProjectModel& model, std::string_view context,
             const std::vector<std::string>* method_type_params)
        : model_(model), context_(context), method_type_params_(method_type_params) {
        context_class_ = model_.find_class(context_);
    }

    TypeRef resolve(std::string_view raw) const {
        std::string text = java::collapse_whitespace(raw);
        while (!text.empty() && text.front() == '@') {
            // leading type annotation: drop up to the first space
            const auto space = text.find(' ');
            text = space == std::string::npos ? std::string{} : text.substr(space + 1);
        }
        if (text.empty()) {
            return TypeRef::unknown("");
        }
        if (text.size() > 3 && text.compare(text.size() - 3, 3, "...") == 0) {
            text = text.substr(0, text.size() - 3) + "[]";
        }
        if (text.size() > 2 && text.compare(text.size() - 2, 2, "[]") == 0) {
            std::string elem = text.substr(0, text.size() - 2);
            while (!elem.empty() && elem.back() == ' ') {
                elem.pop_back();
            }
            return TypeRef::array_of(resolve(elem));
        }
        auto [base, args] = split_type_args(text);
        if (is_primitive_name(base)) {
            return TypeRef::primitive(base);
        }
        if (base == "?" || base.empty()) {
            return TypeRef::reference("java.lang.Object");
        }
        if (is_type_variable(base)) {
            return TypeRef::reference("java.lang.Object");
        }
        if (auto qualified = lookup(base)) {
            TypeRef ref = TypeRef::reference(*qualified);
            ref.type_args = args;
            return ref;
        }
        TypeRef unknown = TypeRef::unknown(base);
        unknown.type_args = args;
        return unknown;
    }

private:
    bool is_type_variable(std::string_view name) const {
        if (method_type_params_ &&
            std::find(method_type_params_->begin(), method_type_params_->end(), name) !=
                method_type_params_->end()) {
            return true;
        }
        return context_class_ && std::find(context_class_->type_params.begin(),
                                            context_class_->type_params.end(),
                                            name) != context_class_->type_params.end();
    }

    std::optional<std::string> lookup(std::string_view name) const {
        if (model_.find_class(name)) {
            return std::string(name);
        }
        const auto dot = name.find('.');
        if (dot != std::string_view::npos) {
            // Outer.Inner written relative to an import or the package.
            if (auto head = lookup(name.substr(0, dot))) {
                std::string candidate = *head + std::string(name.substr(dot));
                if (model_.find_class(candidate)) {
                    return candidate;
                }
            }
            return std::nullopt;
        }
        // Nested in the context class or one of its enclosing classes.
        std::string scope(context_);
        while (!scope.empty()) {
            std::string candidate = scope + "." + std::string(name);
            if (model_.find_class(candidate)) {
                return candidate;
            }
            const auto d = scope.rfind('.');
            if (d == std::string::npos) {
                break;
            }
            scope.resize(d);
        }
        if (context_class_) {
            for (const auto& import : context_class_->imports) {
                if (import.rfind("static ", 0) == 0) {
                    continue;
                }
                if (simple_name_of(import) == name && model_.find_class(import)) {
                    return import;
                }
            }
            const std::string package(package_of(context_class_->qualified_name));
            std::string candidate = package.empty() ? std::string(name) : package + "." + std::string(name);
            if (model_.find_class(candidate)) {
                return candidate;
            }
            for (const auto& import : context_class_->imports) {
                if (import.size() > 2 && import.compare(import.size() - 2, 2, ".*") == 0) {
                    std::string wildcard = import.substr(0, import.size() - 1) + std::string(name);
                    if (model_.find_class(wildcard)) {
                        return wildcard;
                    }
                }
            }
        }
        if (const ClassInfo* c = model_.find_by_simple_name(name, context_)) {
            return c->qualified_name;
        }
        return std::nullopt;
    }

    const ProjectModel& model_;
    std::string_view context_;
    const std::vector<std::string>* method_type_params_;
    const ClassInfo* context_class_ = nullptr;
};

void resolve_class(const ProjectModel& model, ClassInfo& info) {
    const Resolver class_scope(model, info.qualified_name, nullptr);
    for (auto& super_type : info.super_types) {
        super_type = class_scope.resolve(super_type.name + super_type.type_args);
    }
    for (auto& field : info.fields) {
        field.type = class_scope.resolve(field.type.name);
    }
    for (auto& method : info.methods) {
        const Resolver method_scope(model, info.qualified_name, &method.type_params);
        if (!method.is_constructor) {
            method.return_type = method_scope.resolve(method.return_type.name);
        }
        for (auto& p : method.parameters) {
            p.type = method_scope.resolve(p.type.name);
        }
    }
}

json type_json(const TypeRef& t) {
    json j{{"category", std::string(to_string(t.category))}, {"name", t.name}};
    if (t.element) {
        j["element"] = type_json(*t.element);
    }
    if (!t.type_args.empty()) {
        j["typeArgs"] = t.type_args;
    }
    return j;
}

json class_json(const ClassInfo& c) {
    json fields = json::array();
    for (const auto& f : c.fields) {
        fields.push_back({{"declaration", f.declaration_text},
                          {"name", f.name},
                          {"static", f.is_static},
                          {"type", type_json(f.type)},
                          {"visibility", std::string(to_string(f.visibility))}});
    }
    json methods = json::array();
    for (const auto& m : c.methods) {
        json params = json::array();
        for (const auto& p : m.parameters) {
            params.push_back({{"name", p.name}, {"position", p.position}, {"type", type_json(p.type)}});
        }
        json tags = json::array();
        for (const auto& t : m.tags) {
            tags.push_back({{"dangling", t.dangling},
                            {"keyword", t.keyword},
                            {"kind", std::string(to_string(t.kind))},
                            {"target", t.target},
                            {"text", t.text}});
        }
        methods.push_back({{"constructor", m.is_constructor},
                           {"doc", m.doc_text},
                           {"name", m.name},
                           {"owner", m.owner},
                           {"parameters", params},
                           {"returnType", type_json(m.return_type)},
                           {"signature", m.signature_text},
                           {"source", m.source_text},
                           {"static", m.is_static},
                           {"tags", tags},
                           {"typeParams", m.type_params},
                           {"visibility", std::string(to_string(m.visibility))}});
    }
    json supers = json::array();
    for (const auto& s : c.super_types) {
        supers.push_back(type_json(s));
    }
    return json{{"external", c.is_external},
                {"fields", fields},
                {"imports", c.imports},
                {"interface", c.is_interface},
                {"methods", methods},
                {"name", c.name},
                {"qualifiedName", c.qualified_name},
                {"superTypes", supers},
                {"typeParams", c.type_params}};
}

} // namespace

const ClassInfo* ProjectModel::find_class(std::string_view qualified_name) const {
    const std::string key(qualified_name);
    if (auto it = classes_.find(key); it != classes_.end()) {
        return &it->second;
    }
    if (auto it = external_.find(key); it != external_.end()) {
        return &it->second;
    }
    return nullptr;
}

const ClassInfo* ProjectModel::find_by_simple_name(std::string_view simple_name,
                                                   std::string_view context_qualified) const {
    // Deterministic preference: same package, then a unique project match,
    // then java.lang, then a unique external match.
    const std::string_view package = package_of(context_qualified);
    const ClassInfo* unique = nullptr;
    int matches = 0;
    for (const auto& [name, info] : classes_) {
        if (info.name != simple_name) {
            continue;
        }
        if (!context_qualified.empty() && package_of(name) == package) {
            return &info;
        }
        if (unique == nullptr) {
            unique = &info;
        }
        ++matches;
    }
    if (matches == 1) {
        return unique;
    }
    if (matches > 1) {
        return nullptr;
    }
    if (auto it = external_.find("java.lang." + std::string(simple_name)); it != external_.end()) {
        return &it->second;
    }
    const ClassInfo* external = nullptr;
    for (const auto& [name, info] : external_) {
        if (info.name == simple_name) {
            if (external == nullptr) {
                external = &info;
            }
        }
    }
    return external;
}

std::size_t ProjectModel::method_count() const {
    std::size_t n = 0;
    for (const auto& [name, info] : classes_) {
        n += info.methods.size();
    }
    return n;
}

void ProjectModel::add_class(ClassInfo info) {
    if (external_.count(info.qualified_name) != 0) {
        external_.erase(info.qualified_name);
    }
    std::string key = info.qualified_name;
    if (classes_.count(key) != 0) {
        warnings_.push_back("duplicate class " + key + " (later definition ignored)");
        return;
    }
    classes_.emplace(std::move(key), std::move(info));
}

void ProjectModel::add_external_class(ClassInfo info) {
    info.is_external = true;
    if (classes_.count(info.qualified_name) != 0) {
        return;
    }
    std::string key = info.qualified_name;
    external_.insert_or_assign(std::move(key), std::move(info));
}

void ProjectModel::resolve_all() {
    for (auto& [name, info] : classes_) {
        resolve_class(*this, info);
    }
    for (auto& [name, info] : external_) {
        resolve_class(*this, info);
    }
}

TypeRef resolve_type(const ProjectModel& model, std::string_view name, std::string_view context_class) {
    return Resolver(model, context_class, nullptr).resolve(name);
}

Members accessible_members(const ProjectModel& model, const TypeRef& type) {
    if (!type.is_object_like()) {
        throw ContractViolation("accessible_members requires a reference or array type, got " +
                                std::string(to_string(type.category)));
    }
    Members members;
    std::set<std::string> seen_fields;
    std::set<std::string> seen_methods;
    std::set<std::string> visited;

    auto add_class_members = [&](const ClassInfo& c) {
        for (const auto& f : c.fields) {
            if (f.visibility != Visibility::Private && seen_fields.insert(f.name).second) {
                members.fields.push_back(f);
            }
        }
        for (const auto& m : c.methods) {
            if (m.visibility != Visibility::Private && !m.is_constructor && seen_methods.insert(m.key()).second) {
                members.methods.push_back(m);
            }
        }
    };

    if (type.category == TypeCategory::Array) {
        FieldInfo length;
        length.name = "length";
        length.type = TypeRef::primitive("int");
        length.visibility = Visibility::Public;
        length.declaration_text = "public final int length";
        members.fields.push_back(length);
        seen_fields.insert("length");
    } else {
        // Breadth-first over supertypes keeps declaration order, then supertype order.
        std::vector<std::string> queue{type.name};
        for (std::size_t i = 0; i < queue.size(); ++i) {
            if (!visited.insert(queue[i]).second || queue[i] == "java.lang.Object") {
                continue;
            }
            const ClassInfo* c = model.find_class(queue[i]);
            if (!c) {
                continue;
            }
            add_class_members(*c);
            for (const auto& s : c->super_types) {
                if (s.category == TypeCategory::Reference) {
                    queue.push_back(s.name);
                }
            }
        }
    }
    if (const ClassInfo* object = model.find_class("java.lang.Object")) {
        add_class_members(*object);
    }
    return members;
}

void load_signature_text(ProjectModel& model, std::string_view text, const std::string& origin) {
    std::istringstream in{std::string(text)};
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
            throw FormatError(origin, line_no, std::string("invalid JSON: ") + e.what());
        }
        if (!j.is_object() || !j.contains("qualifiedName") || !j["qualifiedName"].is_string()) {
            throw FormatError(origin, line_no, "missing string field 'qualifiedName'");
        }
        ClassInfo info;
        info.qualified_name = j["qualifiedName"].get<std::string>();
        info.name = std::string(simple_name_of(info.qualified_name));
        info.is_interface = j.value("interface", false);
        try {
            for (const auto& s : j.value("superTypes", json::array())) {
                info.super_types.push_back(TypeRef::unknown(s.get<std::string>()));
            }
            for (const auto& f : j.value("fields", json::array())) {
                auto decl = java::parse_member_signature(f.get<std::string>(), info.name);
                if (decl.is_method) {
                    throw Error("field entry declares a method: " + f.get<std::string>());
                }
                decl.field.declaration_text = f.get<std::string>();
                if (info.is_interface) {
                    decl.field.is_static = true;
                    decl.field.visibility = Visibility::Public;
                }
                info.fields.push_back(std::move(decl.field));
            }
            for (const auto& m : j.value("methods", json::array())) {
                auto decl = java::parse_member_signature(m.get<std::string>(), info.name);
                if (!decl.is_method) {
                    throw Error("method entry declares a field: " + m.get<std::string>());
                }
                decl.method.owner = info.qualified_name;
                if (info.is_interface && decl.method.visibility == Visibility::Package) {
                    decl.method.visibility = Visibility::Public;
                }
                info.methods.push_back(std::move(decl.method));
            }
        } catch (const FormatError&) {
            throw;
        } catch (const std::exception& e) {
            throw FormatError(origin, line_no, e.what());
        }
        model.add_external_class(std::move(info));
    }
}

void load_signature_file(ProjectModel& model, const fs::path& file) {
    std::ifstream in(file, std::ios::binary);
    if (!in) {
        throw Error("cannot read signature file " + file.string());
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    load_signature_text(model, buf.str(), file.string());
}

namespace {

ProjectModel assemble(const std::vector<std::pair<std::string, std::string>>& sources,
                      const std::vector<fs::path>& signature_files) {
    ProjectModel model;
    load_signature_text(model, platform_stub_signatures(), "<platform-stubs>");
    for (const auto& file : signature_files) {
        load_signature_file(model, file);
    }
    std::size_t parsed = 0;
    for (const auto& [name, text] : sources) {
        try {
            auto unit = java::parse_compilation_unit(text, name);
            for (auto& c : unit.classes) {
                model.add_class(std::move(c));
            }
            ++parsed;
        } catch (const Error& e) {
            model.add_warning(std::string("skipped unparseable file: ") + e.what());
        }
    }
    if (parsed == 0) {
        throw Error("no compilation units");
    }
    model.resolve_all();
    return model;
}

} // namespace

ProjectModel build_project_model_from_sources(const std::vector<std::pair<std::string, std::string>>& sources,
                                              const std::vector<fs::path>& signature_files) {
    return assemble(sources, signature_files);
}

ProjectModel build_project_model(const fs::path& source_root, const std::vector<fs::path>& signature_files) {
    if (!fs::exists(source_root) || !fs::is_directory(source_root)) {
        throw Error("source root does not exist: " + source_root.string());
    }
    std::vector<fs::path> files;
    for (const auto& entry : fs::recursive_directory_iterator(source_root)) {
        if (entry.is_regular_file() && entry.path().extension() == ".java") {
            files.push_back(entry.path());
        }
    }
    std::sort(files.begin(), files.end());
    std::vector<std::pair<std::string, std::string>> sources;
    for (const auto& f : files) {
        std::ifstream in(f, std::ios::binary);
        std::ostringstream buf;
        buf << in.rdbuf();
        sources.emplace_back(fs::relative(f, source_root).generic_string(), buf.str());
    }
    if (sources.empty()) {
        throw Error("no compilation units under " + source_root.string());
    }
    ProjectModel model = assemble(sources, signature_files);
    model.set_source_root(source_root);
    return model;
}

std::string serialize_model(const ProjectModel& model) {
    std::string out;
    for (const auto& [name, info] : model.classes()) {
        out += class_json(info).dump();
        out += '\n';
    }
    for (const auto& [name, info] : model.external_classes()) {
        out += class_json(info).dump();
        out += '\n';
    }
    return out;
}

} // namespace oraclegen
