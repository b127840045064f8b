#pragma once

#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace oraclegen {

enum class TypeCategory {
    NumericIntegral,
    NumericFloating,
    Boolean,
    Char,
    Reference,
    Array,
    Void,
    Unknown,
};

std::string_view to_string(TypeCategory category);

/// A resolved type. Generic arguments are erased; `type_args` keeps them as
/// text only. Arrays always carry an element type.
struct TypeRef {
    std::string name;
    TypeCategory category = TypeCategory::Unknown;
    std::shared_ptr<const TypeRef> element;
    std::string type_args;

    static TypeRef primitive(std::string_view name);
    static TypeRef reference(std::string qualified_name);
    static TypeRef array_of(TypeRef element);
    static TypeRef unknown(std::string name);
    static TypeRef void_type();

    bool is_numeric() const noexcept {
        return category == TypeCategory::NumericIntegral ||
               category == TypeCategory::NumericFloating || category == TypeCategory::Char;
    }
    bool is_object_like() const noexcept {
        return category == TypeCategory::Reference || category == TypeCategory::Array;
    }

    /// Java-style spelling: simple name for references, `int[]` for arrays.
    std::string display_name() const;

    friend bool operator==(const TypeRef& a, const TypeRef& b);
};

enum class Visibility { Public, Protected, Package, Private };

std::string_view to_string(Visibility visibility);

struct ParameterInfo {
    std::string name;
    TypeRef type;
    std::size_t position = 0;
};

struct FieldInfo {
    std::string name;
    TypeRef type;
    Visibility visibility = Visibility::Package;
    bool is_static = false;
    std::string declaration_text;
};

enum class DocTagKind { Param, Return, Throws, FreeText };

std::string_view to_string(DocTagKind kind);

struct DocTag {
    DocTagKind kind = DocTagKind::FreeText;
    /// Parameter name or exception type; empty for return/free text.
    std::string target;
    std::string text;
    /// Spelling of the block tag as written ("param", "throws", "exception", ...).
    std::string keyword;
    /// A @param tag naming no parameter of its method.
    bool dangling = false;

    /// "@throws NullPointerException if null is passed in", or the bare text
    /// for free-text tags.
    std::string render() const;
};

struct MethodInfo {
    std::string name;
    std::vector<ParameterInfo> parameters;
    TypeRef return_type = TypeRef::void_type();
    Visibility visibility = Visibility::Package;
    bool is_static = false;
    bool is_constructor = false;
    std::string signature_text;
    std::string source_text;
    std::string doc_text;
    std::vector<DocTag> tags;
    std::string owner;
    std::vector<std::string> type_params;

    /// `name(T1,T2)` with erased simple type names; unique per overload.
    std::string key() const;
    bool returns_value() const noexcept { return return_type.category != TypeCategory::Void; }
};

struct ClassInfo {
    std::string name;
    std::string qualified_name;
    std::vector<FieldInfo> fields;
    std::vector<MethodInfo> methods;
    std::vector<TypeRef> super_types;
    bool is_interface = false;
    bool is_external = false;
    /// Own and enclosing type parameters; erased to Object on resolution.
    std::vector<std::string> type_params;
    std::vector<std::string> imports;

    const MethodInfo* find_method(std::string_view key) const;
};

struct Members {
    std::vector<FieldInfo> fields;
    std::vector<MethodInfo> methods;
};

/// Classes of a source tree plus external classes (platform stubs and
/// signature files). Immutable once built.
class ProjectModel {
public:
    ProjectModel() = default;

    const std::map<std::string, ClassInfo>& classes() const noexcept { return classes_; }
    const std::map<std::string, ClassInfo>& external_classes() const noexcept { return external_; }
    const std::filesystem::path& source_root() const noexcept { return source_root_; }
    const std::vector<std::string>& warnings() const noexcept { return warnings_; }

    /// Project classes first, external classes only on a project miss.
    const ClassInfo* find_class(std::string_view qualified_name) const;
    const ClassInfo* find_by_simple_name(std::string_view simple_name,
                                         std::string_view context_qualified = {}) const;
    std::size_t method_count() const;

    void add_class(ClassInfo info);
    void add_external_class(ClassInfo info);
    void set_source_root(std::filesystem::path root) { source_root_ = std::move(root); }
    void add_warning(std::string warning) { warnings_.push_back(std::move(warning)); }

    /// Resolves member/parameter/return types of every class against the
    /// model. Called once after all classes have been added.
    void resolve_all();

private:
    std::map<std::string, ClassInfo> classes_;
    std::map<std::string, ClassInfo> external_;
    std::filesystem::path source_root_;
    std::vector<std::string> warnings_;
};

/// Parses every `.java` file below `source_root` plus the given signature
/// files. Throws Error when the root is missing or holds no compilation unit;
/// FormatError for malformed signature files.
ProjectModel build_project_model(const std::filesystem::path& source_root,
                                 const std::vector<std::filesystem::path>& signature_files = {});

/// Same as build_project_model but from in-memory sources (file name, text).
ProjectModel build_project_model_from_sources(
    const std::vector<std::pair<std::string, std::string>>& sources,
    const std::vector<std::filesystem::path>& signature_files = {});

/// Never fails: unknown names map to category Unknown.
TypeRef resolve_type(const ProjectModel& model, std::string_view name,
                     std::string_view context_class = {});

/// Non-private members of a reference or array type, inherited members of
/// resolvable supertypes, then the Object stubs. Throws ContractViolation for
/// any other category.
Members accessible_members(const ProjectModel& model, const TypeRef& type);

/// Loads classes from a line-delimited JSON signature file into `model` as
/// external classes.
void load_signature_file(ProjectModel& model, const std::filesystem::path& file);
void load_signature_text(ProjectModel& model, std::string_view text, const std::string& origin);

/// Built-in signatures for the java.lang / java.util subset the oracle
/// grammar relies on.
std::string_view platform_stub_signatures();

/// One JSON object per line, classes ordered by qualified name.
std::string serialize_model(const ProjectModel& model);

} // namespace oraclegen
