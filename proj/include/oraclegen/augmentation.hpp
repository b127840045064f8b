#pragma once

// Inserting generated oracles into test sources as assertions around calls
// to the method under test.

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "oraclegen/token_engine.hpp"

namespace oraclegen {

inline constexpr std::string_view kMarkerBegin = "// oraclegen:begin";
inline constexpr std::string_view kMarkerEnd = "// oraclegen:end";
inline constexpr std::string_view kResultLocal = "__tr_result";

struct InjectionRequest {
    const MethodInfo* method = nullptr;
    OracleType type = OracleType::Pre;
    /// Canonical oracle text, ';' included.
    std::string oracle;
    /// Exception caught by the EXCEPT_POST skeleton.
    std::string exception_type;
};

struct CallSite {
    /// 1-based position of the method name (or `new`).
    std::size_t line = 0;
    std::size_t column = 0;
    /// Empty for unqualified calls and constructors.
    std::string receiver;
    std::vector<std::string> arguments;
    /// The call expression as written.
    std::string call_text;
    /// Offset of the first character of the enclosing statement.
    std::size_t statement_begin = 0;
    /// Offset just past the statement's ';'.
    std::size_t statement_end = 0;
    /// The call is the whole statement or the whole initializer of one.
    bool statement_level = false;
    /// Variable receiving the result (`T v = call;` or `v = call;`).
    std::string result_variable;
    std::string indent;
};

struct SiteBinding {
    CallSite site;
    /// methodResultID, this and parameter names mapped to test expressions.
    std::map<std::string, std::string> binding;
    /// Oracle with the binding applied, without ';'.
    std::string condition;
    /// Fresh local introduced to capture a discarded result, or empty.
    std::string capture;
};

struct InjectionPlan {
    std::string test_file;
    InjectionRequest request;
    std::vector<SiteBinding> sites;
    /// Call sites skipped, one line each.
    std::vector<std::string> diagnostics;
};

/// Finds direct invocations of the method (by name and arity) outside
/// previously injected blocks and binds the oracle's symbols at each.
InjectionPlan plan_injection(std::string_view test_source, const InjectionRequest& request,
                             std::string test_file = {});

/// The marker line opening an injected block for this request.
std::string injection_marker(const InjectionRequest& request);

struct InjectionResult {
    std::string source;
    bool changed = false;
    /// Set when the file was left unchanged because of a failure.
    std::string error;
};

/// Applies the plan. A source that already carries the request's marker is
/// returned unchanged; so is one whose rewrite no longer parses.
InjectionResult apply_injection(std::string_view test_source, const InjectionPlan& plan);

/// Unified diff (3 lines of context) between two texts.
std::string unified_diff(std::string_view before, std::string_view after, const std::string& old_name,
                         const std::string& new_name);

} // namespace oraclegen
