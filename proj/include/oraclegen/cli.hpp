#pragma once

// Command-line driver: analyze, generate, disaggregate, evaluate, inject and
// restrictions. Every command writes its outputs and a run.json manifest
// under the output directory.

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "oraclegen/generation.hpp"

namespace oraclegen {

inline constexpr std::string_view kVersion = "0.1.0";

enum ExitCode { kExitOk = 0, kExitPartial = 1, kExitFatal = 2 };

struct RunConfig {
    std::filesystem::path source_root;
    std::vector<std::filesystem::path> signature_files;
    std::string backend = "heuristic";
    std::size_t max_tokens = 64;
    std::size_t max_seconds = 60;
    std::size_t context_lines = 40;
    std::size_t max_chars = 8000;
    std::size_t remote_timeout_ms = 5000;
    int remote_retries = 1;
    std::filesystem::path output_dir = "out";
    std::size_t parallelism = 1;
    bool free_text = false;
    bool strict_metrics = false;
    std::string project_name;

    nlohmann::json to_json() const;
    /// Overlays the keys present in `j`; throws Error naming an unknown or
    /// mistyped key.
    void merge(const nlohmann::json& j);
    BackendSpec backend_spec() const;
    GenerationLimits limits() const;
};

RunConfig load_config(const std::filesystem::path& file);

std::uint64_t fnv1a64(std::string_view data);
std::string config_hash(const RunConfig& config, std::string_view command, const nlohmann::json& inputs);

/// Runs the CLI with the given arguments (argv[0] excluded from `args`).
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace oraclegen
