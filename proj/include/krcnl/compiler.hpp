#pragma once

#include <iosfwd>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "krcnl/analyzer.hpp"
#include "krcnl/diagnostics.hpp"

namespace krcnl {

enum class DiagFormat { Text, Json };

struct CompileConfig {
    std::vector<std::string> vocab_paths;
    std::vector<std::string> rules_paths;
    std::string ns;  // empty -> KR_CNL_NS env var -> built-in default
    std::string output_dir = ".";
    bool force = false;
    bool range_union = false;
    DiagFormat diag_format = DiagFormat::Text;
};

std::string resolve_namespace(const CompileConfig& config);

// Frontend result: vocabulary + checked model + every diagnostic.
struct Frontend {
    std::shared_ptr<const Vocabulary> vocab;
    std::optional<FactModel> model;
    Diagnostics diags;
    bool io_ok = true;
    std::string io_message;
};

// Reads and parses all inputs (documents are parsed concurrently, results
// merged in path order so output is deterministic).
Frontend run_frontend(const CompileConfig& config);

enum class EmitTarget { Owl, Lrml };

// Exit codes: 0 clean, 1 diagnostics contained errors, 2 I/O or usage
// failure. `check` prints diagnostics to `out`; `emit`/`inspect` print
// results to `out` and diagnostics to `err`.
int cmd_check(const CompileConfig& config, std::ostream& out, std::ostream& err);
int cmd_emit(const CompileConfig& config, const std::set<EmitTarget>& targets,
             std::ostream& out, std::ostream& err);

enum class InspectWhat { Concepts, Facts, Rules };
int cmd_inspect(const CompileConfig& config, InspectWhat what,
                std::ostream& out, std::ostream& err);

// Output file stem: first rules path, else first vocab path, else "rulebase".
std::string output_basename(const CompileConfig& config);

}  // namespace krcnl
