#pragma once

#include <optional>
#include <string>
#include <vector>

namespace krcnl {

enum class Severity { Error, Warning };

struct SourcePos {
    std::string file;
    int line = 1;
    int column = 1;

    bool operator==(const SourcePos&) const = default;
};

// One reported problem. `code` is a stable machine-readable identifier
// (e.g. "unknown-word"); `related` optionally points at a second site,
// such as the first declaration for a duplicate.
struct Diagnostic {
    Severity severity = Severity::Error;
    std::string code;
    std::string message;
    SourcePos pos;
    std::optional<SourcePos> related;

    bool operator==(const Diagnostic&) const = default;
};

// Append-only sink passed through the pipeline.
class Diagnostics {
public:
    void error(std::string code, std::string message, SourcePos pos,
               std::optional<SourcePos> related = std::nullopt);
    void warning(std::string code, std::string message, SourcePos pos,
                 std::optional<SourcePos> related = std::nullopt);
    void add(Diagnostic d);
    void merge(const Diagnostics& other);

    bool has_errors() const;
    size_t error_count() const;
    const std::vector<Diagnostic>& all() const { return items_; }
    bool empty() const { return items_.empty(); }

private:
    std::vector<Diagnostic> items_;
};

// "<file>:<line>:<col>: <severity>: <code>: <message>"
std::string format_text(const Diagnostic& d);

std::string diagnostics_to_json(const std::vector<Diagnostic>& ds);
// Parses what diagnostics_to_json produced. Returns nullopt on malformed input.
std::optional<std::vector<Diagnostic>> diagnostics_from_json(const std::string& text);

}  // namespace krcnl
