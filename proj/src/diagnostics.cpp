#include "krcnl/diagnostics.hpp"

#include <sstream>

#include "json.hpp"

namespace krcnl {

void Diagnostics::error(std::string code, std::string message, SourcePos pos,
                        std::optional<SourcePos> related) {
    items_.push_back({Severity::Error, std::move(code), std::move(message),
                      std::move(pos), std::move(related)});
}

void Diagnostics::warning(std::string code, std::string message, SourcePos pos,
                          std::optional<SourcePos> related) {
    items_.push_back({Severity::Warning, std::move(code), std::move(message),
                      std::move(pos), std::move(related)});
}

void Diagnostics::add(Diagnostic d) { items_.push_back(std::move(d)); }

void Diagnostics::merge(const Diagnostics& other) {
    items_.insert(items_.end(), other.items_.begin(), other.items_.end());
}

bool Diagnostics::has_errors() const { return error_count() > 0; }

size_t Diagnostics::error_count() const {
    size_t n = 0;
    for (const auto& d : items_)
        if (d.severity == Severity::Error) ++n;
    return n;
}

static const char* severity_name(Severity s) {
    return s == Severity::Error ? "error" : "warning";
}

std::string format_text(const Diagnostic& d) {
    std::ostringstream os;
    os << d.pos.file << ':' << d.pos.line << ':' << d.pos.column << ": "
       << severity_name(d.severity) << ": " << d.code << ": " << d.message;
    if (d.related) {
        os << " (first declared at " << d.related->file << ':' << d.related->line
           << ':' << d.related->column << ')';
    }
    return os.str();
}

std::string diagnostics_to_json(const std::vector<Diagnostic>& ds) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& d : ds) {
        nlohmann::ordered_json o;
        o["severity"] = severity_name(d.severity);
        o["code"] = d.code;
        o["message"] = d.message;
        o["file"] = d.pos.file;
        o["line"] = d.pos.line;
        o["column"] = d.pos.column;
        if (d.related) {
            o["related"] = {{"file", d.related->file},
                            {"line", d.related->line},
                            {"column", d.related->column}};
        }
        arr.push_back(std::move(o));
    }
    return arr.dump(2) + "\n";
}

std::optional<std::vector<Diagnostic>> diagnostics_from_json(
    const std::string& text) {
    auto parsed = nlohmann::json::parse(text, nullptr, false);
    if (parsed.is_discarded() || !parsed.is_array()) return std::nullopt;
    std::vector<Diagnostic> out;
    for (const auto& o : parsed) {
        if (!o.is_object()) return std::nullopt;
        Diagnostic d;
        try {
            std::string sev = o.at("severity").get<std::string>();
            if (sev == "error")
                d.severity = Severity::Error;
            else if (sev == "warning")
                d.severity = Severity::Warning;
            else
                return std::nullopt;
            d.code = o.at("code").get<std::string>();
            d.message = o.at("message").get<std::string>();
            d.pos.file = o.at("file").get<std::string>();
            d.pos.line = o.at("line").get<int>();
            d.pos.column = o.at("column").get<int>();
            if (o.contains("related")) {
                SourcePos rel;
                rel.file = o.at("related").at("file").get<std::string>();
                rel.line = o.at("related").at("line").get<int>();
                rel.column = o.at("related").at("column").get<int>();
                d.related = rel;
            }
        } catch (const nlohmann::json::exception&) {
            return std::nullopt;
        }
        out.push_back(std::move(d));
    }
    return out;
}

}  // namespace krcnl
