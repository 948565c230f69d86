#include "mfl/errors.hpp"

#include <algorithm>

namespace mfl {

std::string to_string(const Diagnostic& d) {
    std::string out = d.severity == Severity::Error ? "error" : "warning";
    if (d.line != 0) {
        out += " (line " + std::to_string(d.line) + ")";
    }
    out += " [" + d.code + "]: " + d.message;
    return out;
}

bool has_errors(const std::vector<Diagnostic>& diagnostics) {
    return std::any_of(diagnostics.begin(), diagnostics.end(), [](const Diagnostic& d) { return d.is_error(); });
}

namespace {

std::string join_diagnostics(const std::vector<Diagnostic>& diagnostics) {
    std::string out;
    for (const auto& d : diagnostics) {
        if (!out.empty()) {
            out += "\n";
        }
        out += to_string(d);
    }
    return out;
}

}  // namespace

ConfigError::ConfigError(const std::string& message)
    : Error(message), diagnostics_{Diagnostic{Severity::Error, "config", message, 0}} {}

ConfigError::ConfigError(std::vector<Diagnostic> diagnostics)
    : Error(join_diagnostics(diagnostics)), diagnostics_(std::move(diagnostics)) {}

ParseError::ParseError(std::size_t line, std::size_t column, std::string expected, const std::string& detail)
    : Error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": expected " + expected +
            (detail.empty() ? std::string() : " (" + detail + ")")),
      line_(line),
      column_(column),
      expected_(std::move(expected)) {}

}  // namespace mfl
