#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace mfl {

enum class Severity { Warning, Error };

/// A single finding from a validator. Diagnostics are data; validators never throw them.
struct Diagnostic {
    Severity severity = Severity::Error;
    std::string code;
    std::string message;
    std::size_t line = 0;  // 1-based source line, 0 when not tied to a line

    bool is_error() const { return severity == Severity::Error; }
    bool operator==(const Diagnostic&) const = default;
};

std::string to_string(const Diagnostic& d);
bool has_errors(const std::vector<Diagnostic>& diagnostics);

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Invalid configuration: bad MF parameters, hierarchy documents, rule bases.
/// Carries every violation found, not just the first.
class ConfigError : public Error {
public:
    explicit ConfigError(const std::string& message);
    explicit ConfigError(std::vector<Diagnostic> diagnostics);

    const std::vector<Diagnostic>& diagnostics() const { return diagnostics_; }

private:
    std::vector<Diagnostic> diagnostics_;
};

class ParseError : public Error {
public:
    ParseError(std::size_t line, std::size_t column, std::string expected, const std::string& detail);

    std::size_t line() const { return line_; }
    std::size_t column() const { return column_; }
    const std::string& expected() const { return expected_; }

private:
    std::size_t line_;
    std::size_t column_;
    std::string expected_;
};

class RangeError : public Error {
public:
    using Error::Error;
};

class DimensionError : public Error {
public:
    using Error::Error;
};

/// Bad crisp input: non-finite values, missing variables, unknown terms.
class InputError : public Error {
public:
    using Error::Error;
};

class InferenceError : public Error {
public:
    using Error::Error;
};

/// The aggregated output set has no area, so no centroid exists.
class DegenerateSetError : public InferenceError {
public:
    using InferenceError::InferenceError;
};

class ArityError : public Error {
public:
    using Error::Error;
};

class AssessmentError : public Error {
public:
    using Error::Error;
};

/// A file could not be read or written.
class IoError : public Error {
public:
    using Error::Error;
};

}  // namespace mfl
