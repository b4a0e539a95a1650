#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace scpna {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed or inconsistent input: bad files, mismatched counts, invalid
/// parameters. The CLI maps these to exit code 2.
class InputError : public Error {
public:
    using Error::Error;
};

/// Input that parsed but violates a domain invariant at a specific row.
class IngestionError : public InputError {
public:
    IngestionError(const std::string& what, std::size_t index)
        : InputError(what), index_(index) {}
    std::size_t index() const noexcept { return index_; }

private:
    std::size_t index_;
};

/// Parse failure in a text file; carries the 1-based line number.
class ParseError : public InputError {
public:
    ParseError(const std::string& file, std::size_t line, const std::string& reason)
        : InputError(file + ":" + std::to_string(line) + ": " + reason), line_(line) {}
    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// A row whose off-diagonal scores are all equal cannot be split in two.
class DegenerateRowError : public Error {
public:
    using Error::Error;
};

/// Eigensolver failure, undefined statistics, non-finite results.
class NumericalError : public Error {
public:
    using Error::Error;
};

/// Requested configuration cannot be realized (k > points, impossible
/// center geometry, no viable tuning candidate).
class InfeasibleError : public Error {
public:
    using Error::Error;
};

/// Wraps a failure inside run_pipeline with the stage that raised it.
class PipelineError : public Error {
public:
    PipelineError(std::string stage, const std::string& what)
        : Error("[" + stage + "] " + what), stage_(std::move(stage)) {}
    const std::string& stage() const noexcept { return stage_; }

private:
    std::string stage_;
};

}  // namespace scpna
