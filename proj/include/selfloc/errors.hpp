#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace selfloc {

/// Error classes surfaced by the library. Names map 1:1 onto the
/// identifiers used in error messages (see errc_name).
enum class Errc {
    unknown_preset,
    invalid_param,
    empty_protocol,
    duplicate_label,
    probability_sum,
    invalid_probability,
    dangling_reference,
    empty_proposition,
    unknown_outcome,
    no_awakenings,
    degenerate_proposition,
    no_events,
    protocol_mismatch,
    syntax_error,
    rational_format,
    empty_report,
    validation,
};

std::string_view errc_name(Errc code);

/// Thrown by every operation that rejects its input. what() is
/// "<ErrcName>: <detail>", where the detail names the failing operation.
class DomainError : public std::runtime_error {
public:
    DomainError(Errc code, const std::string& detail)
        : std::runtime_error(std::string(errc_name(code)) + ": " + detail), code_(code) {}

    Errc code() const noexcept { return code_; }

    /// what() without the "<ErrcName>: " prefix.
    std::string detail() const;

private:
    Errc code_;
};

struct ValidationIssue {
    Errc code;
    std::string detail;
};

/// Aggregate of every invariant violation found in one protocol.
/// Validation is total: all issues are collected before throwing.
class ValidationError : public DomainError {
public:
    explicit ValidationError(std::vector<ValidationIssue> issues);

    const std::vector<ValidationIssue>& issues() const noexcept { return issues_; }

    bool has(Errc code) const noexcept;

private:
    std::vector<ValidationIssue> issues_;
};

} // namespace selfloc
