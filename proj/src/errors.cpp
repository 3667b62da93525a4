#include "selfloc/errors.hpp"

#include <sstream>

namespace selfloc {

std::string_view errc_name(Errc code) {
    switch (code) {
        case Errc::unknown_preset: return "UnknownPreset";
        case Errc::invalid_param: return "InvalidParam";
        case Errc::empty_protocol: return "EmptyProtocol";
        case Errc::duplicate_label: return "DuplicateLabel";
        case Errc::probability_sum: return "ProbabilitySumError";
        case Errc::invalid_probability: return "InvalidProbability";
        case Errc::dangling_reference: return "DanglingReference";
        case Errc::empty_proposition: return "EmptyProposition";
        case Errc::unknown_outcome: return "UnknownOutcomeInProposition";
        case Errc::no_awakenings: return "NoAwakenings";
        case Errc::degenerate_proposition: return "DegenerateProposition";
        case Errc::no_events: return "NoEvents";
        case Errc::protocol_mismatch: return "ProtocolMismatch";
        case Errc::syntax_error: return "SyntaxError";
        case Errc::rational_format: return "RationalFormatError";
        case Errc::empty_report: return "EmptyReport";
        case Errc::validation: return "ValidationError";
    }
    return "UnknownError";
}

std::string DomainError::detail() const {
    const std::string full = what();
    const std::size_t prefix = errc_name(code_).size() + 2;
    return prefix <= full.size() ? full.substr(prefix) : full;
}

namespace {

std::string join_issues(const std::vector<ValidationIssue>& issues) {
    std::ostringstream out;
    out << issues.size() << " issue(s): ";
    for (std::size_t i = 0; i < issues.size(); ++i) {
        if (i > 0) out << "; ";
        out << errc_name(issues[i].code) << ": " << issues[i].detail;
    }
    return out.str();
}

} // namespace

ValidationError::ValidationError(std::vector<ValidationIssue> issues)
    : DomainError(Errc::validation, join_issues(issues)), issues_(std::move(issues)) {}

bool ValidationError::has(Errc code) const noexcept {
    for (const auto& issue : issues_) {
        if (issue.code == code) return true;
    }
    return false;
}

} // namespace selfloc
