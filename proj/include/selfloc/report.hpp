#pragma once

#include "selfloc/errors.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace selfloc {

enum class ReportFormat { csv, markdown, json };

ReportFormat parse_format(std::string_view text); // "csv" | "md" | "json"

/// One row of a credence report or simulation estimate. Exact values carry
/// the reduced fraction in value_exact; estimate rows additionally fill
/// stderr/ci/trials/seed.
struct ReportRow {
    std::string protocol;
    std::string agent;
    std::vector<std::string> proposition;
    std::string measure;
    std::string value_exact;
    std::string value_decimal;
    std::optional<double> standard_error;
    std::optional<double> ci_lo;
    std::optional<double> ci_hi;
    std::optional<std::uint64_t> trials;
    std::optional<std::uint64_t> seed;
};

/// Renders rows as CSV (header + rows, trailing newline), a markdown table,
/// or a JSON array mirroring the row fields. Column order is fixed:
/// protocol, agent, proposition, measure, value_exact, value_decimal,
/// stderr, ci_lo, ci_hi, trials, seed. Throws EmptyReport on empty input.
std::string emit_report(const std::vector<ReportRow>& rows, ReportFormat format);

/// Free-form string table used by the wager/score/sum-check outputs.
struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;
};

std::string emit_table(const Table& table, ReportFormat format); // throws EmptyReport

} // namespace selfloc
