#include "selfloc/report.hpp"

#include "selfloc/rational.hpp"

#include <json.hpp>

#include <sstream>

namespace selfloc {

ReportFormat parse_format(std::string_view text) {
    if (text == "csv") return ReportFormat::csv;
    if (text == "md") return ReportFormat::markdown;
    if (text == "json") return ReportFormat::json;
    throw DomainError(Errc::invalid_param,
                      "unknown format '" + std::string(text) + "'; expected csv, md, or json");
}

namespace {

std::string csv_cell(const std::string& value) {
    if (value.find_first_of(",\"\n") == std::string::npos) return value;
    std::string quoted = "\"";
    for (char c : value) {
        if (c == '"') quoted += '"';
        quoted += c;
    }
    quoted += '"';
    return quoted;
}

std::string render_csv(const Table& t) {
    std::ostringstream out;
    for (std::size_t i = 0; i < t.columns.size(); ++i) {
        if (i > 0) out << ',';
        out << csv_cell(t.columns[i]);
    }
    out << '\n';
    for (const auto& row : t.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i > 0) out << ',';
            out << csv_cell(row[i]);
        }
        out << '\n';
    }
    return out.str();
}

std::string render_markdown(const Table& t) {
    std::ostringstream out;
    out << '|';
    for (const auto& col : t.columns) out << ' ' << col << " |";
    out << "\n|";
    for (std::size_t i = 0; i < t.columns.size(); ++i) out << " --- |";
    out << '\n';
    for (const auto& row : t.rows) {
        out << '|';
        for (const auto& cell : row) out << ' ' << cell << " |";
        out << '\n';
    }
    return out.str();
}

std::string render_json(const Table& t) {
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const auto& row : t.rows) {
        nlohmann::ordered_json obj;
        for (std::size_t i = 0; i < t.columns.size(); ++i) obj[t.columns[i]] = row[i];
        rows.push_back(std::move(obj));
    }
    return rows.dump(2) + "\n";
}

std::string join(const std::vector<std::string>& parts, const char* sep) {
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i > 0) out += sep;
        out += parts[i];
    }
    return out;
}

const std::vector<std::string> kReportColumns = {
    "protocol", "agent",  "proposition", "measure", "value_exact", "value_decimal",
    "stderr",   "ci_lo",  "ci_hi",       "trials",  "seed"};

} // namespace

std::string emit_report(const std::vector<ReportRow>& rows, ReportFormat format) {
    if (rows.empty()) {
        throw DomainError(Errc::empty_report, "emit_report: no rows to emit");
    }

    if (format == ReportFormat::json) {
        nlohmann::ordered_json out = nlohmann::ordered_json::array();
        for (const auto& r : rows) {
            nlohmann::ordered_json obj;
            obj["protocol"] = r.protocol;
            obj["agent"] = r.agent;
            obj["proposition"] = r.proposition;
            obj["measure"] = r.measure;
            obj["value_exact"] = r.value_exact;
            obj["value_decimal"] = r.value_decimal;
            if (r.standard_error) obj["stderr"] = *r.standard_error;
            if (r.ci_lo) obj["ci_lo"] = *r.ci_lo;
            if (r.ci_hi) obj["ci_hi"] = *r.ci_hi;
            if (r.trials) obj["trials"] = *r.trials;
            if (r.seed) obj["seed"] = *r.seed;
            out.push_back(std::move(obj));
        }
        return out.dump(2) + "\n";
    }

    Table t;
    t.columns = kReportColumns;
    for (const auto& r : rows) {
        std::vector<std::string> row;
        row.push_back(r.protocol);
        row.push_back(r.agent);
        row.push_back(join(r.proposition, "+"));
        row.push_back(r.measure);
        row.push_back(r.value_exact);
        row.push_back(r.value_decimal);
        row.push_back(r.standard_error ? decimal_string(*r.standard_error) : "");
        row.push_back(r.ci_lo ? decimal_string(*r.ci_lo) : "");
        row.push_back(r.ci_hi ? decimal_string(*r.ci_hi) : "");
        row.push_back(r.trials ? std::to_string(*r.trials) : "");
        row.push_back(r.seed ? std::to_string(*r.seed) : "");
        t.rows.push_back(std::move(row));
    }
    return format == ReportFormat::csv ? render_csv(t) : render_markdown(t);
}

std::string emit_table(const Table& table, ReportFormat format) {
    if (table.rows.empty()) {
        throw DomainError(Errc::empty_report, "emit_table: no rows to emit");
    }
    switch (format) {
        case ReportFormat::csv: return render_csv(table);
        case ReportFormat::markdown: return render_markdown(table);
        case ReportFormat::json: return render_json(table);
    }
    return {};
}

} // namespace selfloc
