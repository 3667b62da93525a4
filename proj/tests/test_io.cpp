#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "selfloc/exact.hpp"
#include "selfloc/io.hpp"
#include "selfloc/report.hpp"

#include <fstream>
#include <optional>
#include <sstream>

using namespace selfloc;

namespace {

template <typename F>
std::optional<Errc> code_of(F&& f) {
    try {
        f();
        return std::nullopt;
    } catch (const DomainError& e) {
        return e.code();
    }
}

std::string read_fixture(const std::string& name) {
    const std::string path = std::string(SELFLOC_FIXTURES) + "/" + name;
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

} // namespace

TEST_CASE("the shipped original fixture parses to the original preset") {
    const ValidatedProtocol parsed = parse_protocol(read_fixture("original.json"));
    CHECK(parsed.protocol() == preset_original());
}

TEST_CASE("the double preset serializes to the shipped fixture byte-for-byte") {
    const ValidatedProtocol p = validate_protocol(preset_double());
    CHECK(serialize_protocol(p) == read_fixture("double.json"));
}

TEST_CASE("parse then serialize round-trips every fixture") {
    for (const char* name : {"original.json", "double.json", "chain2.json"}) {
        const std::string text = read_fixture(name);
        const ValidatedProtocol once = parse_protocol(text);
        CHECK(parse_protocol(serialize_protocol(once)).protocol() == once.protocol());
        // Canonicalization is idempotent.
        const std::string canonical = serialize_protocol(once);
        CHECK(serialize_protocol(parse_protocol(canonical)) == canonical);
    }
}

TEST_CASE("serialization reduces rationals") {
    const std::string text = R"({
      "name": "biased",
      "outcomes": [{"label": "heads", "prob": "2/4"}, {"label": "tails", "prob": "3/6"}],
      "agents": ["SB"],
      "schedules": {"SB": {"heads": ["Mon"], "tails": ["Mon"]}},
      "questions": []
    })";
    const std::string out = serialize_protocol(parse_protocol(text));
    CHECK(out.find("\"1/2\"") != std::string::npos);
    CHECK(out.find("2/4") == std::string::npos);
}

TEST_CASE("decimal float probabilities are rejected with a hint") {
    const std::string with_string = R"({
      "name": "bad", "outcomes": [{"label": "heads", "prob": "0.5"}],
      "agents": ["SB"], "schedules": {"SB": {"heads": ["Mon"]}}, "questions": []
    })";
    try {
        parse_protocol(with_string);
        FAIL("expected RationalFormatError");
    } catch (const DomainError& e) {
        CHECK(e.code() == Errc::rational_format);
        CHECK(std::string(e.what()).find("1/2") != std::string::npos);
        CHECK(std::string(e.what()).find("outcomes[0].prob") != std::string::npos);
    }

    const std::string with_number = R"({
      "name": "bad", "outcomes": [{"label": "heads", "prob": 0.5}],
      "agents": ["SB"], "schedules": {"SB": {"heads": ["Mon"]}}, "questions": []
    })";
    CHECK(code_of([&] { parse_protocol(with_number); }) == Errc::rational_format);
}

TEST_CASE("malformed documents are syntax errors") {
    CHECK(code_of([] { parse_protocol(""); }) == Errc::syntax_error);
    CHECK(code_of([] { parse_protocol("not json"); }) == Errc::syntax_error);
    CHECK(code_of([] { parse_protocol("[1,2]"); }) == Errc::syntax_error);
    CHECK(code_of([] { parse_protocol("{}"); }) == Errc::syntax_error);
    CHECK(code_of([] { parse_protocol(R"({"name": 3})"); }) == Errc::syntax_error);
    CHECK(code_of([] {
        parse_protocol(R"({"name": "x", "outcomes": [], "agents": [], "schedules": {},
                           "questions": [], "extra": 1})");
    }) == Errc::syntax_error);
    CHECK(code_of([] {
        parse_protocol(R"({"format": 2, "name": "x", "outcomes": [], "agents": [],
                           "schedules": {}, "questions": []})");
    }) == Errc::syntax_error);
}

TEST_CASE("validation failures surface through parsing") {
    const std::string text = R"({
      "name": "bad-sum",
      "outcomes": [{"label": "heads", "prob": "1/2"}, {"label": "tails", "prob": "1/3"}],
      "agents": ["SB"],
      "schedules": {"SB": {"heads": ["Mon"], "tails": ["Mon"]}},
      "questions": []
    })";
    try {
        parse_protocol(text);
        FAIL("expected ValidationError");
    } catch (const ValidationError& e) {
        CHECK(e.has(Errc::probability_sum));
    }
}

TEST_CASE("schedules for unknown agents are reported, not dropped") {
    const std::string text = R"({
      "name": "ghost",
      "outcomes": [{"label": "heads", "prob": "1"}],
      "agents": ["SB"],
      "schedules": {"SB": {"heads": ["Mon"]}, "ghost": {"heads": ["Mon"]}},
      "questions": []
    })";
    try {
        parse_protocol(text);
        FAIL("expected ValidationError");
    } catch (const ValidationError& e) {
        CHECK(e.has(Errc::dangling_reference));
    }
}

TEST_CASE("emit_report renders the double-preset credence sweep") {
    const ValidatedProtocol p = validate_protocol(preset_double());
    std::vector<ReportRow> rows;
    for (const auto& q : p.protocol().questions) {
        for (Measure m : {Measure::per_experiment, Measure::per_awakening}) {
            const CredenceReport r = credence(p, q.agent, q.proposition, m);
            rows.push_back({p.name(),
                            r.agent,
                            {r.proposition.begin(), r.proposition.end()},
                            std::string(measure_name(m)),
                            fraction_string(r.value),
                            r.decimal,
                            std::nullopt,
                            std::nullopt,
                            std::nullopt,
                            std::nullopt,
                            std::nullopt});
        }
    }
    REQUIRE(rows.size() == 4);

    const std::string csv = emit_report(rows, ReportFormat::csv);
    std::size_t thirds = 0;
    std::size_t halves = 0;
    std::istringstream lines(csv);
    std::string line;
    std::getline(lines, line);
    CHECK(line ==
          "protocol,agent,proposition,measure,value_exact,value_decimal,stderr,ci_lo,ci_hi,"
          "trials,seed");
    while (std::getline(lines, line)) {
        if (line.find(",1/3,") != std::string::npos) ++thirds;
        if (line.find(",1/2,") != std::string::npos) ++halves;
    }
    CHECK(thirds == 2);
    CHECK(halves == 2);
}

TEST_CASE("single-row csv is a header, one row, and a trailing newline") {
    const std::vector<ReportRow> rows = {{"original",
                                          "SB",
                                          {"heads"},
                                          "per_awakening",
                                          "1/3",
                                          "0.333333",
                                          std::nullopt,
                                          std::nullopt,
                                          std::nullopt,
                                          std::nullopt,
                                          std::nullopt}};
    const std::string csv = emit_report(rows, ReportFormat::csv);
    CHECK(csv ==
          "protocol,agent,proposition,measure,value_exact,value_decimal,stderr,ci_lo,ci_hi,"
          "trials,seed\noriginal,SB,heads,per_awakening,1/3,0.333333,,,,,\n");
}

TEST_CASE("estimate rows fill the simulation columns") {
    std::vector<ReportRow> rows = {{"original",
                                    "SB",
                                    {"heads"},
                                    "per_experiment",
                                    "1/2",
                                    "0.500000",
                                    0.0005,
                                    0.499,
                                    0.501,
                                    std::uint64_t(1000000),
                                    std::uint64_t(42)}};
    const std::string csv = emit_report(rows, ReportFormat::csv);
    CHECK(csv.find("0.000500") != std::string::npos);
    CHECK(csv.find("1000000") != std::string::npos);
    CHECK(csv.find(",42") != std::string::npos);

    const std::string md = emit_report(rows, ReportFormat::markdown);
    CHECK(md.find("| 1/2 |") != std::string::npos);
    CHECK(md.find("| --- |") != std::string::npos);
}

TEST_CASE("json reports mirror the row fields") {
    std::vector<ReportRow> rows = {{"original",
                                    "SB",
                                    {"heads", "tails"},
                                    "per_experiment",
                                    "1",
                                    "1.000000",
                                    std::nullopt,
                                    std::nullopt,
                                    std::nullopt,
                                    std::nullopt,
                                    std::nullopt}};
    const std::string json = emit_report(rows, ReportFormat::json);
    CHECK(json.find("\"proposition\": [") != std::string::npos);
    CHECK(json.find("\"heads\"") != std::string::npos);
    CHECK(json.find("\"value_exact\": \"1\"") != std::string::npos);
    CHECK(json.find("\"stderr\"") == std::string::npos); // omitted when absent
    CHECK(json.back() == '\n');
}

TEST_CASE("empty reports are rejected") {
    CHECK(code_of([] { emit_report({}, ReportFormat::csv); }) == Errc::empty_report);
    CHECK(code_of([] { emit_table(Table{{"a"}, {}}, ReportFormat::csv); }) == Errc::empty_report);
}

TEST_CASE("csv cells containing delimiters are quoted") {
    Table t;
    t.columns = {"name", "note"};
    t.rows = {{"a,b", "say \"hi\""}};
    const std::string csv = emit_table(t, ReportFormat::csv);
    CHECK(csv == "name,note\n\"a,b\",\"say \"\"hi\"\"\"\n");
}

TEST_CASE("loading a missing protocol file names the path") {
    try {
        load_protocol_file("/nonexistent/path.json");
        FAIL("expected SyntaxError");
    } catch (const DomainError& e) {
        CHECK(e.code() == Errc::syntax_error);
        CHECK(std::string(e.what()).find("/nonexistent/path.json") != std::string::npos);
    }
}
