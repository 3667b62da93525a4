// Command-line front end: exact credences, seeded simulation, wagers and
// scores over built-in presets or protocol documents.
//
// Exit codes: 0 success, 1 domain error (message names the operation),
// 2 usage error.

#include "selfloc/exact.hpp"
#include "selfloc/io.hpp"
#include "selfloc/protocol.hpp"
#include "selfloc/report.hpp"
#include "selfloc/simulate.hpp"
#include "selfloc/wager.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <set>
#include <string>
#include <vector>

namespace {

using namespace selfloc;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct CliOptions {
    std::string preset;
    std::string protocol_path;
    std::string heads_prob;
    long chain_k = 0;

    std::string format = "md";
    std::string out = "-";

    std::uint64_t trials = 0;
    std::uint64_t seed = 0;
    unsigned workers = 1;

    std::string agent;
    std::string prop;
    std::string measure;
    std::string settlement;
    std::string q;
    std::string stake = "1";
    std::string report;
};

void add_source_options(CLI::App* sub, CliOptions& opt) {
    auto* preset =
        sub->add_option("--preset", opt.preset, "Built-in preset: original, double, chain");
    auto* file = sub->add_option("--protocol", opt.protocol_path, "Path to a protocol document");
    sub->add_option("--k", opt.chain_k, "Chain length (chain preset only)");
    sub->add_option("--heads-prob", opt.heads_prob, "Heads probability as p/q (default 1/2)");
    preset->excludes(file);
    file->excludes(preset);
}

void add_output_options(CLI::App* sub, CliOptions& opt) {
    sub->add_option("--format", opt.format, "Output format: csv, md, json (default md)");
    sub->add_option("--out", opt.out, "Output path, or - for stdout");
}

// Flag values are argv, so their parse failures are usage errors.
template <typename F>
auto usage_phase(F&& f) -> decltype(f()) {
    try {
        return f();
    } catch (const DomainError& e) {
        throw UsageError(e.what());
    }
}

ValidatedProtocol resolve_protocol(const CLI::App* sub, const CliOptions& opt) {
    const bool has_preset = sub->count("--preset") > 0;
    const bool has_file = sub->count("--protocol") > 0;
    if (has_preset == has_file) {
        throw UsageError("exactly one of --preset or --protocol is required");
    }
    if (has_preset) {
        return usage_phase([&] {
            PresetParams params;
            if (sub->count("--k") > 0) params.chain_length = opt.chain_k;
            if (sub->count("--heads-prob") > 0) params.heads_prob = parse_rational(opt.heads_prob);
            return validate_protocol(make_preset(opt.preset, params));
        });
    }
    if (sub->count("--k") > 0 || sub->count("--heads-prob") > 0) {
        throw UsageError("--k and --heads-prob apply only to --preset");
    }
    return load_protocol_file(opt.protocol_path);
}

std::set<std::string> parse_prop(const std::string& text) {
    std::set<std::string> labels;
    std::size_t start = 0;
    while (start <= text.size()) {
        const std::size_t comma = text.find(',', start);
        const std::string label = text.substr(
            start, comma == std::string::npos ? std::string::npos : comma - start);
        if (label.empty()) throw UsageError("--prop: empty outcome label");
        labels.insert(label);
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    if (labels.empty()) throw UsageError("--prop: no outcome labels given");
    return labels;
}

/// The (agent, proposition) pairs a report covers: the explicit
/// --agent/--prop pair when given, the protocol's questions otherwise.
std::vector<Question> resolve_targets(const CLI::App* sub, const CliOptions& opt,
                                      const ValidatedProtocol& p, const char* op) {
    const bool has_agent = sub->count("--agent") > 0;
    const bool has_prop = sub->count("--prop") > 0;
    if (has_agent != has_prop) {
        throw UsageError("--agent and --prop must be given together");
    }
    if (has_agent) {
        return {Question{opt.agent, parse_prop(opt.prop)}};
    }
    if (p.protocol().questions.empty()) {
        throw DomainError(Errc::empty_report,
                          std::string(op) + ": protocol '" + p.name() +
                              "' defines no questions; pass --agent and --prop");
    }
    return p.protocol().questions;
}

std::vector<Measure> resolve_measures(const CLI::App* sub, const CliOptions& opt) {
    if (sub->count("--measure") > 0) {
        return {usage_phase([&] { return parse_measure(opt.measure); })};
    }
    return {Measure::per_experiment, Measure::per_awakening};
}

void write_output(const std::string& text, const std::string& out) {
    if (out == "-" || out == "stdout") {
        std::cout << text;
        return;
    }
    std::ofstream file(out, std::ios::binary);
    if (!file) throw DomainError(Errc::syntax_error, "cannot open output file '" + out + "'");
    file << text;
}

void print_warnings(const ValidatedProtocol& p) {
    for (const auto& w : p.warnings()) std::cerr << "warning: " << w << "\n";
}

std::vector<std::string> prop_vector(const std::set<std::string>& prop) {
    return {prop.begin(), prop.end()};
}

std::string prop_cell(const std::set<std::string>& prop) {
    std::string out;
    for (const auto& label : prop) {
        if (!out.empty()) out += '+';
        out += label;
    }
    return out;
}

int cmd_presets(const CliOptions& opt) {
    const ReportFormat format = usage_phase([&] { return parse_format(opt.format); });
    Table t;
    t.columns = {"name", "agents", "description"};
    t.rows = {
        {"original", "SB", "heads wakes Mon; tails wakes Mon and Tue; question: heads"},
        {"double", "SB1, SB2",
         "mirrored schedules; SB1 is asked about heads, SB2 about tails"},
        {"chain", "SB", "heads wakes day1; tails wakes day1..dayK (requires --k)"},
    };
    write_output(emit_table(t, format), opt.out);
    return 0;
}

int cmd_show(const CLI::App* sub, const CliOptions& opt) {
    const ValidatedProtocol p = resolve_protocol(sub, opt);
    print_warnings(p);
    write_output(serialize_protocol(p), opt.out);
    return 0;
}

int cmd_credence(const CLI::App* sub, const CliOptions& opt) {
    const ReportFormat format = usage_phase([&] { return parse_format(opt.format); });
    const std::vector<Measure> measures = resolve_measures(sub, opt);
    const ValidatedProtocol p = resolve_protocol(sub, opt);
    print_warnings(p);
    const std::vector<Question> targets = resolve_targets(sub, opt, p, "credence");

    std::vector<ReportRow> rows;
    for (const auto& question : targets) {
        for (Measure m : measures) {
            const CredenceReport report = credence(p, question.agent, question.proposition, m);
            rows.push_back({p.name(), report.agent, prop_vector(report.proposition),
                            std::string(measure_name(m)), fraction_string(report.value),
                            report.decimal, std::nullopt, std::nullopt, std::nullopt,
                            std::nullopt, std::nullopt});
        }
    }
    write_output(emit_report(rows, format), opt.out);
    return 0;
}

int cmd_sum_check(const CLI::App* sub, const CliOptions& opt) {
    const ReportFormat format = usage_phase([&] { return parse_format(opt.format); });
    const Measure measure = usage_phase([&] { return parse_measure(opt.measure); });
    const ValidatedProtocol p = resolve_protocol(sub, opt);
    print_warnings(p);
    if (p.protocol().questions.empty()) {
        throw DomainError(Errc::empty_report,
                          "sum-check: protocol '" + p.name() + "' defines no questions");
    }

    const SumCheck check = credence_sum_check(p, p.protocol().questions, measure);
    std::string questions;
    for (const auto& q : p.protocol().questions) {
        if (!questions.empty()) questions += "; ";
        questions += q.agent + ":" + prop_cell(q.proposition);
    }

    Table t;
    t.columns = {"protocol", "measure", "questions", "sum_exact", "sum_decimal", "verdict"};
    t.rows = {{p.name(), std::string(measure_name(measure)), questions,
               fraction_string(check.sum), decimal_string(check.sum),
               check.verdict == SumVerdict::sums_to_one ? "sums_to_one" : "deviates"}};
    write_output(emit_table(t, format), opt.out);
    return 0;
}

int cmd_simulate(const CLI::App* sub, const CliOptions& opt) {
    const ReportFormat format = usage_phase([&] { return parse_format(opt.format); });
    const std::vector<Measure> measures = resolve_measures(sub, opt);
    const ValidatedProtocol p = resolve_protocol(sub, opt);
    print_warnings(p);
    const std::vector<Question> targets = resolve_targets(sub, opt, p, "simulate");

    const SimulationResult result = run_trials(p, opt.trials, opt.seed, opt.workers);

    std::vector<ReportRow> rows;
    for (const auto& question : targets) {
        for (Measure m : measures) {
            const CredenceEstimate est =
                estimate_credence(result, p, question.agent, question.proposition, m);
            rows.push_back({p.name(), question.agent, prop_vector(question.proposition),
                            std::string(measure_name(m)), fraction_string(est.exact_ratio),
                            decimal_string(est.exact_ratio), est.standard_error, est.ci_lo,
                            est.ci_hi, result.trials, result.seed});
        }
    }
    write_output(emit_report(rows, format), opt.out);
    return 0;
}

int cmd_wager(const CLI::App* sub, const CliOptions& opt) {
    const ReportFormat format = usage_phase([&] { return parse_format(opt.format); });
    WagerSpec spec;
    spec.agent = opt.agent;
    spec.proposition = parse_prop(opt.prop);
    spec.implied_probability = usage_phase([&] { return parse_rational(opt.q); });
    spec.stake = usage_phase([&] { return parse_rational(opt.stake); });
    spec.settlement = usage_phase([&] { return parse_measure(opt.settlement); });
    if (spec.implied_probability <= 0 || spec.implied_probability >= 1) {
        throw UsageError("--q must lie strictly between 0 and 1");
    }
    if (spec.stake <= 0) {
        throw UsageError("--stake must be positive");
    }

    const ValidatedProtocol p = resolve_protocol(sub, opt);
    print_warnings(p);
    const WagerOutcome outcome = evaluate_wager(p, spec);

    Table t;
    t.columns = {"protocol", "agent",  "proposition",       "settlement",
                 "q",        "stake",  "ev_per_experiment", "ev_per_settlement",
                 "breakeven"};
    t.rows = {{p.name(), spec.agent, prop_cell(spec.proposition),
               std::string(measure_name(spec.settlement)),
               fraction_string(spec.implied_probability), fraction_string(spec.stake),
               fraction_string(outcome.expected_value_per_experiment),
               fraction_string(outcome.expected_value_per_settlement),
               outcome.breakeven ? "true" : "false"}};
    write_output(emit_table(t, format), opt.out);
    return 0;
}

int cmd_score(const CLI::App* sub, const CliOptions& opt) {
    const ReportFormat format = usage_phase([&] { return parse_format(opt.format); });
    const Measure measure = usage_phase([&] { return parse_measure(opt.measure); });
    const Rational report = usage_phase([&] { return parse_rational(opt.report); });
    const std::set<std::string> prop = parse_prop(opt.prop);
    if (report < 0 || report > 1) {
        throw UsageError("--report must lie in [0,1]");
    }

    const ValidatedProtocol p = resolve_protocol(sub, opt);
    print_warnings(p);
    const Rational score = brier_score(p, opt.agent, prop, report, measure);
    const Rational minimizer = brier_minimizer(p, opt.agent, prop, measure);

    Table t;
    t.columns = {"protocol",    "agent",         "proposition",     "measure",
                 "report",      "score_exact",   "score_decimal",   "minimizer_exact",
                 "minimizer_decimal"};
    t.rows = {{p.name(), opt.agent, prop_cell(prop), std::string(measure_name(measure)),
               fraction_string(report), fraction_string(score), decimal_string(score),
               fraction_string(minimizer), decimal_string(minimizer)}};
    write_output(emit_table(t, format), opt.out);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact, simulated, and betting-odds credences for "
                 "self-locating-belief experiment protocols"};
    app.require_subcommand(1);
    CliOptions opt;

    CLI::App* presets = app.add_subcommand("presets", "List built-in protocol presets");
    add_output_options(presets, opt);

    CLI::App* show = app.add_subcommand("show", "Print a protocol in canonical form");
    add_source_options(show, opt);
    show->add_option("--out", opt.out, "Output path, or - for stdout");

    CLI::App* credence = app.add_subcommand("credence", "Exact credences under both measures");
    add_source_options(credence, opt);
    add_output_options(credence, opt);
    credence->add_option("--agent", opt.agent, "Agent to query");
    credence->add_option("--prop", opt.prop, "Comma-separated outcome labels");
    credence->add_option("--measure", opt.measure, "per_experiment or per_awakening (default both)");

    CLI::App* sum_check =
        app.add_subcommand("sum-check", "Add the protocol questions' credences under one measure");
    add_source_options(sum_check, opt);
    add_output_options(sum_check, opt);
    sum_check->add_option("--measure", opt.measure, "per_experiment or per_awakening")->required();

    CLI::App* simulate = app.add_subcommand("simulate", "Seeded Monte Carlo frequency estimates");
    add_source_options(simulate, opt);
    add_output_options(simulate, opt);
    simulate->add_option("--trials", opt.trials, "Number of experiments to simulate")->required();
    simulate->add_option("--seed", opt.seed, "64-bit simulation seed")->required();
    simulate->add_option("--workers", opt.workers, "Worker threads (never affects output)")
        ->check(CLI::Range(1u, 4096u));
    simulate->add_option("--agent", opt.agent, "Agent to query");
    simulate->add_option("--prop", opt.prop, "Comma-separated outcome labels");
    simulate->add_option("--measure", opt.measure, "per_experiment or per_awakening (default both)");

    CLI::App* wager = app.add_subcommand("wager", "Expected value of a standing bet");
    add_source_options(wager, opt);
    add_output_options(wager, opt);
    wager->add_option("--agent", opt.agent, "Betting agent")->required();
    wager->add_option("--prop", opt.prop, "Comma-separated outcome labels")->required();
    wager->add_option("--q", opt.q, "Implied probability of the offered odds, as p/q")->required();
    wager->add_option("--stake", opt.stake, "Stake per settlement as p/q (default 1)");
    wager->add_option("--settlement", opt.settlement, "per_experiment or per_awakening")
        ->required();

    CLI::App* score = app.add_subcommand("score", "Brier score of a constant credence report");
    add_source_options(score, opt);
    add_output_options(score, opt);
    score->add_option("--agent", opt.agent, "Reporting agent")->required();
    score->add_option("--prop", opt.prop, "Comma-separated outcome labels")->required();
    score->add_option("--report", opt.report, "Reported credence as p/q")->required();
    score->add_option("--measure", opt.measure, "per_experiment or per_awakening")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }

    try {
        if (presets->parsed()) return cmd_presets(opt);
        if (show->parsed()) return cmd_show(show, opt);
        if (credence->parsed()) return cmd_credence(credence, opt);
        if (sum_check->parsed()) return cmd_sum_check(sum_check, opt);
        if (simulate->parsed()) return cmd_simulate(simulate, opt);
        if (wager->parsed()) return cmd_wager(wager, opt);
        if (score->parsed()) return cmd_score(score, opt);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const DomainError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
