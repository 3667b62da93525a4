#include "selfloc/exact.hpp"

namespace selfloc {

std::string_view measure_name(Measure m) {
    return m == Measure::per_experiment ? "per_experiment" : "per_awakening";
}

Measure parse_measure(std::string_view text) {
    if (text == "per_experiment") return Measure::per_experiment;
    if (text == "per_awakening") return Measure::per_awakening;
    throw DomainError(Errc::invalid_param, "unknown measure '" + std::string(text) +
                                               "'; expected per_experiment or per_awakening");
}

namespace {

void require_agent(const ValidatedProtocol& p, const std::string& agent, const char* op) {
    if (!p.has_agent(agent)) {
        throw DomainError(Errc::dangling_reference,
                          std::string(op) + ": unknown agent '" + agent + "'");
    }
}

void require_proposition(const ValidatedProtocol& p, const std::set<std::string>& proposition,
                         const char* op) {
    if (proposition.empty()) {
        throw DomainError(Errc::empty_proposition, std::string(op) + ": proposition is empty");
    }
    for (const auto& label : proposition) {
        if (!p.has_outcome(label)) {
            throw DomainError(Errc::unknown_outcome, std::string(op) + ": proposition names '" +
                                                         label + "', not an outcome of protocol '" +
                                                         p.name() + "'");
        }
    }
}

} // namespace

std::vector<AwakeningEvent> enumerate_awakenings(const ValidatedProtocol& p,
                                                 const std::string& agent) {
    require_agent(p, agent, "enumerate_awakenings");
    std::vector<AwakeningEvent> events;
    for (const auto& outcome : p.protocol().outcomes) {
        for (const auto& day : p.days(agent, outcome.label)) {
            events.push_back({outcome.label, agent, day, outcome.prob});
        }
    }
    return events;
}

CredenceReport per_experiment_credence(const ValidatedProtocol& p, const std::string& agent,
                                       const std::set<std::string>& proposition,
                                       int decimal_digits) {
    require_agent(p, agent, "per_experiment_credence");
    require_proposition(p, proposition, "per_experiment_credence");
    Rational value = 0;
    for (const auto& outcome : p.protocol().outcomes) {
        if (proposition.count(outcome.label) > 0) value += outcome.prob;
    }
    return {agent, proposition, Measure::per_experiment, value,
            decimal_string(value, decimal_digits)};
}

CredenceReport per_awakening_credence(const ValidatedProtocol& p, const std::string& agent,
                                      const std::set<std::string>& proposition,
                                      int decimal_digits) {
    require_agent(p, agent, "per_awakening_credence");
    require_proposition(p, proposition, "per_awakening_credence");
    Rational in_prop = 0;
    Rational total = 0;
    for (const auto& outcome : p.protocol().outcomes) {
        const Rational mass = outcome.prob * p.awakening_count(agent, outcome.label);
        total += mass;
        if (proposition.count(outcome.label) > 0) in_prop += mass;
    }
    if (total == 0) {
        throw DomainError(Errc::no_awakenings,
                          "per_awakening_credence: agent '" + agent +
                              "' has no awakenings under any positive-probability outcome");
    }
    const Rational value = in_prop / total;
    return {agent, proposition, Measure::per_awakening, value,
            decimal_string(value, decimal_digits)};
}

CredenceReport credence(const ValidatedProtocol& p, const std::string& agent,
                        const std::set<std::string>& proposition, Measure measure,
                        int decimal_digits) {
    return measure == Measure::per_experiment
               ? per_experiment_credence(p, agent, proposition, decimal_digits)
               : per_awakening_credence(p, agent, proposition, decimal_digits);
}

SumCheck credence_sum_check(const ValidatedProtocol& p, const std::vector<Question>& questions,
                            Measure measure) {
    if (questions.empty()) {
        throw DomainError(Errc::invalid_param, "credence_sum_check: no questions given");
    }
    Rational sum = 0;
    for (const auto& q : questions) {
        sum += credence(p, q.agent, q.proposition, measure).value;
    }
    return {sum, sum == 1 ? SumVerdict::sums_to_one : SumVerdict::deviates};
}

} // namespace selfloc
