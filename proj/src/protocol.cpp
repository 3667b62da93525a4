#include "selfloc/protocol.hpp"

#include <algorithm>
#include <set>

namespace selfloc {

namespace {

const AwakeningSchedule* find_schedule(const ExperimentProtocol& p, const std::string& agent) {
    for (const auto& s : p.schedules) {
        if (s.agent == agent) return &s;
    }
    return nullptr;
}

} // namespace

bool ValidatedProtocol::has_outcome(const std::string& label) const {
    return std::any_of(protocol_.outcomes.begin(), protocol_.outcomes.end(),
                       [&](const OutcomeSpec& o) { return o.label == label; });
}

bool ValidatedProtocol::has_agent(const std::string& agent) const {
    return std::find(protocol_.agents.begin(), protocol_.agents.end(), agent) !=
           protocol_.agents.end();
}

const Rational& ValidatedProtocol::outcome_prob(const std::string& label) const {
    for (const auto& o : protocol_.outcomes) {
        if (o.label == label) return o.prob;
    }
    throw DomainError(Errc::dangling_reference, "outcome_prob: unknown outcome '" + label + "'");
}

const std::vector<std::string>& ValidatedProtocol::days(const std::string& agent,
                                                        const std::string& outcome) const {
    const AwakeningSchedule* sched = find_schedule(protocol_, agent);
    if (sched == nullptr) {
        throw DomainError(Errc::dangling_reference, "days: unknown agent '" + agent + "'");
    }
    auto it = sched->per_outcome.find(outcome);
    if (it == sched->per_outcome.end()) {
        throw DomainError(Errc::dangling_reference, "days: unknown outcome '" + outcome + "'");
    }
    return it->second;
}

std::size_t ValidatedProtocol::awakening_count(const std::string& agent,
                                               const std::string& outcome) const {
    return days(agent, outcome).size();
}

ValidatedProtocol validate_protocol(ExperimentProtocol protocol) {
    std::vector<ValidationIssue> issues;
    std::vector<std::string> warnings;
    auto issue = [&](Errc code, std::string detail) {
        issues.push_back({code, std::move(detail)});
    };

    if (protocol.outcomes.empty()) {
        issue(Errc::empty_protocol, "protocol '" + protocol.name + "' has no outcomes");
    }
    if (protocol.agents.empty()) {
        issue(Errc::empty_protocol, "protocol '" + protocol.name + "' has no agents");
    }

    std::set<std::string> outcome_labels;
    for (const auto& o : protocol.outcomes) {
        if (!outcome_labels.insert(o.label).second) {
            issue(Errc::duplicate_label, "duplicate outcome label '" + o.label + "'");
        }
        if (o.prob < 0 || o.prob > 1) {
            issue(Errc::invalid_probability,
                  "outcome '" + o.label + "' has probability " + fraction_string(o.prob) +
                      " outside [0,1]");
        } else if (o.prob == 0) {
            warnings.push_back("outcome '" + o.label + "' has probability 0");
        }
    }

    Rational sum = 0;
    for (const auto& o : protocol.outcomes) sum += o.prob;
    if (!protocol.outcomes.empty() && sum != 1) {
        issue(Errc::probability_sum,
              "outcome probabilities sum to " + fraction_string(sum) + ", expected 1");
    }

    std::set<std::string> agent_names;
    for (const auto& a : protocol.agents) {
        if (!agent_names.insert(a).second) {
            issue(Errc::duplicate_label, "duplicate agent '" + a + "'");
        }
    }

    // Exactly one schedule per agent, keyed over exactly the outcome set.
    std::set<std::string> scheduled_agents;
    for (const auto& s : protocol.schedules) {
        if (agent_names.find(s.agent) == agent_names.end()) {
            issue(Errc::dangling_reference, "schedule references unknown agent '" + s.agent + "'");
        }
        if (!scheduled_agents.insert(s.agent).second) {
            issue(Errc::duplicate_label, "agent '" + s.agent + "' has more than one schedule");
        }
        for (const auto& [outcome, day_list] : s.per_outcome) {
            if (outcome_labels.find(outcome) == outcome_labels.end()) {
                issue(Errc::dangling_reference, "schedule for agent '" + s.agent +
                                                    "' references unknown outcome '" + outcome + "'");
            }
            std::set<std::string> seen_days;
            for (const auto& day : day_list) {
                if (!seen_days.insert(day).second) {
                    issue(Errc::duplicate_label, "agent '" + s.agent + "', outcome '" + outcome +
                                                     "': duplicate day '" + day + "'");
                }
            }
        }
        for (const auto& label : outcome_labels) {
            if (s.per_outcome.find(label) == s.per_outcome.end()) {
                issue(Errc::dangling_reference, "schedule for agent '" + s.agent +
                                                    "' is missing outcome key '" + label + "'");
            }
        }
    }
    for (const auto& a : protocol.agents) {
        if (scheduled_agents.find(a) == scheduled_agents.end()) {
            issue(Errc::dangling_reference, "agent '" + a + "' has no schedule");
        }
    }

    for (std::size_t i = 0; i < protocol.questions.size(); ++i) {
        const Question& q = protocol.questions[i];
        const std::string where = "question " + std::to_string(i);
        if (agent_names.find(q.agent) == agent_names.end()) {
            issue(Errc::dangling_reference, where + " references unknown agent '" + q.agent + "'");
        }
        if (q.proposition.empty()) {
            issue(Errc::empty_proposition, where + " has an empty proposition");
        }
        for (const auto& label : q.proposition) {
            if (outcome_labels.find(label) == outcome_labels.end()) {
                issue(Errc::dangling_reference,
                      where + " references unknown outcome '" + label + "'");
            }
        }
    }

    if (!issues.empty()) throw ValidationError(std::move(issues));
    return ValidatedProtocol(std::move(protocol), std::move(warnings));
}

namespace {

void check_heads_prob(const Rational& p) {
    if (p < 0 || p > 1) {
        throw DomainError(Errc::invalid_param,
                          "heads probability " + fraction_string(p) + " outside [0,1]");
    }
}

AwakeningSchedule schedule_for(std::string agent,
                               std::vector<std::string> heads_days,
                               std::vector<std::string> tails_days) {
    AwakeningSchedule s;
    s.agent = std::move(agent);
    s.per_outcome["heads"] = std::move(heads_days);
    s.per_outcome["tails"] = std::move(tails_days);
    return s;
}

} // namespace

ExperimentProtocol preset_original(const Rational& heads_prob) {
    check_heads_prob(heads_prob);
    ExperimentProtocol p;
    p.name = "original";
    p.outcomes = {{"heads", heads_prob}, {"tails", Rational(1) - heads_prob}};
    p.agents = {"SB"};
    p.schedules = {schedule_for("SB", {"Mon"}, {"Mon", "Tue"})};
    p.questions = {{"SB", {"heads"}}};
    return p;
}

ExperimentProtocol preset_double(const Rational& heads_prob) {
    check_heads_prob(heads_prob);
    ExperimentProtocol p;
    p.name = "double";
    p.outcomes = {{"heads", heads_prob}, {"tails", Rational(1) - heads_prob}};
    p.agents = {"SB1", "SB2"};
    // The two agents' schedules are mirror images under heads <-> tails.
    p.schedules = {schedule_for("SB1", {"Mon"}, {"Mon", "Tue"}),
                   schedule_for("SB2", {"Mon", "Tue"}, {"Mon"})};
    p.questions = {{"SB1", {"heads"}}, {"SB2", {"tails"}}};
    return p;
}

ExperimentProtocol preset_chain(long length, const Rational& heads_prob) {
    if (length < 1) {
        throw DomainError(Errc::invalid_param,
                          "chain preset requires k >= 1, got " + std::to_string(length));
    }
    check_heads_prob(heads_prob);
    ExperimentProtocol p;
    p.name = "chain-" + std::to_string(length);
    p.outcomes = {{"heads", heads_prob}, {"tails", Rational(1) - heads_prob}};
    p.agents = {"SB"};
    std::vector<std::string> chain_days;
    chain_days.reserve(static_cast<std::size_t>(length));
    for (long i = 1; i <= length; ++i) chain_days.push_back("day" + std::to_string(i));
    p.schedules = {schedule_for("SB", {"day1"}, std::move(chain_days))};
    p.questions = {{"SB", {"heads"}}};
    return p;
}

ExperimentProtocol make_preset(std::string_view name, const PresetParams& params) {
    const Rational heads = params.heads_prob.value_or(Rational(1, 2));
    if (name == "original" || name == "double") {
        if (params.chain_length.has_value()) {
            throw DomainError(Errc::invalid_param,
                              "--k applies only to the chain preset");
        }
        return name == "original" ? preset_original(heads) : preset_double(heads);
    }
    if (name == "chain") {
        if (!params.chain_length.has_value()) {
            throw DomainError(Errc::invalid_param, "chain preset requires --k");
        }
        return preset_chain(*params.chain_length, heads);
    }
    throw DomainError(Errc::unknown_preset, "unknown preset '" + std::string(name) +
                                                "'; expected original, double, or chain");
}

const std::vector<std::string>& preset_names() {
    static const std::vector<std::string> names = {"original", "double", "chain"};
    return names;
}

} // namespace selfloc
