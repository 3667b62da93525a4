#include "selfloc/wager.hpp"

namespace selfloc {

namespace {

Rational awakening_mass(const ValidatedProtocol& p, const std::string& agent) {
    Rational n = 0;
    for (const auto& outcome : p.protocol().outcomes) {
        n += outcome.prob * p.awakening_count(agent, outcome.label);
    }
    return n;
}

} // namespace

WagerOutcome evaluate_wager(const ValidatedProtocol& p, const WagerSpec& wager) {
    if (wager.stake <= 0) {
        throw DomainError(Errc::invalid_param,
                          "evaluate_wager: stake must be > 0, got " + fraction_string(wager.stake));
    }
    const Rational& q = wager.implied_probability;
    if (q <= 0 || q >= 1) {
        throw DomainError(Errc::invalid_param,
                          "evaluate_wager: implied probability must lie in (0,1), got " +
                              fraction_string(q));
    }
    if (!p.has_agent(wager.agent)) {
        throw DomainError(Errc::dangling_reference,
                          "evaluate_wager: unknown agent '" + wager.agent + "'");
    }
    if (wager.proposition.empty()) {
        throw DomainError(Errc::empty_proposition, "evaluate_wager: proposition is empty");
    }
    for (const auto& label : wager.proposition) {
        if (!p.has_outcome(label)) {
            throw DomainError(Errc::unknown_outcome,
                              "evaluate_wager: proposition names unknown outcome '" + label + "'");
        }
    }

    // An agent who is never interviewed is never offered the bet.
    const Rational mass = awakening_mass(p, wager.agent);
    if (mass == 0) {
        throw DomainError(Errc::no_awakenings,
                          "evaluate_wager: agent '" + wager.agent +
                              "' has no awakenings under any positive-probability outcome");
    }

    const Rational win = wager.stake * (Rational(1) - q) / q;
    Rational ev_per_experiment = 0;
    for (const auto& outcome : p.protocol().outcomes) {
        const Rational payoff = wager.proposition.count(outcome.label) > 0 ? win : -wager.stake;
        if (wager.settlement == Measure::per_awakening) {
            ev_per_experiment += outcome.prob * p.awakening_count(wager.agent, outcome.label) * payoff;
        } else {
            ev_per_experiment += outcome.prob * payoff;
        }
    }

    const Rational settlements = wager.settlement == Measure::per_awakening ? mass : Rational(1);
    return {ev_per_experiment, ev_per_experiment / settlements, ev_per_experiment == 0};
}

Rational breakeven_probability(const ValidatedProtocol& p, const std::string& agent,
                               const std::set<std::string>& proposition, Measure settlement) {
    // EV(q) = 0 exactly at q equal to the matching measure's credence.
    const Rational value = credence(p, agent, proposition, settlement).value;
    if (value == 0 || value == 1) {
        throw DomainError(Errc::degenerate_proposition,
                          "breakeven_probability: credence is " + fraction_string(value) +
                              "; no interior breakeven exists");
    }
    return value;
}

Rational brier_score(const ValidatedProtocol& p, const std::string& agent,
                     const std::set<std::string>& proposition, const Rational& report,
                     Measure measure) {
    if (report < 0 || report > 1) {
        throw DomainError(Errc::invalid_param,
                          "brier_score: report must lie in [0,1], got " + fraction_string(report));
    }
    // credence() validates agent/proposition and raises NoAwakenings for a
    // zero per-awakening normalizer; here we only need the event weights.
    credence(p, agent, proposition, measure);

    Rational loss = 0;
    Rational total = 0;
    for (const auto& outcome : p.protocol().outcomes) {
        Rational weight = outcome.prob;
        if (measure == Measure::per_awakening) {
            weight *= p.awakening_count(agent, outcome.label);
        }
        const Rational miss =
            (proposition.count(outcome.label) > 0 ? Rational(1) : Rational(0)) - report;
        loss += weight * miss * miss;
        total += weight;
    }
    return loss / total;
}

Rational brier_minimizer(const ValidatedProtocol& p, const std::string& agent,
                         const std::set<std::string>& proposition, Measure measure) {
    return credence(p, agent, proposition, measure).value;
}

} // namespace selfloc
