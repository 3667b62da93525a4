#pragma once

#include "selfloc/protocol.hpp"
#include "selfloc/rational.hpp"

#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace selfloc {

/// The two credence measures. per_experiment weights each outcome by its
/// probability (one event per experiment, the "halfer" reading);
/// per_awakening weights it by probability times the agent's interview
/// count under it, normalized (the "thirder" reading).
enum class Measure { per_experiment, per_awakening };

std::string_view measure_name(Measure m);
Measure parse_measure(std::string_view text); // throws InvalidParam

/// One (outcome, agent, day) interview occurrence. `weight` is the raw
/// outcome probability; the per-awakening measure normalizes over events.
struct AwakeningEvent {
    std::string outcome;
    std::string agent;
    std::string day;
    Rational weight;

    friend bool operator==(const AwakeningEvent&, const AwakeningEvent&) = default;
};

/// All interview events for one agent, in canonical order: protocol
/// outcome order, then schedule day order.
std::vector<AwakeningEvent> enumerate_awakenings(const ValidatedProtocol& p,
                                                 const std::string& agent);

struct CredenceReport {
    std::string agent;
    std::set<std::string> proposition;
    Measure measure;
    Rational value;
    std::string decimal; // decimal_string(value, digits)
};

/// Credence = sum of proposition outcome probabilities; independent of all
/// schedules.
CredenceReport per_experiment_credence(const ValidatedProtocol& p, const std::string& agent,
                                       const std::set<std::string>& proposition,
                                       int decimal_digits = 6);

/// Credence = sum over proposition of prob * awakening count, normalized by
/// the same sum over all outcomes. Throws NoAwakenings when the
/// normalizer is zero (measure undefined for this agent).
CredenceReport per_awakening_credence(const ValidatedProtocol& p, const std::string& agent,
                                      const std::set<std::string>& proposition,
                                      int decimal_digits = 6);

CredenceReport credence(const ValidatedProtocol& p, const std::string& agent,
                        const std::set<std::string>& proposition, Measure measure,
                        int decimal_digits = 6);

enum class SumVerdict { sums_to_one, deviates };

struct SumCheck {
    Rational sum;
    SumVerdict verdict;
};

/// Adds the credences of the given (agent, proposition) questions under one
/// measure and reports whether they sum to exactly 1. Reports only; passes
/// no judgment on which measure is correct.
SumCheck credence_sum_check(const ValidatedProtocol& p, const std::vector<Question>& questions,
                            Measure measure);

} // namespace selfloc
