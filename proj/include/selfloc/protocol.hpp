#pragma once

#include "selfloc/errors.hpp"
#include "selfloc/rational.hpp"

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace selfloc {

/// One point of the outcome space (e.g. a coin face) with its exact
/// probability.
struct OutcomeSpec {
    std::string label;
    Rational prob;

    friend bool operator==(const OutcomeSpec&, const OutcomeSpec&) = default;
};

/// Which days one agent is awakened and interviewed, per outcome. Every
/// protocol outcome must appear as a key; the day list may be empty.
/// Day order within a list is meaningful (it fixes enumeration order).
struct AwakeningSchedule {
    std::string agent;
    std::map<std::string, std::vector<std::string>> per_outcome;

    friend bool operator==(const AwakeningSchedule&, const AwakeningSchedule&) = default;
};

/// An interview question: the credence of `proposition` (an event over
/// outcome labels) is asked of `agent` at every interview.
struct Question {
    std::string agent;
    std::set<std::string> proposition;

    friend bool operator==(const Question&, const Question&) = default;
};

struct ExperimentProtocol {
    std::string name;
    std::vector<OutcomeSpec> outcomes;
    std::vector<std::string> agents;
    std::vector<AwakeningSchedule> schedules; // one per agent
    std::vector<Question> questions;

    friend bool operator==(const ExperimentProtocol&, const ExperimentProtocol&) = default;
};

/// Proof token that a protocol passed validation. Immutable; safe to share
/// across threads.
class ValidatedProtocol {
public:
    const ExperimentProtocol& protocol() const noexcept { return protocol_; }
    const std::string& name() const noexcept { return protocol_.name; }

    /// Non-fatal findings from validation (e.g. zero-probability outcomes).
    const std::vector<std::string>& warnings() const noexcept { return warnings_; }

    bool has_outcome(const std::string& label) const;
    bool has_agent(const std::string& agent) const;
    const Rational& outcome_prob(const std::string& label) const;

    /// Day labels for (agent, outcome); both must exist.
    const std::vector<std::string>& days(const std::string& agent, const std::string& outcome) const;

    /// Number of awakenings n(outcome, agent).
    std::size_t awakening_count(const std::string& agent, const std::string& outcome) const;

private:
    friend ValidatedProtocol validate_protocol(ExperimentProtocol protocol);
    ValidatedProtocol(ExperimentProtocol protocol, std::vector<std::string> warnings)
        : protocol_(std::move(protocol)), warnings_(std::move(warnings)) {}

    ExperimentProtocol protocol_;
    std::vector<std::string> warnings_;
};

/// Checks every protocol invariant and reports all violations at once via
/// ValidationError. Zero-probability outcomes validate with a warning.
ValidatedProtocol validate_protocol(ExperimentProtocol protocol);

/// Built-in protocols. `heads_prob` generalizes the fair coin; schedules
/// and questions are fixed.
ExperimentProtocol preset_original(const Rational& heads_prob = Rational(1, 2));
ExperimentProtocol preset_double(const Rational& heads_prob = Rational(1, 2));

/// Single agent; heads wakes once, tails wakes on `length` consecutive days.
ExperimentProtocol preset_chain(long length, const Rational& heads_prob = Rational(1, 2));

struct PresetParams {
    std::optional<long> chain_length;
    std::optional<Rational> heads_prob;
};

/// Dispatch by preset name ("original", "double", "chain"). Throws
/// UnknownPreset / InvalidParam.
ExperimentProtocol make_preset(std::string_view name, const PresetParams& params = {});

/// Names accepted by make_preset.
const std::vector<std::string>& preset_names();

} // namespace selfloc
