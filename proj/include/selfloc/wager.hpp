#pragma once

#include "selfloc/exact.hpp"
#include "selfloc/protocol.hpp"
#include "selfloc/rational.hpp"

#include <set>
#include <string>

namespace selfloc {

/// A standing bet on a proposition at implied probability q: the bettor
/// wins stake*(1-q)/q when the outcome is in the proposition and loses the
/// stake otherwise. `settlement` picks how often the bet pays out:
/// once per experiment, or once per interview (per awakening).
///
/// Bets are on outcome propositions only; agents cannot distinguish
/// awakenings, so day-indexed bets are unrepresentable.
struct WagerSpec {
    std::string agent;
    std::set<std::string> proposition;
    Rational stake = 1;               // > 0
    Rational implied_probability;     // in (0,1)
    Measure settlement = Measure::per_experiment;
};

struct WagerOutcome {
    Rational expected_value_per_experiment;
    Rational expected_value_per_settlement;
    bool breakeven; // expected_value_per_experiment == 0
};

/// Exact expected values by enumeration over outcomes.
WagerOutcome evaluate_wager(const ValidatedProtocol& p, const WagerSpec& wager);

/// The implied probability at which the wager's expected value is zero.
/// Coincides with the credence of the matching measure. Throws
/// DegenerateProposition when that credence is 0 or 1 (no interior
/// breakeven exists).
Rational breakeven_probability(const ValidatedProtocol& p, const std::string& agent,
                               const std::set<std::string>& proposition, Measure settlement);

/// Expected quadratic (Brier) loss of reporting a constant credence,
/// weighted by the chosen normalized measure over events.
Rational brier_score(const ValidatedProtocol& p, const std::string& agent,
                     const std::set<std::string>& proposition, const Rational& report,
                     Measure measure);

/// The constant report minimizing brier_score; equals the matching
/// measure's credence (the quadratic score is proper).
Rational brier_minimizer(const ValidatedProtocol& p, const std::string& agent,
                         const std::set<std::string>& proposition, Measure measure);

} // namespace selfloc
