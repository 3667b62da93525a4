#pragma once

#include "selfloc/exact.hpp"
#include "selfloc/protocol.hpp"

#include <compare>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace selfloc {

/// Raw 64-bit draw for trial `index` under `seed`: the SplitMix64 output
/// at counter index+1. Stateless by construction, so trial ranges can be
/// partitioned across workers without changing any draw. This generator
/// is part of the reproducibility contract and is fixed per major version.
inline std::uint64_t trial_draw(std::uint64_t seed, std::uint64_t index) {
    std::uint64_t z = seed + (index + 1) * 0x9E3779B97F4A7C15ull;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

/// Maps uniform 64-bit draws to outcome indices through a cumulative table
/// of 64-bit fixed-point thresholds built once from the exact outcome
/// probabilities (per-outcome conversion error below 2^-63).
class OutcomeSampler {
public:
    explicit OutcomeSampler(const ValidatedProtocol& p);

    std::size_t pick(std::uint64_t draw) const;
    std::size_t outcome_count() const noexcept { return count_; }

private:
    std::vector<std::uint64_t> thresholds_; // cumulative, one per outcome but the last
    std::size_t count_;
};

struct AwakeningKey {
    std::string outcome;
    std::string agent;
    std::string day;

    auto operator<=>(const AwakeningKey&) const = default;
};

struct SimulationResult {
    std::string protocol_name;
    std::uint64_t trials = 0;
    std::uint64_t seed = 0;
    std::map<std::string, std::uint64_t> outcome_tallies;
    std::map<AwakeningKey, std::uint64_t> awakening_tallies;

    friend bool operator==(const SimulationResult&, const SimulationResult&) = default;
};

struct CredenceEstimate {
    double point = 0.0;
    double standard_error = 0.0;
    double ci_lo = 0.0;
    double ci_hi = 0.0;
    std::uint64_t n_effective = 0;
    Rational exact_ratio; // the tally ratio behind `point`, exactly
};

/// Samples one outcome per trial from (seed, trial index) and tallies.
/// Awakenings are deterministic given the outcome, so awakening tallies
/// are the outcome tallies fanned out over the schedules. The result is
/// identical for every worker count and for every partitioning of the
/// trial range.
SimulationResult run_trials(const ValidatedProtocol& p, std::uint64_t trials, std::uint64_t seed,
                            unsigned workers = 1);

/// Long-run frequency estimate of a credence from simulation tallies.
/// per_experiment: fraction of experiments whose outcome is in the
/// proposition. per_awakening: fraction of this agent's awakening events
/// whose outcome is in the proposition. ci95 is point +/- 1.96 stderr,
/// clipped to [0,1].
CredenceEstimate estimate_credence(const SimulationResult& r, const ValidatedProtocol& p,
                                   const std::string& agent,
                                   const std::set<std::string>& proposition, Measure measure);

} // namespace selfloc
