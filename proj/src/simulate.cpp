#include "selfloc/simulate.hpp"

#include <cmath>
#include <limits>
#include <thread>

namespace selfloc {

OutcomeSampler::OutcomeSampler(const ValidatedProtocol& p)
    : count_(p.protocol().outcomes.size()) {
    // threshold[j] = floor(cum_j * 2^64); the last outcome needs no
    // threshold, it catches every remaining draw.
    Rational cum = 0;
    const BigInt one_shifted = BigInt(1) << 64;
    for (std::size_t j = 0; j + 1 < count_; ++j) {
        cum += p.protocol().outcomes[j].prob;
        BigInt t = numerator(cum) * one_shifted / denominator(cum);
        if (t >= one_shifted) t = one_shifted - 1;
        thresholds_.push_back(t.convert_to<std::uint64_t>());
    }
}

std::size_t OutcomeSampler::pick(std::uint64_t draw) const {
    for (std::size_t j = 0; j < thresholds_.size(); ++j) {
        if (draw < thresholds_[j]) return j;
    }
    return count_ - 1;
}

SimulationResult run_trials(const ValidatedProtocol& p, std::uint64_t trials, std::uint64_t seed,
                            unsigned workers) {
    if (workers < 1) workers = 1;
    const OutcomeSampler sampler(p);
    const std::size_t n_outcomes = sampler.outcome_count();

    auto tally_range = [&](std::uint64_t begin, std::uint64_t end, std::vector<std::uint64_t>& out) {
        for (std::uint64_t i = begin; i < end; ++i) {
            ++out[sampler.pick(trial_draw(seed, i))];
        }
    };

    std::vector<std::uint64_t> counts(n_outcomes, 0);
    if (workers == 1 || trials < workers) {
        tally_range(0, trials, counts);
    } else {
        // Contiguous chunks; each trial's draw depends only on (seed, i),
        // and merging is a plain sum, so the split cannot change totals.
        std::vector<std::vector<std::uint64_t>> partial(
            workers, std::vector<std::uint64_t>(n_outcomes, 0));
        std::vector<std::thread> pool;
        const std::uint64_t chunk = trials / workers;
        const std::uint64_t extra = trials % workers;
        std::uint64_t begin = 0;
        for (unsigned w = 0; w < workers; ++w) {
            const std::uint64_t end = begin + chunk + (w < extra ? 1 : 0);
            pool.emplace_back(tally_range, begin, end, std::ref(partial[w]));
            begin = end;
        }
        for (auto& t : pool) t.join();
        for (const auto& part : partial) {
            for (std::size_t j = 0; j < n_outcomes; ++j) counts[j] += part[j];
        }
    }

    SimulationResult result;
    result.protocol_name = p.name();
    result.trials = trials;
    result.seed = seed;
    for (std::size_t j = 0; j < n_outcomes; ++j) {
        result.outcome_tallies[p.protocol().outcomes[j].label] = counts[j];
    }
    // Awakenings are deterministic given the outcome: every scheduled
    // (outcome, agent, day) occurs exactly once per experiment with that
    // outcome.
    for (const auto& outcome : p.protocol().outcomes) {
        const std::uint64_t n = result.outcome_tallies[outcome.label];
        for (const auto& agent : p.protocol().agents) {
            for (const auto& day : p.days(agent, outcome.label)) {
                result.awakening_tallies[{outcome.label, agent, day}] = n;
            }
        }
    }
    return result;
}

CredenceEstimate estimate_credence(const SimulationResult& r, const ValidatedProtocol& p,
                                   const std::string& agent,
                                   const std::set<std::string>& proposition, Measure measure) {
    if (r.protocol_name != p.name()) {
        throw DomainError(Errc::protocol_mismatch,
                          "estimate_credence: result was produced from protocol '" +
                              r.protocol_name + "', not '" + p.name() + "'");
    }
    for (const auto& [label, n] : r.outcome_tallies) {
        if (!p.has_outcome(label)) {
            throw DomainError(Errc::protocol_mismatch,
                              "estimate_credence: result tallies unknown outcome '" + label + "'");
        }
    }
    if (!p.has_agent(agent)) {
        throw DomainError(Errc::dangling_reference,
                          "estimate_credence: unknown agent '" + agent + "'");
    }
    if (proposition.empty()) {
        throw DomainError(Errc::empty_proposition, "estimate_credence: proposition is empty");
    }
    for (const auto& label : proposition) {
        if (!p.has_outcome(label)) {
            throw DomainError(Errc::unknown_outcome,
                              "estimate_credence: proposition names unknown outcome '" + label + "'");
        }
    }

    std::uint64_t hits = 0;
    std::uint64_t total = 0;
    if (measure == Measure::per_experiment) {
        total = r.trials;
        for (const auto& label : proposition) {
            auto it = r.outcome_tallies.find(label);
            if (it != r.outcome_tallies.end()) hits += it->second;
        }
    } else {
        for (const auto& [key, n] : r.awakening_tallies) {
            if (key.agent != agent) continue;
            total += n;
            if (proposition.count(key.outcome) > 0) hits += n;
        }
    }
    if (total == 0) {
        throw DomainError(Errc::no_events,
                          "estimate_credence: no " + std::string(measure_name(measure)) +
                              " events for agent '" + agent + "' (denominator is zero)");
    }

    CredenceEstimate est;
    est.n_effective = total;
    est.exact_ratio = Rational(BigInt(hits)) / Rational(BigInt(total));
    est.point = static_cast<double>(hits) / static_cast<double>(total);
    est.standard_error =
        std::sqrt(est.point * (1.0 - est.point) / static_cast<double>(total));
    est.ci_lo = std::max(0.0, est.point - 1.96 * est.standard_error);
    est.ci_hi = std::min(1.0, est.point + 1.96 * est.standard_error);
    return est;
}

} // namespace selfloc
