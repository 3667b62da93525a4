#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "random_protocols.hpp"
#include "selfloc/exact.hpp"
#include "selfloc/io.hpp"
#include "selfloc/wager.hpp"

using namespace selfloc;
using namespace selfloc::testgen;

namespace {
constexpr int kRuns = 1000;
}

TEST_CASE("round-trip identity holds on randomized protocols") {
    ProtocolGenerator gen(0xA11CE);
    for (int i = 0; i < kRuns; ++i) {
        const ExperimentProtocol p = gen.random_protocol();
        const ValidatedProtocol v = validate_protocol(p);
        CHECK(parse_protocol(serialize_protocol(v)).protocol() == p);
    }
}

TEST_CASE("complement additivity holds per agent and measure") {
    ProtocolGenerator gen(0xB0B);
    int per_awakening_checked = 0;
    for (int i = 0; i < kRuns; ++i) {
        const ExperimentProtocol p = gen.random_protocol(2);
        const ValidatedProtocol v = validate_protocol(p);
        const auto prop = gen.random_proper_proposition(p);
        const auto rest = complement_of(p, prop);
        for (const auto& agent : p.agents) {
            CHECK(per_experiment_credence(v, agent, prop).value +
                      per_experiment_credence(v, agent, rest).value ==
                  1);
            if (has_weighted_awakenings(p, agent)) {
                CHECK(per_awakening_credence(v, agent, prop).value +
                          per_awakening_credence(v, agent, rest).value ==
                      1);
                ++per_awakening_checked;
            }
        }
    }
    CHECK(per_awakening_checked > kRuns / 2); // the per-awakening branch was exercised
}

TEST_CASE("credences are monotone in the proposition") {
    ProtocolGenerator gen(0xCAFE);
    for (int i = 0; i < kRuns; ++i) {
        const ExperimentProtocol p = gen.random_protocol(2);
        const ValidatedProtocol v = validate_protocol(p);
        const auto small = gen.random_proposition(p);
        auto large = small;
        for (const auto& o : p.outcomes) {
            if (gen.coin()) large.insert(o.label);
        }
        for (const auto& agent : p.agents) {
            CHECK(per_experiment_credence(v, agent, small).value <=
                  per_experiment_credence(v, agent, large).value);
            if (has_weighted_awakenings(p, agent)) {
                CHECK(per_awakening_credence(v, agent, small).value <=
                      per_awakening_credence(v, agent, large).value);
            }
        }
    }
}

TEST_CASE("per-experiment credences ignore schedule edits") {
    ProtocolGenerator gen(0xD1CE);
    for (int i = 0; i < kRuns; ++i) {
        ExperimentProtocol p = gen.random_protocol();
        const auto prop = gen.random_proposition(p);
        const ValidatedProtocol before = validate_protocol(p);
        std::vector<Rational> reference;
        for (const auto& agent : p.agents) {
            reference.push_back(per_experiment_credence(before, agent, prop).value);
        }
        gen.mutate_schedules(p);
        const ValidatedProtocol after = validate_protocol(p);
        for (std::size_t a = 0; a < p.agents.size(); ++a) {
            CHECK(per_experiment_credence(after, p.agents[a], prop).value == reference[a]);
        }
    }
}

TEST_CASE("constant awakening counts collapse the two measures") {
    ProtocolGenerator gen(0xFADE);
    for (int i = 0; i < kRuns; ++i) {
        ExperimentProtocol p = gen.random_protocol();
        const int count = gen.uniform(1, 3);
        std::vector<std::string> days;
        for (int d = 1; d <= count; ++d) days.push_back("d" + std::to_string(d));
        for (auto& s : p.schedules) {
            for (auto& [outcome, list] : s.per_outcome) list = days;
        }
        const ValidatedProtocol v = validate_protocol(p);
        const auto prop = gen.random_proposition(p);
        for (const auto& agent : p.agents) {
            CHECK(per_awakening_credence(v, agent, prop).value ==
                  per_experiment_credence(v, agent, prop).value);
        }
    }
}

TEST_CASE("breakeven odds agree with the matching credence on random protocols") {
    ProtocolGenerator gen(0xFEED);
    int checked = 0;
    for (int i = 0; i < kRuns; ++i) {
        const ExperimentProtocol p = gen.random_protocol(2);
        const ValidatedProtocol v = validate_protocol(p);
        const auto prop = gen.random_proper_proposition(p);
        for (const auto& agent : p.agents) {
            for (Measure settlement : {Measure::per_experiment, Measure::per_awakening}) {
                if (settlement == Measure::per_awakening && !has_weighted_awakenings(p, agent)) {
                    continue;
                }
                const Rational value = credence(v, agent, prop, settlement).value;
                if (value == 0 || value == 1) continue;
                CHECK(breakeven_probability(v, agent, prop, settlement) == value);
                // The wager really does break even there.
                WagerSpec w;
                w.agent = agent;
                w.proposition = prop;
                w.implied_probability = value;
                w.settlement = settlement;
                if (has_weighted_awakenings(p, agent)) {
                    CHECK(evaluate_wager(v, w).breakeven);
                }
                ++checked;
            }
        }
    }
    CHECK(checked > kRuns);
}

TEST_CASE("the credence report is never beaten on the brier grid") {
    ProtocolGenerator gen(0x5C01E);
    for (int i = 0; i < 200; ++i) {
        const ExperimentProtocol p = gen.random_protocol(2);
        const ValidatedProtocol v = validate_protocol(p);
        const auto prop = gen.random_proper_proposition(p);
        for (const auto& agent : p.agents) {
            for (Measure m : {Measure::per_experiment, Measure::per_awakening}) {
                if (m == Measure::per_awakening && !has_weighted_awakenings(p, agent)) continue;
                const Rational minimizer = brier_minimizer(v, agent, prop, m);
                const Rational at_min = brier_score(v, agent, prop, minimizer, m);
                for (int g = 0; g <= 10; ++g) {
                    CHECK(at_min <= brier_score(v, agent, prop, Rational(g, 10), m));
                }
            }
        }
    }
}
