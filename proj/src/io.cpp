#include "selfloc/io.hpp"

#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

namespace selfloc {

namespace {

using Json = nlohmann::ordered_json;

[[noreturn]] void fail_syntax(const std::string& path, const std::string& what) {
    throw DomainError(Errc::syntax_error, path + ": " + what);
}

const Json& require(const Json& obj, const char* key, const std::string& path) {
    auto it = obj.find(key);
    if (it == obj.end()) fail_syntax(path, std::string("missing key '") + key + "'");
    return *it;
}

std::string require_string(const Json& v, const std::string& path) {
    if (!v.is_string()) fail_syntax(path, "expected a string");
    return v.get<std::string>();
}

Rational require_prob(const Json& v, const std::string& path) {
    if (v.is_number()) {
        throw DomainError(Errc::rational_format,
                          path + ": probabilities must be rational strings; write \"1/2\", not " +
                              v.dump());
    }
    if (!v.is_string()) fail_syntax(path, "expected a rational string like \"1/2\"");
    try {
        return parse_rational(v.get<std::string>());
    } catch (const DomainError& e) {
        throw DomainError(e.code(), path + ": " + e.detail());
    }
}

std::vector<std::string> require_string_array(const Json& v, const std::string& path) {
    if (!v.is_array()) fail_syntax(path, "expected an array of strings");
    std::vector<std::string> out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        out.push_back(require_string(v[i], path + "[" + std::to_string(i) + "]"));
    }
    return out;
}

} // namespace

ValidatedProtocol parse_protocol(std::string_view text) {
    Json doc;
    try {
        doc = Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw DomainError(Errc::syntax_error, e.what());
    }
    if (!doc.is_object()) fail_syntax("document", "expected a top-level object");

    static const std::set<std::string> known_keys = {"format",    "name",      "outcomes",
                                                     "agents",    "schedules", "questions"};
    for (const auto& [key, value] : doc.items()) {
        if (known_keys.find(key) == known_keys.end()) {
            fail_syntax("document", "unknown key '" + key + "'");
        }
    }
    if (auto it = doc.find("format"); it != doc.end()) {
        if (!it->is_number_integer() || it->get<int>() != 1) {
            fail_syntax("format", "unsupported document format; expected 1");
        }
    }

    ExperimentProtocol p;
    p.name = require_string(require(doc, "name", "document"), "name");

    const Json& outcomes = require(doc, "outcomes", "document");
    if (!outcomes.is_array()) fail_syntax("outcomes", "expected an array");
    for (std::size_t i = 0; i < outcomes.size(); ++i) {
        const std::string path = "outcomes[" + std::to_string(i) + "]";
        const Json& o = outcomes[i];
        if (!o.is_object()) fail_syntax(path, "expected an object {label, prob}");
        OutcomeSpec spec;
        spec.label = require_string(require(o, "label", path), path + ".label");
        spec.prob = require_prob(require(o, "prob", path), path + ".prob");
        p.outcomes.push_back(std::move(spec));
    }

    p.agents = require_string_array(require(doc, "agents", "document"), "agents");

    const Json& schedules = require(doc, "schedules", "document");
    if (!schedules.is_object()) fail_syntax("schedules", "expected an object keyed by agent");
    // Keep the protocol's agent order so canonical output is stable no
    // matter how the document ordered its keys.
    for (const auto& agent : p.agents) {
        auto it = schedules.find(agent);
        if (it == schedules.end()) continue; // validation reports the gap
        const std::string path = "schedules." + agent;
        if (!it->is_object()) fail_syntax(path, "expected an object keyed by outcome");
        AwakeningSchedule sched;
        sched.agent = agent;
        for (const auto& [outcome, day_list] : it->items()) {
            sched.per_outcome[outcome] =
                require_string_array(day_list, path + "." + outcome);
        }
        p.schedules.push_back(std::move(sched));
    }
    for (const auto& [agent, body] : schedules.items()) {
        if (std::find(p.agents.begin(), p.agents.end(), agent) == p.agents.end()) {
            AwakeningSchedule sched; // unknown agent; let validation name it
            sched.agent = agent;
            if (body.is_object()) {
                for (const auto& [outcome, day_list] : body.items()) {
                    sched.per_outcome[outcome] =
                        require_string_array(day_list, "schedules." + agent + "." + outcome);
                }
            }
            p.schedules.push_back(std::move(sched));
        }
    }

    const Json& questions = require(doc, "questions", "document");
    if (!questions.is_array()) fail_syntax("questions", "expected an array");
    for (std::size_t i = 0; i < questions.size(); ++i) {
        const std::string path = "questions[" + std::to_string(i) + "]";
        const Json& q = questions[i];
        if (!q.is_object()) fail_syntax(path, "expected an object {agent, proposition}");
        Question question;
        question.agent = require_string(require(q, "agent", path), path + ".agent");
        for (const auto& label :
             require_string_array(require(q, "proposition", path), path + ".proposition")) {
            question.proposition.insert(label);
        }
        p.questions.push_back(std::move(question));
    }

    return validate_protocol(std::move(p));
}

std::string serialize_protocol(const ValidatedProtocol& vp) {
    const ExperimentProtocol& p = vp.protocol();
    Json doc;
    doc["format"] = 1;
    doc["name"] = p.name;

    Json outcomes = Json::array();
    for (const auto& o : p.outcomes) {
        outcomes.push_back(Json{{"label", o.label}, {"prob", fraction_string(o.prob)}});
    }
    doc["outcomes"] = std::move(outcomes);
    doc["agents"] = p.agents;

    Json schedules = Json::object();
    for (const auto& agent : p.agents) {
        Json by_outcome = Json::object();
        for (const auto& o : p.outcomes) {
            by_outcome[o.label] = vp.days(agent, o.label);
        }
        schedules[agent] = std::move(by_outcome);
    }
    doc["schedules"] = std::move(schedules);

    Json questions = Json::array();
    for (const auto& q : p.questions) {
        questions.push_back(Json{{"agent", q.agent},
                                 {"proposition", std::vector<std::string>(q.proposition.begin(),
                                                                          q.proposition.end())}});
    }
    doc["questions"] = std::move(questions);

    return doc.dump(2) + "\n";
}

ValidatedProtocol load_protocol_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw DomainError(Errc::syntax_error, "cannot open protocol file '" + path + "'");
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    try {
        return parse_protocol(buffer.str());
    } catch (const ValidationError&) {
        throw;
    } catch (const DomainError& e) {
        throw DomainError(e.code(), path + ": " + e.detail());
    }
}

} // namespace selfloc
