#pragma once
// The JSON task protocol: one task object per unit of scheduled work,
// carrying simulation parameters, deployment information, and execution
// metadata. Field names follow the wire format exactly (ID, params,
// taskdir, deploy{NP, cmd, nodes}, env, starttime, endtime, returncode);
// unset optionals serialize as null.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "osmoflow/errors.hpp"

namespace osmoflow::wms {

struct JsonSyntaxError : Error { using Error::Error; };
struct SchemaError : Error {
    explicit SchemaError(const std::string& field)
        : Error("task object field missing or malformed: " + field), field_(field) {}
    const std::string& field() const { return field_; }

private:
    std::string field_;
};

struct Deployment {
    int np = 1;
    std::vector<std::string> cmd;
    std::vector<std::string> nodes;
    friend bool operator==(const Deployment&, const Deployment&) = default;
};

struct TaskObject {
    long long id = 0;
    std::map<std::string, double> params;
    std::string taskdir;
    Deployment deploy;
    std::string env;
    std::optional<std::string> starttime;  // ISO-8601
    std::optional<std::string> endtime;
    std::optional<int> returncode;

    friend bool operator==(const TaskObject&, const TaskObject&) = default;
};

namespace detail {

inline nlohmann::ordered_json task_to_json(const TaskObject& t) {
    nlohmann::ordered_json j;
    j["ID"] = t.id;
    nlohmann::ordered_json params = nlohmann::ordered_json::object();
    for (const auto& [k, v] : t.params) {
        // integral parameters (such as the refinement step) stay integers
        // on the wire
        if (v == static_cast<double>(static_cast<long long>(v)))
            params[k] = static_cast<long long>(v);
        else
            params[k] = v;
    }
    j["params"] = std::move(params);
    j["taskdir"] = t.taskdir;
    j["deploy"] = {{"NP", t.deploy.np}, {"cmd", t.deploy.cmd}, {"nodes", t.deploy.nodes}};
    j["env"] = t.env;
    j["starttime"] = t.starttime ? nlohmann::ordered_json(*t.starttime)
                                 : nlohmann::ordered_json(nullptr);
    j["endtime"] = t.endtime ? nlohmann::ordered_json(*t.endtime)
                             : nlohmann::ordered_json(nullptr);
    j["returncode"] = t.returncode ? nlohmann::ordered_json(*t.returncode)
                                   : nlohmann::ordered_json(nullptr);
    return j;
}

}  // namespace detail

inline std::string serialize_task(const TaskObject& t) {
    return detail::task_to_json(t).dump(2);
}

inline TaskObject parse_task(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw JsonSyntaxError(e.what());
    }
    if (!j.is_object()) throw SchemaError("task");

    auto require = [&j](const char* field) -> const nlohmann::json& {
        auto it = j.find(field);
        if (it == j.end()) throw SchemaError(field);
        return *it;
    };

    TaskObject t;
    const auto& id = require("ID");
    if (!id.is_number_integer()) throw SchemaError("ID");
    t.id = id.get<long long>();

    const auto& params = require("params");
    if (!params.is_object()) throw SchemaError("params");
    for (const auto& [k, v] : params.items()) {
        if (!v.is_number()) throw SchemaError("params." + k);
        t.params[k] = v.get<double>();
    }

    const auto& taskdir = require("taskdir");
    if (!taskdir.is_string()) throw SchemaError("taskdir");
    t.taskdir = taskdir.get<std::string>();

    const auto& deploy = require("deploy");
    if (!deploy.is_object()) throw SchemaError("deploy");
    if (!deploy.contains("NP") || !deploy["NP"].is_number_integer())
        throw SchemaError("deploy.NP");
    t.deploy.np = deploy["NP"].get<int>();
    if (t.deploy.np < 1) throw SchemaError("deploy.NP");
    if (!deploy.contains("cmd") || !deploy["cmd"].is_array())
        throw SchemaError("deploy.cmd");
    for (const auto& c : deploy["cmd"]) {
        if (!c.is_string()) throw SchemaError("deploy.cmd");
        t.deploy.cmd.push_back(c.get<std::string>());
    }
    if (!deploy.contains("nodes") || !deploy["nodes"].is_array())
        throw SchemaError("deploy.nodes");
    for (const auto& n : deploy["nodes"]) {
        if (!n.is_string()) throw SchemaError("deploy.nodes");
        t.deploy.nodes.push_back(n.get<std::string>());
    }

    const auto& env = require("env");
    if (!env.is_string()) throw SchemaError("env");
    t.env = env.get<std::string>();

    auto optional_string = [&](const char* field) -> std::optional<std::string> {
        const auto& v = require(field);
        if (v.is_null()) return std::nullopt;
        if (!v.is_string()) throw SchemaError(field);
        return v.get<std::string>();
    };
    t.starttime = optional_string("starttime");
    t.endtime = optional_string("endtime");

    const auto& rc = require("returncode");
    if (rc.is_null()) {
        t.returncode = std::nullopt;
    } else if (rc.is_number_integer()) {
        t.returncode = rc.get<int>();
    } else {
        throw SchemaError("returncode");
    }

    // execution metadata is stamped together
    if (t.returncode.has_value() != t.endtime.has_value())
        throw SchemaError("returncode");
    if (t.starttime && t.endtime && *t.endtime < *t.starttime)
        throw SchemaError("endtime");
    return t;
}

}  // namespace osmoflow::wms
