#pragma once

#include <cstddef>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "bool_mat.hpp"
#include "bool_vec.hpp"
#include "decision.hpp"
#include "errors.hpp"
#include "parse.hpp"
#include "reachability.hpp"
#include "simulator.hpp"

namespace logicon {

/// Everything a command needs, loaded from one JSON document. Agent, input
/// and subterm references in the file are 1-based; they are stored 0-based.
struct scenario_config {
    network_spec network;
    std::vector<std::string> decision_text;
    decision_system decisions;
    std::optional<std::size_t> gamma;
    bool_vec u;
    std::optional<bool_mat> initial_state; // n x q when present
    std::size_t t_max = 50;
    fault_model faults;
};

namespace detail {

inline bool_mat json_matrix(const nlohmann::json& j, const std::string& name, std::size_t rows,
                            std::size_t cols) {
    if (!j.is_array() || j.size() != rows)
        throw parse_error("'" + name + "' must be an array of " + std::to_string(rows) + " rows",
                          0);
    bool_mat m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
        const auto& row = j[i];
        if (!row.is_array() || row.size() != cols)
            throw parse_error("'" + name + "' row " + std::to_string(i + 1) + " must have " +
                                  std::to_string(cols) + " entries",
                              0);
        for (std::size_t k = 0; k < cols; ++k) {
            const auto& cell = row[k];
            if (!cell.is_number_integer() || (cell != 0 && cell != 1))
                throw parse_error("'" + name + "' entries must be 0 or 1", 0);
            m.set(i, k, cell == 1);
        }
    }
    return m;
}

inline bool_vec json_bits(const nlohmann::json& j, const std::string& name, std::size_t size) {
    if (!j.is_array() || j.size() != size)
        throw parse_error("'" + name + "' must be an array of " + std::to_string(size) + " bits",
                          0);
    bool_vec v(size);
    for (std::size_t i = 0; i < size; ++i) {
        if (!j[i].is_number_integer() || (j[i] != 0 && j[i] != 1))
            throw parse_error("'" + name + "' entries must be 0 or 1", 0);
        v.set(i, j[i] == 1);
    }
    return v;
}

inline std::size_t json_id(const nlohmann::json& j, const std::string& what, std::size_t limit) {
    if (!j.is_number_integer() || j < 1 || j > static_cast<long long>(limit))
        throw parse_error("'" + what + "' must be an integer in [1, " + std::to_string(limit) +
                              "] (ids are 1-based)",
                          0);
    return static_cast<std::size_t>(j.get<long long>()) - 1;
}

} // namespace detail

inline scenario_config parse_scenario(const nlohmann::json& doc) {
    if (!doc.is_object()) throw parse_error("scenario must be a JSON object", 0);
    for (const auto& [key, value] : doc.items()) {
        (void)value;
        static const char* known[] = {"index_base",    "agents", "inputs", "communication",
                                      "visibility",    "decisions", "gamma", "u",
                                      "initial_state", "t_max",  "faults"};
        bool ok = false;
        for (const char* k : known) ok = ok || key == k;
        if (!ok) throw parse_error("unknown scenario field '" + key + "'", 0);
    }
    if (doc.contains("index_base") && doc["index_base"] != 1)
        throw parse_error("'index_base' must be 1: agents, inputs and subterms are 1-based", 0);

    if (!doc.contains("agents") || !doc["agents"].is_number_integer() || doc["agents"] < 1)
        throw parse_error("'agents' must be a positive integer", 0);
    if (!doc.contains("inputs") || !doc["inputs"].is_number_integer() || doc["inputs"] < 1)
        throw parse_error("'inputs' must be a positive integer", 0);
    const std::size_t n = doc["agents"].get<std::size_t>();
    const std::size_t m = doc["inputs"].get<std::size_t>();

    if (!doc.contains("communication") || !doc.contains("visibility"))
        throw parse_error("scenario needs 'communication' and 'visibility' matrices", 0);

    scenario_config cfg;
    cfg.network = network_spec(detail::json_matrix(doc["communication"], "communication", n, n),
                               detail::json_matrix(doc["visibility"], "visibility", n, m));

    if (!doc.contains("decisions") || !doc["decisions"].is_array() || doc["decisions"].empty())
        throw parse_error("'decisions' must be a non-empty array of expressions", 0);
    std::vector<bool_expr> parsed;
    for (const auto& d : doc["decisions"]) {
        if (!d.is_string()) throw parse_error("decisions must be strings like \"u1 & !u2\"", 0);
        cfg.decision_text.push_back(d.get<std::string>());
        try {
            parsed.push_back(parse_decision(cfg.decision_text.back()));
        } catch (const parse_error& e) {
            throw parse_error("decision \"" + cfg.decision_text.back() + "\": " + e.what(),
                              e.offset);
        }
    }
    cfg.decisions = make_decision_system(m, std::move(parsed));

    if (doc.contains("gamma")) {
        if (!doc["gamma"].is_number_integer() || doc["gamma"] < 0)
            throw parse_error("'gamma' must be a non-negative integer", 0);
        cfg.gamma = doc["gamma"].get<std::size_t>();
    }

    if (!doc.contains("u")) throw parse_error("scenario needs the input assignment 'u'", 0);
    cfg.u = detail::json_bits(doc["u"], "u", m);

    if (doc.contains("t_max")) {
        if (!doc["t_max"].is_number_integer() || doc["t_max"] < 1)
            throw parse_error("'t_max' must be a positive integer", 0);
        cfg.t_max = doc["t_max"].get<std::size_t>();
    }

    if (doc.contains("initial_state"))
        cfg.initial_state =
            detail::json_matrix(doc["initial_state"], "initial_state", n, cfg.decisions.q);

    if (doc.contains("faults")) {
        const auto& f = doc["faults"];
        if (!f.is_object()) throw parse_error("'faults' must be an object", 0);
        if (f.contains("permanent")) {
            for (const auto& entry : f["permanent"]) {
                if (!entry.is_object() || !entry.contains("agent") || !entry.contains("value"))
                    throw parse_error("permanent faults need 'agent' and 'value'", 0);
                const std::size_t agent = detail::json_id(entry["agent"], "faults.permanent.agent", n);
                if (!entry["value"].is_number_integer() ||
                    (entry["value"] != 0 && entry["value"] != 1))
                    throw parse_error("'faults.permanent.value' must be 0 or 1", 0);
                cfg.faults.permanent[agent] = entry["value"] == 1;
            }
        }
        if (f.contains("temporary")) {
            for (const auto& entry : f["temporary"]) {
                if (!entry.is_object() || !entry.contains("agent") || !entry.contains("subterm"))
                    throw parse_error("temporary faults need 'agent' and 'subterm'", 0);
                cfg.faults.temporary.emplace_back(
                    detail::json_id(entry["agent"], "faults.temporary.agent", n),
                    detail::json_id(entry["subterm"], "faults.temporary.subterm",
                                    cfg.decisions.q));
            }
        }
    }
    return cfg;
}

inline scenario_config load_scenario(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw error("cannot open scenario file: " + path);
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw parse_error(std::string("scenario is not valid JSON: ") + e.what(),
                          static_cast<std::size_t>(e.byte));
    }
    return parse_scenario(doc);
}

} // namespace logicon
