#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "task.hpp"

namespace dagbound {

// On-disk task description: one JSON object with fields `name`, `vertices`
// (array of {id, wcet}), `edges` (array of [from, to]) and optional
// `period` / `deadline`. The canonical form sorts vertices and edges
// ascending; write_task_file always emits it.
struct TaskFile {
    std::string name;
    std::vector<std::pair<int, std::int64_t>> vertices;  // (id, wcet)
    std::vector<std::pair<int, int>> edges;
    std::optional<std::int64_t> period;
    std::optional<std::int64_t> deadline;

    bool operator==(const TaskFile&) const = default;
};

inline TaskFile parse_task_file(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw MalformedInputError(std::string("task file: ") + e.what());
    }
    try {
        if (!doc.is_object()) throw MalformedInputError("task file: top level must be an object");
        TaskFile file;
        file.name = doc.value("name", std::string("task"));
        if (!doc.contains("vertices") || !doc["vertices"].is_array())
            throw MalformedInputError("task file: missing `vertices` array");
        for (const auto& v : doc["vertices"]) {
            if (!v.is_object() || !v.contains("id") || !v.contains("wcet"))
                throw MalformedInputError("task file: vertex entries need `id` and `wcet`");
            file.vertices.emplace_back(v["id"].get<int>(), v["wcet"].get<std::int64_t>());
        }
        if (doc.contains("edges")) {
            if (!doc["edges"].is_array())
                throw MalformedInputError("task file: `edges` must be an array");
            for (const auto& e : doc["edges"]) {
                if (!e.is_array() || e.size() != 2)
                    throw MalformedInputError("task file: edge entries must be [from, to]");
                file.edges.emplace_back(e[0].get<int>(), e[1].get<int>());
            }
        }
        if (doc.contains("period")) file.period = doc["period"].get<std::int64_t>();
        if (doc.contains("deadline")) file.deadline = doc["deadline"].get<std::int64_t>();

        // ids must be dense 0..n-1
        std::vector<char> seen(file.vertices.size(), 0);
        for (const auto& [id, wcet] : file.vertices) {
            if (id < 0 || id >= static_cast<int>(file.vertices.size()) || seen[id])
                throw MalformedInputError("task file: vertex ids must be dense and unique");
            seen[id] = 1;
        }
        return file;
    } catch (const nlohmann::json::exception& e) {
        throw MalformedInputError(std::string("task file: ") + e.what());
    }
}

inline std::string write_task_file(TaskFile file) {
    std::sort(file.vertices.begin(), file.vertices.end());
    std::sort(file.edges.begin(), file.edges.end());
    nlohmann::json doc;
    doc["name"] = file.name;
    doc["vertices"] = nlohmann::json::array();
    for (const auto& [id, wcet] : file.vertices)
        doc["vertices"].push_back({{"id", id}, {"wcet", wcet}});
    doc["edges"] = nlohmann::json::array();
    for (const auto& [u, v] : file.edges) doc["edges"].push_back({u, v});
    if (file.period) doc["period"] = *file.period;
    if (file.deadline) doc["deadline"] = *file.deadline;
    return doc.dump(2) + "\n";
}

inline DagTask to_task(const TaskFile& file) {
    std::vector<std::int64_t> wcets(file.vertices.size(), 0);
    for (const auto& [id, wcet] : file.vertices) wcets[id] = wcet;
    return validate_and_normalize(file.name, std::move(wcets), file.edges);
}

inline TaskFile to_task_file(const DagTask& t,
                             std::optional<std::int64_t> period = std::nullopt) {
    TaskFile file;
    file.name = t.name;
    for (int v = 0; v < t.vertex_count(); ++v) file.vertices.emplace_back(v, t.wcet[v]);
    file.edges = t.edges;
    file.period = period;
    file.deadline = period;
    return file;
}

}  // namespace dagbound
