#include "loglab/records.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "loglab/errors.hpp"

namespace fs = std::filesystem;

namespace loglab {

namespace {

std::string hex16(std::uint64_t v) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

LogStatement statement_at(const TokenSeq& tokens, std::size_t start, std::size_t end) {
    // recv . level ( args ) ;
    if (end >= tokens.size() || end < start + 5 || tokens[start + 1].text != "." || tokens[start + 3].text != "(" ||
        tokens[end - 1].text != ")" || tokens[end].text != ";") {
        throw FormatError("log span [" + std::to_string(start) + ", " + std::to_string(end) +
                          "] is not a log call");
    }
    const auto level = parse_level(tokens[start + 2].text);
    if (!level) throw FormatError("unknown log level '" + tokens[start + 2].text + "'");
    LogStatement s;
    s.level = *level;
    s.start = start;
    s.end = end;
    s.receiver = tokens[start].text;
    for (std::size_t k = start + 4; k + 1 < end; ++k) s.message_tokens.push_back(tokens[k].text);
    return s;
}

}  // namespace

Json make_header(std::string_view stage, std::uint64_t seed, const Json& config) {
    Json h;
    h["stage"] = stage;
    h["version"] = kToolVersion;
    h["seed"] = seed;
    h["config"] = config;
    return Json{{"header", h}};
}

Json to_json(const MethodRecord& m) {
    Json j;
    j["id"] = m.id;
    j["repo"] = m.repo;
    j["path"] = m.path;
    j["tokens"] = render(m.tokens);
    j["n_logs"] = m.log_statements.size();
    auto spans = Json::array();
    auto levels = Json::array();
    for (const auto& s : m.log_statements) {
        spans.push_back({s.start, s.end});
        levels.push_back(to_string(s.level));
    }
    j["log_spans"] = spans;
    j["log_levels"] = levels;
    return j;
}

MethodRecord method_from_json(const Json& j) {
    MethodRecord m;
    m.id = j.at("id").get<std::string>();
    m.repo = j.at("repo").get<std::string>();
    m.path = j.at("path").get<std::string>();
    m.tokens = tokenize(j.at("tokens").get<std::string>());
    for (const auto& span : j.at("log_spans")) {
        m.log_statements.push_back(statement_at(m.tokens, span.at(0).get<std::size_t>(), span.at(1).get<std::size_t>()));
    }
    if (m.log_statements.size() != j.at("n_logs").get<std::size_t>()) {
        throw FormatError("n_logs disagrees with log_spans");
    }
    return m;
}

Json to_json(const DatasetInstance& inst) {
    Json j;
    j["instance_id"] = inst.instance_id;
    j["task"] = to_string(inst.task);
    j["method_id"] = inst.method_id;
    j["removed_index"] = inst.removed_index ? Json(*inst.removed_index) : Json(nullptr);
    j["input"] = inst.input_text;
    j["target"] = inst.target_text;
    return j;
}

DatasetInstance instance_from_json(const Json& j) {
    DatasetInstance inst;
    inst.instance_id = j.at("instance_id").get<std::string>();
    const auto task = parse_task(j.at("task").get<std::string>());
    if (!task) throw FormatError("unknown task " + j.at("task").dump());
    inst.task = *task;
    inst.method_id = j.at("method_id").get<std::string>();
    if (!j.at("removed_index").is_null()) inst.removed_index = j.at("removed_index").get<std::size_t>();
    inst.input_text = j.at("input").get<std::string>();
    inst.target_text = j.at("target").get<std::string>();
    return inst;
}

JsonlWriter::JsonlWriter(const fs::path& path, const Json& header) : file_(path) {
    if (!header.is_null()) file_.stream() << header.dump() << '\n';
}

void JsonlWriter::write(const Json& record) { file_.stream() << record.dump() << '\n'; }

Json read_jsonl(const fs::path& path, const std::function<void(const Json&)>& fn) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("missing input file: " + path.string());
    Json header;
    std::string line;
    std::size_t number = 0;
    while (std::getline(in, line)) {
        ++number;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        try {
            Json j = Json::parse(line);
            if (number == 1 && j.is_object() && j.size() == 1 && j.contains("header")) {
                header = j["header"];
                continue;
            }
            fn(j);
        } catch (const nlohmann::json::exception& e) {
            throw FormatError(path.string() + ":" + std::to_string(number) + ": " + e.what());
        } catch (const FormatError& e) {
            throw FormatError(path.string() + ":" + std::to_string(number) + ": " + e.what());
        } catch (const LexError& e) {
            throw FormatError(path.string() + ":" + std::to_string(number) + ": " + e.what());
        }
    }
    return header;
}

std::vector<MethodRecord> read_methods(const fs::path& path) {
    std::vector<MethodRecord> out;
    read_jsonl(path, [&](const Json& j) { out.push_back(method_from_json(j)); });
    return out;
}

std::vector<DatasetInstance> read_instances(const fs::path& path) {
    std::vector<DatasetInstance> out;
    read_jsonl(path, [&](const Json& j) { out.push_back(instance_from_json(j)); });
    return out;
}

SplitAssignment read_split(const fs::path& path) {
    SplitAssignment out;
    read_jsonl(path, [&](const Json& j) {
        const auto split = parse_split(j.at("split").get<std::string>());
        if (!split) throw FormatError("unknown split " + j.at("split").dump());
        out[j.at("instance_id").get<std::string>()] = *split;
    });
    return out;
}

std::vector<Prediction> read_predictions(const fs::path& path) {
    std::vector<Prediction> out;
    read_jsonl(path, [&](const Json& j) {
        out.push_back({j.at("instance_id").get<std::string>(), j.at("prediction_text").get<std::string>()});
    });
    return out;
}

void write_instances(const fs::path& path, const std::vector<DatasetInstance>& instances, const Json& header) {
    JsonlWriter w(path, header);
    for (const auto& inst : instances) w.write(to_json(inst));
    w.commit();
}

void write_split(const fs::path& path, const std::vector<DatasetInstance>& order, const SplitAssignment& split,
                 const Json& header) {
    JsonlWriter w(path, header);
    for (const auto& inst : order) {
        const auto it = split.find(inst.instance_id);
        if (it == split.end()) continue;
        w.write(Json{{"instance_id", inst.instance_id}, {"split", to_string(it->second)}});
    }
    w.commit();
}

void write_predictions(const fs::path& path, const std::vector<Prediction>& predictions, const Json& header) {
    JsonlWriter w(path, header);
    for (const auto& p : predictions) w.write(Json{{"instance_id", p.instance_id}, {"prediction_text", p.text}});
    w.commit();
}

std::string file_hash(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("missing input file: " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return hex16(fnv1a64(ss.str()));
}

}  // namespace loglab
