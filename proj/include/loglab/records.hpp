#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <memory>
#include <mutex>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "loglab/atomic_file.hpp"
#include "loglab/corpus_miner.hpp"
#include "loglab/dataset_builder.hpp"
#include "loglab/evaluator.hpp"

namespace loglab {

inline constexpr std::string_view kToolVersion = "0.1.0";

using Json = nlohmann::ordered_json;

/// First line of every JSONL artifact: {"header": {stage, version, seed, config}}.
Json make_header(std::string_view stage, std::uint64_t seed, const Json& config);

Json to_json(const MethodRecord& m);
/// Re-lexes `tokens` and rebuilds the log statements from `log_spans`.
MethodRecord method_from_json(const Json& j);

Json to_json(const DatasetInstance& inst);
DatasetInstance instance_from_json(const Json& j);

/// Line-delimited writer over an AtomicFile.
class JsonlWriter {
public:
    JsonlWriter(const std::filesystem::path& path, const Json& header);
    void write(const Json& record);
    void commit() { file_.commit(); }

private:
    AtomicFile file_;
};

/// Calls fn for every record of a JSONL file, skipping the header line and
/// blank lines. Throws ConfigError if the file is missing and FormatError
/// (with file and line) on malformed content. Returns the header, or null.
Json read_jsonl(const std::filesystem::path& path, const std::function<void(const Json&)>& fn);

std::vector<MethodRecord> read_methods(const std::filesystem::path& path);
std::vector<DatasetInstance> read_instances(const std::filesystem::path& path);
SplitAssignment read_split(const std::filesystem::path& path);
std::vector<Prediction> read_predictions(const std::filesystem::path& path);

void write_instances(const std::filesystem::path& path, const std::vector<DatasetInstance>& instances,
                     const Json& header);
void write_split(const std::filesystem::path& path, const std::vector<DatasetInstance>& order,
                 const SplitAssignment& split, const Json& header);
void write_predictions(const std::filesystem::path& path, const std::vector<Prediction>& predictions,
                       const Json& header);

/// Streams mined methods to a JSONL file as they arrive.
class JsonlMethodSink : public MethodSink {
public:
    JsonlMethodSink(const std::filesystem::path& path, const Json& header) : writer_(path, header) {}
    void append(const MethodRecord& m) override {
        std::lock_guard lock(mutex_);
        writer_.write(to_json(m));
    }
    void commit() { writer_.commit(); }

private:
    std::mutex mutex_;
    JsonlWriter writer_;
};

/// FNV-1a 64 of a file's bytes as 16 hex digits; throws ConfigError if unreadable.
std::string file_hash(const std::filesystem::path& path);

}  // namespace loglab
