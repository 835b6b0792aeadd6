#pragma once

#include <cstddef>
#include <filesystem>
#include <mutex>
#include <string>
#include <string_view>
#include <vector>

#include "loglab/log_analysis.hpp"
#include "loglab/method_extractor.hpp"

namespace loglab {

struct RepoManifest {
    std::string repo;
    std::filesystem::path root;
    bool has_log4j = false;
    std::size_t java_file_count = 0;

    bool operator==(const RepoManifest&) const = default;
};

/// True iff some <dependency> element (comments ignored) has groupId `log4j`
/// or `org.apache.logging.log4j`, or artifactId `log4j`, `log4j-core` or
/// `log4j-api`. Malformed XML is scanned on a best-effort basis.
bool pom_declares_log4j(std::string_view pom_text);

/// Receives mined methods. Implementations must make each append atomic.
class MethodSink {
public:
    virtual ~MethodSink() = default;
    virtual void append(const MethodRecord& m) = 0;
};

class VectorSink : public MethodSink {
public:
    void append(const MethodRecord& m) override {
        std::lock_guard lock(mutex_);
        records.push_back(m);
    }
    std::vector<MethodRecord> records;

private:
    std::mutex mutex_;
};

struct MineOptions {
    ReceiverRule receivers;
    std::vector<std::string> exclude_globs;  // matched against repo-relative paths
    unsigned jobs = 1;
};

struct MiningSummary {
    std::size_t repos_kept = 0;
    std::size_t repos_skipped = 0;
    std::size_t java_files = 0;
    std::size_t methods = 0;
    std::size_t methods_with_log = 0;
    std::size_t file_errors = 0;
    std::vector<std::string> warnings;
    std::vector<RepoManifest> repos;

    bool operator==(const MiningSummary&) const = default;
};

/// Inspects one cloned repository: POM files anywhere in the tree and the
/// sorted list of `.java` files.
RepoManifest scan_repo(const std::filesystem::path& root, const MineOptions& options,
                       std::vector<std::string>* warnings = nullptr);

/// Mines every root (one cloned repository each). Repos whose POMs declare no
/// Log4j dependency contribute nothing. Records reach the sink in root order,
/// then lexicographic file order, then source order, whatever `jobs` is.
MiningSummary mine(const std::vector<std::filesystem::path>& roots, MethodSink& sink,
                   const MineOptions& options = {});

}  // namespace loglab
