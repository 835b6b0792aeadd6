#pragma once

#include <filesystem>
#include <fstream>
#include <string>

namespace loglab {

/// Output file that only appears under its final name after commit(). An
/// uncommitted writer deletes its temporary on destruction, so a failed stage
/// leaves no partial artifact behind.
class AtomicFile {
public:
    explicit AtomicFile(std::filesystem::path target);
    ~AtomicFile();

    AtomicFile(const AtomicFile&) = delete;
    AtomicFile& operator=(const AtomicFile&) = delete;

    std::ofstream& stream() { return out_; }
    void commit();

private:
    std::filesystem::path target_;
    std::filesystem::path temp_;
    std::ofstream out_;
    bool committed_ = false;
};

}  // namespace loglab
