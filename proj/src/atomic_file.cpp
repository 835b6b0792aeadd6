#include "loglab/atomic_file.hpp"

#include <stdexcept>
#include <system_error>

namespace loglab {

AtomicFile::AtomicFile(std::filesystem::path target)
    : target_(std::move(target)), temp_(target_.string() + ".partial") {
    if (target_.has_parent_path()) std::filesystem::create_directories(target_.parent_path());
    out_.open(temp_, std::ios::binary | std::ios::trunc);
    if (!out_) throw std::runtime_error("cannot open " + temp_.string() + " for writing");
}

AtomicFile::~AtomicFile() {
    if (!committed_) {
        out_.close();
        std::error_code ec;
        std::filesystem::remove(temp_, ec);
    }
}

void AtomicFile::commit() {
    out_.flush();
    if (!out_) throw std::runtime_error("write failed for " + temp_.string());
    out_.close();
    std::filesystem::rename(temp_, target_);
    committed_ = true;
}

}  // namespace loglab
