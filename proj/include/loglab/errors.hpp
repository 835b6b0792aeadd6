#pragma once

#include <stdexcept>
#include <string>

namespace loglab {

/// Invalid run configuration: bad ratios, too few groups to split, empty
/// retrieval index, missing stage artifacts.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed artifact content; the message names the file and line.
class FormatError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace loglab
