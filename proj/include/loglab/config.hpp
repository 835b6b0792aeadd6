#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "loglab/dataset_builder.hpp"
#include "loglab/records.hpp"

namespace loglab {

struct RunConfig {
    std::vector<std::string> roots;
    std::string methods = "methods.jsonl";
    std::string data_dir = "data";
    std::uint64_t seed = 7;
    double mask_ratio = 0.15;
    bool span_mask = false;
    std::optional<double> p2_share = 0.5;  // nullopt: every logged method feeds P2 and FT
    std::vector<std::string> receiver_extra;
    std::vector<std::string> exclude;
    SplitRatios ratios;
    unsigned jobs = 1;

    /// Throws ConfigError unless ratios sum to 1, mask_ratio is in (0, 1) and
    /// p2_share is in [0, 1].
    void validate() const;
    Json to_json() const;
    BuildOptions build_options() const;
};

/// Applies `key = value` lines; `#` starts a comment. List values are comma
/// separated. Throws ConfigError naming `origin` and the line on bad input.
void apply_config_text(RunConfig& config, std::string_view text, std::string_view origin = "config");
void apply_config_file(RunConfig& config, const std::filesystem::path& path);

/// Value of LOGLAB_SEED, if set. Throws ConfigError if it is not an integer.
std::optional<std::uint64_t> seed_from_env();

std::uint64_t parse_seed(std::string_view text);

}  // namespace loglab
