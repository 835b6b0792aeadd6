#include "loglab/config.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "loglab/errors.hpp"

namespace loglab {

namespace {

std::string_view trim(std::string_view s) {
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string_view::npos) return {};
    const auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

std::vector<std::string> split_list(std::string_view v) {
    std::vector<std::string> out;
    while (!v.empty()) {
        const auto comma = v.find(',');
        const std::string_view item = trim(v.substr(0, comma));
        if (!item.empty()) out.emplace_back(item);
        if (comma == std::string_view::npos) break;
        v.remove_prefix(comma + 1);
    }
    return out;
}

double parse_double(std::string_view v) {
    const std::string s(v);
    char* end = nullptr;
    const double d = std::strtod(s.c_str(), &end);
    if (s.empty() || end != s.c_str() + s.size() || !std::isfinite(d)) {
        throw ConfigError("not a number: '" + s + "'");
    }
    return d;
}

bool parse_bool(std::string_view v) {
    if (v == "true" || v == "1" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "no") return false;
    throw ConfigError("not a boolean: '" + std::string(v) + "'");
}

}  // namespace

std::uint64_t parse_seed(std::string_view text) {
    std::uint64_t v = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (text.empty() || ec != std::errc() || ptr != text.data() + text.size()) {
        throw ConfigError("seed must be a non-negative integer, got '" + std::string(text) + "'");
    }
    return v;
}

void RunConfig::validate() const {
    const double sum = ratios.train + ratios.eval + ratios.test;
    if (ratios.train < 0 || ratios.eval < 0 || ratios.test < 0 || std::abs(sum - 1.0) > 1e-9) {
        throw ConfigError("split ratios must be non-negative and sum to 1");
    }
    if (!(mask_ratio > 0.0 && mask_ratio < 1.0)) throw ConfigError("mask_ratio must lie in (0, 1)");
    if (p2_share && !(*p2_share >= 0.0 && *p2_share <= 1.0)) throw ConfigError("p2_share must lie in [0, 1]");
    if (jobs == 0) throw ConfigError("jobs must be at least 1");
}

Json RunConfig::to_json() const {
    Json j;
    j["seed"] = seed;
    j["mask_ratio"] = mask_ratio;
    j["span_mask"] = span_mask;
    j["p2_share"] = p2_share ? Json(*p2_share) : Json(nullptr);
    j["split_ratios"] = {ratios.train, ratios.eval, ratios.test};
    j["receiver_extra"] = receiver_extra;
    j["exclude"] = exclude;
    return j;
}

BuildOptions RunConfig::build_options() const {
    BuildOptions o;
    o.seed = seed;
    o.mask_ratio = mask_ratio;
    o.span_mask = span_mask;
    o.p2_share = p2_share;
    o.ratios = ratios;
    o.receivers.extra = receiver_extra;
    o.jobs = jobs;
    return o;
}

void apply_config_text(RunConfig& c, std::string_view text, std::string_view origin) {
    std::size_t number = 0;
    while (!text.empty()) {
        ++number;
        const auto nl = text.find('\n');
        std::string_view line = text.substr(0, nl);
        text.remove_prefix(nl == std::string_view::npos ? text.size() : nl + 1);
        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;

        const std::string where = std::string(origin) + ":" + std::to_string(number) + ": ";
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) throw ConfigError(where + "expected key = value");
        const std::string key(trim(line.substr(0, eq)));
        const std::string_view value = trim(line.substr(eq + 1));
        try {
            if (key == "seed") c.seed = parse_seed(value);
            else if (key == "mask_ratio") c.mask_ratio = parse_double(value);
            else if (key == "span_mask") c.span_mask = parse_bool(value);
            else if (key == "p2_share") c.p2_share = value == "none" ? std::nullopt : std::optional(parse_double(value));
            else if (key == "train_ratio") c.ratios.train = parse_double(value);
            else if (key == "eval_ratio") c.ratios.eval = parse_double(value);
            else if (key == "test_ratio") c.ratios.test = parse_double(value);
            else if (key == "receiver_extra") c.receiver_extra = split_list(value);
            else if (key == "exclude") c.exclude = split_list(value);
            else if (key == "roots") c.roots = split_list(value);
            else if (key == "methods") c.methods = std::string(value);
            else if (key == "data_dir") c.data_dir = std::string(value);
            else if (key == "jobs") c.jobs = static_cast<unsigned>(parse_seed(value));
            else throw ConfigError("unknown key '" + key + "'");
        } catch (const ConfigError& e) {
            throw ConfigError(where + e.what());
        }
    }
}

void apply_config_file(RunConfig& config, const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot read config file " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    apply_config_text(config, ss.str(), path.string());
}

std::optional<std::uint64_t> seed_from_env() {
    const char* v = std::getenv("LOGLAB_SEED");
    if (!v) return std::nullopt;
    try {
        return parse_seed(v);
    } catch (const ConfigError& e) {
        throw ConfigError(std::string("LOGLAB_SEED: ") + e.what());
    }
}

}  // namespace loglab
