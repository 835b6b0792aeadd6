#include "loglab/dataset_builder.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <unordered_set>

#include "loglab/parallel.hpp"
#include "loglab/random.hpp"

namespace loglab {

namespace {

std::string sentinel(std::size_t i) {
    return "<extra_id_" + std::to_string(i) + ">";
}

// k distinct values from [0, n), ascending.
std::vector<std::size_t> sample_positions(Rng& rng, std::size_t n, std::size_t k) {
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    for (std::size_t i = 0; i < k; ++i) {
        const std::size_t j = i + static_cast<std::size_t>(rng.below(n - i));
        std::swap(idx[i], idx[j]);
    }
    idx.resize(k);
    std::sort(idx.begin(), idx.end());
    return idx;
}

// Random composition of `total` into `parts` positive lengths.
std::vector<std::size_t> segment(Rng& rng, std::size_t total, std::size_t parts) {
    std::vector<std::size_t> cuts = sample_positions(rng, total - 1, parts - 1);
    std::vector<std::size_t> lengths;
    std::size_t prev = 0;
    for (std::size_t c : cuts) {
        lengths.push_back(c + 1 - prev);
        prev = c + 1;
    }
    lengths.push_back(total - prev);
    return lengths;
}

std::vector<bool> span_noise_mask(Rng& rng, std::size_t n, std::size_t k) {
    std::vector<bool> mask(n, false);
    const std::size_t clean = n - k;
    if (clean == 0) {
        std::fill(mask.begin(), mask.end(), true);
        return mask;
    }
    std::size_t spans = std::max<std::size_t>(1, static_cast<std::size_t>(std::llround(k / 3.0)));
    spans = std::min({spans, k, clean});
    const auto noise = segment(rng, k, spans);
    const auto keep = segment(rng, clean, spans);
    std::size_t pos = 0;
    for (std::size_t s = 0; s < spans; ++s) {
        pos += keep[s];
        for (std::size_t j = 0; j < noise[s]; ++j) mask[pos++] = true;
    }
    return mask;
}

std::string id_for(Task task, const std::string& method_id, std::optional<std::size_t> k) {
    std::string id = std::string(to_string(task)) + "-" + method_id;
    for (auto& c : id) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    if (k) id += "-" + std::to_string(*k);
    return id;
}

}  // namespace

std::string_view to_string(Task task) {
    switch (task) {
        case Task::P1: return "P1";
        case Task::P2: return "P2";
        case Task::FT: return "FT";
    }
    return "FT";
}

std::optional<Task> parse_task(std::string_view name) {
    if (name == "P1") return Task::P1;
    if (name == "P2") return Task::P2;
    if (name == "FT") return Task::FT;
    return std::nullopt;
}

std::string_view to_string(Split split) {
    switch (split) {
        case Split::Train: return "train";
        case Split::Eval: return "eval";
        case Split::Test: return "test";
    }
    return "train";
}

std::optional<Split> parse_split(std::string_view name) {
    if (name == "train") return Split::Train;
    if (name == "eval") return Split::Eval;
    if (name == "test") return Split::Test;
    return std::nullopt;
}

std::vector<MethodRecord> filter_methods(std::vector<MethodRecord> records, FilterStats* stats) {
    FilterStats local;
    std::vector<MethodRecord> kept;
    std::unordered_set<std::string> seen;
    for (auto& m : records) {
        const std::size_t n = count_tokens(m);
        if (n < kMinMethodTokens) {
            ++local.too_short;
            continue;
        }
        if (n >= kMaxMethodTokens) {
            ++local.too_long;
            continue;
        }
        if (!seen.insert(render(m.tokens)).second) {
            ++local.duplicates;
            continue;
        }
        kept.push_back(std::move(m));
    }
    if (stats) *stats = local;
    return kept;
}

std::size_t mask_count(std::size_t n, double mask_ratio) {
    if (mask_ratio <= 0.0 || n == 0) return 0;
    // The epsilon absorbs binary representation error (0.29 * 100 must be 29).
    const double k = std::floor(mask_ratio * static_cast<double>(n) + 1e-9);
    return std::min(n, static_cast<std::size_t>(k));
}

std::optional<DatasetInstance> build_p1(const MethodRecord& m, double mask_ratio, std::uint64_t seed,
                                        bool span_mask) {
    if (!m.log_statements.empty()) {
        throw std::invalid_argument("P1 instances are built from methods without log statements");
    }
    const std::size_t n = m.tokens.size();
    const std::size_t k = mask_count(n, mask_ratio);
    if (k == 0) return std::nullopt;

    Rng rng(seed, "p1:" + m.id);
    std::vector<bool> masked(n, false);
    if (span_mask) {
        masked = span_noise_mask(rng, n, k);
    } else {
        for (std::size_t p : sample_positions(rng, n, k)) masked[p] = true;
    }

    TokenSeq input, target;
    std::size_t next = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (!masked[i]) {
            input.push_back(m.tokens[i]);
            continue;
        }
        const bool starts_span = !span_mask || i == 0 || !masked[i - 1];
        if (starts_span) {
            const Token s = make_placeholder(sentinel(next++));
            input.push_back(s);
            target.push_back(s);
        }
        target.push_back(m.tokens[i]);
    }

    DatasetInstance inst;
    inst.instance_id = id_for(Task::P1, m.id, std::nullopt);
    inst.task = Task::P1;
    inst.method_id = m.id;
    inst.input_text = render(input);
    inst.target_text = render(target);
    return inst;
}

DatasetInstance build_p2(const MethodRecord& m, std::size_t k, const ReceiverRule& rule) {
    const Removal r = remove_log(m, k, rule);
    DatasetInstance inst;
    inst.instance_id = id_for(Task::P2, m.id, k);
    inst.task = Task::P2;
    inst.method_id = m.id;
    inst.removed_index = k;
    inst.input_text = render(r.reduced);
    inst.target_text = render(insert_placeholder(r.reduced, r.anchor));
    return inst;
}

DatasetInstance build_ft(const MethodRecord& m, std::size_t k, const ReceiverRule& rule) {
    const Removal r = remove_log(m, k, rule);
    DatasetInstance inst;
    inst.instance_id = id_for(Task::FT, m.id, k);
    inst.task = Task::FT;
    inst.method_id = m.id;
    inst.removed_index = k;
    inst.input_text = render(r.reduced);
    inst.target_text = render(reinsert(r.reduced, r.removed_tokens, r.anchor));
    return inst;
}

SplitAssignment split(const std::vector<DatasetInstance>& instances, const SplitRatios& ratios,
                      std::uint64_t seed) {
    const double shares[3] = {ratios.train, ratios.eval, ratios.test};
    for (double s : shares) {
        if (!(s >= 0.0)) throw ConfigError("split ratios must be non-negative");
    }
    if (std::abs(shares[0] + shares[1] + shares[2] - 1.0) > 1e-9) {
        throw ConfigError("split ratios must sum to 1");
    }

    std::vector<std::string> order;
    std::map<std::string, std::vector<std::size_t>> groups;
    for (std::size_t i = 0; i < instances.size(); ++i) {
        auto [it, fresh] = groups.try_emplace(instances[i].method_id);
        if (fresh) order.push_back(instances[i].method_id);
        it->second.push_back(i);
    }
    if (order.size() < 3) {
        throw ConfigError("cannot split " + std::to_string(order.size()) +
                          " method group(s) three ways; at least 3 are required");
    }

    Rng(seed, "split").shuffle(order);

    const double total = static_cast<double>(instances.size());
    double assigned[3] = {0, 0, 0};
    SplitAssignment out;
    for (const auto& method_id : order) {
        std::size_t best = 0;
        double best_deficit = -1e300;
        for (std::size_t s = 0; s < 3; ++s) {
            const double deficit = shares[s] * total - assigned[s];
            if (deficit > best_deficit + 1e-12) {
                best = s;
                best_deficit = deficit;
            }
        }
        const auto& members = groups[method_id];
        assigned[best] += static_cast<double>(members.size());
        for (std::size_t i : members) out[instances[i].instance_id] = static_cast<Split>(best);
    }
    return out;
}

Datasets build_datasets(std::vector<MethodRecord> records, const BuildOptions& options) {
    if (options.p2_share && (*options.p2_share < 0.0 || *options.p2_share > 1.0)) {
        throw ConfigError("p2 share must lie in [0, 1]");
    }
    Datasets out;
    out.stats.input_methods = records.size();
    std::vector<MethodRecord> kept = filter_methods(std::move(records), &out.stats.filter);
    out.stats.kept_methods = kept.size();

    std::vector<std::size_t> plain, logged;
    for (std::size_t i = 0; i < kept.size(); ++i) {
        (kept[i].log_statements.empty() ? plain : logged).push_back(i);
    }
    out.stats.logged_methods = logged.size();

    std::vector<std::size_t> p2_methods = logged, ft_methods = logged;
    if (options.p2_share) {
        std::vector<std::size_t> shuffled = logged;
        Rng(options.seed, "pools").shuffle(shuffled);
        const auto n_p2 = static_cast<std::size_t>(
            std::llround(*options.p2_share * static_cast<double>(shuffled.size())));
        p2_methods.assign(shuffled.begin(), shuffled.begin() + static_cast<std::ptrdiff_t>(n_p2));
        ft_methods.assign(shuffled.begin() + static_cast<std::ptrdiff_t>(n_p2), shuffled.end());
        std::sort(p2_methods.begin(), p2_methods.end());
        std::sort(ft_methods.begin(), ft_methods.end());
    }
    out.stats.p2_methods = p2_methods.size();
    out.stats.ft_methods = ft_methods.size();

    std::vector<std::optional<DatasetInstance>> p1(plain.size());
    parallel_for(plain.size(), options.jobs, [&](std::size_t i) {
        p1[i] = build_p1(kept[plain[i]], options.mask_ratio, options.seed, options.span_mask);
    });
    for (auto& inst : p1) {
        if (inst) out.p1.push_back(std::move(*inst));
        else ++out.stats.p1_skipped;
    }

    auto expand = [&](const std::vector<std::size_t>& methods, Task task) {
        std::vector<std::vector<DatasetInstance>> per_method(methods.size());
        parallel_for(methods.size(), options.jobs, [&](std::size_t i) {
            const MethodRecord& m = kept[methods[i]];
            for (std::size_t k = 0; k < m.log_statements.size(); ++k) {
                per_method[i].push_back(task == Task::P2 ? build_p2(m, k, options.receivers)
                                                         : build_ft(m, k, options.receivers));
            }
        });
        std::vector<DatasetInstance> flat;
        for (auto& v : per_method) {
            for (auto& inst : v) flat.push_back(std::move(inst));
        }
        return flat;
    };
    out.p2 = expand(p2_methods, Task::P2);
    out.ft = expand(ft_methods, Task::FT);
    out.ft_split = split(out.ft, options.ratios, options.seed);
    return out;
}

}  // namespace loglab
