#include "loglab/bleu.hpp"

#include <cmath>
#include <map>

namespace loglab {

namespace {

using Ngram = std::vector<std::string>;

std::map<Ngram, std::size_t> ngram_counts(const std::vector<std::string>& tokens, std::size_t n) {
    std::map<Ngram, std::size_t> counts;
    for (std::size_t i = 0; i + n <= tokens.size(); ++i) {
        ++counts[Ngram(tokens.begin() + static_cast<std::ptrdiff_t>(i),
                       tokens.begin() + static_cast<std::ptrdiff_t>(i + n))];
    }
    return counts;
}

}  // namespace

BleuBreakdown bleu4_breakdown(const std::vector<std::string>& candidate,
                              const std::vector<std::string>& reference) {
    BleuBreakdown out;
    if (candidate.empty()) return out;

    double log_sum = 0.0;
    for (std::size_t n = 1; n <= 4; ++n) {
        const auto cand = ngram_counts(candidate, n);
        const auto ref = ngram_counts(reference, n);
        std::size_t total = 0, clipped = 0;
        for (const auto& [gram, count] : cand) {
            total += count;
            const auto it = ref.find(gram);
            if (it != ref.end()) clipped += std::min(count, it->second);
        }
        double p;
        if (total == 0 && ref.empty()) {
            p = 1.0;
        } else if (clipped == 0) {
            p = kBleuEpsilon;
        } else {
            p = static_cast<double>(clipped) / static_cast<double>(total);
        }
        out.precision[n - 1] = p;
        log_sum += std::log(p);
    }

    const double c = static_cast<double>(candidate.size());
    const double r = static_cast<double>(reference.size());
    out.brevity_penalty = c > r ? 1.0 : std::exp(1.0 - r / c);
    out.score = out.brevity_penalty * std::exp(log_sum / 4.0);
    if (out.score > 1.0) out.score = 1.0;
    return out;
}

double bleu4(const std::vector<std::string>& candidate, const std::vector<std::string>& reference) {
    return bleu4_breakdown(candidate, reference).score;
}

}  // namespace loglab
