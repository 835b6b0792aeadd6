#pragma once

#include <array>
#include <string>
#include <vector>

namespace loglab {

inline constexpr double kBleuEpsilon = 1e-9;

struct BleuBreakdown {
    std::array<double, 4> precision{};  // modified n-gram precision, n = 1..4
    double brevity_penalty = 0.0;
    double score = 0.0;
};

/// Sentence-level BLEU-4 with uniform weights. A zero precision is replaced by
/// kBleuEpsilon; an order for which neither side has any n-gram counts as 1.
/// Empty candidate scores 0.
BleuBreakdown bleu4_breakdown(const std::vector<std::string>& candidate,
                              const std::vector<std::string>& reference);

double bleu4(const std::vector<std::string>& candidate, const std::vector<std::string>& reference);

}  // namespace loglab
