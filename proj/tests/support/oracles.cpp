#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <iterator>
#include <set>
#include <sstream>

namespace loglab::testkit {

namespace {

bool same_gram(const std::vector<std::string>& a, std::size_t i, const std::vector<std::string>& b, std::size_t j,
               std::size_t n) {
    for (std::size_t k = 0; k < n; ++k) {
        if (a[i + k] != b[j + k]) return false;
    }
    return true;
}

}  // namespace

void brute_precision(const std::vector<std::string>& cand, const std::vector<std::string>& ref, std::size_t n,
                     std::size_t& matches, std::size_t& total) {
    matches = 0;
    total = cand.size() >= n ? cand.size() - n + 1 : 0;
    const std::size_t ref_total = ref.size() >= n ? ref.size() - n + 1 : 0;
    // Each distinct candidate gram, first occurrence only: min(count_c, count_r).
    for (std::size_t i = 0; i < total; ++i) {
        bool first = true;
        for (std::size_t p = 0; p < i && first; ++p) first = !same_gram(cand, p, cand, i, n);
        if (!first) continue;
        std::size_t in_cand = 0, in_ref = 0;
        for (std::size_t p = 0; p < total; ++p) in_cand += same_gram(cand, p, cand, i, n);
        for (std::size_t q = 0; q < ref_total; ++q) in_ref += same_gram(ref, q, cand, i, n);
        matches += std::min(in_cand, in_ref);
    }
}

double brute_bleu4(const std::vector<std::string>& cand, const std::vector<std::string>& ref) {
    if (cand.empty()) return 0.0;
    double product = 1.0;
    for (std::size_t n = 1; n <= 4; ++n) {
        std::size_t m = 0, t = 0;
        brute_precision(cand, ref, n, m, t);
        const bool ref_has = ref.size() >= n;
        double p;
        if (t == 0 && !ref_has) p = 1.0;
        else if (m == 0) p = 1e-9;
        else p = static_cast<double>(m) / static_cast<double>(t);
        product *= p;
    }
    const double c = static_cast<double>(cand.size());
    const double r = static_cast<double>(ref.size());
    const double bp = c > r ? 1.0 : std::exp(1.0 - r / c);
    return std::min(1.0, bp * std::pow(product, 0.25));
}

std::size_t lcs_length(const std::vector<std::string>& a, const std::vector<std::string>& b) {
    std::vector<std::vector<std::size_t>> t(a.size() + 1, std::vector<std::size_t>(b.size() + 1, 0));
    for (std::size_t i = 1; i <= a.size(); ++i) {
        for (std::size_t j = 1; j <= b.size(); ++j) {
            t[i][j] = a[i - 1] == b[j - 1] ? t[i - 1][j - 1] + 1 : std::max(t[i - 1][j], t[i][j - 1]);
        }
    }
    return t[a.size()][b.size()];
}

double set_jaccard(const std::vector<std::string>& a, const std::vector<std::string>& b) {
    const std::set<std::string> sa(a.begin(), a.end()), sb(b.begin(), b.end());
    std::set<std::string> both, either;
    std::set_intersection(sa.begin(), sa.end(), sb.begin(), sb.end(), std::inserter(both, both.end()));
    std::set_union(sa.begin(), sa.end(), sb.begin(), sb.end(), std::inserter(either, either.end()));
    if (either.empty()) return 1.0;
    return static_cast<double>(both.size()) / static_cast<double>(either.size());
}

std::vector<std::string> words(const std::string& s) {
    std::istringstream in(s);
    return {std::istream_iterator<std::string>(in), std::istream_iterator<std::string>()};
}

}  // namespace loglab::testkit
