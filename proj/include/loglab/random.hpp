#pragma once

#include <cstdint>
#include <limits>
#include <random>
#include <string_view>
#include <utility>
#include <vector>

#include "loglab/method_extractor.hpp"

namespace loglab {

/// The toolkit's only source of randomness: std::mt19937_64 (output fully
/// specified by the standard) seeded through SplitMix64 from the run seed
/// mixed with a stream name. Bounded draws and shuffles are implemented here
/// rather than with std distributions, whose outputs vary between standard
/// libraries.
class Rng {
public:
    explicit Rng(std::uint64_t seed, std::string_view stream = {}) : engine_(derive(seed, stream)) {}

    std::uint64_t next() { return engine_(); }

    /// Uniform integer in [0, n); n > 0. Rejection sampling, no modulo bias.
    std::uint64_t below(std::uint64_t n) {
        const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                    std::numeric_limits<std::uint64_t>::max() % n;
        std::uint64_t x;
        do {
            x = engine_();
        } while (x >= limit);
        return x % n;
    }

    /// Uniform double in [0, 1) with 53 bits.
    double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    template <typename T>
    void shuffle(std::vector<T>& items) {
        for (std::size_t i = items.size(); i > 1; --i) {
            const std::size_t j = static_cast<std::size_t>(below(i));
            std::swap(items[i - 1], items[j]);
        }
    }

    static std::uint64_t splitmix64(std::uint64_t& state) {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    static std::uint64_t derive(std::uint64_t seed, std::string_view stream) {
        std::uint64_t state = seed ^ fnv1a64(stream);
        splitmix64(state);
        return splitmix64(state);
    }

private:
    std::mt19937_64 engine_;
};

}  // namespace loglab
