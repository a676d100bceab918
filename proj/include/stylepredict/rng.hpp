#pragma once

#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

namespace stylepredict {

// Deterministic random source. All randomness in the pipeline flows through
// this wrapper; std::mt19937_64 output is fully specified by the standard,
// and we avoid std distributions (whose output is implementation-defined)
// so that identical seeds give identical bytes on every platform.
class SeededRng {
public:
    explicit SeededRng(uint64_t seed) : engine_(seed) {}

    uint64_t next_u64() { return engine_(); }

    // Uniform in [0, 1) with 53 random bits.
    double next_unit() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    // Uniform in [0, n). Plain modulo; the bias is irrelevant at the
    // n values used here and the mapping stays platform-stable.
    size_t bounded(size_t n) {
        return static_cast<size_t>(engine_() % static_cast<uint64_t>(n));
    }

    // Fisher-Yates.
    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (size_t i = v.size(); i > 1; --i) {
            size_t j = bounded(i);
            std::swap(v[i - 1], v[j]);
        }
    }

private:
    std::mt19937_64 engine_;
};

// FNV-1a over a tag string, folded into a base seed. Used to derive
// independent per-plan and per-stage seeds from the master seed.
inline uint64_t mix_seed(uint64_t seed, std::string_view tag) {
    uint64_t h = 14695981039346656037ull ^ seed;
    for (unsigned char c : tag) {
        h ^= c;
        h *= 1099511628211ull;
    }
    // splitmix64 finalizer
    h += 0x9e3779b97f4a7c15ull;
    h = (h ^ (h >> 30)) * 0xbf58476d1ce4e5b9ull;
    h = (h ^ (h >> 27)) * 0x94d049bb133111ebull;
    return h ^ (h >> 31);
}

} // namespace stylepredict
